// Hypersurface representations: profiles, meshes, graphs, the shared sample
// view, admissibility validation, and the basic functionals against closed
// forms.

#include "lorgeo/hypersurface.hpp"

#include "test_support.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

using namespace lorgeo;

namespace {

RadialProfile constant_profile(int n, double t_star, double level,
                               int nodes = 2048) {
    return make_radial_profile(
        n, t_star, [level](double) { return level; },
        [](double) { return 0.0; }, nodes);
}

// mu(B_{t*}) per dimension: 2 t* (n=1), 2 pi (cosh t* - 1) (n=2),
// 2 pi (sinh t* cosh t* - t*) (n=3).
double ball_measure(int n, double t_star) {
    switch (n) {
        case 1:
            return 2.0 * t_star;
        case 2:
            return 2.0 * std::numbers::pi * (std::cosh(t_star) - 1.0);
        default:
            return 2.0 * std::numbers::pi *
                   (std::sinh(t_star) * std::cosh(t_star) - t_star);
    }
}

void test_profile_validation() {
    auto one = [](double) { return 1.0; };
    auto zero = [](double) { return 0.0; };
    REQUIRE_THROWS_AS(make_radial_profile(0, 1.0, one, zero),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(make_radial_profile(7, 1.0, one, zero),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(make_radial_profile(2, -1.0, one, zero),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(make_radial_profile(2, 1.0, nullptr, zero),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(make_radial_profile(2, 1.0, one, zero, 2),
                      std::invalid_argument);
    // Negative heights are caught at the quadrature nodes.
    REQUIRE_THROWS_AS(
        make_radial_profile(
            2, 1.0, [](double t) { return 0.5 - t; }, [](double) { return -1.0; }),
        std::invalid_argument);
}

void test_constant_profile_closed_forms() {
    // Constant graphs have V = c^{n+1}/(n+1) mu and A = c^n mu exactly.
    for (int n = 1; n <= 3; ++n) {
        const double t_star = 1.3;
        const double c = 1.7;
        const RadialProfile prof = constant_profile(n, t_star, c);
        const double mu = ball_measure(n, t_star);
        REQUIRE_CLOSE(cone_volume(prof), std::pow(c, n + 1) / (n + 1) * mu,
                      1e-12);
        REQUIRE_CLOSE(area(prof), std::pow(c, n) * mu, 1e-12);
        REQUIRE_CLOSE(dist_origin(prof), c, 1e-15);
        REQUIRE_CLOSE(samples_of(prof).mu(), mu, 1e-12);
    }
}

void test_ball_mesh() {
    const double t_star = 0.9;
    const DomainMesh mesh = ball_mesh(t_star, 64, 64);
    REQUIRE(mesh.kind == DomainKind::geodesic_ball);
    REQUIRE(mesh.points.size() == static_cast<std::size_t>(mesh.weights.size()));
    REQUIRE(mesh.weights.minCoeff() > 0.0);
    REQUIRE_CLOSE(mesh.mu_total(), ball_measure(2, t_star), 1e-12);
    // Every mesh point stays inside the ball.
    const HyperbolicPoint center((Eigen::VectorXd(3) << 1, 0, 0).finished());
    for (const HyperbolicPoint& p : mesh.points) {
        REQUIRE(hyperbolic_dist(center, p) < t_star);
    }
    REQUIRE_THROWS_AS(ball_mesh(-1.0), std::invalid_argument);
    REQUIRE_THROWS_AS(ball_mesh(1.0, 2, 2), std::invalid_argument);
}

void test_radial_graph_consistency() {
    // A profile and its sampled graph integrate to the same numbers; the
    // angular direction is exact for rotationally symmetric data.
    const RadialProfile prof = make_radial_profile(
        2, 1.0, [](double t) { return 2.0 + 0.4 * std::sin(2.0 * t); },
        [](double t) { return 0.8 * std::cos(2.0 * t); }, 512);
    const GraphHypersurface graph = radial_graph(prof, 512, 32);
    REQUIRE_CLOSE(cone_volume(graph), cone_volume(prof), 1e-12);
    REQUIRE_CLOSE(area(graph), area(prof), 1e-12);
    REQUIRE_CLOSE(dist_origin(graph), dist_origin(prof), 1e-10);

    const RadialProfile p1 = constant_profile(1, 1.0, 1.0);
    REQUIRE_THROWS_AS(radial_graph(p1), std::invalid_argument);
}

void test_atomic_graph() {
    Eigen::ArrayXd w(2);
    Eigen::ArrayXd f(2);
    w << 1.0, 1.0;
    f << 1.0, 2.0;
    const GraphHypersurface graph = atomic_graph(w, f, 2);
    REQUIRE_CLOSE(cone_volume(graph), 3.0, 1e-15);
    REQUIRE_CLOSE(area(graph), 5.0, 1e-15);
    REQUIRE_CLOSE(dist_origin(graph), 1.0, 1e-15);
    REQUIRE(check_achronal(graph).admissible());

    Eigen::ArrayXd bad_f(2);
    bad_f << 1.0, -2.0;
    REQUIRE_THROWS_AS(atomic_graph(w, bad_f, 2), std::invalid_argument);
    Eigen::ArrayXd short_w(1);
    short_w << 1.0;
    REQUIRE_THROWS_AS(atomic_graph(short_w, f, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(atomic_mesh(Eigen::ArrayXd()), std::invalid_argument);
}

void test_admissibility() {
    // |d/dt ln r| = 2 > 1 everywhere: every node violates.
    const RadialProfile steep = make_radial_profile(
        2, 1.0, [](double t) { return std::exp(2.0 * t); },
        [](double t) { return 2.0 * std::exp(2.0 * t); }, 64);
    const AdmissibilityReport rep = check_achronal(steep);
    REQUIRE(!rep.admissible());
    REQUIRE(rep.violations.size() == 64);
    REQUIRE_CLOSE(rep.violations.front().excess, 1.0, 1e-12);
    REQUIRE(rep.violations.front().location > 0.0);

    // Slope exactly 1 sits on the lightlike boundary; the slack admits it.
    const RadialProfile light = make_radial_profile(
        2, 1.0, [](double t) { return std::exp(t); },
        [](double t) { return std::exp(t); }, 64);
    REQUIRE(check_achronal(light).admissible());
    REQUIRE(!check_achronal(light, -1e-6).admissible());

    // Graphs validate against their supplied gradient field.
    Eigen::ArrayXd w(2), f(2), s(2);
    w << 1.0, 1.0;
    f << 1.0, 2.0;
    s << 0.5, 1.5;
    const AdmissibilityReport bad = check_achronal(atomic_graph(w, f, 2, s));
    REQUIRE(bad.violations.size() == 1);
    REQUIRE(bad.violations.front().index == 1);
    REQUIRE_CLOSE(bad.violations.front().excess, 0.5, 1e-15);
}

void test_path_check() {
    const RadialProfile prof = make_radial_profile(
        2, 1.0, [](double t) { return 1.5 + 0.3 * std::cos(t); },
        [](double t) { return -0.3 * std::sin(t); }, 256);
    const GraphHypersurface graph = radial_graph(prof, 64, 32);
    const PathCheckReport rep = check_achronal_paths(graph, 500, 7u);
    REQUIRE(rep.consistent());
    REQUIRE(rep.pairs_checked == 500);

    Eigen::ArrayXd w(2), f(2);
    w << 1.0, 1.0;
    f << 1.0, 2.0;
    REQUIRE_THROWS_AS(check_achronal_paths(atomic_graph(w, f, 2), 10, 7u),
                      std::invalid_argument);
}

void test_timelike_connectable() {
    const MinkowskiVector base = (Eigen::VectorXd(3) << 1, 0, 0).finished();
    const double t = 0.5;
    const MinkowskiVector moved =
        (Eigen::VectorXd(3) << std::cosh(t), std::sinh(t), 0).finished();
    CurveSample curve;
    curve.points = {HyperbolicPoint(base), HyperbolicPoint(moved)};
    REQUIRE_CLOSE(curve.discrete_length(), t, 1e-14);

    curve.r0 = 1.0;
    curve.r1 = std::exp(0.6);  // ln(r1/r0) = 0.6 > length
    REQUIRE(timelike_connectable(curve));
    curve.r1 = std::exp(0.4);  // 0.4 < length
    REQUIRE(!timelike_connectable(curve));
    curve.r1 = std::exp(t);  // lightlike boundary fails
    REQUIRE(!timelike_connectable(curve));
    curve.r1 = -1.0;
    REQUIRE_THROWS_AS(timelike_connectable(curve), std::invalid_argument);
}

void test_restriction_additivity() {
    Eigen::ArrayXd w(4), f(4);
    w << 1.0, 2.0, 0.5, 1.5;
    f << 1.0, 2.0, 3.0, 1.2;
    const GraphHypersurface graph = atomic_graph(w, f, 2);
    const std::vector<Eigen::Index> left{0, 2};
    const std::vector<Eigen::Index> right{1, 3};
    const GraphHypersurface g_left = restrict_nodes(graph, left);
    const GraphHypersurface g_right = restrict_nodes(graph, right);
    REQUIRE_CLOSE(cone_volume(g_left) + cone_volume(g_right),
                  cone_volume(graph), 1e-15);
    REQUIRE_CLOSE(area(g_left) + area(g_right), area(graph), 1e-15);

    const WeightedSamples samples = samples_of(graph);
    const WeightedSamples s_left = restrict_samples(samples, left);
    REQUIRE(s_left.w.size() == 2);
    REQUIRE_CLOSE(cone_volume(s_left), cone_volume(g_left), 1e-15);
    REQUIRE_THROWS_AS(restrict_samples(samples, std::vector<Eigen::Index>{}),
                      std::invalid_argument);
    REQUIRE_THROWS_AS(restrict_samples(samples, std::vector<Eigen::Index>{9}),
                      std::invalid_argument);
}

void test_exhaustion_sequence() {
    const RadialProfile prof = make_radial_profile(
        2, 1.0, [](double t) { return 2.0 + 0.5 * t; },
        [](double) { return 0.5; }, 256);
    const std::vector<RadialProfile> seq = exhaustion_sequence(prof, 4);
    REQUIRE(seq.size() == 4);
    for (int k = 0; k < 4; ++k) {
        REQUIRE_CLOSE(seq[static_cast<std::size_t>(k)].t_star,
                      (k + 1) / 4.0, 1e-15);
    }
    // The last restriction is the full profile.
    REQUIRE_CLOSE(cone_volume(seq.back()), cone_volume(prof), 1e-13);
    // Volumes grow along the sequence.
    double prev = 0.0;
    for (const RadialProfile& p : seq) {
        const double v = cone_volume(p);
        REQUIRE(v > prev);
        prev = v;
    }
    REQUIRE_THROWS_AS(exhaustion_sequence(prof, 0), std::invalid_argument);
}

}  // namespace

int main() {
    test_profile_validation();
    test_constant_profile_closed_forms();
    test_ball_mesh();
    test_radial_graph_consistency();
    test_atomic_graph();
    test_admissibility();
    test_path_check();
    test_timelike_connectable();
    test_restriction_additivity();
    test_exhaustion_sequence();
    return testsupport::summarize("hypersurface representations");
}
