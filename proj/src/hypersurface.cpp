#include "lorgeo/hypersurface.hpp"

#include "lorgeo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lorgeo {

namespace {

void require_dimension(int n) {
    if (n < 1 || n > 6) {
        throw std::invalid_argument("hypersurface dimension n must be in 1..6, got " +
                                    std::to_string(n));
    }
}

void require_finite_positive(const Eigen::ArrayXd& a, const char* what) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (!std::isfinite(a[i]) || a[i] <= 0.0) {
            throw std::invalid_argument(std::string(what) +
                                        " must be finite and positive at index " +
                                        std::to_string(i));
        }
    }
}

// Integrand factor sqrt(1 - s^2), clamped so rounding just past the lightlike
// boundary cannot produce NaN. Genuine violations (s > 1 + slack) are the
// business of check_achronal, not of the integral.
double area_factor(double s) {
    const double c = std::min(std::abs(s), 1.0);
    return std::sqrt(1.0 - c * c);
}

double int_pow(double x, int k) {
    double acc = 1.0;
    for (int i = 0; i < k; ++i) acc *= x;
    return acc;
}

}  // namespace

RadialProfile make_radial_profile(int n, double t_star,
                                  std::function<double(double)> r,
                                  std::function<double(double)> r_prime,
                                  int quadrature_nodes) {
    require_dimension(n);
    if (!(t_star > 0.0)) {
        throw std::invalid_argument("make_radial_profile: t_star must be > 0");
    }
    if (!r || !r_prime) {
        throw std::invalid_argument("make_radial_profile: r and r_prime required");
    }
    if (quadrature_nodes < kPanelOrder) {
        throw std::invalid_argument("make_radial_profile: too few quadrature nodes");
    }
    RadialProfile profile{n, t_star, std::move(r), std::move(r_prime),
                          quadrature_nodes};
    const QuadratureRule rule =
        composite_gauss_legendre(0.0, t_star, quadrature_nodes);
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
        const double value = profile.r(rule.nodes[i]);
        if (!std::isfinite(value) || value <= 0.0) {
            throw std::invalid_argument(
                "make_radial_profile: r(t) must be finite and positive, fails at t = " +
                std::to_string(rule.nodes[i]));
        }
    }
    return profile;
}

DomainMesh ball_mesh(double t_star, int radial_nodes, int angular_nodes) {
    if (!(t_star > 0.0)) throw std::invalid_argument("ball_mesh: t_star must be > 0");
    if (radial_nodes < kPanelOrder || angular_nodes < 4) {
        throw std::invalid_argument("ball_mesh: mesh resolution too small");
    }
    const QuadratureRule radial =
        composite_gauss_legendre(0.0, t_star, radial_nodes);
    const Eigen::Index nr = radial.nodes.size();
    const double dtheta = 2.0 * M_PI / angular_nodes;

    DomainMesh mesh;
    mesh.kind = DomainKind::geodesic_ball;
    mesh.ball_radius = t_star;
    mesh.points.reserve(static_cast<std::size_t>(nr) * angular_nodes);
    mesh.weights.resize(nr * angular_nodes);

    MinkowskiVector v(3);
    for (Eigen::Index i = 0; i < nr; ++i) {
        const double t = radial.nodes[i];
        const double wt = radial.weights[i] * std::sinh(t) * dtheta;
        for (int j = 0; j < angular_nodes; ++j) {
            const double theta = (j + 0.5) * dtheta;
            v << std::cosh(t), std::sinh(t) * std::cos(theta),
                std::sinh(t) * std::sin(theta);
            mesh.points.emplace_back(v);
            mesh.weights[i * angular_nodes + j] = wt;
        }
    }
    return mesh;
}

DomainMesh atomic_mesh(Eigen::ArrayXd weights) {
    if (weights.size() == 0) {
        throw std::invalid_argument("atomic_mesh: at least one atom required");
    }
    require_finite_positive(weights, "atomic_mesh: weights");
    DomainMesh mesh;
    mesh.kind = DomainKind::atomic;
    mesh.weights = std::move(weights);
    return mesh;
}

GraphHypersurface make_graph(
    DomainMesh mesh, const std::function<double(const HyperbolicPoint&)>& f,
    const std::function<double(const HyperbolicPoint&)>& log_grad_norm, int n) {
    require_dimension(n);
    if (mesh.kind == DomainKind::geodesic_ball && n != 2) {
        throw std::invalid_argument("make_graph: geodesic-ball meshes support n = 2 only");
    }
    if (mesh.points.size() != static_cast<std::size_t>(mesh.weights.size())) {
        throw std::invalid_argument("make_graph: mesh points/weights size mismatch");
    }
    GraphHypersurface graph;
    graph.n = n;
    graph.f_values.resize(mesh.weights.size());
    graph.log_grad_norms.resize(mesh.weights.size());
    for (Eigen::Index i = 0; i < mesh.weights.size(); ++i) {
        graph.f_values[i] = f(mesh.points[static_cast<std::size_t>(i)]);
        graph.log_grad_norms[i] =
            log_grad_norm(mesh.points[static_cast<std::size_t>(i)]);
    }
    require_finite_positive(graph.f_values, "make_graph: f values");
    graph.mesh = std::move(mesh);
    return graph;
}

GraphHypersurface atomic_graph(Eigen::ArrayXd weights, Eigen::ArrayXd f_values,
                               int n, Eigen::ArrayXd log_grad_norms) {
    require_dimension(n);
    if (weights.size() != f_values.size()) {
        throw std::invalid_argument("atomic_graph: weights/f size mismatch");
    }
    if (log_grad_norms.size() == 0) {
        log_grad_norms = Eigen::ArrayXd::Zero(weights.size());
    }
    if (log_grad_norms.size() != weights.size()) {
        throw std::invalid_argument("atomic_graph: gradient array size mismatch");
    }
    require_finite_positive(f_values, "atomic_graph: f values");
    GraphHypersurface graph;
    graph.mesh = atomic_mesh(std::move(weights));
    graph.f_values = std::move(f_values);
    graph.log_grad_norms = std::move(log_grad_norms);
    graph.n = n;
    return graph;
}

GraphHypersurface radial_graph(const RadialProfile& profile, int radial_nodes,
                               int angular_nodes) {
    if (profile.n != 2) {
        throw std::invalid_argument("radial_graph: ball meshes support n = 2 only");
    }
    DomainMesh mesh = ball_mesh(profile.t_star, radial_nodes, angular_nodes);
    const HyperbolicPoint center{(MinkowskiVector(3) << 1, 0, 0).finished()};
    const auto f = [&](const HyperbolicPoint& p) {
        return profile.r(hyperbolic_dist(center, p));
    };
    const auto grad = [&](const HyperbolicPoint& p) {
        const double t = hyperbolic_dist(center, p);
        return std::abs(profile.r_prime(t)) / profile.r(t);
    };
    return make_graph(std::move(mesh), f, grad, profile.n);
}

double CurveSample::discrete_length() const {
    double total = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        total += hyperbolic_dist(points[i - 1], points[i]);
    }
    return total;
}

// ---------------------------------------------------------------------------
// Shared numeric view

WeightedSamples samples_of(const RadialProfile& profile) {
    const QuadratureRule rule =
        composite_gauss_legendre(0.0, profile.t_star, profile.quadrature_nodes);
    WeightedSamples samples;
    samples.n = profile.n;
    const Eigen::Index m = rule.nodes.size();
    samples.w.resize(m);
    samples.f.resize(m);
    samples.s.resize(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double t = rule.nodes[i];
        const double value = profile.r(t);
        samples.w[i] = rule.weights[i] * nu_weight(t, profile.n);
        samples.f[i] = value;
        samples.s[i] = std::abs(profile.r_prime(t)) / value;
    }
    return samples;
}

WeightedSamples samples_of(const GraphHypersurface& graph) {
    WeightedSamples samples;
    samples.n = graph.n;
    samples.w = graph.mesh.weights;
    samples.f = graph.f_values;
    samples.s = graph.log_grad_norms;
    return samples;
}

WeightedSamples restrict_samples(const WeightedSamples& samples,
                                 std::span<const Eigen::Index> subset) {
    if (subset.empty()) {
        throw std::invalid_argument("restrict_samples: empty node subset");
    }
    WeightedSamples out;
    out.n = samples.n;
    out.w.resize(static_cast<Eigen::Index>(subset.size()));
    out.f.resize(static_cast<Eigen::Index>(subset.size()));
    out.s.resize(static_cast<Eigen::Index>(subset.size()));
    Eigen::Index k = 0;
    for (const Eigen::Index idx : subset) {
        if (idx < 0 || idx >= samples.w.size()) {
            throw std::invalid_argument("restrict_samples: node index out of range");
        }
        out.w[k] = samples.w[idx];
        out.f[k] = samples.f[idx];
        out.s[k] = samples.s[idx];
        ++k;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Validation

AdmissibilityReport check_achronal(const RadialProfile& profile, double slack) {
    const QuadratureRule rule =
        composite_gauss_legendre(0.0, profile.t_star, profile.quadrature_nodes);
    AdmissibilityReport report;
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
        const double t = rule.nodes[i];
        const double ratio = std::abs(profile.r_prime(t)) / profile.r(t);
        if (ratio > 1.0 + slack) {
            report.violations.push_back({i, t, ratio - 1.0});
        }
    }
    return report;
}

AdmissibilityReport check_achronal(const GraphHypersurface& graph, double slack) {
    AdmissibilityReport report;
    for (Eigen::Index i = 0; i < graph.log_grad_norms.size(); ++i) {
        if (graph.log_grad_norms[i] > 1.0 + slack) {
            report.violations.push_back({i, 0.0, graph.log_grad_norms[i] - 1.0});
        }
    }
    return report;
}

PathCheckReport check_achronal_paths(const GraphHypersurface& graph,
                                     int num_pairs, std::uint64_t rng_seed,
                                     double slack) {
    if (graph.mesh.kind != DomainKind::geodesic_ball) {
        throw std::invalid_argument(
            "check_achronal_paths: needs a convex geodesic-ball domain");
    }
    const auto count = static_cast<Eigen::Index>(graph.mesh.points.size());
    if (count < 2) {
        throw std::invalid_argument("check_achronal_paths: need at least two nodes");
    }
    Rng rng(rng_seed);
    PathCheckReport report;
    report.pairs_checked = num_pairs;
    for (int k = 0; k < num_pairs; ++k) {
        const auto i = static_cast<Eigen::Index>(rng.uniform_int(0, count - 1));
        auto j = static_cast<Eigen::Index>(rng.uniform_int(0, count - 2));
        if (j >= i) ++j;
        const double lhs = std::abs(std::log(graph.f_values[i]) -
                                    std::log(graph.f_values[j]));
        const double rhs =
            hyperbolic_dist(graph.mesh.points[static_cast<std::size_t>(i)],
                            graph.mesh.points[static_cast<std::size_t>(j)]);
        if (lhs > rhs + slack) {
            report.violations.push_back({i, j, lhs - rhs});
        }
    }
    return report;
}

bool timelike_connectable(const CurveSample& curve) {
    if (!(curve.r0 > 0.0) || !(curve.r1 > 0.0)) {
        throw std::invalid_argument("timelike_connectable: endpoint radii must be > 0");
    }
    return curve.discrete_length() < std::log(curve.r1 / curve.r0);
}

// ---------------------------------------------------------------------------
// Functionals

double cone_volume(const WeightedSamples& samples) {
    Eigen::ArrayXd terms(samples.w.size());
    for (Eigen::Index i = 0; i < samples.w.size(); ++i) {
        terms[i] = samples.w[i] * int_pow(samples.f[i], samples.n + 1);
        if (!std::isfinite(terms[i])) {
            throw std::runtime_error("cone_volume: non-finite integrand at node " +
                                     std::to_string(i));
        }
    }
    return pairwise_sum(terms) / (samples.n + 1);
}

double area(const WeightedSamples& samples) {
    Eigen::ArrayXd terms(samples.w.size());
    for (Eigen::Index i = 0; i < samples.w.size(); ++i) {
        terms[i] = samples.w[i] * int_pow(samples.f[i], samples.n) *
                   area_factor(samples.s[i]);
        if (!std::isfinite(terms[i])) {
            throw std::runtime_error("area: non-finite integrand at node " +
                                     std::to_string(i));
        }
    }
    return pairwise_sum(terms);
}

double dist_origin(const WeightedSamples& samples) {
    return samples.f.minCoeff();
}

double cone_volume(const RadialProfile& profile) {
    return cone_volume(samples_of(profile));
}
double cone_volume(const GraphHypersurface& graph) {
    return cone_volume(samples_of(graph));
}
double area(const RadialProfile& profile) { return area(samples_of(profile)); }
double area(const GraphHypersurface& graph) { return area(samples_of(graph)); }
double dist_origin(const RadialProfile& profile) {
    return dist_origin(samples_of(profile));
}
double dist_origin(const GraphHypersurface& graph) {
    return dist_origin(samples_of(graph));
}

GraphHypersurface restrict_nodes(const GraphHypersurface& graph,
                                 std::span<const Eigen::Index> subset) {
    if (subset.empty()) {
        throw std::invalid_argument("restrict_nodes: empty node subset");
    }
    GraphHypersurface out;
    out.n = graph.n;
    out.mesh.kind = DomainKind::atomic;  // a subset is no longer a full ball
    out.mesh.weights.resize(static_cast<Eigen::Index>(subset.size()));
    out.f_values.resize(static_cast<Eigen::Index>(subset.size()));
    out.log_grad_norms.resize(static_cast<Eigen::Index>(subset.size()));
    const bool has_points = !graph.mesh.points.empty();
    if (has_points) out.mesh.points.reserve(subset.size());
    Eigen::Index k = 0;
    for (const Eigen::Index idx : subset) {
        if (idx < 0 || idx >= graph.mesh.weights.size()) {
            throw std::invalid_argument("restrict_nodes: node index out of range");
        }
        out.mesh.weights[k] = graph.mesh.weights[idx];
        out.f_values[k] = graph.f_values[idx];
        out.log_grad_norms[k] = graph.log_grad_norms[idx];
        if (has_points) {
            out.mesh.points.push_back(
                graph.mesh.points[static_cast<std::size_t>(idx)]);
        }
        ++k;
    }
    return out;
}

std::vector<RadialProfile> exhaustion_sequence(const RadialProfile& profile,
                                               int k_steps) {
    if (k_steps < 1) {
        throw std::invalid_argument("exhaustion_sequence: k_steps must be >= 1");
    }
    std::vector<RadialProfile> steps;
    steps.reserve(static_cast<std::size_t>(k_steps));
    for (int k = 1; k <= k_steps; ++k) {
        RadialProfile restricted = profile;
        restricted.t_star = profile.t_star * k / k_steps;
        steps.push_back(std::move(restricted));
    }
    return steps;
}

}  // namespace lorgeo
