// Scalar inequalities and constants: the quantitative Jensen and Minkowski
// bounds, the function L and its companion, the improved stability constant,
// the Hoelder distances, the counterexample family, and the quadratic
// Bernoulli bound.

#include "lorgeo/scalar_bounds.hpp"

#include "test_support.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace lorgeo;

namespace {

void test_jensen() {
    const GapBound gb = jensen_gap(0.25, 0.5);
    REQUIRE_CLOSE(gb.gap, 0.040569415042094881, 1e-15);
    REQUIRE_CLOSE(gb.bound, 0.017578125, 1e-15);
    REQUIRE(gb.slack() > 0.0);

    // a = 1 is the equality case, exactly.
    const GapBound eq = jensen_gap(1.0, 0.7);
    REQUIRE(eq.gap == 0.0);
    REQUIRE(eq.bound == 0.0);

    // The bound holds across a grid of the open parameter square.
    for (int i = 1; i <= 20; ++i) {
        for (int j = 1; j < 20; ++j) {
            const GapBound g = jensen_gap(i / 20.0, j / 20.0);
            REQUIRE(g.slack() >= -1e-15);
        }
    }

    REQUIRE_THROWS_AS(jensen_gap(0.0, 0.5), std::invalid_argument);
    REQUIRE_THROWS_AS(jensen_gap(1.5, 0.5), std::invalid_argument);
    REQUIRE_THROWS_AS(jensen_gap(0.5, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(jensen_gap(0.5, 1.0), std::invalid_argument);
}

void test_jensen_series() {
    const double p = 0.4;
    const std::vector<double> coeff = jensen_series_coefficients(p, 20);
    REQUIRE(coeff.size() == 21);
    REQUIRE(std::abs(coeff[0]) <= 1e-15);
    REQUIRE(std::abs(coeff[1]) <= 1e-15);
    REQUIRE_CLOSE(coeff[2], p * (1.0 - p) / 8.0, 1e-15);
    // Every term of the tail is nonnegative on b in (-1, 0), which is what
    // makes the quadratic truncation a lower bound.
    const double b = -0.5;
    double power = b * b * b;
    for (std::size_t i = 3; i < coeff.size(); ++i) {
        REQUIRE(coeff[i] * power >= -1e-15);
        power *= b;
    }
    // The series reproduces the gap near a = 1.
    double sum = 0.0;
    double bp = 1.0;
    const double b_small = -0.1;
    for (const double c : coeff) {
        sum += c * bp;
        bp *= b_small;
    }
    REQUIRE_CLOSE(sum, jensen_gap(1.0 + b_small, p).gap, 1e-12);

    REQUIRE_THROWS_AS(jensen_series_coefficients(0.4, 2),
                      std::invalid_argument);
}

void test_minkowski() {
    const GapBound gb = minkowski_gap(1.0, 2.0, 2);
    REQUIRE_CLOSE(gb.gap, 0.033340342240697041, 1e-15);
    REQUIRE_CLOSE(gb.bound, 0.02204723683289166, 1e-15);
    REQUIRE(gb.slack() > 0.0);

    // Symmetric in (a, b); exact equality on the diagonal.
    const GapBound swapped = minkowski_gap(2.0, 1.0, 2);
    REQUIRE_CLOSE(swapped.gap, gb.gap, 1e-15);
    REQUIRE_CLOSE(swapped.bound, gb.bound, 1e-15);
    const GapBound diag = minkowski_gap(1.7, 1.7, 3);
    REQUIRE(std::abs(diag.gap) <= 1e-14);
    REQUIRE(diag.bound == 0.0);

    for (int n = 1; n <= 4; ++n) {
        for (int i = 1; i <= 12; ++i) {
            for (int j = 1; j <= 12; ++j) {
                REQUIRE(minkowski_gap(i * 0.7, j * 0.7, n).slack() >= -1e-13);
            }
        }
    }

    REQUIRE_THROWS_AS(minkowski_gap(0.0, 1.0, 2), std::invalid_argument);
    REQUIRE_THROWS_AS(minkowski_gap(1.0, 1.0, 0), std::invalid_argument);
}

void test_l_functions() {
    REQUIRE(L_function(0.0, 2) == 0.0);
    REQUIRE_CLOSE(L_function(1.0, 2), 0.12703385931743316, 1e-16);
    // Strictly increasing right of zero, strictly decreasing left of it.
    REQUIRE(L_function(2.0, 2) > L_function(1.0, 2));
    REQUIRE(L_function(-0.9, 2) > L_function(-0.5, 2));
    REQUIRE(L_function(-0.5, 2) > 0.0);
    REQUIRE_THROWS_AS(L_function(-1.0, 2), std::domain_error);

    REQUIRE(L_tilde(0.0, 2) == 0.0);
    REQUIRE(std::abs(L_tilde(1.0, 2)) <= 1e-17);
    REQUIRE_CLOSE(L_tilde(0.5, 2), 0.0097170975270946119, 1e-15);
    for (int k = 1; k < 16; ++k) {
        REQUIRE(L_tilde(k / 16.0, 2) > 0.0);
        REQUIRE(L_tilde(k / 16.0, 3) > 0.0);
    }
    REQUIRE_THROWS_AS(L_tilde(1.5, 2), std::domain_error);
}

void test_improved_constant() {
    const ImprovedConstant c2 = improved_constant(2);
    REQUIRE_CLOSE(c2.c_improved, 31.487668102759674, 1e-13);
    REQUIRE_CLOSE(c2.c_quadratic, 72.0, 1e-15);
    REQUIRE_CLOSE(c2.improved_over_np1, 31.487668102759674 / 3.0, 1e-13);
    REQUIRE_CLOSE(c2.quadratic_over_np1, 24.0, 1e-15);

    const ImprovedConstant c1 = improved_constant(1);
    REQUIRE_CLOSE(c1.c_improved, 4.0 / (1.0 / std::sqrt(2.0) - 0.5), 1e-13);
    REQUIRE_CLOSE(c1.c_quadratic, 64.0, 1e-15);
    REQUIRE_CLOSE(c1.improved_over_np1, 9.65685424949238, 1e-12);

    // c_improved agrees with its closed alternative form and the normalized
    // sequences move monotonically toward 4/(1 - ln 2) and 16.
    double prev_imp = 0.0;
    double prev_quad = 1e300;
    for (int n = 1; n <= 40; ++n) {
        const ImprovedConstant ic = improved_constant(n);
        const double alt = 1.0 / (std::pow(2.0, -(2.0 + 1.0 / (n + 1.0))) -
                                  n / (4.0 * (n + 1.0)));
        REQUIRE_CLOSE(ic.c_improved, alt, 1e-12);
        REQUIRE(ic.c_improved < ic.c_quadratic);
        REQUIRE(ic.improved_over_np1 > prev_imp);
        REQUIRE(ic.quadratic_over_np1 < prev_quad);
        prev_imp = ic.improved_over_np1;
        prev_quad = ic.quadratic_over_np1;
    }
    const double limit = 4.0 / (1.0 - std::log(2.0));
    REQUIRE(prev_imp < limit);
    REQUIRE(prev_quad > 16.0);
}

void test_holder_distances() {
    Eigen::ArrayXd w(2), f(2);
    w << 1.0, 1.0;
    f << 1.0, 2.0;
    const WeightedSamples samples = samples_of(atomic_graph(w, f, 2));
    const double delta_be = 0.090272355699283935;

    const HolderDistance h_low = holder_stability_distance(samples, 1.5);
    REQUIRE_CLOSE(h_low.distance, 0.30285343213868987, 1e-14);
    REQUIRE_CLOSE(h_low.beta, 8.0, 1e-15);
    REQUIRE(h_low.bound_slack(delta_be) > 0.0);

    const HolderDistance h_high = holder_stability_distance(samples, 3.0);
    REQUIRE_CLOSE(h_high.distance, 1.0 / 36.0, 1e-14);
    REQUIRE_CLOSE(h_high.beta, 12.0, 1e-15);
    REQUIRE(h_high.bound_slack(delta_be) > 0.0);

    const HolderDistance h_two = holder_stability_distance(samples, 2.0);
    REQUIRE_CLOSE(h_two.distance, 0.18573031947264551, 1e-14);
    REQUIRE_CLOSE(h_two.beta, 3.0, 1e-15);
    REQUIRE(h_two.bound_slack(delta_be) > 0.0);

    // Only the three distinguished exponents are defined.
    REQUIRE_THROWS_AS(holder_stability_distance(samples, 2.5),
                      std::invalid_argument);
    Eigen::ArrayXd bad_g(2);
    bad_g << 1.0, -1.0;
    REQUIRE_THROWS_AS(holder_stability_distance(w, bad_g, 2.0, 2),
                      std::invalid_argument);
}

void test_counterexample_family() {
    const CounterexampleDistances first = counterexample_family(1);
    REQUIRE_CLOSE(first.l2_distance, 1.0, 1e-15);
    REQUIRE_CLOSE(first.l1_sq_distance, 2.0, 1e-15);

    const CounterexampleDistances far = counterexample_family(100);
    REQUIRE_CLOSE(far.l2_distance, 0.07106335201776047, 1e-14);
    REQUIRE_CLOSE(far.l1_sq_distance, 1.014999500000016, 1e-14);

    double prev = counterexample_family(2).l2_distance;
    for (int j = 3; j <= 60; ++j) {
        const CounterexampleDistances cd = counterexample_family(j);
        REQUIRE(cd.l2_distance < prev);
        REQUIRE(cd.l1_sq_distance >= 1.0);
        REQUIRE(cd.l1_sq_distance <= 2.0);
        prev = cd.l2_distance;
    }
    REQUIRE_THROWS_AS(counterexample_family(0), std::invalid_argument);
}

void test_bernoulli_l2() {
    // Small radial oscillation: the bound applies and holds with room.
    const RadialProfile prof = make_radial_profile(
        2, 1.0,
        [](double t) {
            const double s = (t - 0.3) / 0.4;
            const double phi =
                (s > 0.0 && s < 1.0) ? std::exp(-1.0 / (s * (1.0 - s))) : 0.0;
            return 1.0 + 1e-3 * phi;
        },
        [](double t) {
            const double s = (t - 0.3) / 0.4;
            if (s <= 0.0 || s >= 1.0) return 0.0;
            const double phi = std::exp(-1.0 / (s * (1.0 - s)));
            const double d = (2.0 * s - 1.0) / (s * s * (1.0 - s) * (1.0 - s));
            return 1e-3 * phi * d / 0.4;
        });
    const BernoulliCheck bc = bernoulli_l2_check(samples_of(prof));
    REQUIRE(bc.gap > 0.0);
    REQUIRE(bc.lhs >= 0.0);
    REQUIRE(bc.lhs < bc.rhs);

    // The two-level instance oscillates far beyond the smallness cap.
    Eigen::ArrayXd w(2), f(2);
    w << 1.0, 1.0;
    f << 1.0, 2.0;
    REQUIRE_THROWS_AS(bernoulli_l2_check(samples_of(atomic_graph(w, f, 2))),
                      std::invalid_argument);
    // Parameter sanity: c_tilde must stay below the 1/8 threshold.
    Eigen::ArrayXd g(2);
    g << 1.0, 1.001;
    REQUIRE_THROWS_AS(bernoulli_l2_check(w, g, 2, 0.1, 0.01, 0.5),
                      std::invalid_argument);
}

}  // namespace

int main() {
    test_jensen();
    test_jensen_series();
    test_minkowski();
    test_l_functions();
    test_improved_constant();
    test_holder_distances();
    test_counterexample_family();
    test_bernoulli_l2();
    return testsupport::summarize("scalar bounds");
}
