#include "lorgeo/scalar_bounds.hpp"

#include "lorgeo/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace lorgeo {

namespace {

void require_dimension(int n) {
    if (n < 1) throw std::invalid_argument("dimension n must be >= 1");
}

// Golden-section minimization of a convex function on [lo, hi].
template <typename F>
double golden_minimize(F&& f, double lo, double hi, double abs_tol) {
    static const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > abs_tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

}  // namespace

GapBound jensen_gap(double a, double p) {
    if (!(a > 0.0 && a <= 1.0)) {
        throw std::invalid_argument("jensen_gap: a must lie in (0, 1]");
    }
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument("jensen_gap: p must lie in (0, 1)");
    }
    GapBound out;
    out.gap = std::pow(0.5 * (a + 1.0), p) - 0.5 * (std::pow(a, p) + 1.0);
    out.bound = p * (1.0 - p) / 8.0 * (1.0 - a) * (1.0 - a);
    return out;
}

std::vector<double> jensen_series_coefficients(double p, int i_max) {
    if (!(p > 0.0 && p < 1.0)) {
        throw std::invalid_argument(
            "jensen_series_coefficients: p must lie in (0, 1)");
    }
    if (i_max < 3) {
        throw std::invalid_argument(
            "jensen_series_coefficients: need i_max >= 3");
    }
    // Around a = 1 + b the gap reads (1 + b/2)^p - ((1+b)^p + 1)/2, so the
    // b^i coefficient for i >= 1 is binom(p, i) (2^{-i} - 1/2). The constant
    // term cancels against the trailing 1/2 and the linear factor
    // 2^{-1} - 1/2 vanishes identically.
    std::vector<double> coeff(static_cast<std::size_t>(i_max) + 1, 0.0);
    double binom = p;  // binom(p, i), maintained iteratively
    double pow_half = 0.5;
    for (int i = 1; i <= i_max; ++i) {
        coeff[static_cast<std::size_t>(i)] = binom * (pow_half - 0.5);
        binom *= (p - i) / (i + 1.0);
        pow_half *= 0.5;
    }
    coeff[1] = 0.0;  // exact zero, not left to rounding
    return coeff;
}

GapBound minkowski_gap(double a, double b, int n) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::invalid_argument("minkowski_gap: a, b must be positive");
    }
    require_dimension(n);
    const double np1 = n + 1.0;
    GapBound out;
    out.gap = std::pow(2.0 * std::pow(a + b, n), 1.0 / np1) -
              (std::pow(a, n / np1) + std::pow(b, n / np1));
    out.bound = n / (4.0 * np1 * np1) *
                std::pow(std::max(a, b), -(n + 2.0) / np1) * (b - a) * (b - a);
    return out;
}

double L_function(double a, int n) {
    require_dimension(n);
    if (!(a > -1.0)) {
        throw std::domain_error("L_function: a must exceed -1");
    }
    const double np1 = n + 1.0;
    return std::pow(1.0 + a, -1.0 / np1) + a / np1 - 1.0;
}

double L_tilde(double a, int n) {
    require_dimension(n);
    if (!(a >= 0.0 && a <= 1.0)) {
        throw std::domain_error("L_tilde: a must lie in [0, 1]");
    }
    const double l1 = L_function(1.0, n);
    return (L_function(a, n) - l1 * a * a) * std::pow(1.0 + a, 1.0 / (n + 1.0));
}

ImprovedConstant improved_constant(int n) {
    require_dimension(n);
    ImprovedConstant out;
    out.c_improved = 4.0 / L_function(1.0, n);
    out.c_quadratic = 16.0 * (n + 1.0) * (n + 1.0) / n;
    out.improved_over_np1 = out.c_improved / (n + 1.0);
    out.quadratic_over_np1 = out.c_quadratic / (n + 1.0);
    return out;
}

HolderDistance holder_stability_distance(const Eigen::ArrayXd& weights,
                                         const Eigen::ArrayXd& g, double p,
                                         int n) {
    require_dimension(n);
    if (weights.size() == 0 || weights.size() != g.size()) {
        throw std::invalid_argument(
            "holder_stability_distance: weights and g must be nonempty and "
            "of equal length");
    }
    if ((weights <= 0.0).any() || (g <= 0.0).any()) {
        throw std::invalid_argument(
            "holder_stability_distance: weights and g must be positive");
    }

    HolderDistance out;
    const double tol = 1e-12;
    if (std::abs(p - (n + 1.0) / n) <= tol) {
        out.beta = 4.0 * n;
    } else if (std::abs(p - (n + 1.0)) <= tol) {
        out.beta = (n + 1.0) * std::pow(2.0, n);
    } else if (std::abs(p - 2.0) <= tol) {
        // For n = 1 all three exponents coincide at 2; the L2 table entry is
        // the sharpest of the candidates, so it wins the tie.
        out.beta = n + 1.0;
    } else {
        throw std::invalid_argument(
            "holder_stability_distance: p must be (n+1)/n, n+1, or 2");
    }

    const double total = pairwise_sum(weights);
    const double g_bar = pairwise_sum(Eigen::ArrayXd(weights * g)) / total;
    const Eigen::ArrayXd prob = weights / total;
    const Eigen::ArrayXd x = (g / g_bar).pow(1.0 / p);

    auto objective = [&](double c) {
        return pairwise_sum(Eigen::ArrayXd(prob * (x - c).abs().pow(p)));
    };

    double c_star;
    if (std::abs(p - 2.0) <= tol) {
        c_star = pairwise_sum(Eigen::ArrayXd(prob * x));
    } else {
        c_star = golden_minimize(objective, x.minCoeff(), x.maxCoeff(), 1e-10);
    }
    const double value = objective(c_star);  // == ||.||_p^p at the minimizer
    out.distance = std::pow(value, std::max(p, 2.0) / p);
    return out;
}

HolderDistance holder_stability_distance(const WeightedSamples& samples,
                                         double p) {
    const Eigen::ArrayXd g = samples.f.pow(samples.n + 1);
    return holder_stability_distance(samples.w, g, p, samples.n);
}

CounterexampleDistances counterexample_family(int j) {
    if (j < 1) throw std::invalid_argument("counterexample_family: j >= 1");
    const double jd = j;
    const double hi = (jd + 1.0) / std::sqrt(2.0 * jd);
    const double lo = (jd - 1.0 / jd) / std::sqrt(2.0 * jd);
    CounterexampleDistances out;
    // Two atoms of mass (1, j): the L2 minimizer is the weighted mean, and
    // the residual reduces to sqrt(m1 m2 / (m1 + m2)) |hi - lo|.
    out.l2_distance = std::sqrt(jd / (1.0 + jd)) * (hi - lo);
    // For the squares the L1 minimizer is the weighted median, which sits on
    // the heavy atom (any point between the values when j = 1, same result).
    out.l1_sq_distance = hi * hi - lo * lo;
    return out;
}

BernoulliCheck bernoulli_l2_check(const Eigen::ArrayXd& weights,
                                  const Eigen::ArrayXd& g, int n,
                                  double delta_be, double lambda_cap,
                                  double c_tilde) {
    require_dimension(n);
    if (weights.size() == 0 || weights.size() != g.size()) {
        throw std::invalid_argument(
            "bernoulli_l2_check: weights and g must be nonempty and of equal "
            "length");
    }
    if (!(lambda_cap > 0.0) || !(c_tilde > 0.0) || !(c_tilde < 0.125)) {
        throw std::invalid_argument(
            "bernoulli_l2_check: need lambda_cap > 0 and c_tilde in (0, 1/8)");
    }
    const double mu = pairwise_sum(weights);
    const double g_bar = pairwise_sum(Eigen::ArrayXd(weights * g)) / mu;
    const double osc = (g - g_bar).abs().maxCoeff();
    if (osc > lambda_cap * g_bar) {
        throw std::invalid_argument(
            "bernoulli_l2_check: relative oscillation of g exceeds the "
            "smallness cap, bound not applicable");
    }
    // Optimal c in L2 is the weighted mean of g/gbar, which is exactly 1.
    const double sq =
        pairwise_sum(Eigen::ArrayXd(weights * (g / g_bar - 1.0).square()));
    const double sigma = mu / (n + 1.0);
    BernoulliCheck out;
    out.lhs = c_tilde / sigma * sq;
    out.rhs = delta_be / (1.0 + delta_be);
    out.gap = out.rhs - out.lhs;
    return out;
}

BernoulliCheck bernoulli_l2_check(const WeightedSamples& samples,
                                  double lambda_cap, double c_tilde) {
    const int n = samples.n;
    const double v = cone_volume(samples);
    const double a = area(samples);
    if (!(a > 0.0)) {
        throw std::domain_error("bernoulli_l2_check: degenerate hypersurface");
    }
    const double sigma = samples.mu() / (n + 1.0);
    const double delta_be = (n + 1.0) * std::pow(sigma, 1.0 / (n + 1.0)) *
                                std::pow(v, n / (n + 1.0)) / a -
                            1.0;
    const Eigen::ArrayXd g = samples.f.pow(n + 1);
    return bernoulli_l2_check(samples.w, g, n, delta_be, lambda_cap, c_tilde);
}

}  // namespace lorgeo
