#include "lorgeo/sharpness.hpp"

#include "lorgeo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace lorgeo {

namespace {

// exp(-1/x) continued by zero, the building block of every cutoff here.
double decay(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

// Smooth step: 0 for x <= 0, 1 for x >= 1, strictly monotone between.
double smooth_step(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double b = decay(x);
    const double c = decay(1.0 - x);
    return b / (b + c);
}

double smooth_step_prime(double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    const double b = decay(x);
    const double c = decay(1.0 - x);
    const double bp = b / (x * x);
    const double cp = c / ((1.0 - x) * (1.0 - x));
    // d/dx [b/(b+c)] with c' = -cp by the chain rule.
    const double denom = (b + c) * (b + c);
    return (bp * c + b * cp) / denom;
}

struct SupBounds {
    double sup_phi = 0.0;
    double sup_phi_prime = 0.0;
    double inf_phi = 0.0;
};

SupBounds scan_bump(const BumpFunction& bump, int nodes) {
    SupBounds out;
    // Dense uniform scan of the support; the handles are smooth, so the
    // extrema are resolved far beyond the accuracy any bound here needs.
    const double lo = bump.support_lo;
    const double hi = bump.support_hi;
    for (int i = 0; i <= nodes; ++i) {
        const double t = lo + (hi - lo) * i / nodes;
        const double p = bump.phi(t);
        const double dp = bump.phi_prime(t);
        out.sup_phi = std::max(out.sup_phi, std::abs(p));
        out.sup_phi_prime = std::max(out.sup_phi_prime, std::abs(dp));
        out.inf_phi = std::min(out.inf_phi, p);
    }
    return out;
}

// Integral of f against the nu weight over [0, t_star].
double nu_integral(const std::function<double(double)>& f, int n,
                   double t_star, int nodes) {
    const QuadratureRule rule = composite_gauss_legendre(0.0, t_star, nodes);
    return integrate(rule,
                     [&](double t) { return f(t) * nu_weight(t, n); });
}

double least_squares_slope(const std::vector<double>& x,
                           const std::vector<double>& y) {
    const std::size_t m = x.size();
    double mean_x = 0.0, mean_y = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        mean_x += x[i];
        mean_y += y[i];
    }
    mean_x /= static_cast<double>(m);
    mean_y /= static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        sxx += (x[i] - mean_x) * (x[i] - mean_x);
        sxy += (x[i] - mean_x) * (y[i] - mean_y);
    }
    return sxy / sxx;
}

}  // namespace

BumpFunction default_bump() {
    BumpFunction bump;
    bump.support_lo = 0.3;
    bump.support_hi = 0.7;
    bump.phi = [](double t) {
        const double s = (t - 0.3) / 0.4;
        if (s <= 0.0 || s >= 1.0) return 0.0;
        return std::exp(-1.0 / (s * (1.0 - s)));
    };
    bump.phi_prime = [](double t) {
        const double s = (t - 0.3) / 0.4;
        if (s <= 0.0 || s >= 1.0) return 0.0;
        const double core = std::exp(-1.0 / (s * (1.0 - s)));
        const double u = s * (1.0 - s);
        return core * (1.0 - 2.0 * s) / (u * u) / 0.4;
    };
    return bump;
}

BumpFunction mean_zero_projection(const BumpFunction& bump, int n,
                                  double t_star, int nodes) {
    if (!(bump.support_lo > 0.0) || !(bump.support_hi > bump.support_lo) ||
        !(bump.support_hi < t_star)) {
        throw std::invalid_argument(
            "mean_zero_projection: support must be a subinterval of "
            "(0, t_star)");
    }
    const double lo = bump.support_lo;
    const double hi = bump.support_hi;
    const double ramp = 0.25 * (hi - lo);

    // Smooth plateau: ramps over the outer quarters of the support, flat 1
    // on the middle half. Same support class as the bump itself.
    auto plateau = [lo, hi, ramp](double t) {
        return smooth_step((t - lo) / ramp) * smooth_step((hi - t) / ramp);
    };
    auto plateau_prime = [lo, hi, ramp](double t) {
        const double up = (t - lo) / ramp;
        const double down = (hi - t) / ramp;
        return smooth_step_prime(up) / ramp * smooth_step(down) -
               smooth_step(up) * smooth_step_prime(down) / ramp;
    };

    const double bump_mass = nu_integral(bump.phi, n, t_star, nodes);
    const double plateau_mass = nu_integral(plateau, n, t_star, nodes);
    const double factor = bump_mass / plateau_mass;

    BumpFunction out;
    out.support_lo = lo;
    out.support_hi = hi;
    out.phi = [phi = bump.phi, plateau, factor](double t) {
        return phi(t) - factor * plateau(t);
    };
    out.phi_prime = [dphi = bump.phi_prime, plateau_prime, factor](double t) {
        return dphi(t) - factor * plateau_prime(t);
    };
    return out;
}

RadialProfile build_perturbation(const BumpFunction& bump, double eps, int n,
                                 double t_star) {
    if (!(eps >= 0.0)) {
        throw std::invalid_argument("build_perturbation: eps must be >= 0");
    }
    const SupBounds bounds = scan_bump(bump, 4096);
    const double budget = bounds.sup_phi + bounds.sup_phi_prime;
    if (budget > 0.0 && eps >= 1.0 / budget) {
        throw std::invalid_argument(
            "build_perturbation: eps = " + std::to_string(eps) +
            " >= 1/(sup|phi| + sup|phi'|) = " + std::to_string(1.0 / budget) +
            ", perturbation may fail the spacelike bound");
    }
    RadialProfile profile = make_radial_profile(
        n, t_star,
        [phi = bump.phi, eps](double t) { return 1.0 + eps * phi(t); },
        [dphi = bump.phi_prime, eps](double t) { return eps * dphi(t); });

    const AdmissibilityReport check = check_achronal(profile);
    if (!check.admissible()) {
        const AdmissibilityViolation& v = check.violations.front();
        throw std::invalid_argument(
            "build_perturbation: spacelike bound violated at t = " +
            std::to_string(v.location) + " (node " + std::to_string(v.index) +
            ", excess " + std::to_string(v.excess) + ")");
    }
    return profile;
}

AnalyticExpansion analytic_expansion(const BumpFunction& bump, int n,
                                     double t_star, int nodes) {
    AnalyticExpansion out;
    out.n = n;
    out.t_star = t_star;
    out.nu_total = nu_integral([](double) { return 1.0; }, n, t_star, nodes);

    const double m1 =
        nu_integral(bump.phi, n, t_star, nodes) / out.nu_total;
    if (std::abs(m1) > 1e-10) {
        throw std::invalid_argument(
            "analytic_expansion: bump must be mean-zero (apply "
            "mean_zero_projection first)");
    }
    const double m2 = nu_integral([&](double t) { return bump.phi(t) * bump.phi(t); },
                                  n, t_star, nodes) /
                      out.nu_total;
    const double q = nu_integral(
                         [&](double t) {
                             const double dp = bump.phi_prime(t);
                             return dp * dp;
                         },
                         n, t_star, nodes) /
                     out.nu_total;
    const double abs_mean =
        nu_integral([&](double t) { return std::abs(bump.phi(t)); }, n, t_star,
                    nodes) /
        out.nu_total;
    const double inf_phi = scan_bump(bump, 8192).inf_phi;

    out.V0 = out.nu_total / (n + 1.0);
    out.V1 = m1 * out.nu_total;
    out.V2 = 0.5 * n * m2 * out.nu_total;
    out.A0 = out.nu_total;
    out.A1 = n * m1 * out.nu_total;
    out.A2 = 0.5 * (n * (n - 1.0) * m2 - q) * out.nu_total;
    out.dist1 = inf_phi;
    out.cm1 = -inf_phi;
    out.cm_star2_principal = n * m2 + 0.5 * q;
    out.cm_star2_full =
        0.5 * (n * m2 + q) + 0.5 * (n + 2.0) * inf_phi * inf_phi;
    out.be2 = 0.5 * (n * m2 + q);
    out.af_linear_coeff = (n + 1.0) * abs_mean;
    out.af_lower_coeff = 0.5 * (n + 1.0) * abs_mean;
    return out;
}

std::vector<double> default_ladder_epsilons() {
    std::vector<double> eps(8);
    for (int i = 0; i < 8; ++i) {
        const double exponent = -1.5 - 1.5 * i / 7.0;
        eps[static_cast<std::size_t>(i)] = std::pow(10.0, exponent);
    }
    return eps;
}

SharpnessLadder run_ladder(const BumpFunction& bump, int n, double t_star,
                           const std::vector<double>& epsilons) {
    if (epsilons.size() < 3) {
        throw std::invalid_argument(
            "run_ladder: need at least three ladder points");
    }
    for (std::size_t i = 0; i + 1 < epsilons.size(); ++i) {
        if (!(epsilons[i] > epsilons[i + 1])) {
            throw std::invalid_argument(
                "run_ladder: epsilons must be strictly decreasing");
        }
    }
    if (!(epsilons.back() > 0.0)) {
        throw std::invalid_argument("run_ladder: epsilons must be positive");
    }

    SharpnessLadder ladder;
    ladder.epsilons = epsilons;
    ladder.expansion = analytic_expansion(bump, n, t_star);
    ladder.reports.reserve(epsilons.size());
    ladder.af_over_eps.reserve(epsilons.size());

    for (double eps : epsilons) {
        const RadialProfile profile = build_perturbation(bump, eps, n, t_star);
        ladder.reports.push_back(deficits(profile));
        ladder.af_over_eps.push_back(ladder.reports.back().A_F / eps);
    }

    // Slope fits. Headline: ln(deficit) against ln(A_F) over the three
    // smallest epsilons. Diagnostics: against ln(eps) over all points.
    const std::size_t count = epsilons.size();
    std::vector<double> ln_af_tail, ln_be_tail, ln_cm_tail, ln_star_tail;
    for (std::size_t i = count - 3; i < count; ++i) {
        ln_af_tail.push_back(std::log(ladder.reports[i].A_F));
        ln_be_tail.push_back(std::log(ladder.reports[i].delta_BE));
        ln_cm_tail.push_back(std::log(ladder.reports[i].delta_CM));
        ln_star_tail.push_back(std::log(ladder.reports[i].delta_CM_star));
    }
    ladder.slope_be_af = least_squares_slope(ln_af_tail, ln_be_tail);
    ladder.slope_cm_af = least_squares_slope(ln_af_tail, ln_cm_tail);
    ladder.slope_cm_star_af = least_squares_slope(ln_af_tail, ln_star_tail);

    std::vector<double> ln_eps, ln_be, ln_cm, ln_star;
    for (std::size_t i = 0; i < count; ++i) {
        ln_eps.push_back(std::log(epsilons[i]));
        ln_be.push_back(std::log(ladder.reports[i].delta_BE));
        ln_cm.push_back(std::log(ladder.reports[i].delta_CM));
        ln_star.push_back(std::log(ladder.reports[i].delta_CM_star));
    }
    ladder.slope_be_eps = least_squares_slope(ln_eps, ln_be);
    ladder.slope_cm_eps = least_squares_slope(ln_eps, ln_cm);
    ladder.slope_cm_star_eps = least_squares_slope(ln_eps, ln_star);

    ladder.af_limit_lower = ladder.expansion.af_lower_coeff;
    double fitted_c = 0.0;
    for (std::size_t i = 0; i < count; ++i) {
        const double shortfall =
            1.0 - ladder.reports[i].A_F /
                      (epsilons[i] * ladder.af_limit_lower);
        fitted_c = std::max(fitted_c, shortfall / epsilons[i]);
    }
    ladder.fitted_c = fitted_c;

    const DeficitReport& finest = ladder.reports.back();
    ladder.ratio_cm_star = finest.delta_CM_star / (finest.A_F * finest.A_F);
    ladder.ratio_cm_star_predicted =
        ladder.expansion.cm_star2_full /
        (ladder.expansion.af_linear_coeff * ladder.expansion.af_linear_coeff);
    return ladder;
}

}  // namespace lorgeo
