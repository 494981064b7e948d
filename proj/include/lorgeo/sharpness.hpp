#pragma once

// Perturbation families r_eps = 1 + eps * phi over a geodesic ball: the
// machinery that demonstrates how the deficits and the Fraenkel asymmetry
// scale against each other as eps -> 0 (quadratically for delta_BE and
// delta_CM_star, linearly for delta_CM).

#include "lorgeo/functionals.hpp"
#include "lorgeo/hypersurface.hpp"

#include <vector>

namespace lorgeo {

// Compactly supported smooth perturbation profile. phi and phi_prime are
// analytic handles; the support is a closed subinterval of (0, t_star), so
// every derivative vanishes at t = 0 and at the support endpoints.
struct BumpFunction {
    std::function<double(double)> phi;
    std::function<double(double)> phi_prime;
    double support_lo = 0.0;
    double support_hi = 0.0;
};

// The reference bump exp(-1/(s(1-s))), s = (t - 0.3)/0.4, supported on
// [0.3, 0.7].
BumpFunction default_bump();

// Subtracts a multiple of a smooth plateau cutoff (same support) so the
// result has zero nu-mean for the weight nu of dimension n on [0, t_star].
// A bump that was already mean-zero passes through unchanged.
BumpFunction mean_zero_projection(const BumpFunction& bump, int n,
                                  double t_star, int nodes = 4096);

// Admissible radial profile r = 1 + eps * phi. Requires
// eps * (sup|phi| + sup|phi'|) < 1, which is sufficient for the spacelike
// gradient bound; the built profile is additionally re-validated node by
// node and an admissibility error names the first violating node.
RadialProfile build_perturbation(const BumpFunction& bump, double eps, int n,
                                 double t_star);

// Second-order expansion data of the functionals at eps = 0 for a mean-zero
// bump. All integrals are against the normalized or raw nu measure on
// [0, t_star] as noted. The asymmetry comparisons use
//   af_linear_coeff  = (n+1) * mean |phi|   (the actual first-order slope)
//   af_lower_coeff   = half of that         (the guaranteed lower bound)
// and the second-order refined-deficit coefficient comes in two forms:
//   cm_star2_principal = (1/(2 A0)) * int (2 n phi^2 + phi'^2) dnu
//   cm_star2_full      = be2 + (n+2)/2 * (inf phi)^2
// with be2 = (1/(2 A0)) * int (n phi^2 + phi'^2) dnu; the full form carries
// the square of the first-order distance shift that the principal form
// drops. Ratio predictions must use the full form.
struct AnalyticExpansion {
    int n = 0;
    double t_star = 0.0;
    double nu_total = 0.0;  // nu mass of [0, t_star]
    double V0 = 0.0, V1 = 0.0, V2 = 0.0;
    double A0 = 0.0, A1 = 0.0, A2 = 0.0;
    double dist1 = 0.0;  // inf phi
    double cm1 = 0.0;    // -inf phi, first-order slope of delta_CM
    double cm_star2_principal = 0.0;
    double cm_star2_full = 0.0;
    double be2 = 0.0;  // second-order slope of delta_BE: mean(n phi^2 + phi'^2)/2
    double af_linear_coeff = 0.0;
    double af_lower_coeff = 0.0;
};

AnalyticExpansion analytic_expansion(const BumpFunction& bump, int n,
                                     double t_star, int nodes = 4096);

// Log-log slope fits of the deficits across a decreasing ladder of eps
// values. Headline slopes regress against ln A_F over the three smallest
// ladder points (the asymptotic regime); the eps-slopes over all points are
// diagnostics.
struct SharpnessLadder {
    std::vector<double> epsilons;
    std::vector<DeficitReport> reports;
    AnalyticExpansion expansion;

    double slope_be_af = 0.0;
    double slope_cm_af = 0.0;
    double slope_cm_star_af = 0.0;
    double slope_be_eps = 0.0;
    double slope_cm_eps = 0.0;
    double slope_cm_star_eps = 0.0;

    std::vector<double> af_over_eps;   // per ladder point
    double af_limit_lower = 0.0;       // (n+1)/2 * mean |phi|
    double fitted_c = 0.0;             // smallest C with A_F >= eps*lower*(1 - C eps)

    double ratio_cm_star = 0.0;        // delta_CM_star / A_F^2 at smallest eps
    double ratio_cm_star_predicted = 0.0;  // cm_star2_full / af_linear_coeff^2
};

// Eight log-spaced values from 10^{-1.5} down to 10^{-3}.
std::vector<double> default_ladder_epsilons();

SharpnessLadder run_ladder(const BumpFunction& bump, int n, double t_star,
                           const std::vector<double>& epsilons);

}  // namespace lorgeo
