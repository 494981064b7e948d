#pragma once

// Deficits, asymmetries, and the inequality chains that relate them.
//
// Everything here consumes the WeightedSamples view, so the same code serves
// exact atomic data and quadrature-sampled graphs. Conventions, for a
// hypersurface S = graph(f) over a domain of mu-mass mu(Omega):
//
//   V      = cone volume under S          = 1/(n+1) * int f^{n+1} dmu
//   A      = spacelike area of S          = int f^n sqrt(1 - |grad ln f|^2) dmu
//   d      = Lorentzian distance to the origin = inf f
//   sigma  = volume of the unit cap over the domain = mu(Omega)/(n+1)
//
// The deficits measure the failure of the two isoperimetric inequalities and
// of their refinement:
//
//   delta_BE      = (n+1) sigma^{1/(n+1)} V^{n/(n+1)} / A - 1
//   delta_CM      = (n+1) V / (A d) - 1
//   excess E      = (V - d^{n+1} sigma) / ((n+1) V)
//   delta_CM_star = delta_CM - E
//
// and the asymmetries compare S against the centred caps B_t = graph(t):
//
//   A_F        at the volume-matching radius t_F
//   A_F_tilde  at the L1-optimal radius t_tilde (a weighted median)

#include "lorgeo/hypersurface.hpp"
#include "lorgeo/scalar_bounds.hpp"

#include <Eigen/Dense>

#include <span>
#include <vector>

namespace lorgeo {

// Default verification tolerances: atomic inputs are exact up to rounding,
// quadrature-backed inputs carry discretization error at default resolution.
inline constexpr double kTolAtomic = 1e-9;
inline constexpr double kTolQuadrature = 1e-6;

struct DeficitReport {
    int n = 0;
    double V = 0.0;
    double A = 0.0;
    double d = 0.0;
    double sigma = 0.0;
    double t_F = 0.0;
    double t_tilde = 0.0;
    double delta_BE = 0.0;
    double delta_CM = 0.0;
    double delta_CM_star = 0.0;
    double excess = 0.0;
    double A_F = 0.0;
    double A_F_tilde = 0.0;
};

// Radius of the centred cap with the same cone volume as S:
// t_F = ((n+1) V / mu)^{1/(n+1)}.
double fraenkel_radius(const WeightedSamples& samples);

// Volume of the symmetric difference between the cones over S and over the
// cap of radius t: 1/(n+1) * sum w |f^{n+1} - t^{n+1}|.
double sym_diff_volume(const WeightedSamples& samples, double t);

// The two one-sided parts of the symmetric difference, (above, below) =
// (V(C(S) \ B_t), V(B_t \ C(S))). At t = t_F they agree exactly.
std::pair<double, double> one_sided_volumes(const WeightedSamples& samples,
                                            double t);

// A_F = sym_diff_volume(S, t_F) / V.
double fraenkel_asymmetry(const WeightedSamples& samples);

struct TildeAsymmetry {
    double t_tilde;  // minimizing radius, lowest weighted median of f
    double value;    // sym_diff_volume(S, t_tilde) / V
};

// Minimizes t -> sym_diff_volume(S, t)/V. In the variable t^{n+1} this is a
// weighted L1 deviation, so the minimizer is a weighted median of f^{n+1};
// ties take the lowest admissible value for determinism.
TildeAsymmetry tilde_asymmetry(const WeightedSamples& samples);

DeficitReport deficits(const WeightedSamples& samples);
DeficitReport deficits(const RadialProfile& profile);
DeficitReport deficits(const GraphHypersurface& graph);

struct DeficitRelation {
    // delta_CM - [(1 + delta_BE) (1 - (n+1) E)^{-1/(n+1)} - 1]; identically
    // zero in exact arithmetic.
    double identity_residual;
    // delta_CM - E - (1 + E) delta_BE; nonnegative (Bernoulli).
    double inequality_gap;
};

DeficitRelation deficit_relation_check(const DeficitReport& report);
DeficitRelation deficit_relation_check(const WeightedSamples& samples);

// 2 (n+1) E - A_F, nonnegative.
double excess_asymmetry_check(const DeficitReport& report);
double excess_asymmetry_check(const WeightedSamples& samples);

// Isoperimetric gap (n+1) sigma_B^{1/(n+1)} V_B^{n/(n+1)} - A_B of the
// sub-hypersurface over the selected atoms; nonnegative, zero exactly when f
// is constant on the subset. The one-argument form takes the full set.
double be_subset_check(const WeightedSamples& samples,
                       std::span<const Eigen::Index> subset);
double be_subset_check(const WeightedSamples& samples);

// Decomposition of S along the weighted median t0 of f into halves of equal
// mu-mass (the atom carrying the median is split fractionally), together
// with the inequality chain this decomposition feeds:
//
//  (a) subadditive isoperimetric step
//      (n+1) [ (sigma/2 V_lo^n)^{1/(n+1)} + (sigma/2 V_up^n)^{1/(n+1)} ] - A
//  (b) quantitative two-term Minkowski step at (V_lo, V_up), scaled by
//      (n+1) (sigma/2)^{1/(n+1)} as it enters the chain
//  (c) final quadratic stability bound
//      4 (n+1)^2 / n * delta_BE * V^2 - sym_diff^2
//
// all of which are nonnegative.
struct MedianSplit {
    double t0 = 0.0;
    WeightedSamples lower;  // atoms with f <= t0, mass mu/2
    WeightedSamples upper;  // atoms with f >= t0, mass mu/2
    double v_lower = 0.0;
    double v_upper = 0.0;
    double sym_diff = 0.0;  // V(C(S) delta B_{t0}) = v_upper - v_lower
    double gap_subadditive = 0.0;
    double gap_minkowski = 0.0;
    GapBound minkowski_terms;  // unscaled lemma evaluation at (v_lower, v_upper)
    double gap_final = 0.0;
};

MedianSplit median_split(const WeightedSamples& samples);

// The four stability estimates, each reported as bound minus distance term
// (nonnegative when the estimate holds):
struct StabilityGaps {
    double quadratic_be;       // 16 (n+1)^2/n * delta_BE      - A_F^2
    double linear_cm;          //  2 (n+1)    * delta_CM       - A_F
    double quadratic_cm_star;  // 16 (n+1)^2/n * delta_CM_star - A_F^2
    double improved_cm_star;   // delta_CM_star - L(1)/4 * A_F^2
};

StabilityGaps stability_check(const DeficitReport& report);
StabilityGaps stability_check(const WeightedSamples& samples);

// Convergence of the main functionals along the exhaustion of a profile by
// sub-balls. Deviations compare the last step against the full profile.
struct ExhaustionRow {
    int k = 0;
    double t_k = 0.0;
    double V = 0.0;
    double A = 0.0;
    double delta_BE = 0.0;
    double A_F = 0.0;
    double t_F = 0.0;
};

struct ExhaustionTable {
    std::vector<ExhaustionRow> rows;
    ExhaustionRow full;
    double delta_be_deviation = 0.0;
    double asymmetry_deviation = 0.0;
};

ExhaustionTable exhaustion_convergence_check(const RadialProfile& profile,
                                             int k_steps);

}  // namespace lorgeo
