#pragma once

// Flat spacelike simplices in Minkowski space and the geometric identities
// the cone construction over them satisfies: area from the edge Gram matrix,
// Lorentzian height of the supporting hyperplane, the exact cone volume
// formula V = h A / (n+1), and the containment bound against the cap of
// radius h over the projected domain.

#include "lorgeo/minkowski.hpp"
#include "lorgeo/rng.hpp"

#include <Eigen/Dense>

#include <cstdint>

namespace lorgeo {

struct SpacelikeSimplex {
    // One vertex per column, each a future-directed timelike vector in
    // L^{n+1}; n + 1 vertices spanning a flat spacelike n-simplex.
    Eigen::MatrixXd vertices;
    int n = 1;
};

// Validates both invariants (future timelike vertices, positive definite
// edge Gram matrix) and returns the simplex; throws invalid_argument
// otherwise.
SpacelikeSimplex make_simplex(Eigen::MatrixXd vertices);

// Riemannian area sqrt(det G)/n! of the flat simplex, G the Minkowski Gram
// matrix of the edge vectors (positive definite on a spacelike plane).
double simplex_area(const SpacelikeSimplex& simplex);

// Lorentzian distance from the origin to the supporting hyperplane: h =
// |<v, N>| for the future unit timelike normal N, the same for every vertex.
double lorentzian_height(const SpacelikeSimplex& simplex);

// Lebesgue volume of the cone over the simplex with apex at the origin,
// |det[v_1 ... v_{n+1}]| / (n+1)!.
double cone_volume_simplex(const SpacelikeSimplex& simplex);

// Residual of the exact cone volume formula, V - h A/(n+1); zero up to
// rounding for every valid simplex.
double cone_formula_check(const SpacelikeSimplex& simplex);

struct ContainmentReport {
    double gap = 0.0;           // h^{n+1} mu(pi(P))/(n+1) - V, nonnegative
    double mu_projected = 0.0;  // hyperbolic measure of the projected simplex
    double std_error = 0.0;     // Monte Carlo standard error on the gap
    std::int64_t samples = 0;   // 0 when the closed form was used (n = 1)
};

// Checks V(C(P)) <= h^{n+1} mu(pi(P))/(n+1), the containment of the cone in
// the cap of radius h. For n = 1 the projected measure is the hyperbolic
// distance between the projected endpoints; for n >= 2 it is integrated by
// Monte Carlo over the simplex via mu = h * Area * E[|v|^-(n+1)].
ContainmentReport containment_check(const SpacelikeSimplex& simplex,
                                    std::int64_t mc_samples = 1000000,
                                    std::uint64_t seed = 0x51e9u);

// Gap of the two-term Minkowski combination step,
//   ((sigma1+sigma2)(v1+v2)^n)^{1/(n+1)}
//     - (sigma1 v1^n)^{1/(n+1)} - (sigma2 v2^n)^{1/(n+1)},
// nonnegative, zero exactly when v1/sigma1 = v2/sigma2.
double induction_step_check(double v1, double sigma1, double v2, double sigma2,
                            int n);

// Random simplex satisfying both invariants: a future timelike center, a
// random spacelike hyperplane through it, n + 1 points in a bounded patch of
// that hyperplane, resampled until the validated constructor accepts.
SpacelikeSimplex random_simplex(int n, Rng& rng);
SpacelikeSimplex random_simplex(int n, std::uint64_t seed);

}  // namespace lorgeo
