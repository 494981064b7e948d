#pragma once

// Achronal hypersurfaces represented as graphs over compact hyperbolic
// domains, in two interchangeable forms:
//
//   RadialProfile      r(t) on [0, t*], rotationally symmetric, any n in 1..6;
//   GraphHypersurface  sampled f over a DomainMesh (geodesic-ball product
//                      grids for n = 2, or abstract atomic measures).
//
// Both reduce to WeightedSamples, a list of (weight, value, gradient-norm)
// triples, and every functional is defined on that view, so quadrature-backed
// and exact atomic data flow through identical code paths.

#include "lorgeo/minkowski.hpp"
#include "lorgeo/quadrature.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace lorgeo {

// Graph slack used when validating the spacelike/achronal gradient bound.
inline constexpr double kAdmissibilitySlack = 1e-9;

struct RadialProfile {
    int n = 2;                          // hypersurface dimension, 1..6
    double t_star = 1.0;                // hyperbolic radius of the domain
    std::function<double(double)> r;    // graph height over [0, t_star]
    std::function<double(double)> r_prime;
    int quadrature_nodes = 2048;
};

// Validates ranges and positivity of r at the quadrature nodes.
RadialProfile make_radial_profile(int n, double t_star,
                                  std::function<double(double)> r,
                                  std::function<double(double)> r_prime,
                                  int quadrature_nodes = 2048);

enum class DomainKind { geodesic_ball, atomic };

struct DomainMesh {
    DomainKind kind = DomainKind::atomic;
    std::vector<HyperbolicPoint> points;  // may be empty for atomic domains
    Eigen::ArrayXd weights;               // mu-quadrature weights, all > 0
    double ball_radius = 0.0;             // geodesic_ball only

    double mu_total() const { return pairwise_sum(weights); }
};

// Geodesic-polar product mesh of the ball of radius t_star around
// (1,0,0) in the n = 2 hyperboloid: composite Gauss-Legendre in the radial
// direction times a uniform (midpoint) angular grid. The total weight equals
// mu(B_{t*}) = 2 pi (cosh t* - 1) up to quadrature rounding.
DomainMesh ball_mesh(double t_star, int radial_nodes = 256,
                     int angular_nodes = 256);

// Abstract atomic measure: weights only, no geometry.
DomainMesh atomic_mesh(Eigen::ArrayXd weights);

struct GraphHypersurface {
    DomainMesh mesh;
    Eigen::ArrayXd f_values;        // positive graph heights per node
    Eigen::ArrayXd log_grad_norms;  // |grad ln f| per node, supplied data
    int n = 2;
};

// Builds a graph from analytic handles; the gradient norm is supplied, not
// finite-differenced, so discretization error never leaks into the
// admissibility condition.
GraphHypersurface make_graph(
    DomainMesh mesh, const std::function<double(const HyperbolicPoint&)>& f,
    const std::function<double(const HyperbolicPoint&)>& log_grad_norm, int n);

// Atomic graph in dimension n from parallel weight/value arrays; gradient
// norms default to zero (piecewise constant data).
GraphHypersurface atomic_graph(Eigen::ArrayXd weights, Eigen::ArrayXd f_values,
                               int n, Eigen::ArrayXd log_grad_norms = {});

// Rotationally symmetric graph over a ball mesh, sampled from a profile.
GraphHypersurface radial_graph(const RadialProfile& profile,
                               int radial_nodes = 256, int angular_nodes = 256);

// A discrete path on the hyperboloid together with the radial coordinates of
// its endpoints in the cone.
struct CurveSample {
    std::vector<HyperbolicPoint> points;
    double r0 = 1.0;
    double r1 = 1.0;

    double discrete_length() const;
};

// ---------------------------------------------------------------------------
// Shared numeric view

struct WeightedSamples {
    Eigen::ArrayXd w;  // mu-weights
    Eigen::ArrayXd f;  // graph heights
    Eigen::ArrayXd s;  // |grad ln f|
    int n = 2;

    double mu() const { return pairwise_sum(w); }
};

WeightedSamples samples_of(const RadialProfile& profile);
WeightedSamples samples_of(const GraphHypersurface& graph);
WeightedSamples restrict_samples(const WeightedSamples& samples,
                                 std::span<const Eigen::Index> subset);

// ---------------------------------------------------------------------------
// Validation

struct AdmissibilityViolation {
    Eigen::Index index;  // node index (flattened for meshes)
    double location;     // radial coordinate t for profiles, 0 otherwise
    double excess;       // |grad ln f| - 1 at the node
};

struct AdmissibilityReport {
    std::vector<AdmissibilityViolation> violations;
    bool admissible() const { return violations.empty(); }
};

AdmissibilityReport check_achronal(const RadialProfile& profile,
                                   double slack = kAdmissibilitySlack);
AdmissibilityReport check_achronal(const GraphHypersurface& graph,
                                   double slack = kAdmissibilitySlack);

// Discrete Lipschitz test: |ln f(x) - ln f(y)| <= d_H(x, y) + slack on random
// node pairs. Only meaningful on convex domains, so it requires a
// geodesic-ball mesh.
struct PathViolation {
    Eigen::Index i;
    Eigen::Index j;
    double excess;
};

struct PathCheckReport {
    std::vector<PathViolation> violations;
    int pairs_checked = 0;
    bool consistent() const { return violations.empty(); }
};

PathCheckReport check_achronal_paths(const GraphHypersurface& graph,
                                     int num_pairs, std::uint64_t rng_seed,
                                     double slack = 1e-8);

// True iff the discrete path admits a future-directed timelike connecting
// curve: discrete length strictly below ln(r1/r0). Equality is the lightlike
// boundary and connectability fails there.
bool timelike_connectable(const CurveSample& curve);

// ---------------------------------------------------------------------------
// Functionals

double cone_volume(const WeightedSamples& samples);
double cone_volume(const RadialProfile& profile);
double cone_volume(const GraphHypersurface& graph);

double area(const WeightedSamples& samples);
double area(const RadialProfile& profile);
double area(const GraphHypersurface& graph);

// Minimum of f over the sample nodes: an upper bound for the true infimum
// that converges under mesh refinement.
double dist_origin(const WeightedSamples& samples);
double dist_origin(const RadialProfile& profile);
double dist_origin(const GraphHypersurface& graph);

// Sub-hypersurface over the selected atoms. Volume and area are exactly
// additive across a partition of the node set.
GraphHypersurface restrict_nodes(const GraphHypersurface& graph,
                                 std::span<const Eigen::Index> subset);

// Restrictions of the profile to [0, t* k / k_steps] for k = 1..k_steps.
std::vector<RadialProfile> exhaustion_sequence(const RadialProfile& profile,
                                               int k_steps);

}  // namespace lorgeo
