#pragma once

// Standalone scalar inequalities and auxiliary constants: the quantitative
// Jensen and Minkowski bounds, the auxiliary function L and its companion
// L-tilde, the improved stability constant, normalized Hoelder-type
// distances, and the two-atom counterexample family.

#include <Eigen/Dense>

#include <vector>

#include "lorgeo/hypersurface.hpp"

namespace lorgeo {

struct GapBound {
    double gap;    // left-over of the inequality at the given point
    double bound;  // quantitative lower bound the gap must dominate
    double slack() const { return gap - bound; }
};

// Quantitative Jensen bound for p in (0,1), a in (0,1]:
// ((a+1)/2)^p - (a^p+1)/2 >= p(1-p)/8 * (1-a)^2, equality iff a = 1.
GapBound jensen_gap(double a, double p);

// Series coefficients of the Jensen gap around a = 1 + b: coefficients of
// b^0 and b^1 vanish, b^2 carries p(1-p)/8, and every higher term is
// nonnegative for b in (-1, 0).
std::vector<double> jensen_series_coefficients(double p, int i_max);

// Quantitative Minkowski bound for a, b > 0 and integer n >= 1:
// (2(a+b)^n)^(1/(n+1)) - (a^(n/(n+1)) + b^(n/(n+1)))
//   >= n/(4(n+1)^2) * max(a,b)^(-(n+2)/(n+1)) * (b-a)^2.
GapBound minkowski_gap(double a, double b, int n);

// L(a) = (1+a)^(-1/(n+1)) + a/(n+1) - 1 on (-1, inf): zero at 0, strictly
// increasing on the positive axis, strictly decreasing on (-1, 0).
double L_function(double a, int n);

// L_tilde(a) = (L(a) - L(1) a^2) (1+a)^(1/(n+1)) on [0, 1]: zero at both
// endpoints and positive inside.
double L_tilde(double a, int n);

struct ImprovedConstant {
    double c_improved;       // 4 / L(1), the refined stability constant
    double c_quadratic;      // 16 (n+1)^2 / n, the baseline constant
    double improved_over_np1;   // c_improved / (n+1), tends to 4/(1 - ln 2)
    double quadratic_over_np1;  // c_quadratic / (n+1), tends to 16
};

ImprovedConstant improved_constant(int n);

// Normalized Hoelder-type distance of an atomic function g (weights w) for
// p in {(n+1)/n, n+1, 2}: inf_c || (g/gbar)^(1/p) - c ||_{L^p}^{max(p,2)}
// over the probability measure w / sum(w), together with the exponent's
// beta constant. bound_check(delta) = delta/(1+delta) - distance/beta is the
// slack of the stability estimate and must be nonnegative.
struct HolderDistance {
    double distance;
    double beta;
    double bound_slack(double delta) const {
        return delta / (1.0 + delta) - distance / beta;
    }
};

HolderDistance holder_stability_distance(const Eigen::ArrayXd& weights,
                                         const Eigen::ArrayXd& g, double p,
                                         int n);

// Convenience overload on a sampled hypersurface with g = f^(n+1).
HolderDistance holder_stability_distance(const WeightedSamples& samples,
                                         double p);

// Two-step counterexample family on masses (1, j) with values
// (j+1)/sqrt(2j) and (j - 1/j)/sqrt(2j): the L2 distance decays to zero
// while the L1 distance of the squares stays >= 1 (tending to 1), so the
// weaker distances cannot control the L1 asymmetry domain-independently.
struct CounterexampleDistances {
    double l2_distance;
    double l1_sq_distance;
};

CounterexampleDistances counterexample_family(int j);

// Quantitative Bernoulli bound in L2 for data with a small relative
// oscillation: requires sup |g - gbar| <= lambda_cap * gbar and checks
// (c_tilde / sigma) * inf_c ||g/gbar - c||^2_{L2} <= delta/(1+delta), where
// sigma is the unit-cap volume mu/(n+1) and the L2 norm is over the
// normalized measure. c_tilde and lambda_cap are fixed conservative choices
// exposed as parameters.
struct BernoulliCheck {
    double lhs;
    double rhs;
    double gap;  // rhs - lhs, contract >= -tol
};

BernoulliCheck bernoulli_l2_check(const Eigen::ArrayXd& weights,
                                  const Eigen::ArrayXd& g, int n, double delta_be,
                                  double lambda_cap = 0.01,
                                  double c_tilde = 0.0625);

// Convenience overload: derives g = f^(n+1) and the base deficit from the
// sampled hypersurface itself (the area keeps its gradient factor, which is
// what gives the bound its slack).
BernoulliCheck bernoulli_l2_check(const WeightedSamples& samples,
                                  double lambda_cap = 0.01,
                                  double c_tilde = 0.0625);

}  // namespace lorgeo
