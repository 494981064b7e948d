#pragma once

// Composite Gauss-Legendre quadrature and deterministic summation helpers.

#include <Eigen/Dense>

#include <functional>
#include <span>

namespace lorgeo {

// Number of Gauss-Legendre points per panel of the composite rule. Eight
// points integrate polynomials up to degree 15 exactly per panel, which keeps
// the convergence order under panel refinement observable before the error
// saturates at machine precision.
inline constexpr int kPanelOrder = 8;

struct QuadratureRule {
    Eigen::ArrayXd nodes;
    Eigen::ArrayXd weights;
};

// Nodes and weights of the m-point Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int m);

// Composite rule on [a, b] with at least num_nodes points, built from
// kPanelOrder-point panels of equal width (num_nodes is rounded up to a
// multiple of kPanelOrder).
QuadratureRule composite_gauss_legendre(double a, double b, int num_nodes);

// Pairwise (cascade) summation: deterministic and accurate regardless of how
// the evaluation of the terms was parallelized.
double pairwise_sum(std::span<const double> terms);
double pairwise_sum(const Eigen::ArrayXd& terms);

double integrate(const QuadratureRule& rule,
                 const std::function<double(double)>& f);

}  // namespace lorgeo
