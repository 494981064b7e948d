#include "lorgeo/quadrature.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace lorgeo {

// Newton iteration on the Legendre polynomial, seeded with the Chebyshev
// approximation of the k-th root. Standard construction; symmetric pairs are
// filled together.
QuadratureRule gauss_legendre(int m) {
    if (m < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    QuadratureRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);

    const int half = (m + 1) / 2;
    for (int i = 1; i <= half; ++i) {
        double z = std::cos(M_PI * (i - 0.25) / (m + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = 1.0, p2 = 0.0;
            for (int j = 1; j <= m; ++j) {
                const double p3 = p2;
                p2 = p1;
                p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
            }
            pp = m * (z * p1 - p2) / (z * z - 1.0);
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) < 1e-15) break;
        }
        rule.nodes[i - 1] = -z;
        rule.nodes[m - i] = z;
        const double w = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[i - 1] = w;
        rule.weights[m - i] = w;
    }
    return rule;
}

QuadratureRule composite_gauss_legendre(double a, double b, int num_nodes) {
    if (!(b > a)) {
        throw std::invalid_argument("composite_gauss_legendre: need b > a");
    }
    if (num_nodes < 1) {
        throw std::invalid_argument("composite_gauss_legendre: need nodes >= 1");
    }
    const int panels = (num_nodes + kPanelOrder - 1) / kPanelOrder;
    static const QuadratureRule base = gauss_legendre(kPanelOrder);

    QuadratureRule rule;
    rule.nodes.resize(panels * kPanelOrder);
    rule.weights.resize(panels * kPanelOrder);
    const double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * h;
        const double mid = lo + 0.5 * h;
        for (int k = 0; k < kPanelOrder; ++k) {
            rule.nodes[p * kPanelOrder + k] = mid + 0.5 * h * base.nodes[k];
            rule.weights[p * kPanelOrder + k] = 0.5 * h * base.weights[k];
        }
    }
    return rule;
}

namespace {

double pairwise_sum_impl(const double* data, std::size_t count) {
    if (count <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < count; ++i) s += data[i];
        return s;
    }
    const std::size_t half = count / 2;
    return pairwise_sum_impl(data, half) +
           pairwise_sum_impl(data + half, count - half);
}

}  // namespace

double pairwise_sum(std::span<const double> terms) {
    return pairwise_sum_impl(terms.data(), terms.size());
}

double pairwise_sum(const Eigen::ArrayXd& terms) {
    return pairwise_sum_impl(terms.data(), static_cast<std::size_t>(terms.size()));
}

double integrate(const QuadratureRule& rule,
                 const std::function<double(double)>& f) {
    Eigen::ArrayXd terms(rule.nodes.size());
    for (Eigen::Index i = 0; i < rule.nodes.size(); ++i) {
        terms[i] = rule.weights[i] * f(rule.nodes[i]);
    }
    return pairwise_sum(terms);
}

}  // namespace lorgeo
