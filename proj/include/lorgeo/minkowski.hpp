#pragma once

// Minkowski linear algebra with signature (-,+,...,+), the hyperboloid model
// of hyperbolic space, and the radial measure weight. Index 0 is the time
// coordinate throughout; a vector of dimension n has n+1 coordinates.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace lorgeo {

using MinkowskiVector = Eigen::VectorXd;

// Relative tolerance of the lightlike band in classify(), measured against
// the Euclidean squared norm of the vector.
inline constexpr double kCausalClassTol = 1e-12;

template <typename DerivedU, typename DerivedV>
double mink_inner(const Eigen::MatrixBase<DerivedU>& u,
                  const Eigen::MatrixBase<DerivedV>& v) {
    if (u.size() != v.size()) {
        throw std::invalid_argument("mink_inner: dimension mismatch (" +
                                    std::to_string(u.size()) + " vs " +
                                    std::to_string(v.size()) + ")");
    }
    const Eigen::Index m = u.size();
    return -u[0] * v[0] + u.tail(m - 1).dot(v.tail(m - 1));
}

template <typename Derived>
double lorentz_norm(const Eigen::MatrixBase<Derived>& v) {
    return std::sqrt(std::abs(mink_inner(v, v)));
}

struct CausalClass {
    enum Tag { spacelike, timelike, lightlike };
    Tag tag;
    bool future_directed;  // meaningful for non-spacelike vectors only
};

template <typename Derived>
CausalClass classify(const Eigen::MatrixBase<Derived>& v) {
    const double q = mink_inner(v, v);
    const double scale = v.squaredNorm();
    const double band = kCausalClassTol * scale;
    CausalClass c{};
    if (q < -band) {
        c.tag = CausalClass::timelike;
    } else if (q > band) {
        c.tag = CausalClass::spacelike;
    } else {
        c.tag = CausalClass::lightlike;
    }
    // future-directed iff <v, e0> < 0, i.e. the time coordinate is positive
    c.future_directed = v[0] > 0.0;
    return c;
}

template <typename Derived>
bool is_future_timelike(const Eigen::MatrixBase<Derived>& v) {
    const CausalClass c = classify(v);
    return c.tag == CausalClass::timelike && c.future_directed;
}

// A point on the future unit hyperboloid <v,v> = -1. The constructor
// normalizes the supplied future timelike vector, so the invariant holds by
// construction.
class HyperbolicPoint {
  public:
    explicit HyperbolicPoint(const MinkowskiVector& v) {
        if (!is_future_timelike(v)) {
            throw std::domain_error(
                "HyperbolicPoint: vector is not future-directed timelike");
        }
        vec_ = v / lorentz_norm(v);
    }

    const MinkowskiVector& vector() const { return vec_; }
    Eigen::Index ambient_size() const { return vec_.size(); }

  private:
    MinkowskiVector vec_;
};

inline HyperbolicPoint radial_project(const MinkowskiVector& v) {
    return HyperbolicPoint(v);
}

inline double hyperbolic_dist(const HyperbolicPoint& x,
                              const HyperbolicPoint& y) {
    const double c = -mink_inner(x.vector(), y.vector());
    constexpr double tol = 1e-10;
    if (c < 1.0 - tol) {
        throw std::domain_error(
            "hyperbolic_dist: points drifted off the hyperboloid sheet");
    }
    return std::acosh(std::max(c, 1.0));
}

// Volume of the Euclidean unit ball in dimension n.
inline double unit_ball_volume(int n) {
    if (n < 1) throw std::invalid_argument("unit_ball_volume: n must be >= 1");
    return std::pow(M_PI, 0.5 * n) / std::tgamma(0.5 * n + 1.0);
}

// Density of the radial measure on a geodesic ball in hyperbolic n-space:
// dnu(t) = n * Vol(B_1^Eucl) * sinh(t)^(n-1) dt. For n = 1 this is the
// constant 2.
inline double nu_weight(double t, int n) {
    if (t < 0.0) throw std::domain_error("nu_weight: t must be >= 0");
    const double c = n * unit_ball_volume(n);
    if (n == 1) return c;
    return c * std::pow(std::sinh(t), n - 1);
}

// Signed gap |u+v| - |u| - |v| of the reverse triangle inequality; it is
// nonnegative for future-directed timelike u, v.
inline double reverse_triangle_check(const MinkowskiVector& u,
                                     const MinkowskiVector& v) {
    if (!is_future_timelike(u) || !is_future_timelike(v)) {
        throw std::domain_error(
            "reverse_triangle_check: inputs must be future-directed timelike");
    }
    return lorentz_norm((u + v).eval()) - lorentz_norm(u) - lorentz_norm(v);
}

}  // namespace lorgeo
