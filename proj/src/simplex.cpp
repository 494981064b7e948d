#include "lorgeo/simplex.hpp"

#include "lorgeo/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace lorgeo {

namespace {

constexpr double kDegenerateTol = 1e-12;

// Edge matrix with columns v_{i+1} - v_1, i = 1..n.
Eigen::MatrixXd edge_matrix(const SpacelikeSimplex& simplex) {
    const Eigen::Index count = simplex.vertices.cols();
    Eigen::MatrixXd edges(simplex.vertices.rows(), count - 1);
    for (Eigen::Index i = 1; i < count; ++i) {
        edges.col(i - 1) = simplex.vertices.col(i) - simplex.vertices.col(0);
    }
    return edges;
}

// Minkowski Gram matrix of the columns of a.
Eigen::MatrixXd mink_gram(const Eigen::MatrixXd& a) {
    Eigen::MatrixXd eta_a = a;
    eta_a.row(0) *= -1.0;
    return a.transpose() * eta_a;
}

double factorial(int k) {
    double out = 1.0;
    for (int i = 2; i <= k; ++i) out *= i;
    return out;
}

// Future unit timelike Minkowski normal of the simplex's supporting
// hyperplane: the kernel of the system <edge_i, N> = 0.
Eigen::VectorXd unit_normal(const SpacelikeSimplex& simplex) {
    Eigen::MatrixXd edges = edge_matrix(simplex);
    Eigen::MatrixXd rows = edges.transpose();  // n x (n+1)
    rows.col(0) *= -1.0;                       // apply eta so rows * N = <e_i, N>
    const Eigen::FullPivLU<Eigen::MatrixXd> lu(rows);
    const Eigen::MatrixXd kernel = lu.kernel();
    if (kernel.cols() != 1) {
        throw std::invalid_argument(
            "lorentzian_height: degenerate simplex, hyperplane normal not "
            "unique");
    }
    Eigen::VectorXd normal = kernel.col(0);
    const double q = mink_inner(normal, normal);
    if (!(q < 0.0)) {
        throw std::domain_error(
            "lorentzian_height: supporting hyperplane is not spacelike");
    }
    normal /= std::sqrt(-q);
    if (normal[0] < 0.0) normal = -normal;
    return normal;
}

}  // namespace

SpacelikeSimplex make_simplex(Eigen::MatrixXd vertices) {
    const Eigen::Index dim = vertices.rows();
    if (dim < 2 || vertices.cols() != dim) {
        throw std::invalid_argument(
            "make_simplex: need n+1 vertices of dimension n+1 with n >= 1");
    }
    SpacelikeSimplex simplex;
    simplex.vertices = std::move(vertices);
    simplex.n = static_cast<int>(dim) - 1;

    for (Eigen::Index i = 0; i < simplex.vertices.cols(); ++i) {
        const Eigen::VectorXd v = simplex.vertices.col(i);
        if (!is_future_timelike(v)) {
            throw std::invalid_argument(
                "make_simplex: vertex outside the chronological future");
        }
    }

    const Eigen::MatrixXd gram = mink_gram(edge_matrix(simplex));
    const Eigen::LLT<Eigen::MatrixXd> llt(gram);
    if (llt.info() != Eigen::Success ||
        gram.determinant() <= kDegenerateTol) {
        throw std::invalid_argument(
            "make_simplex: edge set is not spacelike and nondegenerate");
    }
    return simplex;
}

double simplex_area(const SpacelikeSimplex& simplex) {
    const double det = mink_gram(edge_matrix(simplex)).determinant();
    if (det <= kDegenerateTol) {
        throw std::invalid_argument("simplex_area: degenerate simplex");
    }
    return std::sqrt(det) / factorial(simplex.n);
}

double lorentzian_height(const SpacelikeSimplex& simplex) {
    const Eigen::VectorXd normal = unit_normal(simplex);
    const Eigen::VectorXd v0 = simplex.vertices.col(0);
    return std::abs(mink_inner(v0, normal));
}

double cone_volume_simplex(const SpacelikeSimplex& simplex) {
    const double det = simplex.vertices.determinant();
    const double volume =
        std::abs(det) / factorial(simplex.n + 1);
    if (volume <= kDegenerateTol) {
        throw std::invalid_argument(
            "cone_volume_simplex: degenerate vertex determinant");
    }
    return volume;
}

double cone_formula_check(const SpacelikeSimplex& simplex) {
    const double v = cone_volume_simplex(simplex);
    const double h = lorentzian_height(simplex);
    const double a = simplex_area(simplex);
    return v - h * a / (simplex.n + 1.0);
}

ContainmentReport containment_check(const SpacelikeSimplex& simplex,
                                    std::int64_t mc_samples,
                                    std::uint64_t seed) {
    const int n = simplex.n;
    const double h = lorentzian_height(simplex);
    const double v = cone_volume_simplex(simplex);

    ContainmentReport report;
    if (n == 1) {
        // The projected simplex is a geodesic arc; its measure is the
        // hyperbolic distance between the projected endpoints.
        const HyperbolicPoint a = radial_project(simplex.vertices.col(0));
        const HyperbolicPoint b = radial_project(simplex.vertices.col(1));
        report.mu_projected = hyperbolic_dist(a, b);
        report.samples = 0;
        report.std_error = 0.0;
    } else {
        if (mc_samples < 2) {
            throw std::invalid_argument(
                "containment_check: need at least two Monte Carlo samples");
        }
        // mu(pi(P)) = h * Area * E[|p|^{-(n+1)}] over p uniform on the
        // simplex: the cone formula applied to an infinitesimal patch gives
        // d(mu) = h dArea / |p|^{n+1}. Uniform sampling via normalized
        // exponential (flat Dirichlet) barycentric weights.
        const double a = simplex_area(simplex);
        Rng rng(seed);
        const Eigen::Index verts = simplex.vertices.cols();
        const Eigen::Index chunk = 1 << 14;
        Eigen::MatrixXd bary(chunk, verts);
        double sum = 0.0;
        double sum_sq = 0.0;
        std::int64_t done = 0;
        while (done < mc_samples) {
            const Eigen::Index batch = static_cast<Eigen::Index>(
                std::min<std::int64_t>(chunk, mc_samples - done));
            for (Eigen::Index i = 0; i < batch; ++i) {
                for (Eigen::Index j = 0; j < verts; ++j) {
                    bary(i, j) = -std::log(1.0 - rng.uniform01());
                }
            }
            auto block = bary.topRows(batch);
            const Eigen::ArrayXd row_sums = block.rowwise().sum().array();
            const Eigen::MatrixXd points =
                (block.array().colwise() / row_sums).matrix() *
                simplex.vertices.transpose();
            const Eigen::ArrayXd norm_sq =
                points.col(0).array().square() -
                points.rightCols(points.cols() - 1).array().square().rowwise().sum();
            const Eigen::ArrayXd terms =
                norm_sq.sqrt().pow(-(n + 1));
            sum += pairwise_sum(terms);
            sum_sq += pairwise_sum(Eigen::ArrayXd(terms.square()));
            done += batch;
        }
        const double count = static_cast<double>(mc_samples);
        const double mean = sum / count;
        const double var =
            std::max(0.0, (sum_sq / count - mean * mean) * count / (count - 1.0));
        report.mu_projected = h * a * mean;
        report.std_error =
            h * a * std::sqrt(var / count) * std::pow(h, n + 1) / (n + 1.0);
        report.samples = mc_samples;
    }
    report.gap = std::pow(h, n + 1) * report.mu_projected / (n + 1.0) - v;
    return report;
}

double induction_step_check(double v1, double sigma1, double v2, double sigma2,
                            int n) {
    if (!(v1 > 0.0) || !(sigma1 > 0.0) || !(v2 > 0.0) || !(sigma2 > 0.0)) {
        throw std::invalid_argument(
            "induction_step_check: all four quantities must be positive");
    }
    if (n < 1) throw std::invalid_argument("induction_step_check: n >= 1");
    const double np1 = n + 1.0;
    const double right =
        std::pow((sigma1 + sigma2) * std::pow(v1 + v2, n), 1.0 / np1);
    const double left = std::pow(sigma1 * std::pow(v1, n), 1.0 / np1) +
                        std::pow(sigma2 * std::pow(v2, n), 1.0 / np1);
    return right - left;
}

SpacelikeSimplex random_simplex(int n, Rng& rng) {
    if (n < 1 || n > 6) {
        throw std::invalid_argument("random_simplex: n must lie in 1..6");
    }
    const int dim = n + 1;
    for (int attempt = 0; attempt < 1000; ++attempt) {
        // Future unit timelike normal by a random boost of (1, 0, ..., 0).
        Eigen::VectorXd direction = Eigen::VectorXd::Zero(dim);
        double norm = 0.0;
        while (norm < 1e-8) {
            for (int i = 1; i < dim; ++i) direction[i] = rng.normal();
            norm = direction.norm();
        }
        direction /= norm;
        const double beta = rng.uniform(0.0, 0.6);
        Eigen::VectorXd normal = std::sinh(beta) * direction;
        normal[0] = std::cosh(beta);

        // Minkowski-orthogonal projection onto the hyperplane through the
        // center, then Gram-Schmidt in the induced (positive definite)
        // metric; the time axis projects to a near-zero vector for small
        // boosts, so candidates below tolerance are skipped.
        std::vector<Eigen::VectorXd> basis;
        for (int i = 0; i < dim && static_cast<int>(basis.size()) < n; ++i) {
            Eigen::VectorXd u = Eigen::VectorXd::Unit(dim, i);
            u += mink_inner(u, normal) * normal;
            for (const Eigen::VectorXd& b : basis) {
                u -= mink_inner(u, b) * b;
            }
            const double q = mink_inner(u, u);
            if (q < 1e-10) continue;
            basis.push_back(u / std::sqrt(q));
        }
        if (static_cast<int>(basis.size()) != n) continue;

        const double height = rng.uniform(1.0, 3.0);
        const Eigen::VectorXd center = height * normal;
        const double patch = 0.35 * height;
        Eigen::MatrixXd vertices(dim, dim);
        for (int col = 0; col < dim; ++col) {
            Eigen::VectorXd v = center;
            for (int b = 0; b < n; ++b) {
                v += rng.uniform(-patch, patch) * basis[static_cast<std::size_t>(b)];
            }
            vertices.col(col) = v;
        }
        try {
            return make_simplex(std::move(vertices));
        } catch (const std::invalid_argument&) {
            continue;  // degenerate or out of the future cone; resample
        }
    }
    throw std::runtime_error(
        "random_simplex: no valid simplex after 1000 attempts");
}

SpacelikeSimplex random_simplex(int n, std::uint64_t seed) {
    Rng rng(seed);
    return random_simplex(n, rng);
}

}  // namespace lorgeo
