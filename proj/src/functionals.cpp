#include "lorgeo/functionals.hpp"

#include "lorgeo/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace lorgeo {

namespace {

void require_nonempty(const WeightedSamples& samples, const char* who) {
    if (samples.w.size() == 0) {
        throw std::invalid_argument(std::string(who) + ": empty sample set");
    }
    if (samples.w.size() != samples.f.size() ||
        samples.w.size() != samples.s.size()) {
        throw std::invalid_argument(std::string(who) +
                                    ": weight/value/gradient arrays disagree");
    }
}

// Indices sorted by ascending f, ties kept in input order.
std::vector<Eigen::Index> sorted_order(const Eigen::ArrayXd& f) {
    std::vector<Eigen::Index> order(static_cast<std::size_t>(f.size()));
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index a, Eigen::Index b) { return f[a] < f[b]; });
    return order;
}

// Lowest weighted median: the first value, in ascending order, whose
// cumulative weight reaches half the total mass.
double weighted_median(const Eigen::ArrayXd& w, const Eigen::ArrayXd& f) {
    const std::vector<Eigen::Index> order = sorted_order(f);
    const double half = 0.5 * pairwise_sum(w);
    double cum = 0.0;
    for (Eigen::Index idx : order) {
        cum += w[idx];
        if (cum >= half) return f[idx];
    }
    return f[order.back()];  // unreachable for positive weights
}

double np1_root(double x, int n) { return std::pow(x, 1.0 / (n + 1.0)); }

}  // namespace

double fraenkel_radius(const WeightedSamples& samples) {
    require_nonempty(samples, "fraenkel_radius");
    const double mu = samples.mu();
    const double v = cone_volume(samples);
    if (!(mu > 0.0) || !std::isfinite(mu)) {
        throw std::domain_error("fraenkel_radius: domain measure not positive");
    }
    if (!(v > 0.0)) {
        throw std::domain_error("fraenkel_radius: cone volume not positive");
    }
    return np1_root((samples.n + 1.0) * v / mu, samples.n);
}

double sym_diff_volume(const WeightedSamples& samples, double t) {
    require_nonempty(samples, "sym_diff_volume");
    if (!(t > 0.0)) {
        throw std::invalid_argument("sym_diff_volume: t must be positive");
    }
    const double tp = std::pow(t, samples.n + 1);
    const Eigen::ArrayXd dev =
        samples.w * (samples.f.pow(samples.n + 1) - tp).abs();
    return pairwise_sum(dev) / (samples.n + 1.0);
}

std::pair<double, double> one_sided_volumes(const WeightedSamples& samples,
                                            double t) {
    require_nonempty(samples, "one_sided_volumes");
    if (!(t > 0.0)) {
        throw std::invalid_argument("one_sided_volumes: t must be positive");
    }
    const double tp = std::pow(t, samples.n + 1);
    const Eigen::ArrayXd diff = samples.f.pow(samples.n + 1) - tp;
    const double above =
        pairwise_sum(Eigen::ArrayXd(samples.w * diff.max(0.0)));
    const double below =
        pairwise_sum(Eigen::ArrayXd(samples.w * (-diff).max(0.0)));
    return {above / (samples.n + 1.0), below / (samples.n + 1.0)};
}

double fraenkel_asymmetry(const WeightedSamples& samples) {
    return sym_diff_volume(samples, fraenkel_radius(samples)) /
           cone_volume(samples);
}

TildeAsymmetry tilde_asymmetry(const WeightedSamples& samples) {
    require_nonempty(samples, "tilde_asymmetry");
    // Minimizing over u = t^{n+1} is an L1 location problem with solution at
    // a weighted median of f^{n+1}; the monotone substitution u = t^{n+1}
    // lets us take the median of f itself, which is exact on atomic data.
    TildeAsymmetry out;
    out.t_tilde = weighted_median(samples.w, samples.f);
    out.value = sym_diff_volume(samples, out.t_tilde) / cone_volume(samples);
    return out;
}

DeficitReport deficits(const WeightedSamples& samples) {
    require_nonempty(samples, "deficits");
    DeficitReport rep;
    rep.n = samples.n;
    rep.V = cone_volume(samples);
    rep.A = area(samples);
    rep.d = dist_origin(samples);
    rep.sigma = samples.mu() / (samples.n + 1.0);
    if (!(rep.A > 0.0)) {
        throw std::domain_error(
            "deficits: degenerate hypersurface, area vanishes");
    }
    if (!(rep.V > 0.0) || !(rep.d > 0.0) || !(rep.sigma > 0.0)) {
        throw std::domain_error("deficits: V, d, sigma must be positive");
    }
    const double np1 = samples.n + 1.0;
    rep.t_F = fraenkel_radius(samples);
    rep.delta_BE = np1 * np1_root(rep.sigma, samples.n) *
                       std::pow(rep.V, samples.n / np1) / rep.A -
                   1.0;
    rep.delta_CM = np1 * rep.V / (rep.A * rep.d) - 1.0;
    rep.excess =
        (rep.V - std::pow(rep.d, samples.n + 1) * rep.sigma) / (np1 * rep.V);
    rep.delta_CM_star = rep.delta_CM - rep.excess;
    rep.A_F = sym_diff_volume(samples, rep.t_F) / rep.V;
    const TildeAsymmetry tilde = tilde_asymmetry(samples);
    rep.t_tilde = tilde.t_tilde;
    rep.A_F_tilde = tilde.value;
    return rep;
}

DeficitReport deficits(const RadialProfile& profile) {
    return deficits(samples_of(profile));
}

DeficitReport deficits(const GraphHypersurface& graph) {
    return deficits(samples_of(graph));
}

DeficitRelation deficit_relation_check(const DeficitReport& report) {
    const double np1 = report.n + 1.0;
    const double base = 1.0 - np1 * report.excess;
    if (!(base > 0.0)) {
        throw std::domain_error(
            "deficit_relation_check: excess reaches 1/(n+1), relation "
            "undefined");
    }
    DeficitRelation out;
    out.identity_residual =
        report.delta_CM -
        ((1.0 + report.delta_BE) * std::pow(base, -1.0 / np1) - 1.0);
    out.inequality_gap = report.delta_CM - report.excess -
                         (1.0 + report.excess) * report.delta_BE;
    return out;
}

DeficitRelation deficit_relation_check(const WeightedSamples& samples) {
    return deficit_relation_check(deficits(samples));
}

double excess_asymmetry_check(const DeficitReport& report) {
    return 2.0 * (report.n + 1.0) * report.excess - report.A_F;
}

double excess_asymmetry_check(const WeightedSamples& samples) {
    return excess_asymmetry_check(deficits(samples));
}

double be_subset_check(const WeightedSamples& samples,
                       std::span<const Eigen::Index> subset) {
    require_nonempty(samples, "be_subset_check");
    if (subset.empty()) {
        throw std::invalid_argument("be_subset_check: empty subset");
    }
    const WeightedSamples part = restrict_samples(samples, subset);
    return be_subset_check(part);
}

double be_subset_check(const WeightedSamples& samples) {
    require_nonempty(samples, "be_subset_check");
    const double np1 = samples.n + 1.0;
    const double sigma = samples.mu() / np1;
    const double v = cone_volume(samples);
    return np1 * np1_root(sigma, samples.n) * std::pow(v, samples.n / np1) -
           area(samples);
}

MedianSplit median_split(const WeightedSamples& samples) {
    require_nonempty(samples, "median_split");
    const double total = samples.mu();
    if (!(total > 0.0)) {
        throw std::invalid_argument("median_split: total mass must be positive");
    }
    const double half = 0.5 * total;
    const std::vector<Eigen::Index> order = sorted_order(samples.f);

    MedianSplit out;

    // Walk atoms in ascending f until the cumulative mass reaches half; the
    // boundary atom is split between the parts so both carry exactly mu/2.
    std::vector<double> w_lo, f_lo, s_lo, w_up, f_up, s_up;
    double cum = 0.0;
    std::size_t pos = 0;
    for (; pos < order.size(); ++pos) {
        const Eigen::Index idx = order[pos];
        if (cum + samples.w[idx] >= half) break;
        w_lo.push_back(samples.w[idx]);
        f_lo.push_back(samples.f[idx]);
        s_lo.push_back(samples.s[idx]);
        cum += samples.w[idx];
    }
    const Eigen::Index split = order[pos];
    out.t0 = samples.f[split];
    const double into_lower = half - cum;
    const double into_upper = samples.w[split] - into_lower;
    if (into_lower > 0.0) {
        w_lo.push_back(into_lower);
        f_lo.push_back(samples.f[split]);
        s_lo.push_back(samples.s[split]);
    }
    if (into_upper > 0.0) {
        w_up.push_back(into_upper);
        f_up.push_back(samples.f[split]);
        s_up.push_back(samples.s[split]);
    }
    for (std::size_t q = pos + 1; q < order.size(); ++q) {
        const Eigen::Index idx = order[q];
        w_up.push_back(samples.w[idx]);
        f_up.push_back(samples.f[idx]);
        s_up.push_back(samples.s[idx]);
    }

    auto as_samples = [&](const std::vector<double>& w,
                          const std::vector<double>& f,
                          const std::vector<double>& s) {
        WeightedSamples part;
        part.n = samples.n;
        part.w = Eigen::Map<const Eigen::ArrayXd>(w.data(),
                                                  static_cast<Eigen::Index>(w.size()));
        part.f = Eigen::Map<const Eigen::ArrayXd>(f.data(),
                                                  static_cast<Eigen::Index>(f.size()));
        part.s = Eigen::Map<const Eigen::ArrayXd>(s.data(),
                                                  static_cast<Eigen::Index>(s.size()));
        return part;
    };
    out.lower = as_samples(w_lo, f_lo, s_lo);
    out.upper = as_samples(w_up, f_up, s_up);

    const double np1 = samples.n + 1.0;
    const double sigma = total / np1;
    out.v_lower = cone_volume(out.lower);
    out.v_upper = cone_volume(out.upper);
    out.sym_diff = sym_diff_volume(samples, out.t0);

    const double a_total = area(samples);
    out.gap_subadditive =
        np1 * (np1_root(0.5 * sigma * std::pow(out.v_lower, samples.n),
                        samples.n) +
               np1_root(0.5 * sigma * std::pow(out.v_upper, samples.n),
                        samples.n)) -
        a_total;

    out.minkowski_terms = minkowski_gap(out.v_lower, out.v_upper, samples.n);
    out.gap_minkowski =
        np1 * np1_root(0.5 * sigma, samples.n) * out.minkowski_terms.slack();

    const double v_total = cone_volume(samples);
    const double delta_be = np1 * np1_root(sigma, samples.n) *
                                std::pow(v_total, samples.n / np1) / a_total -
                            1.0;
    out.gap_final = 4.0 * np1 * np1 / samples.n * delta_be * v_total * v_total -
                    out.sym_diff * out.sym_diff;
    return out;
}

StabilityGaps stability_check(const DeficitReport& report) {
    const double np1 = report.n + 1.0;
    const double quad_const = 16.0 * np1 * np1 / report.n;
    StabilityGaps out;
    out.quadratic_be = quad_const * report.delta_BE - report.A_F * report.A_F;
    out.linear_cm = 2.0 * np1 * report.delta_CM - report.A_F;
    out.quadratic_cm_star =
        quad_const * report.delta_CM_star - report.A_F * report.A_F;
    out.improved_cm_star =
        report.delta_CM_star -
        0.25 * L_function(1.0, report.n) * report.A_F * report.A_F;
    return out;
}

StabilityGaps stability_check(const WeightedSamples& samples) {
    return stability_check(deficits(samples));
}

ExhaustionTable exhaustion_convergence_check(const RadialProfile& profile,
                                             int k_steps) {
    ExhaustionTable table;
    const DeficitReport full = deficits(profile);
    table.full = ExhaustionRow{k_steps, profile.t_star, full.V,
                               full.A,  full.delta_BE,  full.A_F, full.t_F};
    const std::vector<RadialProfile> steps =
        exhaustion_sequence(profile, k_steps);
    table.rows.reserve(steps.size());
    int k = 1;
    for (const RadialProfile& step : steps) {
        const DeficitReport rep = deficits(step);
        table.rows.push_back(ExhaustionRow{k, step.t_star, rep.V, rep.A,
                                           rep.delta_BE, rep.A_F, rep.t_F});
        ++k;
    }
    const ExhaustionRow& last = table.rows.back();
    table.delta_be_deviation = std::abs(last.delta_BE - table.full.delta_BE);
    table.asymmetry_deviation = std::abs(last.A_F - table.full.A_F);
    return table;
}

}  // namespace lorgeo
