// Command-line front end for the lorgeo library.
//
// Subcommands:
//
//   verify     inequality suite over hypersurface instances (random radial
//              families or an explicit atomic measure)
//   sharpness  perturbation ladder, fitted scaling exponents, expansion data
//   scalar     scalar lemma sweeps and the appendix constants
//   simplex    spacelike simplex identities, containment, induction step
//   report     merge previously written result files into one aggregate
//
// Every command accepts --config PATH (a JSON document), --seed N, --out DIR,
// --jobs N, --tol-atomic X, --tol-quad X. Flags override config values; the
// per-command config schemas are spelled out next to the cmd_* functions
// below. Unknown config keys are hard errors: a silently ignored key could
// turn a verification run into a no-op.
//
// Exit codes: 0 every check passed, 1 at least one mathematical check failed,
// 2 configuration or I/O problem.
//
// Determinism: a given config + seed produces byte-identical JSON/CSV output
// regardless of --jobs. Work is fanned out by instance index, instance k
// seeds its generator with derive_seed(seed, k), and results are reduced in
// index order, so the thread count never touches the numbers.

#include "lorgeo/functionals.hpp"
#include "lorgeo/rng.hpp"
#include "lorgeo/scalar_bounds.hpp"
#include "lorgeo/sharpness.hpp"
#include "lorgeo/simplex.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Configuration or I/O problem: maps to exit code 2. Mathematical check
// failures are never exceptions; they flow through the suite result and
// produce exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require_cfg(bool cond, const std::string& msg) {
    if (!cond) {
        throw ConfigError(msg);
    }
}

// ---------------------------------------------------------------------------
// JSON config plumbing

json load_json_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open " + path.string());
    }
    try {
        return json::parse(in);
    } catch (const std::exception& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    require_cfg(obj.is_object(), where + ": expected a JSON object");
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        const bool known =
            std::any_of(allowed.begin(), allowed.end(),
                        [&](const char* k) { return it.key() == k; });
        require_cfg(known, where + ": unknown key \"" + it.key() + "\"");
    }
}

const json* find(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double get_num(const json& obj, const char* key, double fallback,
               const std::string& where) {
    const json* v = find(obj, key);
    if (v == nullptr) {
        return fallback;
    }
    require_cfg(v->is_number(), where + ": \"" + key + "\" must be a number");
    return v->get<double>();
}

int get_int(const json& obj, const char* key, int fallback,
            const std::string& where) {
    const json* v = find(obj, key);
    if (v == nullptr) {
        return fallback;
    }
    require_cfg(v->is_number_integer(),
                where + ": \"" + key + "\" must be an integer");
    return v->get<int>();
}

std::uint64_t get_u64(const json& obj, const char* key, std::uint64_t fallback,
                      const std::string& where) {
    const json* v = find(obj, key);
    if (v == nullptr) {
        return fallback;
    }
    require_cfg(v->is_number_unsigned() || v->is_number_integer(),
                where + ": \"" + key + "\" must be a nonnegative integer");
    if (v->is_number_integer() && !v->is_number_unsigned()) {
        require_cfg(v->get<std::int64_t>() >= 0,
                    where + ": \"" + key + "\" must be a nonnegative integer");
    }
    return v->get<std::uint64_t>();
}

std::string get_string(const json& obj, const char* key,
                       const std::string& fallback, const std::string& where) {
    const json* v = find(obj, key);
    if (v == nullptr) {
        return fallback;
    }
    require_cfg(v->is_string(), where + ": \"" + key + "\" must be a string");
    return v->get<std::string>();
}

std::vector<double> get_num_array(const json& obj, const char* key,
                                  std::vector<double> fallback,
                                  const std::string& where) {
    const json* v = find(obj, key);
    if (v == nullptr) {
        return fallback;
    }
    require_cfg(v->is_array(), where + ": \"" + key + "\" must be an array");
    std::vector<double> out;
    out.reserve(v->size());
    for (const json& e : *v) {
        require_cfg(e.is_number(),
                    where + ": \"" + key + "\" must hold numbers only");
        out.push_back(e.get<double>());
    }
    return out;
}

std::vector<int> get_int_array(const json& obj, const char* key,
                               std::vector<int> fallback,
                               const std::string& where) {
    const json* v = find(obj, key);
    if (v == nullptr) {
        return fallback;
    }
    require_cfg(v->is_array(), where + ": \"" + key + "\" must be an array");
    std::vector<int> out;
    out.reserve(v->size());
    for (const json& e : *v) {
        require_cfg(e.is_number_integer(),
                    where + ": \"" + key + "\" must hold integers only");
        out.push_back(e.get<int>());
    }
    return out;
}

// Two-element [lo, hi] range with lo < hi.
std::pair<double, double> get_range(const json& obj, const char* key,
                                    std::pair<double, double> fallback,
                                    const std::string& where) {
    const json* v = find(obj, key);
    if (v == nullptr) {
        return fallback;
    }
    std::vector<double> r = get_num_array(obj, key, {}, where);
    require_cfg(r.size() == 2 && r[0] < r[1],
                where + ": \"" + key + "\" must be [lo, hi] with lo < hi");
    return {r[0], r[1]};
}

// ---------------------------------------------------------------------------
// Output plumbing

// Full-precision decimal rendering; 17 significant digits round-trip any
// double, so downstream consumers can reproduce the binary values.
std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

class CsvWriter {
  public:
    CsvWriter(const fs::path& path, const std::string& header) {
        out_.open(path);
        if (!out_) {
            throw ConfigError("cannot write " + path.string());
        }
        out_ << header << '\n';
    }

    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out_ << ',';
            }
            out_ << cells[i];
        }
        out_ << '\n';
    }

  private:
    std::ofstream out_;
};

enum class Kind { gap, residual };

struct CheckRecord {
    std::string check;
    std::string claim;
    Kind kind = Kind::gap;
    double value = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    long long worst_instance = -1;
};

struct Suite {
    std::string name;
    std::uint64_t seed = 0;
    json config;   // effective math configuration (output paths excluded)
    json summary;  // optional per-suite payload
    std::vector<CheckRecord> checks;

    // One-sided check: value >= -tol, or strictly positive when strict.
    void add_gap(std::string check, std::string claim, double value,
                 double tol, long long worst = -1, bool strict = false) {
        CheckRecord rec{std::move(check), std::move(claim), Kind::gap,
                        value,            tol,              false,
                        worst};
        rec.pass = std::isnan(value) ? false
                   : strict          ? (value > 0.0)
                                     : (value >= -tol);
        checks.push_back(std::move(rec));
    }

    // Two-sided check: |value| <= tol.
    void add_residual(std::string check, std::string claim, double value,
                      double tol, long long worst = -1) {
        CheckRecord rec{std::move(check), std::move(claim), Kind::residual,
                        value,            tol,              false,
                        worst};
        rec.pass = std::abs(value) <= tol;  // false for NaN
        checks.push_back(std::move(rec));
    }

    int failures() const {
        return static_cast<int>(std::count_if(
            checks.begin(), checks.end(),
            [](const CheckRecord& r) { return !r.pass; }));
    }

    bool pass() const { return failures() == 0; }

    json to_json() const {
        json out;
        out["schema"] = 1;
        out["suite"] = name;
        out["seed"] = seed;
        out["config"] = config;
        json arr = json::array();
        for (const CheckRecord& r : checks) {
            json rec;
            rec["check"] = r.check;
            rec["claim"] = r.claim;
            rec[r.kind == Kind::gap ? "gap" : "residual"] = r.value;
            rec["tolerance"] = r.tolerance;
            rec["pass"] = r.pass;
            if (r.worst_instance >= 0) {
                rec["worst_instance"] = r.worst_instance;
            }
            arr.push_back(std::move(rec));
        }
        out["checks"] = std::move(arr);
        json counts;
        counts["total"] = checks.size();
        counts["passed"] = checks.size() - failures();
        counts["failed"] = failures();
        out["counts"] = std::move(counts);
        if (!summary.is_null()) {
            out["summary"] = summary;
        }
        out["pass"] = pass();
        return out;
    }
};

void print_suite(const Suite& suite) {
    for (const CheckRecord& r : suite.checks) {
        std::printf("[%s] %-34s %s=%-13.6g tol=%-8.3g %s\n",
                    r.pass ? "PASS" : "FAIL", r.check.c_str(),
                    r.kind == Kind::gap ? "gap" : "residual", r.value,
                    r.tolerance, r.claim.c_str());
    }
    std::printf("%s: %zu/%zu checks passed\n", suite.name.c_str(),
                suite.checks.size() - suite.failures(), suite.checks.size());
}

fs::path write_suite(const Suite& suite, const fs::path& out_dir) {
    const fs::path path = out_dir / (suite.name + "_result.json");
    std::ofstream out(path);
    if (!out) {
        throw ConfigError("cannot write " + path.string());
    }
    out << suite.to_json().dump(2) << '\n';
    return path;
}

// ---------------------------------------------------------------------------
// Deterministic fan-out: out[i] depends only on i, so the schedule is free to
// steal work while the reduction stays order-independent.

template <typename T, typename F>
std::vector<T> map_indexed(std::size_t count, int jobs, F&& fn) {
    std::vector<T> out(count);
    int workers =
        jobs > 0 ? jobs : static_cast<int>(std::thread::hardware_concurrency());
    workers = std::max(1, workers);
    workers = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(workers), count));
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            out[i] = fn(i);
        }
        return out;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(
        static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next.fetch_add(1); i < count;
                     i = next.fetch_add(1)) {
                    out[i] = fn(i);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (std::thread& t : pool) {
        t.join();
    }
    for (const std::exception_ptr& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

// Index-ordered reductions. NaN poisons the aggregate so a failed instance
// can never hide behind a healthy minimum.
struct MinAgg {
    double value = kInf;
    long long arg = -1;

    void fold(double x, long long idx) {
        if (std::isnan(x)) {
            if (!std::isnan(value)) {
                value = x;
                arg = idx;
            }
            return;
        }
        if (x < value) {
            value = x;
            arg = idx;
        }
    }
};

struct MaxAgg {
    double value = -kInf;
    long long arg = -1;

    void fold(double x, long long idx) {
        if (std::isnan(x)) {
            if (!std::isnan(value)) {
                value = x;
                arg = idx;
            }
            return;
        }
        if (x > value) {
            value = x;
            arg = idx;
        }
    }
};

// ---------------------------------------------------------------------------
// Common options

struct CommonOpts {
    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 42;
    int jobs = 0;
    double tol_atomic = lorgeo::kTolAtomic;
    double tol_quad = lorgeo::kTolQuadrature;
    bool seed_set = false;
    bool out_set = false;
    bool tol_atomic_set = false;
    bool tol_quad_set = false;
};

struct Resolved {
    json cfg = json::object();
    std::uint64_t seed = 42;
    fs::path out_dir = ".";
    int jobs = 0;
    double tol_atomic = lorgeo::kTolAtomic;
    double tol_quad = lorgeo::kTolQuadrature;
};

Resolved resolve_common(const CommonOpts& opt, const std::string& command) {
    Resolved rc;
    if (!opt.config_path.empty()) {
        rc.cfg = load_json_file(opt.config_path);
        require_cfg(rc.cfg.is_object(), opt.config_path + ": expected an object");
    }
    const std::string where = command + " config";
    const std::string declared = get_string(rc.cfg, "command", command, where);
    require_cfg(declared == command, where + ": document declares command \"" +
                                         declared + "\" but \"" + command +
                                         "\" was invoked");
    rc.seed = get_u64(rc.cfg, "seed", 42, where);
    if (opt.seed_set) {
        rc.seed = opt.seed;
    }
    std::string out = get_string(rc.cfg, "out", ".", where);
    if (opt.out_set) {
        out = opt.out_dir;
    }
    rc.out_dir = out;
    rc.jobs = opt.jobs;
    rc.tol_atomic = get_num(rc.cfg, "tol_atomic", lorgeo::kTolAtomic, where);
    if (opt.tol_atomic_set) {
        rc.tol_atomic = opt.tol_atomic;
    }
    rc.tol_quad = get_num(rc.cfg, "tol_quad", lorgeo::kTolQuadrature, where);
    if (opt.tol_quad_set) {
        rc.tol_quad = opt.tol_quad;
    }
    require_cfg(rc.tol_atomic > 0.0 && rc.tol_quad > 0.0,
                where + ": tolerances must be positive");
    fs::create_directories(rc.out_dir);
    return rc;
}

// ---------------------------------------------------------------------------
// verify
//
// Config keys: command, seed, out, tol_atomic, tol_quad, tol_identity,
// tol_exhaustion, instances, dimensions, quadrature_nodes, exhaustion_steps,
// partition_trials, and exactly one of
//
//   "profile": {"family": "constant",        "level": c, "t_star": T}
//              {"family": "linear",          "base": a, "slope": b, "t_star": T}
//              {"family": "random-log-trig", "t_star_range": [lo,hi],
//               "scale_range": [lo,hi], "max_modes": K,
//               "frequency_range": [lo,hi], "slope_budget": s}
//   "atomic":  {"dimension": n, "weights": [...], "values": [...],
//               "grad_norms": [...]}
//
// The default (no config) is the random family over n in {1,2,3} with 1000
// instances per dimension. The random family draws
//   r(t) = c * exp(sum_k (lambda_k/omega_k) sin(omega_k t + psi_k))
// with sum_k lambda_k <= slope_budget < 1, so |d/dt ln r| stays strictly
// below 1 and every instance is admissible by construction.

struct ProfileSpec {
    enum class Family { constant, linear, random_log_trig };
    Family family = Family::random_log_trig;
    double level = 1.0;
    double base = 1.0;
    double slope = 0.0;
    double t_star = 1.0;
    std::pair<double, double> t_star_range{0.5, 2.0};
    std::pair<double, double> scale_range{0.5, 2.0};
    int max_modes = 3;
    std::pair<double, double> frequency_range{1.0, 6.0};
    double slope_budget = 0.95;
};

ProfileSpec parse_profile(const json& p) {
    const std::string where = "verify config: profile";
    require_cfg(p.is_object(), where + " must be an object");
    const std::string family = get_string(p, "family", "", where);
    ProfileSpec spec;
    if (family == "constant") {
        check_keys(p, where, {"family", "level", "t_star"});
        spec.family = ProfileSpec::Family::constant;
        spec.level = get_num(p, "level", 1.0, where);
        spec.t_star = get_num(p, "t_star", 1.0, where);
        require_cfg(spec.level > 0.0 && spec.t_star > 0.0,
                    where + ": level and t_star must be positive");
    } else if (family == "linear") {
        check_keys(p, where, {"family", "base", "slope", "t_star"});
        spec.family = ProfileSpec::Family::linear;
        spec.base = get_num(p, "base", 1.0, where);
        spec.slope = get_num(p, "slope", 0.0, where);
        spec.t_star = get_num(p, "t_star", 1.0, where);
        require_cfg(spec.base > 0.0 && spec.t_star > 0.0,
                    where + ": base and t_star must be positive");
    } else if (family == "random-log-trig") {
        check_keys(p, where,
                   {"family", "t_star_range", "scale_range", "max_modes",
                    "frequency_range", "slope_budget"});
        spec.family = ProfileSpec::Family::random_log_trig;
        spec.t_star_range = get_range(p, "t_star_range", {0.5, 2.0}, where);
        spec.scale_range = get_range(p, "scale_range", {0.5, 2.0}, where);
        spec.max_modes = get_int(p, "max_modes", 3, where);
        spec.frequency_range = get_range(p, "frequency_range", {1.0, 6.0}, where);
        spec.slope_budget = get_num(p, "slope_budget", 0.95, where);
        require_cfg(spec.t_star_range.first > 0.0 &&
                        spec.scale_range.first > 0.0 &&
                        spec.frequency_range.first > 0.0,
                    where + ": ranges must be positive");
        require_cfg(spec.max_modes >= 1 && spec.max_modes <= 8,
                    where + ": max_modes must be in 1..8");
        require_cfg(spec.slope_budget > 0.0 && spec.slope_budget < 1.0,
                    where + ": slope_budget must lie in (0, 1)");
    } else {
        throw ConfigError(where + ": unknown family \"" + family + "\"");
    }
    return spec;
}

json profile_echo(const ProfileSpec& s) {
    json out;
    switch (s.family) {
        case ProfileSpec::Family::constant:
            out["family"] = "constant";
            out["level"] = s.level;
            out["t_star"] = s.t_star;
            break;
        case ProfileSpec::Family::linear:
            out["family"] = "linear";
            out["base"] = s.base;
            out["slope"] = s.slope;
            out["t_star"] = s.t_star;
            break;
        case ProfileSpec::Family::random_log_trig:
            out["family"] = "random-log-trig";
            out["t_star_range"] = {s.t_star_range.first, s.t_star_range.second};
            out["scale_range"] = {s.scale_range.first, s.scale_range.second};
            out["max_modes"] = s.max_modes;
            out["frequency_range"] = {s.frequency_range.first,
                                      s.frequency_range.second};
            out["slope_budget"] = s.slope_budget;
            break;
    }
    return out;
}

lorgeo::RadialProfile make_instance(const ProfileSpec& spec, int n, int nodes,
                                    lorgeo::Rng& rng) {
    using Family = ProfileSpec::Family;
    if (spec.family == Family::constant) {
        return lorgeo::make_radial_profile(
            n, spec.t_star, [c = spec.level](double) { return c; },
            [](double) { return 0.0; }, nodes);
    }
    if (spec.family == Family::linear) {
        return lorgeo::make_radial_profile(
            n, spec.t_star,
            [a = spec.base, b = spec.slope](double t) { return a + b * t; },
            [b = spec.slope](double) { return b; }, nodes);
    }
    const double t_star =
        rng.uniform(spec.t_star_range.first, spec.t_star_range.second);
    const double scale =
        rng.uniform(spec.scale_range.first, spec.scale_range.second);
    const int modes = rng.uniform_int(1, spec.max_modes);
    std::vector<double> lam(static_cast<std::size_t>(modes));
    std::vector<double> omega(lam.size());
    std::vector<double> psi(lam.size());
    double raw_sum = 0.0;
    for (double& l : lam) {
        l = rng.uniform(0.2, 1.0);
        raw_sum += l;
    }
    // Total log-slope budget drawn below the cap, then split across modes.
    const double total = spec.slope_budget * rng.uniform(0.3, 1.0);
    for (double& l : lam) {
        l *= total / raw_sum;
    }
    for (std::size_t k = 0; k < lam.size(); ++k) {
        omega[k] =
            rng.uniform(spec.frequency_range.first, spec.frequency_range.second);
        psi[k] = rng.uniform(0.0, 2.0 * std::numbers::pi);
    }
    auto log_part = [lam, omega, psi](double t) {
        double s = 0.0;
        for (std::size_t k = 0; k < lam.size(); ++k) {
            s += lam[k] / omega[k] * std::sin(omega[k] * t + psi[k]);
        }
        return s;
    };
    auto log_slope = [lam, omega, psi](double t) {
        double s = 0.0;
        for (std::size_t k = 0; k < lam.size(); ++k) {
            s += lam[k] * std::cos(omega[k] * t + psi[k]);
        }
        return s;
    };
    return lorgeo::make_radial_profile(
        n, t_star,
        [scale, log_part](double t) { return scale * std::exp(log_part(t)); },
        [scale, log_part, log_slope](double t) {
            return scale * std::exp(log_part(t)) * log_slope(t);
        },
        nodes);
}

struct VerifyRow {
    int n = 0;
    bool admissible = false;
    double adm_gap = NAN;
    lorgeo::DeficitReport rep{};
    double identity_rel = NAN;
    double bernoulli = NAN;
    double excess_asym = NAN;
    double subset_full = NAN;
    double subset_random = NAN;
    double med_additivity = NAN;
    double med_sub = NAN;
    double med_mink = NAN;
    double med_final = NAN;
    lorgeo::StabilityGaps stab{NAN, NAN, NAN, NAN};
    double sand_lo = NAN;
    double sand_hi = NAN;
    double tilde_cap = NAN;
    double excess_cap = NAN;
    double exh_dev = NAN;
    double exh_mono = NAN;

    double min_gap() const {
        double m = kInf;
        for (double g :
             {adm_gap, bernoulli, excess_asym, subset_full, subset_random,
              med_sub, med_mink, med_final, stab.quadratic_be, stab.linear_cm,
              stab.quadratic_cm_star, stab.improved_cm_star, sand_lo, sand_hi,
              tilde_cap, rep.delta_BE, rep.delta_CM, rep.delta_CM_star,
              rep.excess, excess_cap}) {
            if (std::isnan(g)) {
                return g;
            }
            m = std::min(m, g);
        }
        return m;
    }
};

// All checks that live on the shared sample view. The caller fills in the
// admissibility and exhaustion fields, which depend on the representation.
void eval_samples(const lorgeo::WeightedSamples& samples, lorgeo::Rng& rng,
                  int partition_trials, VerifyRow& row) {
    row.rep = lorgeo::deficits(samples);
    const lorgeo::DeficitRelation rel = lorgeo::deficit_relation_check(row.rep);
    row.identity_rel = std::abs(rel.identity_residual) /
                       std::max(1.0, std::abs(row.rep.delta_CM));
    row.bernoulli = rel.inequality_gap;
    row.excess_asym = lorgeo::excess_asymmetry_check(row.rep);
    row.subset_full = lorgeo::be_subset_check(samples);

    const Eigen::Index count = samples.w.size();
    double subset_min = kInf;
    for (int trial = 0; trial < partition_trials; ++trial) {
        std::vector<Eigen::Index> subset;
        std::vector<Eigen::Index> rest;
        for (Eigen::Index i = 0; i < count; ++i) {
            (rng.uniform01() < 0.5 ? subset : rest).push_back(i);
        }
        if (subset.empty()) {
            subset.push_back(rest.back());
            rest.pop_back();
        }
        if (rest.empty()) {
            rest.push_back(subset.back());
            subset.pop_back();
        }
        subset_min =
            std::min(subset_min, lorgeo::be_subset_check(samples, subset));
        subset_min =
            std::min(subset_min, lorgeo::be_subset_check(samples, rest));
    }
    row.subset_random = subset_min;

    const lorgeo::MedianSplit split = lorgeo::median_split(samples);
    row.med_additivity = std::abs(split.v_lower + split.v_upper - row.rep.V) /
                         std::max(1.0, row.rep.V);
    row.med_sub = split.gap_subadditive;
    row.med_mink = split.gap_minkowski;
    row.med_final = split.gap_final;

    row.stab = lorgeo::stability_check(row.rep);
    row.sand_lo = row.rep.A_F - row.rep.A_F_tilde;
    row.sand_hi = 2.0 * row.rep.A_F_tilde - row.rep.A_F;
    row.tilde_cap = 1.0 - row.rep.A_F_tilde;
    row.excess_cap = 1.0 / (row.rep.n + 1.0) - row.rep.excess;
}

VerifyRow eval_profile_instance(const ProfileSpec& spec, int n, int nodes,
                                int exhaustion_steps, int partition_trials,
                                std::uint64_t instance_seed) {
    lorgeo::Rng rng(instance_seed);
    const lorgeo::RadialProfile profile = make_instance(spec, n, nodes, rng);
    VerifyRow row;
    row.n = n;
    const lorgeo::AdmissibilityReport adm = lorgeo::check_achronal(profile);
    row.admissible = adm.admissible();
    if (!row.admissible) {
        double worst = 0.0;
        for (const lorgeo::AdmissibilityViolation& v : adm.violations) {
            worst = std::max(worst, v.excess);
        }
        row.adm_gap = -worst;
        return row;  // downstream functionals are undefined; leave them NaN
    }
    row.adm_gap = 0.0;
    eval_samples(lorgeo::samples_of(profile), rng, partition_trials, row);

    const lorgeo::ExhaustionTable table =
        lorgeo::exhaustion_convergence_check(profile, exhaustion_steps);
    row.exh_dev =
        std::max(table.delta_be_deviation, table.asymmetry_deviation);
    double mono = kInf;
    for (std::size_t k = 1; k < table.rows.size(); ++k) {
        mono = std::min(mono, (table.rows[k].V - table.rows[k - 1].V) /
                                  std::max(1.0, table.full.V));
    }
    row.exh_mono = table.rows.size() > 1 ? mono : 0.0;
    return row;
}

void append_sample_checks(Suite& suite, const std::vector<VerifyRow>& rows,
                          double tol_gap, double tol_identity) {
    auto fold_min = [&rows](auto proj) {
        MinAgg agg;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            agg.fold(proj(rows[i]), static_cast<long long>(i));
        }
        return agg;
    };
    auto fold_max = [&rows](auto proj) {
        MaxAgg agg;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            agg.fold(proj(rows[i]), static_cast<long long>(i));
        }
        return agg;
    };
    const long long multi = rows.size() > 1 ? 0 : -1;
    auto arg = [multi](long long a) { return multi < 0 ? -1 : a; };

    MinAgg adm = fold_min([](const VerifyRow& r) { return r.adm_gap; });
    suite.add_gap("admissible", "every |grad ln f| <= 1 at the sample nodes",
                  adm.value, 0.0, arg(adm.arg));

    MaxAgg ident =
        fold_max([](const VerifyRow& r) { return r.identity_rel; });
    suite.add_residual("identity_relation",
                       "delta_CM = (1+delta_BE)(1-(n+1)E)^(-1/(n+1)) - 1",
                       ident.value, tol_identity, arg(ident.arg));

    struct GapSpec {
        const char* check;
        const char* claim;
        double VerifyRow::* field;
    };
    const GapSpec direct[] = {
        {"bernoulli_lower_bound", "delta_CM - E >= (1+E) delta_BE",
         &VerifyRow::bernoulli},
        {"excess_dominates_asymmetry", "A_F <= 2(n+1) E",
         &VerifyRow::excess_asym},
        {"subset_isoperimetric_full",
         "(n+1) sigma^(1/(n+1)) V^(n/(n+1)) >= A on the full node set",
         &VerifyRow::subset_full},
        {"subset_isoperimetric_random",
         "(n+1) sigma^(1/(n+1)) V^(n/(n+1)) >= A on random node subsets",
         &VerifyRow::subset_random},
        {"median_subadditive_step",
         "two-cap isoperimetric sum stays below the area at the median split",
         &VerifyRow::med_sub},
        {"median_minkowski_step",
         "quantitative two-term Minkowski bound at the split volumes",
         &VerifyRow::med_mink},
        {"median_quadratic_bound",
         "4(n+1)^2/n delta_BE V^2 >= sym_diff^2 at the median split",
         &VerifyRow::med_final},
        {"sandwich_tilde_below_af", "A_F_tilde <= A_F", &VerifyRow::sand_lo},
        {"af_within_twice_tilde", "A_F <= 2 A_F_tilde", &VerifyRow::sand_hi},
        {"tilde_at_most_one", "A_F_tilde <= 1", &VerifyRow::tilde_cap},
        {"excess_below_cap", "E < 1/(n+1)", &VerifyRow::excess_cap},
    };
    for (const GapSpec& g : direct) {
        MinAgg m = fold_min([&g](const VerifyRow& r) { return r.*(g.field); });
        suite.add_gap(g.check, g.claim, m.value, tol_gap, arg(m.arg));
    }

    MaxAgg add =
        fold_max([](const VerifyRow& r) { return r.med_additivity; });
    suite.add_residual("median_volume_additivity",
                       "the median-split halves carry the whole cone volume",
                       add.value, 1e-12, arg(add.arg));

    const GapSpec stab[] = {
        {"stability_quadratic_be", "A_F^2 <= 16(n+1)^2/n delta_BE", nullptr},
        {"stability_linear_cm", "A_F <= 2(n+1) delta_CM", nullptr},
        {"stability_quadratic_cm_star", "A_F^2 <= 16(n+1)^2/n delta_CM_star",
         nullptr},
        {"stability_improved_cm_star", "delta_CM_star >= L(1)/4 A_F^2",
         nullptr},
    };
    const double lorgeo::StabilityGaps::* stab_fields[] = {
        &lorgeo::StabilityGaps::quadratic_be,
        &lorgeo::StabilityGaps::linear_cm,
        &lorgeo::StabilityGaps::quadratic_cm_star,
        &lorgeo::StabilityGaps::improved_cm_star,
    };
    for (int k = 0; k < 4; ++k) {
        auto field = stab_fields[k];
        MinAgg m =
            fold_min([field](const VerifyRow& r) { return r.stab.*field; });
        suite.add_gap(stab[k].check, stab[k].claim, m.value, tol_gap,
                      arg(m.arg));
    }

    const GapSpec deficits[] = {
        {"delta_be_nonnegative", "delta_BE >= 0", nullptr},
        {"delta_cm_nonnegative", "delta_CM >= 0", nullptr},
        {"delta_cm_star_nonnegative", "delta_CM_star >= 0", nullptr},
        {"excess_nonnegative", "E >= 0", nullptr},
    };
    const double lorgeo::DeficitReport::* deficit_fields[] = {
        &lorgeo::DeficitReport::delta_BE,
        &lorgeo::DeficitReport::delta_CM,
        &lorgeo::DeficitReport::delta_CM_star,
        &lorgeo::DeficitReport::excess,
    };
    for (int k = 0; k < 4; ++k) {
        auto field = deficit_fields[k];
        MinAgg m =
            fold_min([field](const VerifyRow& r) { return r.rep.*field; });
        suite.add_gap(deficits[k].check, deficits[k].claim, m.value, tol_gap,
                      arg(m.arg));
    }
}

void write_verify_csv(const fs::path& path,
                      const std::vector<VerifyRow>& rows) {
    CsvWriter csv(path,
                  "instance,n,V,A,dist,sigma,t_F,t_tilde,delta_BE,delta_CM,"
                  "delta_CM_star,E,A_F,A_F_tilde,identity_rel,min_gap");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const VerifyRow& r = rows[i];
        csv.row({std::to_string(i), std::to_string(r.n), fmt17(r.rep.V),
                 fmt17(r.rep.A), fmt17(r.rep.d), fmt17(r.rep.sigma),
                 fmt17(r.rep.t_F), fmt17(r.rep.t_tilde), fmt17(r.rep.delta_BE),
                 fmt17(r.rep.delta_CM), fmt17(r.rep.delta_CM_star),
                 fmt17(r.rep.excess), fmt17(r.rep.A_F),
                 fmt17(r.rep.A_F_tilde), fmt17(r.identity_rel),
                 fmt17(r.min_gap())});
    }
}

int cmd_verify(const Resolved& rc) {
    const std::string where = "verify config";
    check_keys(rc.cfg, where,
               {"command", "seed", "out", "tol_atomic", "tol_quad",
                "tol_identity", "tol_exhaustion", "instances", "dimensions",
                "quadrature_nodes", "exhaustion_steps", "partition_trials",
                "profile", "atomic"});
    const double tol_identity = get_num(rc.cfg, "tol_identity", 1e-10, where);
    const double tol_exhaustion =
        get_num(rc.cfg, "tol_exhaustion", 1e-3, where);
    const json* atomic = find(rc.cfg, "atomic");
    const json* profile = find(rc.cfg, "profile");
    require_cfg(atomic == nullptr || profile == nullptr,
                where + ": \"profile\" and \"atomic\" are mutually exclusive");

    Suite suite;
    suite.name = "verify";
    suite.seed = rc.seed;

    std::vector<VerifyRow> rows;
    json echo;
    echo["command"] = "verify";
    echo["seed"] = rc.seed;
    echo["tol_atomic"] = rc.tol_atomic;
    echo["tol_quad"] = rc.tol_quad;
    echo["tol_identity"] = tol_identity;

    if (atomic != nullptr) {
        for (const char* key :
             {"instances", "quadrature_nodes", "exhaustion_steps"}) {
            require_cfg(find(rc.cfg, key) == nullptr,
                        where + ": \"" + key +
                            "\" does not apply to an atomic measure");
        }
        const std::string aw = where + ": atomic";
        check_keys(*atomic, aw,
                   {"dimension", "weights", "values", "grad_norms"});
        const int n = get_int(*atomic, "dimension", 2, aw);
        require_cfg(n >= 1 && n <= 6, aw + ": dimension must be in 1..6");
        std::vector<double> w = get_num_array(*atomic, "weights", {}, aw);
        std::vector<double> f = get_num_array(*atomic, "values", {}, aw);
        std::vector<double> g = get_num_array(*atomic, "grad_norms",
                                              std::vector<double>(w.size(), 0.0),
                                              aw);
        require_cfg(!w.empty() && w.size() == f.size() && w.size() == g.size(),
                    aw + ": weights, values, grad_norms must be nonempty "
                         "arrays of equal length");
        Eigen::ArrayXd we = Eigen::Map<const Eigen::ArrayXd>(
            w.data(), static_cast<Eigen::Index>(w.size()));
        Eigen::ArrayXd fe = Eigen::Map<const Eigen::ArrayXd>(
            f.data(), static_cast<Eigen::Index>(f.size()));
        Eigen::ArrayXd ge = Eigen::Map<const Eigen::ArrayXd>(
            g.data(), static_cast<Eigen::Index>(g.size()));
        const lorgeo::GraphHypersurface graph =
            lorgeo::atomic_graph(we, fe, n, ge);

        const int partition_trials =
            get_int(rc.cfg, "partition_trials", 3, where);
        require_cfg(partition_trials >= 1,
                    where + ": partition_trials must be >= 1");
        echo["partition_trials"] = partition_trials;
        echo["atomic"] = *atomic;

        VerifyRow row;
        row.n = n;
        const lorgeo::AdmissibilityReport adm = lorgeo::check_achronal(graph);
        row.admissible = adm.admissible();
        if (row.admissible) {
            row.adm_gap = 0.0;
            lorgeo::Rng rng(lorgeo::derive_seed(rc.seed, 0));
            eval_samples(lorgeo::samples_of(graph), rng, partition_trials, row);
        } else {
            double worst = 0.0;
            for (const lorgeo::AdmissibilityViolation& v : adm.violations) {
                worst = std::max(worst, v.excess);
            }
            row.adm_gap = -worst;
        }
        rows.push_back(row);
        suite.config = echo;
        append_sample_checks(suite, rows, rc.tol_atomic, tol_identity);
    } else {
        const ProfileSpec spec =
            profile != nullptr ? parse_profile(*profile) : ProfileSpec{};
        const int instances = get_int(rc.cfg, "instances", 1000, where);
        std::vector<int> dims =
            get_int_array(rc.cfg, "dimensions", {1, 2, 3}, where);
        const int nodes = get_int(rc.cfg, "quadrature_nodes", 512, where);
        const int exhaustion_steps =
            get_int(rc.cfg, "exhaustion_steps", 4, where);
        const int partition_trials =
            get_int(rc.cfg, "partition_trials", 3, where);
        require_cfg(instances >= 1, where + ": instances must be >= 1");
        require_cfg(!dims.empty(), where + ": dimensions must be nonempty");
        for (int n : dims) {
            require_cfg(n >= 1 && n <= 6,
                        where + ": dimensions must lie in 1..6");
        }
        require_cfg(nodes >= lorgeo::kPanelOrder,
                    where + ": quadrature_nodes too small");
        require_cfg(exhaustion_steps >= 1,
                    where + ": exhaustion_steps must be >= 1");
        require_cfg(partition_trials >= 1,
                    where + ": partition_trials must be >= 1");

        echo["instances"] = instances;
        echo["dimensions"] = dims;
        echo["quadrature_nodes"] = nodes;
        echo["exhaustion_steps"] = exhaustion_steps;
        echo["partition_trials"] = partition_trials;
        echo["tol_exhaustion"] = tol_exhaustion;
        echo["profile"] = profile_echo(spec);
        suite.config = echo;

        const std::size_t total =
            static_cast<std::size_t>(instances) * dims.size();
        rows = map_indexed<VerifyRow>(total, rc.jobs, [&](std::size_t i) {
            const int n = dims[i / static_cast<std::size_t>(instances)];
            return eval_profile_instance(spec, n, nodes, exhaustion_steps,
                                         partition_trials,
                                         lorgeo::derive_seed(rc.seed, i));
        });
        append_sample_checks(suite, rows, rc.tol_quad, tol_identity);

        MaxAgg dev;
        MinAgg mono;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            dev.fold(rows[i].exh_dev, static_cast<long long>(i));
            mono.fold(rows[i].exh_mono, static_cast<long long>(i));
        }
        suite.add_residual(
            "exhaustion_deviation",
            "truncated-domain deficits converge to the full-domain values",
            dev.value, tol_exhaustion, dev.arg);
        suite.add_gap("exhaustion_monotone_volume",
                      "cone volume increases along the truncation sequence",
                      mono.value, rc.tol_quad, mono.arg);
    }

    write_verify_csv(rc.out_dir / "verify.csv", rows);
    const fs::path result = write_suite(suite, rc.out_dir);
    print_suite(suite);
    std::printf("results: %s\n", result.c_str());
    return suite.pass() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// sharpness
//
// Config keys: command, seed, out, tol_atomic, tol_quad, dimension, t_star,
// epsilons (>= 3, strictly decreasing, positive), slope_window,
// eps_slope_window, limit_margin, ratio_window, and
//
//   "bump": {"kind": "default"}
//           {"kind": "table", "support": [lo, hi], "values": [...]}
//
// A table bump holds samples at uniform knots across its support, vanishing
// at both ends; it is interpolated by a C^1 cubic Hermite spline so the
// ladder gets a usable derivative.

lorgeo::BumpFunction table_bump(double lo, double hi,
                                std::vector<double> values) {
    const std::string where = "sharpness config: bump";
    require_cfg(hi > lo, where + ": support must satisfy lo < hi");
    require_cfg(values.size() >= 5, where + ": need at least 5 table values");
    require_cfg(values.front() == 0.0 && values.back() == 0.0,
                where + ": table must vanish at the support endpoints");
    const std::size_t m = values.size();
    const double h = (hi - lo) / static_cast<double>(m - 1);
    auto vals = std::make_shared<std::vector<double>>(std::move(values));
    auto slopes = std::make_shared<std::vector<double>>(m, 0.0);
    for (std::size_t k = 1; k + 1 < m; ++k) {
        (*slopes)[k] = ((*vals)[k + 1] - (*vals)[k - 1]) / (2.0 * h);
    }
    // Endpoint slopes stay zero so the spline leaves the support flat.
    auto eval = [lo, hi, h, m, vals, slopes](double t, bool deriv) {
        if (t <= lo || t >= hi) {
            return 0.0;
        }
        const double x = (t - lo) / h;
        const std::size_t k =
            std::min(m - 2, static_cast<std::size_t>(x));
        const double u = x - static_cast<double>(k);
        const double p0 = (*vals)[k];
        const double p1 = (*vals)[k + 1];
        const double m0 = (*slopes)[k] * h;
        const double m1 = (*slopes)[k + 1] * h;
        const double u2 = u * u;
        const double u3 = u2 * u;
        if (!deriv) {
            return (2.0 * u3 - 3.0 * u2 + 1.0) * p0 +
                   (u3 - 2.0 * u2 + u) * m0 + (-2.0 * u3 + 3.0 * u2) * p1 +
                   (u3 - u2) * m1;
        }
        return ((6.0 * u2 - 6.0 * u) * p0 + (3.0 * u2 - 4.0 * u + 1.0) * m0 +
                (-6.0 * u2 + 6.0 * u) * p1 + (3.0 * u2 - 2.0 * u) * m1) /
               h;
    };
    lorgeo::BumpFunction bump;
    bump.phi = [eval](double t) { return eval(t, false); };
    bump.phi_prime = [eval](double t) { return eval(t, true); };
    bump.support_lo = lo;
    bump.support_hi = hi;
    return bump;
}

int cmd_sharpness(const Resolved& rc) {
    const std::string where = "sharpness config";
    check_keys(rc.cfg, where,
               {"command", "seed", "out", "tol_atomic", "tol_quad",
                "dimension", "t_star", "epsilons", "bump", "slope_window",
                "eps_slope_window", "limit_margin", "ratio_window"});
    const int n = get_int(rc.cfg, "dimension", 2, where);
    const double t_star = get_num(rc.cfg, "t_star", 1.0, where);
    require_cfg(n >= 1 && n <= 6, where + ": dimension must be in 1..6");
    require_cfg(t_star > 0.0, where + ": t_star must be positive");
    std::vector<double> eps = get_num_array(
        rc.cfg, "epsilons", lorgeo::default_ladder_epsilons(), where);
    require_cfg(eps.size() >= 3,
                where + ": need at least three ladder epsilons");
    for (std::size_t i = 0; i + 1 < eps.size(); ++i) {
        require_cfg(eps[i] > eps[i + 1],
                    where + ": epsilons must be strictly decreasing");
    }
    require_cfg(eps.back() > 0.0, where + ": epsilons must be positive");
    const double slope_window = get_num(rc.cfg, "slope_window", 0.1, where);
    const double eps_slope_window =
        get_num(rc.cfg, "eps_slope_window", 0.05, where);
    const double limit_margin = get_num(rc.cfg, "limit_margin", 0.01, where);
    const double ratio_window = get_num(rc.cfg, "ratio_window", 0.1, where);
    require_cfg(slope_window > 0.0 && eps_slope_window > 0.0 &&
                    ratio_window > 0.0,
                where + ": windows must be positive");
    require_cfg(limit_margin >= 0.0 && limit_margin < 1.0,
                where + ": limit_margin must lie in [0, 1)");

    lorgeo::BumpFunction raw;
    json bump_echo;
    const json* bump_cfg = find(rc.cfg, "bump");
    if (bump_cfg == nullptr ||
        get_string(*bump_cfg, "kind", "default", where + ": bump") ==
            "default") {
        if (bump_cfg != nullptr) {
            check_keys(*bump_cfg, where + ": bump", {"kind"});
        }
        raw = lorgeo::default_bump();
        bump_echo["kind"] = "default";
    } else {
        const std::string bw = where + ": bump";
        check_keys(*bump_cfg, bw, {"kind", "support", "values"});
        const std::string kind = get_string(*bump_cfg, "kind", "", bw);
        require_cfg(kind == "table", bw + ": unknown kind \"" + kind + "\"");
        const std::pair<double, double> support =
            get_range(*bump_cfg, "support", {0.0, 0.0}, bw);
        std::vector<double> values = get_num_array(*bump_cfg, "values", {}, bw);
        raw = table_bump(support.first, support.second, values);
        bump_echo["kind"] = "table";
        bump_echo["support"] = {support.first, support.second};
        bump_echo["values"] = values;
    }

    // The expansion machinery needs a mean-zero perturbation; projecting can
    // only fail for config reasons (support outside the open domain).
    lorgeo::BumpFunction bump;
    try {
        bump = lorgeo::mean_zero_projection(raw, n, t_star);
    } catch (const std::exception& e) {
        throw ConfigError(where + ": " + e.what());
    }

    Suite suite;
    suite.name = "sharpness";
    suite.seed = rc.seed;
    json echo;
    echo["command"] = "sharpness";
    echo["seed"] = rc.seed;
    echo["dimension"] = n;
    echo["t_star"] = t_star;
    echo["epsilons"] = eps;
    echo["bump"] = bump_echo;
    echo["slope_window"] = slope_window;
    echo["eps_slope_window"] = eps_slope_window;
    echo["limit_margin"] = limit_margin;
    echo["ratio_window"] = ratio_window;
    suite.config = echo;

    // An inadmissible epsilon is a mathematical failure of the requested
    // ladder, not a malformed config: report and exit 1.
    lorgeo::SharpnessLadder ladder;
    try {
        ladder = lorgeo::run_ladder(bump, n, t_star, eps);
    } catch (const std::exception& e) {
        std::printf("[FAIL] ladder_construction: %s\n", e.what());
        return 1;
    }

    CsvWriter csv(rc.out_dir / "sharpness_ladder.csv",
                  "eps,V,A,dist,t_F,delta_BE,delta_CM,delta_CM_star,E,A_F,"
                  "A_F_tilde");
    for (std::size_t i = 0; i < ladder.epsilons.size(); ++i) {
        const lorgeo::DeficitReport& r = ladder.reports[i];
        csv.row({fmt17(ladder.epsilons[i]), fmt17(r.V), fmt17(r.A), fmt17(r.d),
                 fmt17(r.t_F), fmt17(r.delta_BE), fmt17(r.delta_CM),
                 fmt17(r.delta_CM_star), fmt17(r.excess), fmt17(r.A_F),
                 fmt17(r.A_F_tilde)});
    }

    suite.add_residual("slope_be_vs_af",
                       "log delta_BE against log A_F has slope 2",
                       ladder.slope_be_af - 2.0, slope_window);
    suite.add_residual("slope_cm_vs_af",
                       "log delta_CM against log A_F has slope 1",
                       ladder.slope_cm_af - 1.0, slope_window);
    suite.add_residual("slope_cm_star_vs_af",
                       "log delta_CM_star against log A_F has slope 2",
                       ladder.slope_cm_star_af - 2.0, slope_window);
    suite.add_residual("slope_be_vs_eps",
                       "log delta_BE against log eps has slope 2",
                       ladder.slope_be_eps - 2.0, eps_slope_window);
    suite.add_residual("slope_cm_vs_eps",
                       "log delta_CM against log eps has slope 1",
                       ladder.slope_cm_eps - 1.0, eps_slope_window);
    suite.add_residual("slope_cm_star_vs_eps",
                       "log delta_CM_star against log eps has slope 2",
                       ladder.slope_cm_star_eps - 2.0, eps_slope_window);
    suite.add_gap("af_rate_lower_limit",
                  "A_F/eps approaches at least (n+1)/2 mean|phi|",
                  ladder.af_over_eps.back() -
                      (1.0 - limit_margin) * ladder.af_limit_lower,
                  0.0);
    suite.add_residual(
        "ratio_cm_star_prediction",
        "delta_CM_star/A_F^2 matches the second-order expansion",
        ladder.ratio_cm_star / ladder.ratio_cm_star_predicted - 1.0,
        ratio_window);

    json slopes;
    slopes["be_vs_af"] = ladder.slope_be_af;
    slopes["cm_vs_af"] = ladder.slope_cm_af;
    slopes["cm_star_vs_af"] = ladder.slope_cm_star_af;
    slopes["be_vs_eps"] = ladder.slope_be_eps;
    slopes["cm_vs_eps"] = ladder.slope_cm_eps;
    slopes["cm_star_vs_eps"] = ladder.slope_cm_star_eps;
    json expansion;
    const lorgeo::AnalyticExpansion& ex = ladder.expansion;
    expansion["nu_total"] = ex.nu_total;
    expansion["V0"] = ex.V0;
    expansion["V1"] = ex.V1;
    expansion["V2"] = ex.V2;
    expansion["A0"] = ex.A0;
    expansion["A1"] = ex.A1;
    expansion["A2"] = ex.A2;
    expansion["dist1"] = ex.dist1;
    expansion["cm1"] = ex.cm1;
    expansion["cm_star2_principal"] = ex.cm_star2_principal;
    expansion["cm_star2_full"] = ex.cm_star2_full;
    expansion["be2"] = ex.be2;
    expansion["af_linear_coeff"] = ex.af_linear_coeff;
    expansion["af_lower_coeff"] = ex.af_lower_coeff;
    json summary;
    summary["slopes"] = std::move(slopes);
    summary["af_over_eps"] = ladder.af_over_eps;
    summary["af_limit_lower"] = ladder.af_limit_lower;
    summary["fitted_c"] = ladder.fitted_c;
    summary["ratio_cm_star"] = ladder.ratio_cm_star;
    summary["ratio_cm_star_predicted"] = ladder.ratio_cm_star_predicted;
    summary["expansion"] = std::move(expansion);
    suite.summary = std::move(summary);

    const fs::path result = write_suite(suite, rc.out_dir);
    print_suite(suite);
    std::printf("results: %s\n", result.c_str());
    return suite.pass() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// scalar
//
// Config keys: command, seed, out, tol_atomic, tol_quad, tol_identity,
// grid_points, minkowski_range, dimensions, improved_n_max,
// counterexample_j_max. Sweeps are exact closed forms; grids sit half a step
// inside open domain boundaries, and the a = 1 closing column of the Jensen
// grid is kept because that is the equality edge.

int cmd_scalar(const Resolved& rc) {
    const std::string where = "scalar config";
    check_keys(rc.cfg, where,
               {"command", "seed", "out", "tol_atomic", "tol_quad",
                "tol_identity", "grid_points", "minkowski_range", "dimensions",
                "improved_n_max", "counterexample_j_max"});
    const int grid = get_int(rc.cfg, "grid_points", 200, where);
    const double mink_range = get_num(rc.cfg, "minkowski_range", 10.0, where);
    std::vector<int> dims = get_int_array(rc.cfg, "dimensions", {1, 2, 3}, where);
    const int n_max = get_int(rc.cfg, "improved_n_max", 100, where);
    const int j_max = get_int(rc.cfg, "counterexample_j_max", 10000, where);
    const double tol_identity = get_num(rc.cfg, "tol_identity", 1e-10, where);
    require_cfg(grid >= 8, where + ": grid_points must be >= 8");
    require_cfg(mink_range > 0.0, where + ": minkowski_range must be positive");
    require_cfg(!dims.empty(), where + ": dimensions must be nonempty");
    for (int n : dims) {
        require_cfg(n >= 1 && n <= 6, where + ": dimensions must lie in 1..6");
    }
    require_cfg(n_max >= 2, where + ": improved_n_max must be >= 2");
    require_cfg(j_max >= 2, where + ": counterexample_j_max must be >= 2");

    Suite suite;
    suite.name = "scalar";
    suite.seed = rc.seed;
    json echo;
    echo["command"] = "scalar";
    echo["seed"] = rc.seed;
    echo["tol_atomic"] = rc.tol_atomic;
    echo["tol_quad"] = rc.tol_quad;
    echo["tol_identity"] = tol_identity;
    echo["grid_points"] = grid;
    echo["minkowski_range"] = mink_range;
    echo["dimensions"] = dims;
    echo["improved_n_max"] = n_max;
    echo["counterexample_j_max"] = j_max;
    suite.config = echo;

    // Jensen sweep over (0,1] x (0,1), a-grid closing at the equality edge.
    {
        CsvWriter csv(rc.out_dir / "jensen.csv", "a,p,gap,bound,slack,exact");
        MinAgg slack;
        MinAgg interior;
        MaxAgg edge;
        long long idx = 0;
        for (int i = 1; i <= grid; ++i) {
            const double a = static_cast<double>(i) / grid;
            for (int j = 0; j < grid; ++j) {
                const double p = (j + 0.5) / grid;
                const lorgeo::GapBound gb = lorgeo::jensen_gap(a, p);
                const double s = gb.slack();
                const bool exact = gb.gap == 0.0 && gb.bound == 0.0;
                csv.row({fmt17(a), fmt17(p), fmt17(gb.gap), fmt17(gb.bound),
                         fmt17(s), exact ? "1" : "0"});
                slack.fold(s, idx);
                if (i < grid) {
                    interior.fold(gb.gap, idx);
                } else {
                    edge.fold(std::abs(s), idx);
                }
                ++idx;
            }
        }
        suite.add_gap("jensen_slack",
                      "((a+1)/2)^p - (a^p+1)/2 >= p(1-p)/8 (1-a)^2",
                      slack.value, rc.tol_atomic, slack.arg);
        suite.add_gap("jensen_interior_positive",
                      "the Jensen gap is strictly positive for a < 1",
                      interior.value, 0.0, interior.arg, /*strict=*/true);
        suite.add_residual("jensen_edge_exact",
                           "gap and bound both vanish on the a = 1 edge",
                           edge.value, 1e-12, edge.arg);
    }

    // Two-term Minkowski sweep over (0, range]^2 per dimension.
    {
        CsvWriter csv(rc.out_dir / "minkowski.csv", "a,b,n,gap,bound,slack");
        MinAgg slack;
        MaxAgg diagonal;
        long long idx = 0;
        for (int n : dims) {
            for (int i = 0; i < grid; ++i) {
                const double a = mink_range * (i + 0.5) / grid;
                for (int j = 0; j < grid; ++j) {
                    const double b = mink_range * (j + 0.5) / grid;
                    const lorgeo::GapBound gb = lorgeo::minkowski_gap(a, b, n);
                    csv.row({fmt17(a), fmt17(b), std::to_string(n),
                             fmt17(gb.gap), fmt17(gb.bound),
                             fmt17(gb.slack())});
                    slack.fold(gb.slack(), idx);
                    if (i == j) {
                        diagonal.fold(std::abs(gb.gap), idx);
                    }
                    ++idx;
                }
            }
        }
        suite.add_gap("minkowski_slack",
                      "(2(a+b)^n)^(1/(n+1)) - a^(n/(n+1)) - b^(n/(n+1)) >= "
                      "n/(4(n+1)^2) max(a,b)^(-(n+2)/(n+1)) (b-a)^2",
                      slack.value, rc.tol_atomic, slack.arg);
        suite.add_residual("minkowski_equality_diagonal",
                           "the gap vanishes on the diagonal a = b",
                           diagonal.value, 1e-12, diagonal.arg);
    }

    // Shape of L and positivity of L_tilde, per dimension where relevant.
    {
        CsvWriter csv(rc.out_dir / "ltilde.csv", "a,n,value");
        MinAgg inc;
        MinAgg dec;
        MinAgg refl;
        MinAgg tilde;
        long long idx = 0;
        for (int n : dims) {
            double prev_pos = lorgeo::L_function(0.0, n);
            double prev_neg = 0.0;  // set on the first pass below
            for (int k = 0; k < grid; ++k) {
                const double a_pos = 4.0 * (k + 1.0) / grid;
                const double cur_pos = lorgeo::L_function(a_pos, n);
                inc.fold(cur_pos - prev_pos, idx);
                prev_pos = cur_pos;

                const double a_neg = -1.0 + (k + 0.5) / grid;
                const double cur_neg = lorgeo::L_function(a_neg, n);
                if (k > 0) {
                    dec.fold(prev_neg - cur_neg, idx);
                }
                prev_neg = cur_neg;

                const double a_unit = (k + 0.5) / grid;
                refl.fold(lorgeo::L_function(-a_unit, n) -
                              lorgeo::L_function(a_unit, n),
                          idx);
                const double lt = lorgeo::L_tilde(a_unit, n);
                tilde.fold(lt, idx);
                csv.row({fmt17(a_unit), std::to_string(n), fmt17(lt)});
                ++idx;
            }
        }
        suite.add_gap("l_increasing_positive_axis",
                      "L is strictly increasing on the positive axis",
                      inc.value, 0.0, inc.arg, /*strict=*/true);
        suite.add_gap("l_decreasing_negative_axis",
                      "L is strictly decreasing on (-1, 0)", dec.value, 0.0,
                      dec.arg, /*strict=*/true);
        suite.add_gap("l_reflection_dominates",
                      "L(-a) >= L(a) for a in (0, 1)", refl.value, 0.0,
                      refl.arg, /*strict=*/true);
        suite.add_gap("ltilde_interior_positive",
                      "L_tilde is strictly positive inside (0, 1)",
                      tilde.value, 0.0, tilde.arg, /*strict=*/true);
    }

    // Stability constants: identity, ordering, normalized monotonicity, and
    // the large-n asymptotes 4/(1 - ln 2) and 16.
    {
        CsvWriter csv(rc.out_dir / "improved.csv",
                      "n,c_improved,c_quadratic,improved_over_np1,"
                      "quadratic_over_np1,identity_residual");
        MaxAgg ident;
        MinAgg order;
        MinAgg inc;
        MinAgg dec;
        double prev_imp = 0.0;
        double prev_quad = 0.0;
        lorgeo::ImprovedConstant last{};
        for (int n = 1; n <= n_max; ++n) {
            const lorgeo::ImprovedConstant ic = lorgeo::improved_constant(n);
            const double alt =
                1.0 / (std::pow(2.0, -(2.0 + 1.0 / (n + 1.0))) -
                       n / (4.0 * (n + 1.0)));
            const double resid = std::abs(ic.c_improved - alt) / alt;
            csv.row({std::to_string(n), fmt17(ic.c_improved),
                     fmt17(ic.c_quadratic), fmt17(ic.improved_over_np1),
                     fmt17(ic.quadratic_over_np1), fmt17(resid)});
            ident.fold(resid, n);
            order.fold(ic.c_quadratic - ic.c_improved, n);
            if (n > 1) {
                inc.fold(ic.improved_over_np1 - prev_imp, n);
                dec.fold(prev_quad - ic.quadratic_over_np1, n);
            }
            prev_imp = ic.improved_over_np1;
            prev_quad = ic.quadratic_over_np1;
            last = ic;
        }
        const double imp_limit = 4.0 / (1.0 - std::log(2.0));
        suite.add_residual(
            "improved_identity",
            "4/L(1) equals (2^-(2+1/(n+1)) - n/(4(n+1)))^-1 up to n_max",
            ident.value, tol_identity, ident.arg);
        suite.add_gap("improved_below_quadratic",
                      "the refined constant stays below 16(n+1)^2/n",
                      order.value, 0.0, order.arg, /*strict=*/true);
        suite.add_gap("improved_normalized_increasing",
                      "c_improved/(n+1) increases toward its limit",
                      inc.value, 0.0, inc.arg, /*strict=*/true);
        suite.add_gap("quadratic_normalized_decreasing",
                      "c_quadratic/(n+1) decreases toward 16", dec.value, 0.0,
                      dec.arg, /*strict=*/true);
        suite.add_residual("improved_asymptote",
                           "c_improved/(n+1) is within 5% of 4/(1-ln 2)",
                           last.improved_over_np1 / imp_limit - 1.0, 0.05,
                           n_max);
        suite.add_residual("quadratic_asymptote",
                           "c_quadratic/(n+1) is within 5% of 16",
                           last.quadratic_over_np1 / 16.0 - 1.0, 0.05, n_max);
    }

    // Counterexample family: the L2 distance decays while the L1 distance of
    // the squares stays pinned in [1, 2].
    {
        CsvWriter csv(rc.out_dir / "counterexample.csv",
                      "j,l2_distance,l1_sq_distance");
        MinAgg dec;
        MinAgg lower;
        MaxAgg upper;
        double prev_l2 = 0.0;
        lorgeo::CounterexampleDistances last{};
        for (int j = 1; j <= j_max; ++j) {
            const lorgeo::CounterexampleDistances cd =
                lorgeo::counterexample_family(j);
            csv.row({std::to_string(j), fmt17(cd.l2_distance),
                     fmt17(cd.l1_sq_distance)});
            if (j >= 3) {
                dec.fold(prev_l2 - cd.l2_distance, j);
            }
            lower.fold(cd.l1_sq_distance - 1.0, j);
            upper.fold(cd.l1_sq_distance, j);
            prev_l2 = cd.l2_distance;
            last = cd;
        }
        suite.add_gap("counterexample_l2_decreasing",
                      "the L2 distance strictly decreases from j = 2 on",
                      dec.value, 0.0, dec.arg, /*strict=*/true);
        suite.add_gap("counterexample_l1_lower",
                      "the squared-value L1 distance never drops below 1",
                      lower.value, rc.tol_atomic, lower.arg);
        suite.add_gap("counterexample_l1_upper",
                      "the squared-value L1 distance never exceeds 2",
                      2.0 - upper.value, rc.tol_atomic, upper.arg);
        // The tail behaves like 3/(2j), so 2/j_max leaves a safe margin at
        // any sweep depth (2e-4 at the default depth of 10000).
        suite.add_residual("counterexample_l1_limit",
                           "the squared-value L1 distance tends to 1",
                           last.l1_sq_distance - 1.0, 2.0 / j_max, j_max);
    }

    // Normalized Hoelder distances on the two-level atomic hypersurface, all
    // three admissible exponents, against its exact deficit.
    {
        Eigen::ArrayXd w(2);
        Eigen::ArrayXd f(2);
        w << 1.0, 1.0;
        f << 1.0, 2.0;
        const lorgeo::WeightedSamples samples =
            lorgeo::samples_of(lorgeo::atomic_graph(w, f, 2));
        const lorgeo::DeficitReport rep = lorgeo::deficits(samples);
        const double expected_beta[] = {8.0, 12.0, 3.0};
        const double exponents[] = {1.5, 3.0, 2.0};
        MaxAgg beta_resid;
        MinAgg slack;
        for (int k = 0; k < 3; ++k) {
            const lorgeo::HolderDistance hd =
                lorgeo::holder_stability_distance(samples, exponents[k]);
            beta_resid.fold(std::abs(hd.beta - expected_beta[k]), k);
            slack.fold(hd.bound_slack(rep.delta_BE), k);
        }
        suite.add_residual("holder_beta_table",
                           "beta is 4n, (n+1)2^n, n+1 for the three exponents",
                           beta_resid.value, 0.0, beta_resid.arg);
        suite.add_gap("holder_bound_slack",
                      "distance/beta <= delta_BE/(1+delta_BE) on the "
                      "two-level instance",
                      slack.value, rc.tol_atomic, slack.arg);
    }

    // Quadratic Bernoulli bound on a small radial perturbation.
    {
        const lorgeo::BumpFunction bump = lorgeo::default_bump();
        const lorgeo::RadialProfile profile = lorgeo::make_radial_profile(
            2, 1.0,
            [phi = bump.phi](double t) { return 1.0 + 1e-3 * phi(t); },
            [dphi = bump.phi_prime](double t) { return 1e-3 * dphi(t); });
        const lorgeo::BernoulliCheck bc =
            lorgeo::bernoulli_l2_check(lorgeo::samples_of(profile));
        suite.add_gap("bernoulli_small_oscillation",
                      "the quadratic lower bound holds under the oscillation "
                      "cap",
                      bc.gap, rc.tol_quad);
        json bernoulli;
        bernoulli["lhs"] = bc.lhs;
        bernoulli["rhs"] = bc.rhs;
        suite.summary = json::object();
        suite.summary["bernoulli"] = std::move(bernoulli);
    }

    const fs::path result = write_suite(suite, rc.out_dir);
    print_suite(suite);
    std::printf("results: %s\n", result.c_str());
    return suite.pass() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// simplex
//
// Config keys: command, seed, out, tol_atomic, tol_quad, tol_identity,
// instances, dimensions, containment_samples, induction_trials, or an
// explicit "vertices" matrix (one row per vertex) for a single simplex.
// A degenerate explicit simplex is rejected as a configuration error.

struct SimplexRow {
    int n = 0;
    double area = NAN;
    double height = NAN;
    double volume = NAN;
    double residual_rel = NAN;
    double containment_gap = NAN;
    double containment_mu = NAN;
    double containment_se = NAN;
};

constexpr std::uint64_t kContainmentSalt = 0x636f6e7461696eULL;
constexpr std::uint64_t kInductionSalt = 0x696e64756374ULL;

SimplexRow eval_simplex(const lorgeo::SpacelikeSimplex& simplex,
                        std::int64_t mc_samples, std::uint64_t mc_seed) {
    SimplexRow row;
    row.n = simplex.n;
    row.area = lorgeo::simplex_area(simplex);
    row.height = lorgeo::lorentzian_height(simplex);
    row.volume = lorgeo::cone_volume_simplex(simplex);
    // Scale by max(1, V): thin random simplices have tiny determinant
    // volumes whose rounding error is set by the vertex coordinates, not
    // by V itself, so dividing by bare V would punish conditioning rather
    // than correctness.
    row.residual_rel = std::abs(lorgeo::cone_formula_check(simplex)) /
                       std::max(1.0, row.volume);
    const lorgeo::ContainmentReport cont =
        lorgeo::containment_check(simplex, mc_samples, mc_seed);
    row.containment_gap = cont.gap;
    row.containment_mu = cont.mu_projected;
    row.containment_se = cont.std_error;
    return row;
}

void write_simplex_csv(const fs::path& path,
                       const std::vector<SimplexRow>& rows) {
    CsvWriter csv(path,
                  "instance,n,area,height,volume,residual_rel,"
                  "containment_gap,containment_mu,containment_std_error");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const SimplexRow& r = rows[i];
        csv.row({std::to_string(i), std::to_string(r.n), fmt17(r.area),
                 fmt17(r.height), fmt17(r.volume), fmt17(r.residual_rel),
                 fmt17(r.containment_gap), fmt17(r.containment_mu),
                 fmt17(r.containment_se)});
    }
}

int cmd_simplex(const Resolved& rc) {
    const std::string where = "simplex config";
    check_keys(rc.cfg, where,
               {"command", "seed", "out", "tol_atomic", "tol_quad",
                "tol_identity", "instances", "dimensions",
                "containment_samples", "induction_trials", "vertices"});
    const double tol_identity = get_num(rc.cfg, "tol_identity", 1e-10, where);
    const std::int64_t mc_samples = static_cast<std::int64_t>(
        get_u64(rc.cfg, "containment_samples", 200000, where));
    require_cfg(mc_samples >= 1000,
                where + ": containment_samples must be >= 1000");

    Suite suite;
    suite.name = "simplex";
    suite.seed = rc.seed;
    json echo;
    echo["command"] = "simplex";
    echo["seed"] = rc.seed;
    echo["tol_quad"] = rc.tol_quad;
    echo["tol_identity"] = tol_identity;
    echo["containment_samples"] = mc_samples;

    std::vector<SimplexRow> rows;
    const json* vertices = find(rc.cfg, "vertices");
    if (vertices != nullptr) {
        for (const char* key : {"instances", "dimensions", "induction_trials"}) {
            require_cfg(find(rc.cfg, key) == nullptr,
                        where + ": \"" + key +
                            "\" does not apply to an explicit simplex");
        }
        require_cfg(vertices->is_array() && vertices->size() >= 2,
                    where + ": vertices must be an array of vertex rows");
        const std::size_t count = vertices->size();
        Eigen::MatrixXd mat(count, count);
        for (std::size_t i = 0; i < count; ++i) {
            const json& row = (*vertices)[i];
            require_cfg(row.is_array() && row.size() == count,
                        where + ": each vertex needs n+1 = " +
                            std::to_string(count) + " coordinates");
            for (std::size_t j = 0; j < count; ++j) {
                require_cfg(row[j].is_number(),
                            where + ": vertex coordinates must be numbers");
                mat(static_cast<Eigen::Index>(j),
                    static_cast<Eigen::Index>(i)) = row[j].get<double>();
            }
        }
        echo["vertices"] = *vertices;
        suite.config = echo;
        // Constructor failures (degenerate, non-spacelike) are configuration
        // errors here: the simplex came straight from the document.
        lorgeo::SpacelikeSimplex simplex;
        try {
            simplex = lorgeo::make_simplex(mat);
        } catch (const std::exception& e) {
            throw ConfigError(where + ": " + e.what());
        }
        rows.push_back(eval_simplex(
            simplex, mc_samples,
            lorgeo::derive_seed(rc.seed ^ kContainmentSalt, 0)));
        suite.add_residual("cone_formula_identity",
                           "V = h A/(n+1) for the cone over the simplex",
                           rows[0].residual_rel, tol_identity);
        suite.add_gap("containment_gap",
                      "the cone over P fits inside the cap of radius h",
                      rows[0].containment_gap, rc.tol_quad);
    } else {
        const int instances = get_int(rc.cfg, "instances", 999, where);
        std::vector<int> dims =
            get_int_array(rc.cfg, "dimensions", {1, 2, 3}, where);
        const int induction_trials =
            get_int(rc.cfg, "induction_trials", 1000, where);
        require_cfg(instances >= 1, where + ": instances must be >= 1");
        require_cfg(!dims.empty(), where + ": dimensions must be nonempty");
        for (int n : dims) {
            require_cfg(n >= 1 && n <= 6,
                        where + ": dimensions must lie in 1..6");
        }
        require_cfg(induction_trials >= 1,
                    where + ": induction_trials must be >= 1");
        echo["instances"] = instances;
        echo["dimensions"] = dims;
        echo["induction_trials"] = induction_trials;
        suite.config = echo;

        rows = map_indexed<SimplexRow>(
            static_cast<std::size_t>(instances), rc.jobs, [&](std::size_t i) {
                const int n = dims[i % dims.size()];
                const lorgeo::SpacelikeSimplex simplex =
                    lorgeo::random_simplex(n, lorgeo::derive_seed(rc.seed, i));
                return eval_simplex(
                    simplex, mc_samples,
                    lorgeo::derive_seed(rc.seed ^ kContainmentSalt, i));
            });

        MaxAgg resid;
        MinAgg cont;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            resid.fold(rows[i].residual_rel, static_cast<long long>(i));
            cont.fold(rows[i].containment_gap, static_cast<long long>(i));
        }
        suite.add_residual("cone_formula_identity",
                           "V = h A/(n+1) for the cone over every simplex",
                           resid.value, tol_identity, resid.arg);
        suite.add_gap("containment_gap",
                      "the cone over P fits inside the cap of radius h",
                      cont.value, rc.tol_quad, cont.arg);

        MinAgg induction;
        for (int k = 0; k < induction_trials; ++k) {
            lorgeo::Rng rng(lorgeo::derive_seed(rc.seed ^ kInductionSalt,
                                                static_cast<std::uint64_t>(k)));
            const int n = dims[static_cast<std::size_t>(k) % dims.size()];
            const double v1 = rng.uniform(0.1, 5.0);
            const double s1 = rng.uniform(0.1, 5.0);
            const double v2 = rng.uniform(0.1, 5.0);
            const double s2 = rng.uniform(0.1, 5.0);
            induction.fold(lorgeo::induction_step_check(v1, s1, v2, s2, n), k);
        }
        suite.add_gap("induction_step_gap",
                      "the combined cap dominates the two-cap sum",
                      induction.value, rc.tol_atomic, induction.arg);
    }

    write_simplex_csv(rc.out_dir / "simplex.csv", rows);
    const fs::path result = write_suite(suite, rc.out_dir);
    print_suite(suite);
    std::printf("results: %s\n", result.c_str());
    return suite.pass() ? 0 : 1;
}

// ---------------------------------------------------------------------------
// report
//
// Merges result files written by the other commands. Paths come from the
// command line (or a "paths" array in the config); every file must be a
// schema-1 suite result. Exit 0 only if every merged check passed.

int cmd_report(const Resolved& rc, const std::vector<std::string>& cli_paths) {
    const std::string where = "report config";
    check_keys(rc.cfg, where,
               {"command", "seed", "out", "tol_atomic", "tol_quad", "paths"});
    std::vector<std::string> paths = cli_paths;
    if (paths.empty()) {
        const json* v = find(rc.cfg, "paths");
        if (v != nullptr) {
            require_cfg(v->is_array(), where + ": \"paths\" must be an array");
            for (const json& e : *v) {
                require_cfg(e.is_string(),
                            where + ": \"paths\" must hold strings");
                paths.push_back(e.get<std::string>());
            }
        }
    }
    require_cfg(!paths.empty(), "report: no result files given");

    json merged;
    merged["schema"] = 1;
    merged["suite"] = "report";
    json suites = json::array();
    json checks = json::array();
    std::size_t total = 0;
    std::size_t failed = 0;
    std::vector<std::string> failing;
    for (const std::string& path : paths) {
        const json doc = load_json_file(path);
        require_cfg(doc.is_object() && doc.value("schema", 0) == 1 &&
                        doc.contains("suite") && doc["suite"].is_string() &&
                        doc.contains("checks") && doc["checks"].is_array() &&
                        doc.contains("pass") && doc["pass"].is_boolean(),
                    path + ": not a schema-1 suite result");
        const std::string name = doc["suite"].get<std::string>();
        json entry;
        entry["suite"] = name;
        entry["path"] = path;
        entry["pass"] = doc["pass"];
        suites.push_back(std::move(entry));
        for (const json& rec : doc["checks"]) {
            require_cfg(rec.is_object() && rec.contains("check") &&
                            rec.contains("pass") && rec["pass"].is_boolean(),
                        path + ": malformed check record");
            json copy = rec;
            copy["suite"] = name;
            ++total;
            if (!rec["pass"].get<bool>()) {
                ++failed;
                failing.push_back(name + "/" +
                                  rec["check"].get<std::string>());
            }
            checks.push_back(std::move(copy));
        }
    }
    merged["suites"] = std::move(suites);
    merged["checks"] = std::move(checks);
    json counts;
    counts["total"] = total;
    counts["passed"] = total - failed;
    counts["failed"] = failed;
    merged["counts"] = std::move(counts);
    merged["pass"] = failed == 0;

    const fs::path out_path = rc.out_dir / "report_result.json";
    std::ofstream out(out_path);
    if (!out) {
        throw ConfigError("cannot write " + out_path.string());
    }
    out << merged.dump(2) << '\n';

    for (const std::string& name : failing) {
        std::printf("[FAIL] %s\n", name.c_str());
    }
    std::printf("report: %zu/%zu checks passed across %zu suites\n",
                total - failed, total, paths.size());
    std::printf("results: %s\n", out_path.c_str());
    return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Lorentzian isoperimetry verification toolkit"};
    app.require_subcommand(1);

    CommonOpts opt;
    std::vector<std::string> report_paths;

    auto add_common = [&opt](CLI::App* sub) {
        sub->add_option("--config", opt.config_path,
                        "JSON configuration file");
        sub->add_option("--seed", opt.seed, "base RNG seed");
        sub->add_option("--out", opt.out_dir, "output directory");
        sub->add_option("--jobs", opt.jobs,
                        "worker threads (0 = hardware concurrency)");
        sub->add_option("--tol-atomic", opt.tol_atomic,
                        "tolerance for exact atomic checks");
        sub->add_option("--tol-quad", opt.tol_quad,
                        "tolerance for quadrature-backed checks");
    };

    CLI::App* verify = app.add_subcommand(
        "verify", "inequality suite over hypersurface instances");
    CLI::App* sharpness = app.add_subcommand(
        "sharpness", "perturbation ladder and scaling exponents");
    CLI::App* scalar = app.add_subcommand(
        "scalar", "scalar lemma sweeps and appendix constants");
    CLI::App* simplex = app.add_subcommand(
        "simplex", "spacelike simplex identities and containment");
    CLI::App* report = app.add_subcommand(
        "report", "merge suite results into one aggregate");
    for (CLI::App* sub : {verify, sharpness, scalar, simplex, report}) {
        add_common(sub);
    }
    report->add_option("paths", report_paths, "suite result JSON files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // bad flags are configuration errors
    }

    CLI::App* sub = app.get_subcommands().front();
    opt.seed_set = sub->count("--seed") > 0;
    opt.out_set = sub->count("--out") > 0;
    opt.tol_atomic_set = sub->count("--tol-atomic") > 0;
    opt.tol_quad_set = sub->count("--tol-quad") > 0;

    try {
        const Resolved rc = resolve_common(opt, sub->get_name());
        if (sub == verify) {
            return cmd_verify(rc);
        }
        if (sub == sharpness) {
            return cmd_sharpness(rc);
        }
        if (sub == scalar) {
            return cmd_scalar(rc);
        }
        if (sub == simplex) {
            return cmd_simplex(rc);
        }
        return cmd_report(rc, report_paths);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        // Library-level rejection of document-provided data (an invalid
        // profile, a non-spacelike simplex) is a configuration problem too.
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
