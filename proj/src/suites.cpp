#include "nlfp/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "nlfp/montecarlo.hpp"
#include "nlfp/operator.hpp"
#include "nlfp/scenario.hpp"
#include "nlfp/verify.hpp"

namespace nlfp {

namespace {

constexpr double kPointX = 0.1;
constexpr double kPointT = 0.02;

}  // namespace

DensityField cauchy_run(double alpha, double h, double L, double t_end, double dt, double safety,
                        Integrator mode) {
    const LevyParams params(alpha, 1.0, 0.0);
    const Grid grid = build_grid(Natural{L}, h);
    const OperatorWorkspace ws(params, grid, make_drift(DriftKind::Zero, grid));
    StepControl ctrl;
    ctrl.dt = dt;
    ctrl.safety = safety;
    ctrl.mode = mode;
    return evolve(sample_initial(CauchySeed{0.01}, grid), ws, ctrl, t_end);
}

namespace {

double point_value(double h, double L) {
    const auto p = cauchy_run(1.0, h, L, kPointT, 0.5 * h);
    const auto i = p.grid.index_of(kPointX);
    return p.values[i];
}

}  // namespace

double point_error(double h, double L) {
    return std::abs(point_value(h, L) - cauchy_exact(kPointX, kPointT));
}

double point_error_extrapolated(double h, double L) {
    const double v = richardson_domain(point_value(h, L), point_value(h, 2 * L), point_value(h, 4 * L));
    return std::abs(v - cauchy_exact(kPointX, kPointT));
}

std::vector<ConvergenceRow> convergence_table(const std::vector<double>& hs, double L, bool extrapolate) {
    std::vector<ConvergenceRow> rows;
    for (double h : hs) {
        ConvergenceRow r;
        r.h = h;
        r.error = extrapolate ? point_error_extrapolated(h, L) : point_error(h, L);
        r.order = rows.empty() ? std::numeric_limits<double>::quiet_NaN() : observed_order(rows.back().error, r.error);
        rows.push_back(r);
    }
    return rows;
}

std::vector<MassRow> mass_table(const std::vector<double>& Ls, double h) {
    std::vector<MassRow> rows;
    for (double L : Ls) rows.push_back({L, mass_integral(cauchy_run(1.0, h, L, 1.0, 0.5 * h))});
    return rows;
}

double mass_order(const std::vector<MassRow>& rows) {
    std::vector<double> lx, ly;
    for (const auto& r : rows) {
        lx.push_back(std::log(r.L));
        ly.push_back(std::log(std::abs(1.0 - r.mass)));
    }
    return -ls_slope(lx, ly);
}

double tail_run_slope(double alpha, double h, double L, double x_lo, double x_hi, DensityField* field) {
    auto p = cauchy_run(alpha, h, L, 1.0);
    const double s = tail_slope(p, x_lo, x_hi);
    if (field) *field = std::move(p);
    return s;
}

std::vector<double> local_maxima(const DensityField& p, double floor) {
    std::vector<double> out;
    const auto& v = p.values;
    if (v.size() < 3) return out;
    const double top = *std::max_element(v.begin(), v.end());
    for (std::size_t i = 1; i + 1 < v.size(); ++i) {
        if (v[i] > v[i - 1] && v[i] >= v[i + 1] && v[i] >= floor * top) out.push_back(p.grid.x(i));
    }
    return out;
}

DensityField doublewell_run(double alpha, double h, double L, double t_end) {
    const LevyParams params(alpha, 1.0, 0.1);
    const Grid grid = build_grid(Natural{L}, h);
    const OperatorWorkspace ws(params, grid, make_drift(DriftKind::DoubleWell, grid));
    return evolve(sample_initial(GaussianNormalized{1.0 / 80.0, -1.0}, grid), ws, StepControl{}, t_end);
}

McComparison mc_compare(const DensityField& pde, std::size_t n_paths, double mc_dt, std::uint64_t seed,
                        unsigned threads, double bin, double window) {
    McConfig cfg;
    cfg.T = pde.time;
    cfg.n_paths = n_paths;
    cfg.dt = mc_dt;
    cfg.seed = seed;
    cfg.threads = threads;
    const auto ens = simulate_terminal(SdeParams(1.0, 1.0, 0.0), DriftKind::Zero, cfg);

    McComparison out;
    out.n_paths = n_paths;
    out.ks = ks_distance(ens.samples, [&](double x) { return cauchy_cdf(x, cfg.T); });

    const auto nbins = static_cast<std::size_t>(std::llround(2.0 * window / bin));
    std::vector<double> mc_mass(nbins, 0.0), pde_mass(nbins, 0.0);
    for (double x : ens.samples) {
        if (x <= -window || x >= window) continue;
        const auto b = std::min(nbins - 1, static_cast<std::size_t>((x + window) / bin));
        mc_mass[b] += 1.0 / static_cast<double>(n_paths);
    }
    // Trapezoid of the PDE density over each bin; bin edges lie on nodes.
    const double h = pde.grid.h();
    for (std::size_t i = 0; i + 1 < pde.size(); ++i) {
        const double xm = 0.5 * (pde.grid.x(i) + pde.grid.x(i + 1));
        if (xm <= -window || xm >= window) continue;
        const auto b = std::min(nbins - 1, static_cast<std::size_t>((xm + window) / bin));
        pde_mass[b] += 0.5 * h * (pde.values[i] + pde.values[i + 1]);
    }
    for (std::size_t b = 0; b < nbins; ++b) out.l1 += std::abs(mc_mass[b] - pde_mass[b]);
    return out;
}

CsvTable threshold_table(double alpha_lo, double alpha_hi, std::size_t n) {
    CsvTable t({"alpha", "threshold"});
    for (std::size_t k = 0; k < n; ++k) {
        const double a = n == 1 ? alpha_lo : alpha_lo + (alpha_hi - alpha_lo) * static_cast<double>(k) / static_cast<double>(n - 1);
        t.add_row({a, mp_threshold(StabilityIndex(a), 1.0)});
    }
    return t;
}

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

/// Suite overrides with typed defaults.
class Overrides {
public:
    explicit Overrides(const std::string& text) {
        if (text.empty()) return;
        try {
            doc_ = json::parse(text, nullptr, true, true);
        } catch (const json::parse_error& e) {
            throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
        }
        if (!doc_.is_object()) throw ConfigError("<document>", "expected a JSON object");
    }

    double number(const char* key, double fallback) const {
        if (!doc_.contains(key)) return fallback;
        if (!doc_[key].is_number()) throw ConfigError(key, "expected a number");
        return doc_[key].get<double>();
    }
    std::vector<double> numbers(const char* key, std::vector<double> fallback) const {
        if (!doc_.contains(key)) return fallback;
        const auto& v = doc_[key];
        if (!v.is_array() || v.empty()) throw ConfigError(key, "expected a non-empty array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number()) throw ConfigError(std::string(key) + "[" + std::to_string(i) + "]", "expected a number");
            out.push_back(v[i].get<double>());
        }
        return out;
    }
    const json& doc() const { return doc_; }

private:
    json doc_ = json::object();
};

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::vector<double> halvings(double h0, int levels) {
    std::vector<double> hs;
    for (int m = 0; m < levels; ++m) hs.push_back(h0 / std::ldexp(1.0, m));
    return hs;
}

struct Context {
    const SuiteOptions& opts;
    const Overrides& cfg;
    fs::path dir;
    SuiteResult& result;

    std::string write(const CsvTable& t, const std::string& name) {
        const auto path = (dir / name).string();
        write_csv_atomic(t, path);
        result.files.push_back(path);
        return path;
    }
    /// Runs a scenario into its own subdirectory.
    RunResult scenario(Scenario s) {
        RunOptions ro;
        ro.out_dir = (dir / s.name).string();
        ro.threads = opts.threads;
        ro.seed = opts.seed;
        auto r = run(s, ro);
        if (!r.ok) throw SolverError(s.name + ": " + r.error);
        result.files.insert(result.files.end(), r.files.begin(), r.files.end());
        return r;
    }
    void note(std::string line) { result.summary.push_back(std::move(line)); }
};

CsvTable convergence_csv(const std::vector<ConvergenceRow>& rows) {
    CsvTable t({"h", "error", "order"});
    for (const auto& r : rows) t.add_row({r.h, r.error, r.order});
    return t;
}

void suite_cauchy_verify(Context& c) {
    const double h = c.cfg.number("h", 0.005);
    const double t_end = c.cfg.number("t_end", 0.1);
    const double L = c.cfg.number("L", 50.0);
    Scenario s;
    s.name = "cauchy_verify";
    s.params = LevyParams(1.0, 1.0, 0.0);
    s.condition = Natural{L};
    s.initial = CauchySeed{0.01};
    s.h = h;
    s.dt = 0.5 * h;
    s.t_outputs = {0.02, 0.05, t_end};
    std::sort(s.t_outputs.begin(), s.t_outputs.end());
    s.t_outputs.erase(std::unique(s.t_outputs.begin(), s.t_outputs.end()), s.t_outputs.end());
    const auto r = c.scenario(s);
    const auto rep = error_report(r.outputs.back(), [](double x, double t) { return cauchy_exact(x, t); });
    c.note("t=" + fmt(t_end) + " max_abs=" + fmt(rep.max_abs) + " rel_l2=" + fmt(rep.rel_l2));
}

void suite_table(Context& c, bool extrapolate) {
    const auto hs = c.cfg.numbers("h", halvings(0.1, 5));
    const double L = c.cfg.number("L", 100.0);
    const auto rows = convergence_table(hs, L, extrapolate);
    c.write(convergence_csv(rows), extrapolate ? "table2.csv" : "table1.csv");
    for (const auto& r : rows) c.note("h=" + fmt(r.h) + " error=" + fmt(r.error) + " order=" + fmt(r.order));
}

void suite_masscheck(Context& c) {
    const auto Ls = c.cfg.numbers("L", {5, 10, 20, 40, 80});
    const double h = c.cfg.number("h", 0.005);
    const auto rows = mass_table(Ls, h);
    CsvTable t({"L", "mass"});
    for (const auto& r : rows) {
        t.add_row({r.L, r.mass});
        c.note("L=" + fmt(r.L) + " I_p(1)=" + format_double(r.mass));
    }
    c.write(t, "masscheck.csv");
    if (rows.size() >= 2) c.note("order in L: " + fmt(mass_order(rows)));
}

void suite_tails(Context& c) {
    const auto alphas = c.cfg.numbers("alpha", {0.5, 1.0, 1.5});
    const double h = c.cfg.number("h", 0.01);
    const double L = c.cfg.number("L", 110.0);
    const double lo = c.cfg.number("x_lo", 20.0);
    const double hi = c.cfg.number("x_hi", 80.0);
    CsvTable t({"alpha", "slope", "expected"});
    for (double a : alphas) {
        DensityField p(build_grid(Natural{L}, h));
        const double s = tail_run_slope(a, h, L, lo, hi, &p);
        c.write(density_table(p), "tails_a" + fmt(a) + "_t1.csv");
        t.add_row({a, s, -(1.0 + a)});
        c.note("alpha=" + fmt(a) + " slope=" + fmt(s) + " expected=" + fmt(-(1.0 + a)));
    }
    c.write(t, "tails.csv");
}

Scenario base(const std::string& name, double alpha, double eps, double d, DriftKind drift, AuxCondition cond,
              InitialProfile init, double h, std::vector<double> times) {
    Scenario s;
    s.name = name;
    s.params = LevyParams(alpha, eps, d);
    s.drift = drift;
    s.condition = cond;
    s.initial = init;
    s.h = h;
    s.t_outputs = std::move(times);
    return s;
}

InitialProfile gaussian_seed(const Overrides& cfg) {
    if (cfg.doc().value("profile", std::string("normalized")) == "wide") return GaussianWide{};
    return GaussianNormalized{1.0 / 80.0, 0.0};
}

void suite_absorbing(Context& c) {
    const double h = c.cfg.number("h", 0.01);
    const auto gauss = gaussian_seed(c.cfg);
    const Absorbing unit{-1.0, 1.0};
    const std::vector<double> seq{0.0, 0.05, 0.2, 0.5, 2.5};
    c.scenario(base("abs_seq_gauss", 1.0, 1.0, 0.0, DriftKind::Zero, unit, gauss, h, seq));
    c.scenario(base("abs_seq_uniform", 1.0, 1.0, 0.0, DriftKind::Zero, unit, Uniform{}, h, seq));
    for (double a : c.cfg.numbers("alpha", {0.1, 0.5, 1.0, 1.5, 1.9})) {
        c.scenario(base("abs_alpha" + fmt(a) + "_gauss", a, 1.0, 0.0, DriftKind::Zero, unit, gauss, h, {0.25, 2.5}));
        c.scenario(base("abs_alpha" + fmt(a) + "_uniform", a, 1.0, 0.0, DriftKind::Zero, unit, Uniform{}, h, {0.25, 2.5}));
    }
    for (double e : c.cfg.numbers("eps", {0.1, 0.5, 1.0})) {
        c.scenario(base("abs_eps" + fmt(e), 1.0, e, 0.0, DriftKind::Zero, unit, gauss, h, {1.0}));
    }
    c.note("absorbing runs written under " + c.dir.string());
}

void suite_ou(Context& c) {
    const double h = c.cfg.number("h", 0.01);
    const auto gauss = gaussian_seed(c.cfg);
    const Absorbing unit{-1.0, 1.0};
    for (double a : {0.5, 1.5}) {
        c.scenario(base("ou_a" + fmt(a) + "_drift", a, 1.0, 0.0, DriftKind::OrnsteinUhlenbeck, unit, gauss, h, {1.0}));
        c.scenario(base("ou_a" + fmt(a) + "_nodrift", a, 1.0, 0.0, DriftKind::Zero, unit, gauss, h, {1.0}));
        for (double d : {0.1, 0.5, 1.0}) {
            c.scenario(base("ou_a" + fmt(a) + "_d" + fmt(d), a, 1.0, d, DriftKind::OrnsteinUhlenbeck, unit, gauss, h, {1.0}));
        }
        c.scenario(base("cmp_a" + fmt(a) + "_natural", a, 1.0, 0.0, DriftKind::Zero, Natural{20.0}, gauss, h, {1.0}));
    }
    for (double a : {0.5, 1.0, 1.5}) {
        for (double B : {1.0, 2.0, 4.0}) {
            c.scenario(base("ou_a" + fmt(a) + "_B" + fmt(B), a, 1.0, 0.0, DriftKind::OrnsteinUhlenbeck,
                            Absorbing{-B, B}, gauss, h, {1.0}));
        }
    }
    CsvTable at9({"alpha", "L", "p_at_9"});
    for (double a : {0.5, 1.5}) {
        for (double L : c.cfg.numbers("L", {10, 20, 30, 40})) {
            const auto r = c.scenario(base("ou_natural_a" + fmt(a) + "_L" + fmt(L), a, 1.0, 0.0,
                                           DriftKind::OrnsteinUhlenbeck, Natural{L}, gauss, h, {1.0}));
            const auto& p = r.outputs.back();
            at9.add_row({a, L, p.values[p.grid.index_of(9.0)]});
        }
    }
    c.write(at9, "ou_natural_point9.csv");
    c.note("O-U runs written under " + c.dir.string());
}

void suite_doublewell(Context& c) {
    const double h = c.cfg.number("h", 0.01);
    const double L = c.cfg.number("L", 4.0);
    const auto times = c.cfg.numbers("t", {0.0, 1.0, 2.0, 3.0, 4.0, 5.0});
    CsvTable peaks({"alpha", "t", "peak_x"});
    for (double a : c.cfg.numbers("alpha", {0.5, 1.5})) {
        auto s = base("doublewell_a" + fmt(a), a, 1.0, 0.1, DriftKind::DoubleWell, Natural{L},
                      GaussianNormalized{1.0 / 80.0, -1.0}, h, times);
        const auto r = c.scenario(s);
        for (const auto& p : r.outputs) {
            for (double x : local_maxima(p)) peaks.add_row({a, p.time, x});
        }
        std::string line = "alpha=" + fmt(a) + " peaks at t=" + fmt(r.outputs.back().time) + ":";
        for (double x : local_maxima(r.outputs.back())) line += " " + fmt(x);
        c.note(line);
    }
    c.write(peaks, "doublewell_peaks.csv");
}

void suite_mc_compare(Context& c) {
    const double h = c.cfg.number("h", 0.01);
    const double L = c.cfg.number("L", 200.0);
    const auto n = static_cast<std::size_t>(c.cfg.number("n_paths", 100000));
    const double mc_dt = c.cfg.number("mc_dt", 0.01);
    const std::uint64_t seed = c.opts.seed.value_or(20240917);
    const auto pde = cauchy_run(1.0, h, L, 1.0, 0.5 * h);
    const auto cmp = mc_compare(pde, n, mc_dt, seed, c.opts.threads, 0.5, 10.0);
    CsvTable t({"n_paths", "ks", "l1"});
    t.add_row({static_cast<double>(n), cmp.ks, cmp.l1});
    c.write(t, "mc_compare.csv");
    c.write(density_table(pde), "mc_compare_pde_t1.csv");
    c.note("KS=" + fmt(cmp.ks) + " L1=" + fmt(cmp.l1) + " paths=" + std::to_string(n));
}

void suite_threshold(Context& c) {
    c.write(threshold_table(), "threshold.csv");
    c.note("threshold(0.01)=" + fmt(mp_threshold(StabilityIndex(0.01), 1.0)) + " threshold(1.99)=" + fmt(mp_threshold(StabilityIndex(1.99), 1.0)));
}

}  // namespace

std::vector<std::string> suite_names() {
    return {"cauchy-verify", "table1", "table2", "masscheck", "tails", "absorbing-suite",
            "ou-suite", "doublewell-suite", "mc-compare", "threshold"};
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& options) {
    const auto started = std::chrono::steady_clock::now();
    const Overrides cfg(options.config_text);
    SuiteResult result;
    result.name = name;
    Context c{options, cfg, fs::path(options.out_dir), result};
    fs::create_directories(c.dir);

    if (name == "cauchy-verify") suite_cauchy_verify(c);
    else if (name == "table1") suite_table(c, false);
    else if (name == "table2") suite_table(c, true);
    else if (name == "masscheck") suite_masscheck(c);
    else if (name == "tails") suite_tails(c);
    else if (name == "absorbing-suite") suite_absorbing(c);
    else if (name == "ou-suite") suite_ou(c);
    else if (name == "doublewell-suite") suite_doublewell(c);
    else if (name == "mc-compare") suite_mc_compare(c);
    else if (name == "threshold") suite_threshold(c);
    else throw ConfigError("<subcommand>", "unknown suite '" + name + "'");

    nlohmann::ordered_json m;
    m["manifest_version"] = 1;
    m["suite"] = name;
    m["library_version"] = version();
    m["overrides"] = cfg.doc();
    if (options.seed) m["seed"] = *options.seed;
    m["threads"] = options.threads;
    m["files"] = result.files;
    m["summary"] = result.summary;
    m["wall_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    const auto path = (c.dir / (name + ".manifest.json")).string();
    write_text_atomic(path, m.dump(2) + "\n");
    result.files.push_back(path);
    return result;
}

}  // namespace nlfp
