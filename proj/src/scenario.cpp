#include "nlfp/scenario.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nlfp/csv.hpp"
#include "nlfp/montecarlo.hpp"
#include "nlfp/operator.hpp"
#include "nlfp/simd.hpp"
#include "nlfp/verify.hpp"

namespace nlfp {

using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

const json* find(const json& obj, const char* key) {
    auto it = obj.find(key);
    return it == obj.end() ? nullptr : &*it;
}

double get_number(const json& obj, const char* key, const std::string& path, std::optional<double> fallback) {
    const json* v = find(obj, key);
    if (!v) {
        if (fallback) return *fallback;
        throw ConfigError(path + key, "required field is missing");
    }
    if (!v->is_number()) throw ConfigError(path + key, "expected a number");
    return v->get<double>();
}

std::string get_string(const json& obj, const char* key, const std::string& path, std::optional<std::string> fallback) {
    const json* v = find(obj, key);
    if (!v) {
        if (fallback) return *fallback;
        throw ConfigError(path + key, "required field is missing");
    }
    if (!v->is_string()) throw ConfigError(path + key, "expected a string");
    return v->get<std::string>();
}

std::uint64_t get_u64(const json& obj, const char* key, const std::string& path, std::uint64_t fallback) {
    const json* v = find(obj, key);
    if (!v) return fallback;
    if (!v->is_number_unsigned() && !(v->is_number_integer() && v->get<std::int64_t>() >= 0)) {
        throw ConfigError(path + key, "expected a non-negative integer");
    }
    return v->get<std::uint64_t>();
}

std::vector<double> get_numbers(const json& v, const std::string& path) {
    if (!v.is_array()) throw ConfigError(path, "expected an array of numbers");
    std::vector<double> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_number()) throw ConfigError(path + "[" + std::to_string(i) + "]", "expected a number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

AuxCondition parse_condition(const json& v) {
    if (!v.is_object()) throw ConfigError("condition", "expected an object");
    const auto type = get_string(v, "type", "condition.", std::nullopt);
    AuxCondition c;
    if (type == "natural") {
        c = Natural{get_number(v, "L", "condition.", 50.0)};
    } else if (type == "absorbing") {
        c = Absorbing{get_number(v, "a", "condition.", -1.0), get_number(v, "b", "condition.", 1.0)};
    } else {
        throw ConfigError("condition.type", "unknown condition '" + type + "' (natural, absorbing)");
    }
    try {
        (void)Grid(c, 1.0, 1);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("condition", e.what());
    }
    return c;
}

InitialProfile parse_initial(const json& v) {
    if (!v.is_object()) throw ConfigError("initial", "expected an object");
    const auto type = get_string(v, "type", "initial.", std::nullopt);
    if (type == "cauchy") return CauchySeed{get_number(v, "t0", "initial.", 0.01)};
    if (type == "gaussian") {
        return GaussianNormalized{get_number(v, "variance", "initial.", 1.0), get_number(v, "center", "initial.", 0.0)};
    }
    if (type == "gaussian_wide") return GaussianWide{};
    if (type == "uniform") return Uniform{};
    throw ConfigError("initial.type", "unknown profile '" + type + "' (cauchy, gaussian, gaussian_wide, uniform)");
}

void parse_drift(const json& v, Scenario& s) {
    if (v.is_string()) {
        const auto name = v.get<std::string>();
        if (name == "zero") s.drift = DriftKind::Zero;
        else if (name == "ou") s.drift = DriftKind::OrnsteinUhlenbeck;
        else if (name == "double_well") s.drift = DriftKind::DoubleWell;
        else throw ConfigError("drift", "unknown drift '" + name + "' (zero, ou, double_well, or a table)");
        return;
    }
    if (!v.is_object()) throw ConfigError("drift", "expected a name or an {x, f} table");
    const json* x = find(v, "x");
    const json* f = find(v, "f");
    if (!x || !f) throw ConfigError("drift", "table needs both x and f");
    s.drift = DriftKind::Tabulated;
    s.drift_table.x = get_numbers(*x, "drift.x");
    s.drift_table.f = get_numbers(*f, "drift.f");
    try {
        validate_table(s.drift_table);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("drift", e.what());
    }
}

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys{
        "schema_version", "name",    "alpha",      "eps",       "d",           "drift", "condition", "initial",
        "h",              "safety",  "dt",         "integrator", "weno_delta", "t_outputs", "outputs_dir", "mc"};
    return keys;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end(), nullptr, true, true);
    } catch (const json::parse_error& e) {
        throw ConfigError("<document>", std::string("malformed JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ConfigError("<document>", "expected a JSON object");
    if (const json* inner = find(doc, "scenario"); inner && find(doc, "manifest_version")) doc = *inner;

    const auto version = get_number(doc, "schema_version", "", static_cast<double>(kSchemaVersion));
    if (version != kSchemaVersion) {
        throw ConfigError("schema_version", "unsupported version " + std::to_string(version));
    }
    for (const auto& [key, value] : doc.items()) {
        const auto& keys = known_keys();
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) throw ConfigError(key, "unknown field");
    }

    Scenario s;
    s.name = get_string(doc, "name", "", "scenario");
    if (s.name.empty() || s.name.find_first_of("/\\") != std::string::npos) {
        throw ConfigError("name", "must be a non-empty file-name-safe string");
    }
    const double alpha = get_number(doc, "alpha", "", std::nullopt);
    const double eps = get_number(doc, "eps", "", 1.0);
    const double d = get_number(doc, "d", "", 0.0);
    try {
        (void)StabilityIndex(alpha);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("alpha", std::string("StabilityIndex invariant violated: ") + e.what());
    }
    try {
        s.params = LevyParams(alpha, eps, d);
    } catch (const std::exception& e) {
        throw ConfigError(eps > 0.0 ? "d" : "eps", e.what());
    }

    if (const json* v = find(doc, "drift")) parse_drift(*v, s);
    if (const json* v = find(doc, "condition")) s.condition = parse_condition(*v);
    if (const json* v = find(doc, "initial")) s.initial = parse_initial(*v);
    s.h = get_number(doc, "h", "", 0.001);
    s.safety = get_number(doc, "safety", "", 0.5);
    s.dt = get_number(doc, "dt", "", 0.0);
    s.weno_delta = get_number(doc, "weno_delta", "", 1e-6);
    const auto integrator = get_string(doc, "integrator", "", "rk3");
    if (integrator == "rk3") s.integrator = Integrator::TvdRk3;
    else if (integrator == "euler") s.integrator = Integrator::ForwardEuler;
    else throw ConfigError("integrator", "unknown integrator '" + integrator + "' (rk3, euler)");
    s.outputs_dir = get_string(doc, "outputs_dir", "", "out");

    const json* times = find(doc, "t_outputs");
    if (!times) throw ConfigError("t_outputs", "required field is missing");
    s.t_outputs = get_numbers(*times, "t_outputs");
    if (s.t_outputs.empty()) throw ConfigError("t_outputs", "needs at least one time");

    if (const json* v = find(doc, "mc")) {
        if (!v->is_object()) throw ConfigError("mc", "expected an object");
        McBlock mc;
        mc.n_paths = static_cast<std::size_t>(get_u64(*v, "n_paths", "mc.", mc.n_paths));
        mc.dt = get_number(*v, "dt", "mc.", mc.dt);
        mc.seed = get_u64(*v, "seed", "mc.", mc.seed);
        mc.x0 = get_number(*v, "x0", "mc.", mc.x0);
        if (mc.n_paths == 0) throw ConfigError("mc.n_paths", "must be positive");
        if (!(mc.dt > 0.0)) throw ConfigError("mc.dt", "must be positive");
        s.mc = mc;
    }

    // Cross-field invariants.
    if (!(s.safety > 0.0 && s.safety <= 1.0)) throw ConfigError("safety", "must lie in (0, 1]");
    if (!(s.dt >= 0.0)) throw ConfigError("dt", "must be non-negative (0 selects it automatically)");
    if (!(s.weno_delta > 0.0)) throw ConfigError("weno_delta", "must be positive");
    Grid grid = [&] {
        try {
            return build_grid(s.condition, s.h);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("h", e.what());
        }
    }();
    try {
        (void)profile_start_time(s.initial);
        (void)profile_value(s.initial, 0.0);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("initial", e.what());
    }
    if (s.drift == DriftKind::Tabulated) {
        try {
            (void)make_drift(s.drift_table, grid);
        } catch (const std::invalid_argument& e) {
            throw ConfigError("drift", e.what());
        }
    }
    const double t0 = profile_start_time(s.initial);
    for (std::size_t i = 0; i < s.t_outputs.size(); ++i) {
        const std::string path = "t_outputs[" + std::to_string(i) + "]";
        if (!std::isfinite(s.t_outputs[i]) || s.t_outputs[i] < t0) {
            throw ConfigError(path, "output times must be finite and not precede the start time");
        }
        if (i > 0 && !(s.t_outputs[i] > s.t_outputs[i - 1])) {
            throw ConfigError(path, "output times must be strictly increasing");
        }
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("--config", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

namespace {

ojson scenario_json(const Scenario& s) {
    ojson j;
    j["schema_version"] = kSchemaVersion;
    j["name"] = s.name;
    j["alpha"] = s.params.alpha.value();
    j["eps"] = s.params.eps;
    j["d"] = s.params.d;
    switch (s.drift) {
        case DriftKind::Zero: j["drift"] = "zero"; break;
        case DriftKind::OrnsteinUhlenbeck: j["drift"] = "ou"; break;
        case DriftKind::DoubleWell: j["drift"] = "double_well"; break;
        case DriftKind::Tabulated: j["drift"] = ojson{{"x", s.drift_table.x}, {"f", s.drift_table.f}}; break;
    }
    if (const auto* a = std::get_if<Absorbing>(&s.condition)) {
        j["condition"] = ojson{{"type", "absorbing"}, {"a", a->a}, {"b", a->b}};
    } else {
        j["condition"] = ojson{{"type", "natural"}, {"L", std::get<Natural>(s.condition).L}};
    }
    std::visit(
        [&](const auto& prof) {
            using T = std::decay_t<decltype(prof)>;
            if constexpr (std::is_same_v<T, CauchySeed>) j["initial"] = ojson{{"type", "cauchy"}, {"t0", prof.t0}};
            else if constexpr (std::is_same_v<T, GaussianNormalized>)
                j["initial"] = ojson{{"type", "gaussian"}, {"variance", prof.variance}, {"center", prof.center}};
            else if constexpr (std::is_same_v<T, GaussianWide>) j["initial"] = ojson{{"type", "gaussian_wide"}};
            else j["initial"] = ojson{{"type", "uniform"}};
        },
        s.initial);
    j["h"] = s.h;
    j["safety"] = s.safety;
    j["dt"] = s.dt;
    j["integrator"] = s.integrator == Integrator::TvdRk3 ? "rk3" : "euler";
    j["weno_delta"] = s.weno_delta;
    j["t_outputs"] = s.t_outputs;
    j["outputs_dir"] = s.outputs_dir;
    if (s.mc) {
        j["mc"] = ojson{{"n_paths", s.mc->n_paths}, {"dt", s.mc->dt}, {"seed", s.mc->seed}, {"x0", s.mc->x0}};
    }
    return j;
}

}  // namespace

std::string scenario_to_json(const Scenario& s) { return scenario_json(s).dump(2) + "\n"; }

bool has_cauchy_exact(const Scenario& s) {
    return s.params.alpha.value() == 1.0 && s.params.eps == 1.0 && s.params.d == 0.0 &&
           s.drift == DriftKind::Zero && !is_absorbing(s.condition) &&
           std::holds_alternative<CauchySeed>(s.initial);
}

RunResult run(const Scenario& s, const RunOptions& options) {
    namespace fs = std::filesystem;
    const auto started = std::chrono::steady_clock::now();
    const fs::path dir = options.out_dir.value_or(s.outputs_dir);
    fs::create_directories(dir);

    RunResult result;
    ojson manifest;
    manifest["manifest_version"] = 1;
    manifest["library_version"] = version();
    manifest["simd"] = std::string(simd::isa_name(simd::kernels().isa));

    Scenario effective = s;
    if (effective.mc && options.seed) effective.mc->seed = *options.seed;
    manifest["scenario"] = scenario_json(effective);

    const Grid grid = build_grid(s.condition, s.h);
    const DriftField drift = s.drift == DriftKind::Tabulated ? make_drift(s.drift_table, grid) : make_drift(s.drift, grid);
    OperatorOptions opts;
    opts.weno_delta = s.weno_delta;
    const OperatorWorkspace ws(s.params, grid, drift, opts);
    StepControl ctrl;
    ctrl.dt = s.dt;
    ctrl.safety = s.safety;
    ctrl.mode = s.integrator;
    result.dt = resolve_dt(ws, ctrl);

    ojson derived;
    derived["c_alpha"] = s.params.c_alpha;
    derived["zeta_alpha_minus_1"] = s.params.zeta_am1;
    derived["c_h"] = ws.c_h();
    derived["dt"] = result.dt;
    derived["mp_threshold"] = mp_threshold(s.params.alpha, s.params.eps);
    derived["nodes"] = grid.size();
    derived["h"] = grid.h();
    manifest["derived"] = derived;

    const bool exact = has_cauchy_exact(s);
    CsvTable errors({"t", "max_abs", "rel_l2"});
    ojson files = ojson::array();
    auto record = [&](const std::string& name) {
        result.files.push_back((dir / name).string());
        files.push_back(name);
    };

    OutputPlan plan;
    plan.times = s.t_outputs;
    plan.on_output = [&](const DensityField& p) {
        const auto name = density_file_name(s.name, p.time);
        write_csv_atomic(density_table(p), (dir / name).string());
        record(name);
        result.outputs.push_back(p);
        if (exact) {
            const auto rep = error_report(p, [](double x, double t) { return cauchy_exact(x, t); });
            errors.add_row({p.time, rep.max_abs, rep.rel_l2});
        }
    };

    ojson status;
    try {
        EvolveStats stats;
        evolve(sample_initial(s.initial, grid), ws, ctrl, s.t_outputs.back(), plan, &stats);
        result.steps = stats.steps;
        if (exact) {
            const auto name = s.name + "_errors.csv";
            write_csv_atomic(errors, (dir / name).string());
            record(name);
        }
        if (effective.mc) {
            const auto& mc = *effective.mc;
            McConfig cfg;
            cfg.T = s.t_outputs.back();
            cfg.n_paths = mc.n_paths;
            cfg.dt = mc.dt;
            cfg.seed = mc.seed;
            cfg.x0 = mc.x0;
            cfg.threads = options.threads;
            const SdeParams sde(s.params);
            const PathEnsemble ens =
                s.drift == DriftKind::Tabulated
                    ? simulate_terminal(sde, [&](double x) { return table_value(s.drift_table, x); }, cfg, "table")
                    : simulate_terminal(sde, s.drift, cfg);
            const auto ens_name = s.name + "_ensemble.csv";
            write_ensemble_csv(ens, (dir / ens_name).string());
            record(ens_name);

            const DensityField& pde = result.outputs.back();
            const DensityField emp = empirical_density(ens, grid);
            CsvTable cmp({"x", "p_pde", "p_mc"});
            double l1 = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                cmp.add_row({grid.x(i), pde.values[i], emp.values[i]});
                l1 += std::abs(pde.values[i] - emp.values[i]) * grid.h();
            }
            const auto cmp_name = s.name + "_mc.csv";
            write_csv_atomic(cmp, (dir / cmp_name).string());
            record(cmp_name);
            ojson mcj;
            mcj["l1_distance"] = l1;
            std::size_t exited = 0;
            for (auto e : ens.exited) exited += e;
            mcj["exited_paths"] = exited;
            if (exact && mc.x0 == 0.0) {
                mcj["ks_cauchy"] = ks_distance(ens.samples, [&](double x) { return cauchy_cdf(x, cfg.T); });
            }
            manifest["monte_carlo"] = mcj;
        }
        status["ok"] = true;
    } catch (const SolverError& e) {
        result.ok = false;
        result.error = e.what();
        status["ok"] = false;
        status["error"] = e.what();
    }
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    derived["steps"] = result.steps;
    manifest["derived"] = derived;
    manifest["outputs"] = files;
    manifest["status"] = status;
    manifest["wall_seconds"] = result.wall_seconds;
    write_text_atomic((dir / "manifest.json").string(), manifest.dump(2) + "\n");
    result.files.push_back((dir / "manifest.json").string());
    return result;
}

}  // namespace nlfp
