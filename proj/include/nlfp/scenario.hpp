#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "nlfp/core.hpp"
#include "nlfp/stepper.hpp"

namespace nlfp {

inline constexpr int kSchemaVersion = 1;

/// Invalid or inconsistent configuration. The message starts with the
/// offending field path.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& field, const std::string& what)
        : std::runtime_error(field + ": " + what), field_(field) {}
    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct McBlock {
    std::size_t n_paths = 100000;
    double dt = 0.001;
    std::uint64_t seed = 20240917;
    double x0 = 0.0;
};

struct Scenario {
    std::string name = "scenario";
    LevyParams params{1.0, 1.0, 0.0};
    DriftKind drift = DriftKind::Zero;
    DriftTable drift_table;  ///< used when drift == Tabulated
    AuxCondition condition = Natural{50.0};
    InitialProfile initial = CauchySeed{};
    double h = 0.001;
    double safety = 0.5;
    double dt = 0.0;  ///< 0 selects dt from safety
    Integrator integrator = Integrator::TvdRk3;
    double weno_delta = 1e-6;
    std::vector<double> t_outputs;
    std::string outputs_dir = "out";
    std::optional<McBlock> mc;
};

/// Parses a JSON scenario document (comments allowed). A run manifest is also
/// accepted; its embedded "scenario" object is used.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);
/// Normalised JSON text of a scenario; parse_scenario of it gives back the same scenario.
std::string scenario_to_json(const Scenario& s);

/// True when the run has the closed-form Cauchy solution (alpha = 1, eps = 1,
/// no drift, no diffusion, natural condition, Cauchy seed).
bool has_cauchy_exact(const Scenario& s);

struct RunOptions {
    std::optional<std::string> out_dir;   ///< overrides Scenario::outputs_dir
    unsigned threads = 1;
    std::optional<std::uint64_t> seed;    ///< overrides the MC seed
};

struct RunResult {
    bool ok = true;
    std::string error;
    std::vector<std::string> files;
    double dt = 0.0;
    std::size_t steps = 0;
    double wall_seconds = 0.0;
    std::vector<DensityField> outputs;
};

/// Evolves the scenario, writes one density CSV per output time, an error CSV
/// when the exact solution is known, the Monte-Carlo comparison when requested,
/// and manifest.json. Solver failures are recorded in the manifest and
/// reported through RunResult::ok rather than thrown.
RunResult run(const Scenario& scenario, const RunOptions& options = {});

}  // namespace nlfp
