// Command-line front end: `nlfp run --config <file>` or `nlfp <suite>`.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nlfp/scenario.hpp"
#include "nlfp/simd.hpp"
#include "nlfp/suites.hpp"

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw nlfp::ConfigError("--config", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonlocal Fokker-Planck solver for alpha-stable driven SDEs"};
    app.set_version_flag("--version", std::string(nlfp::version()));
    app.require_subcommand(1);

    std::string config;
    std::string out;
    unsigned threads = 1;
    std::uint64_t seed = 0;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config", config, "JSON configuration file");
        if (config_required) opt->required();
        sub->add_option("--out", out, "output directory");
        sub->add_option("--threads", threads, "worker threads for Monte-Carlo paths")->check(CLI::PositiveNumber);
        sub->add_option("--seed", seed, "Monte-Carlo seed (overrides the configuration)");
    };

    auto* run = app.add_subcommand("run", "run a scenario described by a configuration file");
    add_common(run, true);
    for (const auto& name : nlfp::suite_names()) {
        add_common(app.add_subcommand(name, "built-in suite " + name), false);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kExitConfig;
    }

    auto* chosen = app.get_subcommands().front();
    const bool seeded = chosen->count("--seed") > 0;
    try {
        if (chosen == run) {
            const auto scenario = nlfp::parse_scenario(slurp(config));
            nlfp::RunOptions ro;
            if (!out.empty()) ro.out_dir = out;
            ro.threads = threads;
            if (seeded) ro.seed = seed;
            const auto result = nlfp::run(scenario, ro);
            for (const auto& f : result.files) std::cout << f << '\n';
            if (!result.ok) {
                std::cerr << "nlfp: run failed: " << result.error << '\n';
                return kExitRuntime;
            }
            return 0;
        }
        nlfp::SuiteOptions so;
        so.out_dir = out.empty() ? "out/" + chosen->get_name() : out;
        so.threads = threads;
        if (seeded) so.seed = seed;
        if (!config.empty()) so.config_text = slurp(config);
        std::cerr << "simd: " << nlfp::simd::isa_name(nlfp::simd::kernels().isa) << '\n';
        const auto result = nlfp::run_suite(chosen->get_name(), so);
        for (const auto& line : result.summary) std::cout << line << '\n';
        return 0;
    } catch (const nlfp::ConfigError& e) {
        std::cerr << "nlfp: config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "nlfp: " << e.what() << '\n';
        return kExitRuntime;
    }
}
