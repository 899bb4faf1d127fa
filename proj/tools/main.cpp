#include <CLI11.hpp>
#include <cstdio>
#include <exception>
#include <string>

#include "sliding/checks.hpp"
#include "sliding/config.hpp"
#include "sliding/harness.hpp"
#include "sliding/trace.hpp"

namespace {

// Exit codes: 0 success, 1 configuration error, 2 runtime error.
constexpr int kConfigError = 1;
constexpr int kRuntimeError = 2;

int cmd_run(const std::string& config_path) {
    const sliding::RunConfig cfg = sliding::parse_config_file(config_path);
    const sliding::RunTrace trace = sliding::run_configured(cfg, cfg.seeds.front());
    const std::string path = cfg.out + ".csv";
    sliding::write_trace_csv(trace, path);
    std::printf("wrote %s (%zu rows)\n", path.c_str(), trace.size());
    return 0;
}

int cmd_sweep(const std::string& config_path) {
    const sliding::RunConfig cfg = sliding::parse_config_file(config_path);
    const auto paths = sliding::run_sweep(cfg);
    for (const auto& p : paths) std::printf("wrote %s\n", p.c_str());
    return 0;
}

int cmd_check() {
    const auto results = sliding::run_all_checks();
    int failures = 0;
    for (const auto& r : results) {
        if (r.pass) {
            std::printf("[ PASS ] %s\n", r.name.c_str());
        } else {
            ++failures;
            std::printf("[ FAIL ] %s: %s\n", r.name.c_str(), r.detail.c_str());
        }
    }
    std::printf("%zu checks, %d failures\n", results.size(), failures);
    return failures == 0 ? 0 : kRuntimeError;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Restart-free gradient sliding benchmark harness"};
    app.require_subcommand(1);

    std::string config_path;
    auto* run = app.add_subcommand("run", "Run one configured experiment, write a CSV trace");
    run->add_option("config", config_path, "key=value config file")->required();

    auto* sweep = app.add_subcommand("sweep", "Run every seed in the config, plus an aggregate");
    sweep->add_option("config", config_path, "key=value config file")->required();

    app.add_subcommand("check", "Execute the invariant suite, print pass/fail per property");

    double L = 1.0, mu = 1.0, nu = 1.0, L_eta = 0.0, c = 1.5, b = 0.0;
    int k_table = 5;
    auto* params = app.add_subcommand("params", "Print the derived parameter schedule");
    params->add_option("--L", L, "smooth Lipschitz constant")->required();
    params->add_option("--mu", mu, "strong convexity modulus")->required();
    params->add_option("--nu", nu, "distance generator modulus (default 1)");
    params->add_option("--L-eta", L_eta, "smoothed constant; selects the accelerated schedule");
    params->add_option("--c", c, "accelerated schedule knob c");
    params->add_option("--b", b, "accelerated schedule knob b");
    params->add_option("--k", k_table, "how many T_k rows to print");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        if (run->parsed()) return cmd_run(config_path);
        if (sweep->parsed()) return cmd_sweep(config_path);
        if (app.get_subcommand("check")->parsed()) return cmd_check();
        if (params->parsed()) {
            if (L_eta > 0.0)
                std::fputs(sliding::format_asgs_params(L, mu, nu, L_eta, c, b).c_str(), stdout);
            else
                std::fputs(sliding::format_sgs_params(L, mu, nu, k_table).c_str(), stdout);
            return 0;
        }
    } catch (const sliding::ParamError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const sliding::IoError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kRuntimeError;
    }
    return kConfigError;
}
