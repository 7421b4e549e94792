// spinbath: command line driver: run / validate / selftest

#include "spinbath/config.hpp"
#include "spinbath/errors.hpp"
#include "spinbath/experiment.hpp"
#include "spinbath/selftest.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <thread>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitNumerical = 2;

int run_command(const std::string& config_path, const std::string& mode, const std::string& out_path,
                unsigned threads) {
    spinbath::ExperimentConfig cfg = spinbath::load_config(config_path);
    if (!mode.empty()) cfg.mode = spinbath::parse_mode(mode);
    if (!out_path.empty()) cfg.output = out_path;
    cfg.validate();

    std::ofstream file;
    if (!cfg.output.empty()) {
        file.open(cfg.output);
        if (!file) throw spinbath::ConfigError("cannot open output file '" + cfg.output + "'");
    }
    std::ostream& os = cfg.output.empty() ? std::cout : file;

    if (cfg.is_sweep()) {
        spinbath::write_sweep_csv(os, spinbath::run_sweep(cfg, threads));
    } else {
        spinbath::write_timeseries_csv(os, spinbath::run_timeseries(cfg, threads));
    }
    os.flush();
    if (!os) throw spinbath::NumericalFailure("write to output failed");
    return kExitOk;
}

int selftest_command() {
    const auto start = std::chrono::steady_clock::now();
    const auto results = spinbath::run_selftest();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    int failed = 0;
    for (const auto& r : results) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << ": " << r.detail << '\n';
        failed += r.passed ? 0 : 1;
    }
    std::cout << results.size() - static_cast<std::size_t>(failed) << '/' << results.size() << " passed in " << secs
              << " s\n";
    return failed == 0 ? kExitOk : kExitNumerical;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Markovian and post-Markovian dynamics of two spins between thermal baths"};
    app.require_subcommand(1);

    std::string config_path;
    std::string mode;
    std::string out_path;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());

    auto* run = app.add_subcommand("run", "run a time series or steady-state sweep and write CSV");
    run->add_option("--config", config_path, "experiment configuration (YAML)")->required();
    run->add_option("--mode", mode, "override dynamics.mode")->check(CLI::IsMember({"markov", "postmarkov", "oracle"}));
    run->add_option("--out", out_path, "output CSV path (default: config 'output' or stdout)");
    run->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

    auto* validate = app.add_subcommand("validate", "parse a configuration and print derived quantities");
    validate->add_option("--config", config_path, "experiment configuration (YAML)")->required();

    app.add_subcommand("selftest", "run the fast invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*run) return run_command(config_path, mode, out_path, threads);
        if (*validate) {
            std::cout << spinbath::describe(spinbath::load_config(config_path));
            return kExitOk;
        }
        return selftest_command();
    } catch (const spinbath::ConfigError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const spinbath::DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
}
