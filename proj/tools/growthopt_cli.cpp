// growthopt: run scenario configs and parameter sweeps.
//
//   growthopt run <config> [--force] [--seed N] [--jobs N] [--out DIR]
//   growthopt sweep <config> --axis NAME --values a,b,c [--force] [--seed N] [--jobs N] [--out DIR]
//
// Exit codes: 0 ok, 1 I/O or unexpected failure, 2 config error, 3 solver
// error, 4 no existence result (without --force).

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "growthopt.hpp"

namespace {

std::vector<double> parse_values(const std::string& list) {
    std::vector<double> out;
    std::stringstream ss(list);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size())
            throw growthopt::ConfigError("--values", "not a number: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw growthopt::ConfigError("--values", "empty list");
    return out;
}

void report(const growthopt::ScenarioOutcome& o, const std::string& prefix = "") {
    if (!o.message.empty()) std::cerr << prefix << o.status << ": " << o.message << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    using namespace growthopt;
    CLI::App app{"Finite-horizon optimal growth: condition checks, solvers, regularity analysis"};
    app.require_subcommand(1);

    bool force = false;
    std::uint64_t seed = SamplingPlan{}.seed;
    unsigned jobs = 1;
    std::string out_dir = ".";
    std::string config;
    std::string axis, values;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("config", config, "Scenario config (JSON)")->required();
        sub->add_flag("--force", force, "Solve even when no existence result applies");
        sub->add_option("--seed", seed, "Seed for the sampled condition checks");
        sub->add_option("--jobs", jobs, "Parallel sweep values (run: DP worker threads)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--out", out_dir, "Base directory for relative output paths");
    };
    CLI::App* run = app.add_subcommand("run", "Run one scenario");
    add_common(run);
    CLI::App* sweep = app.add_subcommand("sweep", "Run a scenario over a list of parameter values");
    add_common(sweep);
    sweep->add_option("--axis", axis, "A, alpha, beta, sigma, lambda, k0 or T")->required();
    sweep->add_option("--values", values, "Comma-separated values")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    RunOptions opt;
    opt.force = force;
    opt.seed = seed;
    opt.out_dir = out_dir;

    if (run->parsed()) {
        opt.workers = jobs;
        const ScenarioOutcome o = run_scenario_file(config, opt);
        report(o);
        if (o.report) std::cout << "existence: " << to_string(o.report->conditions.existence_conclusion) << "\n";
        if (o.report)
            for (const auto& s : o.report->solutions)
                std::cout << to_string(s.solve.method) << " objective: " << format_number(s.solve.objective)
                          << ", switches: " << s.regularity.switch_count << "\n";
        return o.exit_code;
    }

    try {
        const json base = read_config_file(config);
        parse_scenario(base);
        const SweepOutcome s = run_sweep(base, axis, parse_values(values), opt, jobs);
        for (const auto& row : s.rows) report(row.outcome, "[" + std::to_string(row.index) + "] ");
        std::cout << sweep_summary_csv(s);
        return s.exit_code;
    } catch (const ConfigError& e) {
        std::cerr << "config_error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "failed: " << e.what() << "\n";
        return kExitFailure;
    }
}
