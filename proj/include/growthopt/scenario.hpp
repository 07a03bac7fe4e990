#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "growthopt/conditions.hpp"
#include "growthopt/direct_solver.hpp"
#include "growthopt/dp_solver.hpp"
#include "growthopt/errors.hpp"
#include "growthopt/io.hpp"
#include "growthopt/problem.hpp"
#include "growthopt/regularity.hpp"

namespace growthopt {

inline constexpr int kSchemaVersion = 1;

enum class MethodChoice { DP, Direct, Both };

struct SolverConfig {
    MethodChoice method = MethodChoice::Both;
    std::size_t N_t = 2000;
    std::size_t N_k = 800;
    std::size_t N_s = 101;
    std::size_t n_intervals = 64;
    std::size_t max_iter = 2000;
    double tol = 1e-6;
    /// Constant initial policy for the direct method.
    double init = 0.5;
    /// When non-empty, the direct method runs from each value and keeps the best.
    std::vector<double> multistart;
};

struct RegularityConfig {
    double jump_threshold = 0.2;
    std::size_t min_plateau = 3;
    std::vector<Resolution> resolutions;
};

struct OutputConfig {
    std::string trajectory_csv = "trajectory.csv";
    std::string report_json = "report.json";
};

struct ScenarioConfig {
    std::string name;
    /// The "problem" object as written, echoed into the report.
    json problem_json;
    GrowthProblem problem;
    SolverConfig solver;
    RegularityConfig regularity;
    OutputConfig outputs;
};

namespace scenario_detail {

inline std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

/// Strict view of one JSON object: every key must be declared.
class Fields {
public:
    Fields(const json& j, std::string path, std::initializer_list<std::string_view> allowed)
        : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
        for (const auto& [key, value] : j_.items())
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
                throw ConfigError(join(path_, key), "unknown field");
    }

    bool has(std::string_view key) const { return j_.contains(key); }
    std::string field(std::string_view key) const { return join(path_, key); }

    const json& raw(std::string_view key) const {
        if (!has(key)) throw ConfigError(field(key), "required field is missing");
        return j_.at(std::string(key));
    }

    double number(std::string_view key) const {
        const json& v = raw(key);
        if (!v.is_number()) throw ConfigError(field(key), "expected a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) throw ConfigError(field(key), "must be finite");
        return x;
    }
    double number(std::string_view key, double fallback) const {
        return has(key) ? number(key) : fallback;
    }

    std::size_t count(std::string_view key) const {
        const json& v = raw(key);
        if (!v.is_number_integer() || v.get<long long>() < 0)
            throw ConfigError(field(key), "expected a nonnegative integer");
        return v.get<std::size_t>();
    }
    std::size_t count(std::string_view key, std::size_t fallback) const {
        return has(key) ? count(key) : fallback;
    }

    std::string text(std::string_view key) const {
        const json& v = raw(key);
        if (!v.is_string()) throw ConfigError(field(key), "expected a string");
        return v.get<std::string>();
    }
    std::string text(std::string_view key, std::string fallback) const {
        return has(key) ? text(key) : fallback;
    }

    std::vector<double> numbers(std::string_view key) const {
        const json& v = raw(key);
        if (!v.is_array()) throw ConfigError(field(key), "expected an array of numbers");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (!v[i].is_number())
                throw ConfigError(field(key) + "[" + std::to_string(i) + "]", "expected a number");
            out.push_back(v[i].get<double>());
        }
        return out;
    }

private:
    const json& j_;
    std::string path_;
};

template <class Make>
auto guarded(const std::string& field, Make&& make) {
    try {
        return make();
    } catch (const DomainError& e) {
        throw ConfigError(field, e.what());
    }
}

inline ProductionFunction parse_production(const json& j, const std::string& path) {
    const Fields head(j, path, {"type", "A", "alpha", "k_bar", "phi0", "a", "knots", "values"});
    const std::string type = head.text("type");
    if (type == "AK") {
        const Fields f(j, path, {"type", "A"});
        return guarded(path, [&] { return ProductionFunction(AK{f.number("A")}); });
    }
    if (type == "CobbDouglas") {
        const Fields f(j, path, {"type", "A", "alpha"});
        return guarded(path, [&] {
            return ProductionFunction(CobbDouglas{f.number("A"), f.number("alpha")});
        });
    }
    if (type == "PlateauPower") {
        const Fields f(j, path, {"type", "k_bar", "phi0", "a", "alpha"});
        return guarded(path, [&] {
            return ProductionFunction(
                PlateauPower{f.number("k_bar"), f.number("phi0"), f.number("a"), f.number("alpha")});
        });
    }
    if (type == "Tabulated") {
        const Fields f(j, path, {"type", "knots", "values"});
        return guarded(path, [&] {
            return ProductionFunction::tabulate(f.numbers("knots"), f.numbers("values"));
        });
    }
    throw ConfigError(head.field("type"),
                      "unknown production type '" + type +
                          "' (expected AK, CobbDouglas, PlateauPower or Tabulated)");
}

inline UtilityFunction parse_utility(const json& j, const std::string& path) {
    const Fields head(j, path, {"type", "beta", "knots", "values"});
    const std::string type = head.text("type");
    if (type == "Linear") {
        const Fields f(j, path, {"type"});
        return UtilityFunction::linear();
    }
    if (type == "Power") {
        const Fields f(j, path, {"type", "beta"});
        return guarded(path, [&] { return UtilityFunction(PowerUtility{f.number("beta")}); });
    }
    if (type == "Custom") {
        const Fields f(j, path, {"type", "knots", "values"});
        return guarded(path,
                       [&] { return UtilityFunction::tabulate(f.numbers("knots"), f.numbers("values")); });
    }
    throw ConfigError(head.field("type"),
                      "unknown utility type '" + type + "' (expected Power, Linear or Custom)");
}

inline GrowthProblem parse_problem(const json& j) {
    const Fields f(j, "problem", {"t0", "T", "lambda", "sigma", "k0", "production", "utility"});
    ProblemParameters prm;
    prm.t0 = f.number("t0", 0.0);
    prm.T = f.number("T");
    prm.lambda = f.number("lambda", 0.0);
    prm.sigma = f.number("sigma");
    prm.k0 = f.number("k0");
    if (!(prm.t0 >= 0.0)) throw ConfigError(f.field("t0"), "must be >= 0");
    if (!(prm.T > prm.t0)) throw ConfigError(f.field("T"), "must exceed t0");
    if (!(prm.sigma > 0.0)) throw ConfigError(f.field("sigma"), "must be > 0");
    if (!(prm.lambda >= 0.0)) throw ConfigError(f.field("lambda"), "must be >= 0");
    if (!(prm.k0 >= 0.0)) throw ConfigError(f.field("k0"), "must be >= 0");
    ProductionFunction phi = parse_production(f.raw("production"), f.field("production"));
    UtilityFunction omega = parse_utility(f.raw("utility"), f.field("utility"));
    return guarded("problem", [&] { return GrowthProblem(prm, std::move(phi), std::move(omega)); });
}

inline SolverConfig parse_solver(const json& j) {
    const Fields f(j, "solver",
                   {"method", "N_t", "N_k", "N_s", "n_intervals", "max_iter", "tol", "init", "multistart"});
    SolverConfig s;
    const std::string m = f.text("method", "both");
    if (m == "dp")
        s.method = MethodChoice::DP;
    else if (m == "direct")
        s.method = MethodChoice::Direct;
    else if (m == "both")
        s.method = MethodChoice::Both;
    else
        throw ConfigError(f.field("method"), "expected dp, direct or both");
    s.N_t = f.count("N_t", s.N_t);
    s.N_k = f.count("N_k", s.N_k);
    s.N_s = f.count("N_s", s.N_s);
    s.n_intervals = f.count("n_intervals", s.n_intervals);
    s.max_iter = f.count("max_iter", s.max_iter);
    s.tol = f.number("tol", s.tol);
    s.init = f.number("init", s.init);
    if (f.has("multistart")) s.multistart = f.numbers("multistart");
    if (s.N_t < 1) throw ConfigError(f.field("N_t"), "must be >= 1");
    if (s.N_k < 2) throw ConfigError(f.field("N_k"), "must be >= 2");
    if (s.N_s < 2) throw ConfigError(f.field("N_s"), "must be >= 2");
    if (s.n_intervals < 1) throw ConfigError(f.field("n_intervals"), "must be >= 1");
    if (!(s.tol > 0.0)) throw ConfigError(f.field("tol"), "must be > 0");
    if (!(s.init >= 0.0 && s.init <= 1.0)) throw ConfigError(f.field("init"), "must lie in [0, 1]");
    for (double v : s.multistart)
        if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(f.field("multistart"), "values must lie in [0, 1]");
    return s;
}

inline RegularityConfig parse_regularity(const json& j) {
    const Fields f(j, "regularity", {"jump_threshold", "min_plateau", "resolutions"});
    RegularityConfig r;
    r.jump_threshold = f.number("jump_threshold", r.jump_threshold);
    r.min_plateau = f.count("min_plateau", r.min_plateau);
    if (!(r.jump_threshold > 0.0 && r.jump_threshold < 1.0))
        throw ConfigError(f.field("jump_threshold"), "must lie in (0, 1)");
    if (r.min_plateau < 1) throw ConfigError(f.field("min_plateau"), "must be >= 1");
    if (f.has("resolutions")) {
        const json& list = f.raw("resolutions");
        if (!list.is_array()) throw ConfigError(f.field("resolutions"), "expected an array");
        for (std::size_t i = 0; i < list.size(); ++i) {
            const Fields e(list[i], f.field("resolutions") + "[" + std::to_string(i) + "]",
                           {"N_t", "N_k", "N_s"});
            Resolution res{e.count("N_t"), e.count("N_k"), e.count("N_s")};
            if (res.time_steps < 1 || res.state_nodes < 2 || res.control_nodes < 2)
                throw ConfigError(e.field("N_t"), "resolution needs N_t >= 1, N_k >= 2, N_s >= 2");
            r.resolutions.push_back(res);
        }
    }
    return r;
}

inline OutputConfig parse_outputs(const json& j) {
    const Fields f(j, "outputs", {"trajectory_csv", "report_json"});
    OutputConfig o;
    o.trajectory_csv = f.text("trajectory_csv", o.trajectory_csv);
    o.report_json = f.text("report_json", o.report_json);
    return o;
}

}  // namespace scenario_detail

/// Validates a parsed config document. Throws ConfigError naming the field.
inline ScenarioConfig parse_scenario(const json& doc) {
    using namespace scenario_detail;
    const Fields f(doc, "", {"schema_version", "name", "problem", "solver", "regularity", "outputs"});
    const std::size_t version = f.count("schema_version");
    if (version != static_cast<std::size_t>(kSchemaVersion))
        throw ConfigError("schema_version", "unsupported version " + std::to_string(version) +
                                                " (expected " + std::to_string(kSchemaVersion) + ")");
    ScenarioConfig c{f.text("name", "scenario"), f.raw("problem"), parse_problem(f.raw("problem")),
                     {}, {}, {}};
    if (f.has("solver")) c.solver = parse_solver(f.raw("solver"));
    if (f.has("regularity")) c.regularity = parse_regularity(f.raw("regularity"));
    if (f.has("outputs")) c.outputs = parse_outputs(f.raw("outputs"));
    return c;
}

/// Parses JSON text; syntax errors are reported with line and column.
inline json parse_config_text(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1, col = 1;
        for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col),
                          "invalid JSON");
    }
}

inline json read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path.string(), "cannot open config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

// Reports -----------------------------------------------------------------------

struct SolutionEntry {
    SolveReport solve;
    RegularityReport regularity;
    bool lipschitz_ok = true;

    friend bool operator==(const SolutionEntry&, const SolutionEntry&) = default;
};

/// Everything run_scenario writes to the report JSON.
struct ScenarioReport {
    int schema_version = kSchemaVersion;
    std::string name;
    json problem;
    std::uint64_t seed = SamplingPlan{}.seed;
    bool forced = false;
    ConditionReport conditions;
    double baseline_objective = 0.0;
    std::vector<SolutionEntry> solutions;
    std::optional<ConjectureProbe> conjecture_probe;

    friend bool operator==(const ScenarioReport&, const ScenarioReport&) = default;
};

inline json to_json(const ScenarioReport& r) {
    json sols = json::array();
    for (const auto& e : r.solutions) {
        json s = to_json(e.solve);
        s["regularity"] = to_json(e.regularity);
        s["lipschitz_ok"] = e.lipschitz_ok;
        sols.push_back(std::move(s));
    }
    return {{"schema_version", r.schema_version},
            {"scenario", r.name},
            {"problem", r.problem},
            {"seed", r.seed},
            {"forced", r.forced},
            {"existence_conclusion", to_string(r.conditions.existence_conclusion)},
            {"conditions", to_json(r.conditions)},
            {"baseline_objective", io_detail::number(r.baseline_objective)},
            {"solutions", sols},
            {"conjecture_probe", r.conjecture_probe ? to_json(*r.conjecture_probe) : json(nullptr)}};
}

inline ScenarioReport scenario_report_from_json(const json& j) {
    using io_detail::at;
    ScenarioReport r;
    r.schema_version = at(j, "schema_version").get<int>();
    r.name = at(j, "scenario").get<std::string>();
    r.problem = at(j, "problem");
    r.seed = at(j, "seed").get<std::uint64_t>();
    r.forced = at(j, "forced").get<bool>();
    r.conditions = condition_report_from_json(at(j, "conditions"));
    if (at(j, "existence_conclusion") != json(to_string(r.conditions.existence_conclusion)))
        throw FormatError("existence_conclusion disagrees with conditions");
    r.baseline_objective = io_detail::number(at(j, "baseline_objective"));
    for (const auto& s : at(j, "solutions"))
        r.solutions.push_back({solve_report_from_json(s), regularity_report_from_json(at(s, "regularity")),
                               at(s, "lipschitz_ok").get<bool>()});
    if (const auto& c = at(j, "conjecture_probe"); !c.is_null())
        r.conjecture_probe = conjecture_probe_from_json(c);
    return r;
}

// Running -----------------------------------------------------------------------

enum ExitCode : int {
    kExitOk = 0,
    kExitFailure = 1,  // I/O and other unexpected errors
    kExitConfig = 2,
    kExitSolver = 3,
    kExitNoExistence = 4,
};

struct RunOptions {
    bool force = false;
    std::uint64_t seed = SamplingPlan{}.seed;
    /// Base for relative output paths.
    std::filesystem::path out_dir = ".";
    /// DP worker threads.
    unsigned workers = 1;
};

struct ScenarioOutcome {
    int exit_code = kExitOk;
    std::string status = "ok";
    std::string message;
    std::optional<ScenarioReport> report;
};

inline std::string_view status_label(int code) {
    switch (code) {
        case kExitOk: return "ok";
        case kExitConfig: return "config_error";
        case kExitSolver: return "solver_error";
        case kExitNoExistence: return "no_existence";
        default: return "failed";
    }
}

namespace scenario_detail {

inline ScenarioOutcome fail(int code, std::string message, std::optional<ScenarioReport> report = {}) {
    return {code, std::string(status_label(code)), std::move(message), std::move(report)};
}

inline std::filesystem::path resolve(const RunOptions& opt, const std::string& p) {
    const std::filesystem::path path(p);
    return path.is_absolute() ? path : opt.out_dir / path;
}

/// Upper bound for phi over the capital range a trajectory visits.
inline double production_bound(const ProductionFunction& phi, const Trajectory& tr) {
    const auto [lo, hi] = std::minmax_element(tr.k.begin(), tr.k.end());
    double m = 0.0;
    for (double k : tr.k) m = std::max(m, phi(k));
    constexpr int kProbe = 256;
    for (int i = 0; i <= kProbe; ++i) m = std::max(m, phi(*lo + (*hi - *lo) * i / kProbe));
    return m;
}

inline void write_outputs(const ScenarioConfig& cfg, const RunOptions& opt, const ScenarioReport& rep) {
    if (!rep.solutions.empty())
        emit_trajectory_csv(rep.solutions.front().solve.trajectory,
                            resolve(opt, cfg.outputs.trajectory_csv));
    write_text(resolve(opt, cfg.outputs.report_json), to_json(rep).dump(2) + "\n");
}

}  // namespace scenario_detail

/// Condition report, existence gate, solvers, regularity analysis, outputs.
/// The trajectory CSV holds the first solution (DP when it ran).
inline ScenarioOutcome run_scenario(const ScenarioConfig& cfg, const RunOptions& opt = {}) {
    using namespace scenario_detail;
    const GrowthProblem& p = cfg.problem;
    ScenarioReport rep;
    rep.name = cfg.name;
    rep.problem = cfg.problem_json;
    rep.seed = opt.seed;
    rep.forced = opt.force;
    SamplingPlan plan;
    plan.seed = opt.seed;

    try {
        rep.conditions = full_report(p, plan);
        rep.baseline_objective = baseline_process(p).objective;
        if (!rep.conditions.existence() && !opt.force) {
            write_outputs(cfg, opt, rep);
            return fail(kExitNoExistence,
                        "no existence result applies; rerun with --force to solve anyway", rep);
        }
    } catch (const std::exception& e) {
        return fail(kExitFailure, e.what());
    }

    const SwitchOptions sw{cfg.regularity.jump_threshold, cfg.regularity.min_plateau};
    DPOptions dp_opt;
    dp_opt.workers = opt.workers;
    try {
        std::vector<SolveReport> solves;
        if (cfg.solver.method != MethodChoice::Direct) {
            if (!rep.conditions.c1.holds() || !rep.conditions.c1.constant)
                throw SolverError("DP needs a certified growth constant to size its state grid");
            const DPGrid grid = make_dp_grid(p, *rep.conditions.c1.constant, cfg.solver.N_t,
                                             cfg.solver.N_k, cfg.solver.N_s);
            solves.push_back(solve_dp(p, grid, dp_opt));
        }
        if (cfg.solver.method != MethodChoice::DP) {
            DirectOptions d;
            d.max_iter = cfg.solver.max_iter;
            d.tol = cfg.solver.tol;
            solves.push_back(cfg.solver.multistart.empty()
                                 ? solve_direct(p, cfg.solver.n_intervals, cfg.solver.init, d)
                                 : solve_direct_multistart(p, cfg.solver.n_intervals,
                                                           cfg.solver.multistart, d));
        }
        for (auto& s : solves) {
            RegularityReport reg = analyze_regularity(s.policy, s.trajectory, sw);
            const bool lip = lipschitz_check(s.trajectory, production_bound(p.production(), s.trajectory),
                                             p.sigma())
                                 .ok;
            rep.solutions.push_back({std::move(s), std::move(reg), lip});
        }
        if (!cfg.regularity.resolutions.empty() && rep.conditions.c1.holds())
            rep.conjecture_probe = probe_conjecture_c(p, cfg.regularity.resolutions, sw, dp_opt);
    } catch (const SolverError& e) {
        return fail(kExitSolver, e.what());
    } catch (const DomainError& e) {
        return fail(kExitSolver, e.what());
    }

    try {
        write_outputs(cfg, opt, rep);
    } catch (const std::exception& e) {
        return fail(kExitFailure, e.what(), rep);
    }
    return {kExitOk, "ok", "", std::move(rep)};
}

/// Loads, validates and runs a config file; config problems map to exit 2.
inline ScenarioOutcome run_scenario_file(const std::filesystem::path& path, const RunOptions& opt = {}) {
    std::optional<ScenarioConfig> cfg;
    try {
        cfg.emplace(parse_scenario(read_config_file(path)));
    } catch (const ConfigError& e) {
        return scenario_detail::fail(kExitConfig, path.string() + ": " + e.what());
    }
    return run_scenario(*cfg, opt);
}

// Sweeps ------------------------------------------------------------------------

inline const std::vector<std::string_view>& sweep_axes() {
    static const std::vector<std::string_view> axes = {"A", "alpha", "beta", "sigma", "lambda", "k0", "T"};
    return axes;
}

/// Copy of the config document with one parameter replaced.
inline json apply_axis(json doc, std::string_view axis, double value) {
    auto& problem = doc.at("problem");
    if (axis == "sigma" || axis == "lambda" || axis == "k0" || axis == "T") {
        problem[std::string(axis)] = value;
        return doc;
    }
    if (axis == "A" || axis == "alpha") {
        auto& prod = problem.at("production");
        const auto type = prod.value("type", std::string());
        const bool ok = axis == "A" ? (type == "AK" || type == "CobbDouglas")
                                    : (type == "CobbDouglas" || type == "PlateauPower");
        if (!ok)
            throw ConfigError("problem.production." + std::string(axis),
                              "production type '" + type + "' has no such parameter");
        prod[std::string(axis)] = value;
        return doc;
    }
    if (axis == "beta") {
        auto& util = problem.at("utility");
        const auto type = util.value("type", std::string());
        if (type != "Power" && type != "Linear")
            throw ConfigError("problem.utility.beta", "utility type '" + type + "' has no beta");
        util = {{"type", "Power"}, {"beta", value}};
        return doc;
    }
    throw ConfigError("axis", "unknown sweep axis '" + std::string(axis) + "'");
}

struct SweepRow {
    std::size_t index = 0;
    std::string value;
    ScenarioOutcome outcome;
};

struct SweepOutcome {
    int exit_code = kExitOk;
    std::vector<SweepRow> rows;
};

inline std::string format_number(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

/// `index,value,status,exit_code,existence,objective_dp,objective_direct,switch_count`;
/// empty cells where a value does not exist.
inline std::string sweep_summary_csv(const SweepOutcome& s) {
    std::string out = "index,value,status,exit_code,existence,objective_dp,objective_direct,switch_count\n";
    for (const auto& row : s.rows) {
        std::string existence, dp, direct, switches;
        if (const auto& r = row.outcome.report) {
            existence = std::string(to_string(r->conditions.existence_conclusion));
            for (const auto& e : r->solutions) {
                (e.solve.method == SolveMethod::DP ? dp : direct) = format_number(e.solve.objective);
                if (switches.empty()) switches = std::to_string(e.regularity.switch_count);
            }
        }
        out += std::to_string(row.index) + "," + row.value + "," + row.outcome.status + "," +
               std::to_string(row.outcome.exit_code) + "," + existence + "," + dp + "," + direct +
               "," + switches + "\n";
    }
    return out;
}

/// Runs the base config once per value into `<out_dir>/<index>/`, at most
/// `jobs` at a time, then writes `<out_dir>/summary.csv` in sweep order.
/// Failed rows are recorded and make the exit code nonzero.
inline SweepOutcome run_sweep(const json& base, std::string_view axis, const std::vector<double>& values,
                              const RunOptions& opt = {}, unsigned jobs = 1) {
    if (std::find(sweep_axes().begin(), sweep_axes().end(), axis) == sweep_axes().end())
        throw ConfigError("axis", "unknown sweep axis '" + std::string(axis) +
                                      "' (expected A, alpha, beta, sigma, lambda, k0 or T)");
    SweepOutcome out;
    out.rows.resize(values.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < values.size(); i = next++) {
            char dir[16];
            std::snprintf(dir, sizeof dir, "%03zu", i);
            RunOptions row_opt = opt;
            row_opt.out_dir = opt.out_dir / dir;
            SweepRow& row = out.rows[i];
            row.index = i;
            row.value = format_number(values[i]);
            try {
                const ScenarioConfig cfg = parse_scenario(apply_axis(base, axis, values[i]));
                row.outcome = run_scenario(cfg, row_opt);
            } catch (const ConfigError& e) {
                row.outcome = scenario_detail::fail(kExitConfig, e.what());
            } catch (const std::exception& e) {
                row.outcome = scenario_detail::fail(kExitFailure, e.what());
            }
        }
    };
    const unsigned n = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(values.size())));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < n; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (const auto& row : out.rows)
        if (row.outcome.exit_code != kExitOk) out.exit_code = kExitFailure;
    write_text(opt.out_dir / "summary.csv", sweep_summary_csv(out));
    return out;
}

}  // namespace growthopt
