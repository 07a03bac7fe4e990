#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "growthopt/conditions.hpp"
#include "growthopt/errors.hpp"
#include "growthopt/problem.hpp"
#include "growthopt/regularity.hpp"
#include "growthopt/solve_report.hpp"

namespace growthopt {

using json = nlohmann::json;

/// Bad report document (as opposed to a bad scenario config).
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace io_detail {

// JSON has no infinities; they are written as strings.
inline json number(double x) {
    if (std::isnan(x)) return "NaN";
    if (std::isinf(x)) return x > 0 ? "Infinity" : "-Infinity";
    return x;
}

inline double number(const json& j) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "NaN") return std::numeric_limits<double>::quiet_NaN();
        if (s == "Infinity") return std::numeric_limits<double>::infinity();
        if (s == "-Infinity") return -std::numeric_limits<double>::infinity();
    }
    throw FormatError("expected a number, got " + j.dump());
}

inline json numbers(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(number(x));
    return a;
}

inline std::vector<double> numbers(const json& j) {
    std::vector<double> v;
    v.reserve(j.size());
    for (const auto& x : j) v.push_back(number(x));
    return v;
}

template <class Enum, std::size_t N>
Enum parse_enum(const json& j, const Enum (&all)[N]) {
    const auto s = j.get<std::string>();
    for (Enum e : all)
        if (to_string(e) == s) return e;
    throw FormatError("unknown label '" + s + "'");
}

inline const json& at(const json& j, std::string_view key) {
    auto it = j.find(key);
    if (it == j.end()) throw FormatError("missing field '" + std::string(key) + "'");
    return *it;
}

}  // namespace io_detail

// Verdicts and condition reports ----------------------------------------------

inline json to_json(const Verdict& v) {
    using namespace io_detail;
    return {{"status", to_string(v.status)},
            {"constant", v.constant ? number(*v.constant) : json(nullptr)},
            {"witness_kind", v.witness_kind},
            {"witness", numbers(v.witness)},
            {"violation", number(v.violation)}};
}

inline Verdict verdict_from_json(const json& j) {
    using namespace io_detail;
    constexpr VerdictStatus all[] = {VerdictStatus::CertifiedTrue, VerdictStatus::SampledTrue,
                                     VerdictStatus::Refuted};
    Verdict v;
    v.status = parse_enum(at(j, "status"), all);
    if (const auto& c = at(j, "constant"); !c.is_null()) v.constant = number(c);
    v.witness_kind = at(j, "witness_kind").get<std::string>();
    v.witness = numbers(at(j, "witness"));
    v.violation = number(at(j, "violation"));
    return v;
}

inline json to_json(const ConditionReport& r) {
    using namespace io_detail;
    return {{"problem_type", to_string(r.problem_type)},
            {"c1", to_json(r.c1)},
            {"limsup_estimate", number(r.limsup_estimate)},
            {"limsup_finite", r.limsup_finite},
            {"phi_concave", to_json(r.phi_concave)},
            {"F_concave", to_json(r.F_concave)},
            {"omega_concave", to_json(r.omega_concave)},
            {"qtilde_convex", to_json(r.qtilde_convex)},
            {"existence_conclusion", to_string(r.existence_conclusion)}};
}

inline ConditionReport condition_report_from_json(const json& j) {
    using namespace io_detail;
    constexpr ProblemType types[] = {ProblemType::LinearLinear, ProblemType::LinearNonlinear,
                                     ProblemType::NonlinearLinear, ProblemType::NonlinearNonlinear,
                                     ProblemType::Other};
    constexpr ExistenceBasis bases[] = {ExistenceBasis::PowerModel, ExistenceBasis::ConcaveModel,
                                        ExistenceBasis::LinearGrowth, ExistenceBasis::None};
    ConditionReport r;
    r.problem_type = parse_enum(at(j, "problem_type"), types);
    r.c1 = verdict_from_json(at(j, "c1"));
    r.limsup_estimate = number(at(j, "limsup_estimate"));
    r.limsup_finite = at(j, "limsup_finite").get<bool>();
    r.phi_concave = verdict_from_json(at(j, "phi_concave"));
    r.F_concave = verdict_from_json(at(j, "F_concave"));
    r.omega_concave = verdict_from_json(at(j, "omega_concave"));
    r.qtilde_convex = verdict_from_json(at(j, "qtilde_convex"));
    r.existence_conclusion = parse_enum(at(j, "existence_conclusion"), bases);
    return r;
}

// Policies, trajectories, solver output ----------------------------------------

inline json to_json(const Policy& p) {
    return {{"grid", io_detail::numbers(p.grid())}, {"values", io_detail::numbers(p.values())}};
}

inline Policy policy_from_json(const json& j) {
    return Policy(io_detail::numbers(io_detail::at(j, "grid")),
                  io_detail::numbers(io_detail::at(j, "values")));
}

inline json to_json(const Trajectory& t) {
    using namespace io_detail;
    return {{"t", numbers(t.t)},
            {"k", numbers(t.k)},
            {"s", numbers(t.s)},
            {"integrand", numbers(t.integrand)},
            {"cumulative", numbers(t.cumulative)},
            {"objective", number(t.objective)}};
}

inline Trajectory trajectory_from_json(const json& j) {
    using namespace io_detail;
    Trajectory t;
    t.t = numbers(at(j, "t"));
    t.k = numbers(at(j, "k"));
    t.s = numbers(at(j, "s"));
    t.integrand = numbers(at(j, "integrand"));
    t.cumulative = numbers(at(j, "cumulative"));
    t.objective = number(at(j, "objective"));
    return t;
}

inline json to_json(const SolveReport& r) {
    using namespace io_detail;
    json vf = nullptr;
    if (r.value_function)
        vf = {{"states", numbers(r.value_function->states)},
              {"values", numbers(r.value_function->values)},
              {"value_at_k0", number(r.value_function->value_at_k0)}};
    return {{"method", to_string(r.method)},
            {"objective", number(r.objective)},
            {"iterations", r.iterations},
            {"gradient_norm_final", number(r.gradient_norm_final)},
            {"converged", r.converged},
            {"baseline_fallback", r.baseline_fallback},
            {"policy", to_json(r.policy)},
            {"trajectory", to_json(r.trajectory)},
            {"value_function", vf}};
}

inline SolveReport solve_report_from_json(const json& j) {
    using namespace io_detail;
    constexpr SolveMethod methods[] = {SolveMethod::DP, SolveMethod::Direct};
    SolveReport r(parse_enum(at(j, "method"), methods), policy_from_json(at(j, "policy")),
                  trajectory_from_json(at(j, "trajectory")));
    r.objective = number(at(j, "objective"));
    r.iterations = at(j, "iterations").get<std::size_t>();
    r.gradient_norm_final = number(at(j, "gradient_norm_final"));
    r.converged = at(j, "converged").get<bool>();
    r.baseline_fallback = at(j, "baseline_fallback").get<bool>();
    if (const auto& vf = at(j, "value_function"); !vf.is_null())
        r.value_function = ValueSlice{numbers(at(vf, "states")), numbers(at(vf, "values")),
                                      number(at(vf, "value_at_k0"))};
    return r;
}

// Regularity --------------------------------------------------------------------

inline json to_json(const RegularityReport& r) {
    using namespace io_detail;
    json plateaus = json::array();
    for (const auto& p : r.plateaus)
        plateaus.push_back({{"first_interval", p.first},
                            {"last_interval", p.last},
                            {"start", number(p.start)},
                            {"end", number(p.end)},
                            {"mean", number(p.mean)}});
    return {{"switch_times", numbers(r.switch_times)},
            {"switch_count", r.switch_count},
            {"is_probably_bang_bang", r.is_probably_bang_bang},
            {"lipschitz_estimate", number(r.lipschitz_estimate)},
            {"plateau_values", plateaus}};
}

inline RegularityReport regularity_report_from_json(const json& j) {
    using namespace io_detail;
    RegularityReport r;
    r.switch_times = numbers(at(j, "switch_times"));
    r.switch_count = at(j, "switch_count").get<std::size_t>();
    r.is_probably_bang_bang = at(j, "is_probably_bang_bang").get<bool>();
    r.lipschitz_estimate = number(at(j, "lipschitz_estimate"));
    for (const auto& p : at(j, "plateau_values"))
        r.plateaus.push_back({at(p, "first_interval").get<std::size_t>(),
                              at(p, "last_interval").get<std::size_t>(), number(at(p, "start")),
                              number(at(p, "end")), number(at(p, "mean"))});
    return r;
}

inline json to_json(const ConjectureProbe& c) {
    using namespace io_detail;
    json levels = json::array();
    for (const auto& l : c.levels)
        levels.push_back({{"N_t", l.resolution.time_steps},
                          {"N_k", l.resolution.state_nodes},
                          {"N_s", l.resolution.control_nodes},
                          {"objective", number(l.objective)},
                          {"switch_count", l.switch_count},
                          {"switch_times", numbers(l.switch_times)}});
    return {{"label", c.label},
            {"power_family", c.power_family},
            {"levels", levels},
            {"stable", c.stable},
            {"at_most_one_switch", c.at_most_one_switch}};
}

inline ConjectureProbe conjecture_probe_from_json(const json& j) {
    using namespace io_detail;
    ConjectureProbe c;
    c.label = at(j, "label").get<std::string>();
    c.power_family = at(j, "power_family").get<bool>();
    for (const auto& l : at(j, "levels"))
        c.levels.push_back({{at(l, "N_t").get<std::size_t>(), at(l, "N_k").get<std::size_t>(),
                             at(l, "N_s").get<std::size_t>()},
                            number(at(l, "objective")),
                            at(l, "switch_count").get<std::size_t>(),
                            numbers(at(l, "switch_times"))});
    c.stable = at(j, "stable").get<bool>();
    c.at_most_one_switch = at(j, "at_most_one_switch").get<bool>();
    return c;
}

// Trajectory CSV -----------------------------------------------------------------

/// One row per node, `t,k,s,integrand,cumulative_objective`, 12 significant
/// digits. The s column repeats the last control on the final node.
inline std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "t,k,s,integrand,cumulative_objective\n";
    char line[160];
    for (std::size_t j = 0; j < traj.nodes(); ++j) {
        if (traj.k[j] < 0.0)
            throw DomainError("trajectory: negative capital at node " + std::to_string(j));
        const double s = traj.s.empty() ? 0.0 : traj.s[std::min(j, traj.s.size() - 1)];
        std::snprintf(line, sizeof line, "%.12g,%.12g,%.12g,%.12g,%.12g\n", traj.t[j], traj.k[j], s,
                      traj.integrand[j], traj.cumulative[j]);
        out += line;
    }
    return out;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw std::runtime_error(path.string() + ": " + ec.message());
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error(path.string() + ": cannot open for writing");
    f << text;
    f.close();
    if (!f) throw std::runtime_error(path.string() + ": write failed");
}

inline void emit_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path) {
    write_text(path, trajectory_csv(traj));
}

}  // namespace growthopt
