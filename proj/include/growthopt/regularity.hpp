#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "growthopt/conditions.hpp"
#include "growthopt/dp_solver.hpp"
#include "growthopt/errors.hpp"
#include "growthopt/problem.hpp"

namespace growthopt {

/// Maximal run of policy intervals treated as one constant level.
struct Plateau {
    std::size_t first = 0;  // first interval index
    std::size_t last = 0;   // last interval index (inclusive)
    double start = 0.0;
    double end = 0.0;
    double mean = 0.0;      // duration-weighted mean of s

    std::size_t length() const noexcept { return last - first + 1; }

    friend bool operator==(const Plateau&, const Plateau&) = default;
};

struct RegularityReport {
    std::vector<double> switch_times;
    std::size_t switch_count = 0;
    bool is_probably_bang_bang = false;
    /// max |dk/dt| over the trajectory nodes; zero when no trajectory was given.
    double lipschitz_estimate = 0.0;
    std::vector<Plateau> plateaus;

    friend bool operator==(const RegularityReport&, const RegularityReport&) = default;
};

struct SwitchOptions {
    double jump_threshold = 0.2;
    std::size_t min_plateau = 3;
    /// Plateau means within this distance of 0 or 1 count as extreme.
    double bang_bang_tolerance = 0.05;
};

namespace detail {

inline void merge_into(std::vector<Plateau>& ps, std::size_t keep, std::size_t drop,
                       const std::vector<double>& grid) {
    Plateau& a = ps[keep];
    const Plateau& b = ps[drop];
    const double wa = a.end - a.start, wb = b.end - b.start;
    a.mean = (a.mean * wa + b.mean * wb) / (wa + wb);
    a.first = std::min(a.first, b.first);
    a.last = std::max(a.last, b.last);
    a.start = grid[a.first];
    a.end = grid[a.last + 1];
    ps.erase(ps.begin() + static_cast<std::ptrdiff_t>(drop));
}

}  // namespace detail

/// Splits a piecewise-constant policy into plateaus and locates its jumps.
///
/// Consecutive intervals join the current plateau while they stay within
/// `jump_threshold` of its mean. Plateaus shorter than `min_plateau`
/// intervals are then absorbed, shortest first, into the neighbour whose
/// mean is closer; neighbours left closer than the threshold are fused. Every
/// remaining boundary is a switch.
inline RegularityReport detect_switches(const Policy& policy, const SwitchOptions& opt = {}) {
    if (!(opt.jump_threshold > 0.0 && opt.jump_threshold < 1.0))
        throw DomainError("detect_switches: jump_threshold must lie in (0, 1)");
    if (opt.min_plateau < 1) throw DomainError("detect_switches: min_plateau must be >= 1");
    const auto& grid = policy.grid();
    const auto& s = policy.values();

    std::vector<Plateau> ps;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const double w = grid[i + 1] - grid[i];
        if (!ps.empty() && std::abs(s[i] - ps.back().mean) < opt.jump_threshold) {
            Plateau& p = ps.back();
            const double wp = p.end - p.start;
            p.mean = (p.mean * wp + s[i] * w) / (wp + w);
            p.last = i;
            p.end = grid[i + 1];
        } else {
            ps.push_back({i, i, grid[i], grid[i + 1], s[i]});
        }
    }

    while (ps.size() > 1) {
        std::size_t shortest = ps.size();
        for (std::size_t q = 0; q < ps.size(); ++q)
            if (ps[q].length() < opt.min_plateau &&
                (shortest == ps.size() || ps[q].length() < ps[shortest].length()))
                shortest = q;
        if (shortest == ps.size()) break;
        std::size_t target;
        if (shortest == 0) {
            target = 1;
        } else if (shortest + 1 == ps.size()) {
            target = shortest - 1;
        } else {
            const double dl = std::abs(ps[shortest - 1].mean - ps[shortest].mean);
            const double dr = std::abs(ps[shortest + 1].mean - ps[shortest].mean);
            target = dr < dl ? shortest + 1 : shortest - 1;
        }
        detail::merge_into(ps, std::min(target, shortest), std::max(target, shortest), grid);
    }

    for (bool fused = true; fused;) {
        fused = false;
        for (std::size_t q = 0; q + 1 < ps.size(); ++q)
            if (std::abs(ps[q].mean - ps[q + 1].mean) < opt.jump_threshold) {
                detail::merge_into(ps, q, q + 1, grid);
                fused = true;
                break;
            }
    }

    RegularityReport r;
    for (std::size_t q = 1; q < ps.size(); ++q) r.switch_times.push_back(ps[q].start);
    r.switch_count = r.switch_times.size();
    r.is_probably_bang_bang = std::all_of(ps.begin(), ps.end(), [&](const Plateau& p) {
        return p.mean <= opt.bang_bang_tolerance || p.mean >= 1.0 - opt.bang_bang_tolerance;
    });
    r.plateaus = std::move(ps);
    return r;
}

/// Policy with every interval replaced by its plateau mean.
inline Policy plateau_policy(const Policy& policy, const RegularityReport& r) {
    std::vector<double> v(policy.intervals());
    for (const auto& p : r.plateaus)
        for (std::size_t i = p.first; i <= p.last; ++i) v[i] = std::clamp(p.mean, 0.0, 1.0);
    return policy.with_values(std::move(v));
}

inline double max_slope(const Trajectory& traj, std::size_t* where = nullptr) {
    double m = 0.0;
    for (std::size_t j = 0; j + 1 < traj.nodes(); ++j) {
        const double slope = std::abs(traj.k[j + 1] - traj.k[j]) / (traj.t[j + 1] - traj.t[j]);
        if (slope > m) {
            m = slope;
            if (where) *where = j;
        }
    }
    return m;
}

/// detect_switches plus the Lipschitz estimate of the capital path.
inline RegularityReport analyze_regularity(const Policy& policy, const Trajectory& traj,
                                           const SwitchOptions& opt = {}) {
    RegularityReport r = detect_switches(policy, opt);
    r.lipschitz_estimate = max_slope(traj);
    return r;
}

struct LipschitzCheck {
    bool ok = true;
    double max_slope = 0.0;
    double bound = 0.0;
    std::size_t node = 0;  // start node of the steepest segment

    friend bool operator==(const LipschitzCheck&, const LipschitzCheck&) = default;
};

/// max |dk/dt| <= phi_bound + sigma max k + 1e-6, which follows from
/// |s phi(k) - sigma k| <= phi(k) + sigma k along any feasible path.
inline LipschitzCheck lipschitz_check(const Trajectory& traj, double phi_bound, double sigma) {
    LipschitzCheck c;
    const double k_top = traj.k.empty() ? 0.0 : *std::max_element(traj.k.begin(), traj.k.end());
    c.bound = phi_bound + sigma * k_top + 1e-6;
    c.max_slope = max_slope(traj, &c.node);
    c.ok = c.max_slope <= c.bound;
    return c;
}

/// DP resolution triple.
struct Resolution {
    std::size_t time_steps = 0;
    std::size_t state_nodes = 0;
    std::size_t control_nodes = 0;

    friend bool operator==(const Resolution&, const Resolution&) = default;
};

struct ProbeLevel {
    Resolution resolution;
    double objective = 0.0;
    std::size_t switch_count = 0;
    std::vector<double> switch_times;

    friend bool operator==(const ProbeLevel&, const ProbeLevel&) = default;
};

/// Numerical evidence on "at most one switch". Never a proof: `label` is
/// always "evidence".
struct ConjectureProbe {
    std::string label = "evidence";
    /// Power production with power utility, the class the statement is about.
    bool power_family = false;
    std::vector<ProbeLevel> levels;
    /// Same switch count at the two finest resolutions.
    bool stable = false;
    bool at_most_one_switch = false;

    friend bool operator==(const ConjectureProbe&, const ConjectureProbe&) = default;
};

/// Solves with the DP at each resolution and records the detected switches.
/// Any problem with a linear-growth certificate is accepted (the DP grid
/// needs it); `power_family` tells whether the result bears on the
/// power-model statement.
inline ConjectureProbe probe_conjecture_c(const GrowthProblem& p,
                                          const std::vector<Resolution>& resolutions,
                                          const SwitchOptions& opt = {},
                                          const DPOptions& dp_opt = {}) {
    if (resolutions.empty()) throw DomainError("probe_conjecture_c: no resolutions given");
    const Verdict c1 = check_c1(p.production(), p.sigma());
    if (!c1.holds() || !c1.constant)
        throw DomainError("probe_conjecture_c: production has no linear-growth certificate");
    ConjectureProbe probe;
    probe.power_family = classify_problem(p) != ProblemType::Other;
    for (const auto& res : resolutions) {
        const DPGrid grid =
            make_dp_grid(p, *c1.constant, res.time_steps, res.state_nodes, res.control_nodes);
        const SolveReport rep = solve_dp(p, grid, dp_opt);
        const RegularityReport reg = detect_switches(rep.policy, opt);
        probe.levels.push_back({res, rep.objective, reg.switch_count, reg.switch_times});
    }
    const auto n = probe.levels.size();
    probe.stable = n < 2 || probe.levels[n - 1].switch_count == probe.levels[n - 2].switch_count;
    probe.at_most_one_switch = std::all_of(probe.levels.begin(), probe.levels.end(),
                                           [](const ProbeLevel& l) { return l.switch_count <= 1; });
    return probe;
}

}  // namespace growthopt
