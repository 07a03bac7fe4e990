#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "growthopt/errors.hpp"
#include "growthopt/problem.hpp"

namespace growthopt {

/// Integration nodes refining a policy grid: each policy interval is split
/// into equal substeps no longer than the requested dt, so control switches
/// always fall on nodes.
struct StepGrid {
    std::vector<double> t;                 // nodes
    std::vector<std::size_t> interval;     // policy interval of step j (t[j] -> t[j+1])

    std::size_t steps() const noexcept { return interval.size(); }
};

inline StepGrid make_step_grid(const Policy& policy, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw DomainError("integrate: dt must be positive");
    StepGrid g;
    const auto& grid = policy.grid();
    g.t.push_back(grid.front());
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        const double len = grid[i + 1] - grid[i];
        const auto m = static_cast<std::size_t>(std::max(1.0, std::ceil(len / dt - 1e-9)));
        for (std::size_t q = 1; q <= m; ++q) {
            g.t.push_back(q == m ? grid[i + 1]
                                 : grid[i] + len * static_cast<double>(q) / static_cast<double>(m));
            g.interval.push_back(i);
        }
    }
    return g;
}

namespace detail {

inline double clamp_state(double k, double t) {
    if (k >= 0.0) return k;
    if (k >= -kClampTolerance) return 0.0;
    throw SolverError("capital ratio left the admissible set (k = " + std::to_string(k) +
                      " at t = " + std::to_string(t) + ")");
}

// s phi(k) - sigma k without argument validation; k must already be >= 0.
inline double rhs(const GrowthProblem& p, double k, double s) {
    return s * p.production()(k) - p.sigma() * k;
}

}  // namespace detail

/// Stage values of one classical Runge-Kutta step; kept so the discrete
/// adjoint can replay the step exactly.
struct Rk4Stages {
    double x1, x2, x3, x4;  // stage states (clamped to >= 0)
    double a1, a2, a3, a4;  // stage slopes
    double next;            // clamped end state
};

inline Rk4Stages rk4_step(const GrowthProblem& p, double t, double k, double s, double h) {
    Rk4Stages st{};
    st.x1 = k;
    st.a1 = detail::rhs(p, st.x1, s);
    st.x2 = detail::clamp_state(k + 0.5 * h * st.a1, t);
    st.a2 = detail::rhs(p, st.x2, s);
    st.x3 = detail::clamp_state(k + 0.5 * h * st.a2, t);
    st.a3 = detail::rhs(p, st.x3, s);
    st.x4 = detail::clamp_state(k + h * st.a3, t);
    st.a4 = detail::rhs(p, st.x4, s);
    st.next = detail::clamp_state(k + h / 6.0 * (st.a1 + 2.0 * st.a2 + 2.0 * st.a3 + st.a4), t + h);
    return st;
}

/// Integrates the capital dynamics under a piecewise-constant policy with the
/// classical fourth-order Runge-Kutta scheme (steps <= dt, aligned with the
/// policy grid) and accumulates the objective with the trapezoidal rule on
/// the same nodes.
inline Trajectory integrate(const GrowthProblem& p, const Policy& policy, double dt) {
    if (!policy.covers(p)) throw DomainError("integrate: policy grid must span [t0, T]");
    const StepGrid g = make_step_grid(policy, dt);
    const auto& sv = policy.values();
    const std::size_t n = g.t.size();

    Trajectory tr;
    tr.t = g.t;
    tr.k.resize(n);
    tr.s.resize(n - 1);
    tr.integrand.resize(n);
    tr.cumulative.resize(n);
    tr.k[0] = p.k0();
    tr.cumulative[0] = 0.0;
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double s = sv[g.interval[j]];
        const double h = g.t[j + 1] - g.t[j];
        tr.s[j] = s;
        tr.k[j + 1] = rk4_step(p, g.t[j], tr.k[j], s, h).next;
        const double f0 = objective_integrand(g.t[j], tr.k[j], s, p);
        const double f1 = objective_integrand(g.t[j + 1], tr.k[j + 1], s, p);
        tr.integrand[j] = f0;
        tr.cumulative[j + 1] = tr.cumulative[j] + 0.5 * h * (f0 + f1);
    }
    tr.integrand[n - 1] = objective_integrand(g.t[n - 1], tr.k[n - 1], sv.back(), p);
    tr.objective = tr.cumulative.back();
    return tr;
}

}  // namespace growthopt
