#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <thread>
#include <vector>

#include "growthopt/conditions.hpp"
#include "growthopt/errors.hpp"
#include "growthopt/integrator.hpp"
#include "growthopt/problem.hpp"
#include "growthopt/solve_report.hpp"

namespace growthopt {

/// Discretisation for the semi-Lagrangian solver.
struct DPGrid {
    std::size_t time_steps = 0;   // N_t uniform steps on [t0, T]
    std::vector<double> states;   // ascending, contains 0 and k0
    std::vector<double> controls; // uniform on [0, 1]
    double k_max = 0.0;
    double growth_constant = 0.0;
};

/// Builds the DP grid: N_t time steps, zero plus N_k - 1 log-spaced states
/// on [1e-6 K_max, K_max] with k0 inserted, and N_s uniform controls.
/// K_max comes from state_upper_bound with the given growth constant.
inline DPGrid make_dp_grid(const GrowthProblem& p, double growth_constant, std::size_t time_steps,
                           std::size_t state_nodes, std::size_t control_nodes) {
    if (time_steps < 1) throw DomainError("DP grid: need at least one time step");
    if (state_nodes < 2) throw DomainError("DP grid: need at least two state nodes");
    if (control_nodes < 2) throw DomainError("DP grid: need at least two control nodes");
    DPGrid g;
    g.time_steps = time_steps;
    g.growth_constant = growth_constant;
    g.k_max = state_upper_bound(p, growth_constant);
    g.states.push_back(0.0);
    if (g.k_max > 0.0) {
        for (double k : logspace(1e-6 * g.k_max, g.k_max, state_nodes - 1)) g.states.push_back(k);
        g.states.push_back(p.k0());
        std::sort(g.states.begin(), g.states.end());
        g.states.erase(std::unique(g.states.begin(), g.states.end()), g.states.end());
    }
    g.controls.resize(control_nodes);
    for (std::size_t m = 0; m < control_nodes; ++m)
        g.controls[m] = static_cast<double>(m) / static_cast<double>(control_nodes - 1);
    return g;
}

struct DPOptions {
    /// Step used to re-simulate the extracted policy.
    double resim_dt = 1e-4;
    /// Worker threads for the per-step maximisation; results do not depend on it.
    unsigned workers = 1;
};

namespace detail {

struct Bracket {
    std::uint32_t index = 0;  // lower node
    double weight = 0.0;      // weight of the upper node
};

inline Bracket bracket(const std::vector<double>& nodes, double x) {
    if (nodes.size() == 1) return {0, 0.0};
    if (x >= nodes.back()) return {static_cast<std::uint32_t>(nodes.size() - 2), 1.0};
    if (x <= nodes.front()) return {0, 0.0};
    auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
    const auto hi = static_cast<std::size_t>(it - nodes.begin());
    const std::size_t lo = hi - 1;
    return {static_cast<std::uint32_t>(lo), (x - nodes[lo]) / (nodes[hi] - nodes[lo])};
}

inline double interpolate(const std::vector<double>& values, Bracket b) {
    if (values.size() == 1) return values[0];
    return (1.0 - b.weight) * values[b.index] + b.weight * values[b.index + 1];
}

template <class Body>
void parallel_for(std::size_t n, unsigned workers, Body&& body) {
    if (workers <= 1 || n < 2 * workers) {
        body(std::size_t{0}, n);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk, hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&body, lo, hi] { body(lo, hi); });
    }
    for (auto& t : pool) t.join();
}

}  // namespace detail

/// Backward semi-Lagrangian value iteration
///
///   V(T, k) = 0,
///   V(t, k) = max_s [ omega((1 - s) phi(k)) e^{-lambda t} dt + V(t + dt, k + dt (s phi(k) - sigma k)) ]
///
/// with monotone linear interpolation in k. The greedy policy is extracted
/// forward from k0 (ties go to the smaller s) and re-simulated with
/// integrate(); the zero-saving process replaces it if it scores higher.
///
/// Throws SolverError when a state that is reachable from k0 queries the
/// value function above K_max.
inline SolveReport solve_dp(const GrowthProblem& p, const DPGrid& grid, const DPOptions& opt = {}) {
    const std::size_t nt = grid.time_steps;
    const std::size_t nk = grid.states.size();
    const std::size_t ns = grid.controls.size();
    if (nt == 0 || nk == 0 || ns == 0) throw DomainError("solve_dp: empty grid");
    const double dt = p.horizon() / static_cast<double>(nt);
    const auto& phi = p.production();
    const auto& omega = p.utility();

    // Transitions are autonomous: precompute the utility and the successor
    // bracket of every (state, control) pair once.
    std::vector<double> utility(nk * ns);
    std::vector<detail::Bracket> next(nk * ns);
    std::vector<double> overshoot(nk, 0.0);  // largest successor beyond K_max
    for (std::size_t j = 0; j < nk; ++j) {
        const double k = grid.states[j];
        const double phi_k = phi(k);
        for (std::size_t m = 0; m < ns; ++m) {
            const double s = grid.controls[m];
            const double k_next = std::max(0.0, k + dt * (s * phi_k - p.sigma() * k));
            utility[j * ns + m] = omega((1.0 - s) * phi_k);
            if (k_next > grid.k_max) overshoot[j] = std::max(overshoot[j], k_next);
            next[j * ns + m] = detail::bracket(grid.states, std::min(k_next, grid.k_max));
        }
    }

    std::vector<std::vector<double>> V(nt + 1, std::vector<double>(nk, 0.0));
    for (std::size_t n = nt; n-- > 0;) {
        const double t = p.t0() + dt * static_cast<double>(n);
        const double reach = reachable_bound(p, grid.growth_constant, t);
        const double weight = std::exp(-p.lambda() * t) * dt;
        const auto& Vn1 = V[n + 1];
        auto& Vn = V[n];
        for (std::size_t j = 0; j < nk && grid.states[j] <= reach * (1.0 + 1e-12); ++j)
            if (overshoot[j] > 0.0)
                throw SolverError("solve_dp: reachable state " + std::to_string(grid.states[j]) +
                                  " steps to " + std::to_string(overshoot[j]) +
                                  " beyond K_max = " + std::to_string(grid.k_max));
        detail::parallel_for(nk, opt.workers, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t j = lo; j < hi; ++j) {
                double best = -std::numeric_limits<double>::infinity();
                for (std::size_t m = 0; m < ns; ++m) {
                    const double q = utility[j * ns + m] * weight +
                                     detail::interpolate(Vn1, next[j * ns + m]);
                    if (q > best) best = q;
                }
                Vn[j] = best;
            }
        });
    }

    // Greedy forward extraction from k0 on the DP scheme.
    std::vector<double> values(nt);
    double k = p.k0();
    for (std::size_t n = 0; n < nt; ++n) {
        const double t = p.t0() + dt * static_cast<double>(n);
        const double phi_k = phi(k);
        const double weight = std::exp(-p.lambda() * t) * dt;
        double best = -std::numeric_limits<double>::infinity();
        double best_s = 0.0;
        for (double s : grid.controls) {
            const double k_next = std::max(0.0, k + dt * (s * phi_k - p.sigma() * k));
            if (k_next > grid.k_max * (1.0 + 1e-12))
                throw SolverError("solve_dp: greedy path left the state grid (k = " +
                                  std::to_string(k_next) + ")");
            const double q = omega((1.0 - s) * phi_k) * weight +
                             detail::interpolate(V[n + 1], detail::bracket(grid.states, k_next));
            if (q > best) {
                best = q;
                best_s = s;
            }
        }
        values[n] = best_s;
        k = rk4_step(p, t, k, best_s, dt).next;
    }

    Policy policy = Policy::uniform(p.t0(), p.T(), std::move(values));
    const double sim_dt = std::min(dt, opt.resim_dt);
    Trajectory tr = integrate(p, policy, sim_dt);

    SolveReport rep{SolveMethod::DP, policy, std::move(tr)};
    rep.iterations = nt;
    ValueSlice slice;
    slice.states = grid.states;
    slice.values = V[0];
    slice.value_at_k0 = detail::interpolate(V[0], detail::bracket(grid.states, p.k0()));
    rep.value_function = std::move(slice);

    Policy zero = policy.with_values(std::vector<double>(nt, 0.0));
    Trajectory zero_tr = integrate(p, zero, sim_dt);
    if (zero_tr.objective > rep.trajectory.objective) {
        rep.policy = std::move(zero);
        rep.trajectory = std::move(zero_tr);
        rep.baseline_fallback = true;
    }
    rep.objective = rep.trajectory.objective;
    return rep;
}

}  // namespace growthopt
