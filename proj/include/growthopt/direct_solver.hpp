#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "growthopt/errors.hpp"
#include "growthopt/integrator.hpp"
#include "growthopt/problem.hpp"
#include "growthopt/solve_report.hpp"

namespace growthopt {

// Consumption is floored here before marginal utility is evaluated.
inline constexpr double kConsumptionFloor = 1e-12;

struct ObjectiveGradient {
    double objective = 0.0;
    std::vector<double> gradient;  // dI/ds_i per policy interval
};

/// Objective and its gradient with respect to the policy values.
///
/// The forward pass is exactly integrate(); the backward pass is the
/// discrete adjoint of the Runge-Kutta steps and of the trapezoidal sum. Its
/// continuous limit is the costate equation
///   p' = -[omega'(c)(1 - s) phi'(k) e^{-lambda t} + p (s phi'(k) - sigma)],  p(T) = 0,
/// with dI/ds_i = int_{interval i} [-omega'(c) phi(k) e^{-lambda t} + p phi(k)] dt.
inline ObjectiveGradient objective_gradient(const GrowthProblem& p, const Policy& policy, double dt) {
    if (!policy.covers(p)) throw DomainError("objective_gradient: policy grid must span [t0, T]");
    const StepGrid g = make_step_grid(policy, dt);
    const auto& sv = policy.values();
    const auto& phi = p.production();
    const auto& omega = p.utility();
    const std::size_t steps = g.steps();

    std::vector<double> k(steps + 1);
    std::vector<Rk4Stages> stages(steps);
    std::vector<unsigned char> clamped(steps * 4, 0);
    k[0] = p.k0();
    double J = 0.0;
    for (std::size_t j = 0; j < steps; ++j) {
        const double s = sv[g.interval[j]];
        const double h = g.t[j + 1] - g.t[j];
        const auto& st = stages[j] = rk4_step(p, g.t[j], k[j], s, h);
        clamped[4 * j + 0] = k[j] + 0.5 * h * st.a1 < 0.0;
        clamped[4 * j + 1] = k[j] + 0.5 * h * st.a2 < 0.0;
        clamped[4 * j + 2] = k[j] + h * st.a3 < 0.0;
        clamped[4 * j + 3] = k[j] + h / 6.0 * (st.a1 + 2.0 * st.a2 + 2.0 * st.a3 + st.a4) < 0.0;
        k[j + 1] = st.next;
        const double f0 = objective_integrand(g.t[j], k[j], s, p);
        const double f1 = objective_integrand(g.t[j + 1], k[j + 1], s, p);
        J += 0.5 * h * (f0 + f1);
    }

    auto g_x = [&](double x, double s) { return s * phi.derivative(x) - p.sigma(); };
    auto g_s = [&](double x) { return phi(x); };
    auto f_x = [&](double t, double x, double s) {
        const double c = std::max((1.0 - s) * phi(x), kConsumptionFloor);
        return omega.derivative(c) * (1.0 - s) * phi.derivative(x) * std::exp(-p.lambda() * t);
    };
    auto f_s = [&](double t, double x, double s) {
        const double c = std::max((1.0 - s) * phi(x), kConsumptionFloor);
        return -omega.derivative(c) * phi(x) * std::exp(-p.lambda() * t);
    };

    ObjectiveGradient out;
    out.objective = J;
    out.gradient.assign(sv.size(), 0.0);
    double bar_next = 0.0;  // dJ/dk_{j+1}
    for (std::size_t j = steps; j-- > 0;) {
        const std::size_t i = g.interval[j];
        const double s = sv[i];
        const double h = g.t[j + 1] - g.t[j];
        const auto& st = stages[j];
        double bar_s = 0.0;

        bar_next += 0.5 * h * f_x(g.t[j + 1], k[j + 1], s);
        bar_s += 0.5 * h * f_s(g.t[j + 1], k[j + 1], s);

        const double lam = clamped[4 * j + 3] ? 0.0 : bar_next;
        double ba1 = lam * h / 6.0, ba2 = lam * h / 3.0, ba3 = lam * h / 3.0;
        const double ba4 = lam * h / 6.0;
        double bar_k = lam;

        bar_s += ba4 * g_s(st.x4);
        const double bx4 = clamped[4 * j + 2] ? 0.0 : ba4 * g_x(st.x4, s);
        bar_k += bx4;
        ba3 += h * bx4;

        bar_s += ba3 * g_s(st.x3);
        const double bx3 = clamped[4 * j + 1] ? 0.0 : ba3 * g_x(st.x3, s);
        bar_k += bx3;
        ba2 += 0.5 * h * bx3;

        bar_s += ba2 * g_s(st.x2);
        const double bx2 = clamped[4 * j + 0] ? 0.0 : ba2 * g_x(st.x2, s);
        bar_k += bx2;
        ba1 += 0.5 * h * bx2;

        bar_s += ba1 * g_s(st.x1);
        bar_k += ba1 * g_x(st.x1, s);

        bar_k += 0.5 * h * f_x(g.t[j], k[j], s);
        bar_s += 0.5 * h * f_s(g.t[j], k[j], s);

        out.gradient[i] += bar_s;
        bar_next = bar_k;
    }
    return out;
}

struct GradientComparison {
    double adjoint = 0.0;
    double finite_difference = 0.0;

    double relative_gap() const {
        const double scale = std::max({std::abs(adjoint), std::abs(finite_difference), 1e-12});
        return std::abs(adjoint - finite_difference) / scale;
    }
};

/// Adjoint derivative dI/ds_i next to the central difference
/// (I(s_i + h) - I(s_i - h)) / 2h. Requires s_i in (h, 1 - h).
inline GradientComparison gradient_check(const GrowthProblem& p, const Policy& policy,
                                         std::size_t interval, double h, double dt = 1e-3) {
    if (!(h > 0.0)) throw DomainError("gradient_check: perturbation must be positive");
    if (interval >= policy.intervals()) throw DomainError("gradient_check: interval out of range");
    const double s = policy.values()[interval];
    if (!(s > h && s < 1.0 - h))
        throw DomainError("gradient_check: control must be interior, s_i in (h, 1 - h)");

    GradientComparison out;
    out.adjoint = objective_gradient(p, policy, dt).gradient[interval];
    auto perturbed = [&](double delta) {
        auto v = policy.values();
        v[interval] += delta;
        return integrate(p, policy.with_values(std::move(v)), dt).objective;
    };
    out.finite_difference = (perturbed(h) - perturbed(-h)) / (2.0 * h);
    return out;
}

struct DirectOptions {
    std::size_t max_iter = 2000;
    double tol = 1e-6;
    /// Integration step inside the optimisation loop.
    double dt = 1e-3;
    /// Integration step for the final re-simulation.
    double resim_dt = 1e-4;
    double initial_step = 1.0;
    double shrink = 0.5;
    double armijo = 1e-4;
    std::size_t max_halvings = 40;
};

/// Projected gradient ascent on piecewise-constant controls.
///
/// The ascent direction is the gradient density dI/ds_i / |interval i| (the
/// L2 representer on [t0, T]); steps are projected onto [0, 1] and accepted
/// by Armijo backtracking. Stops when the weighted norm of the projected
/// unit step falls to `tol`; reaching `max_iter` or a failed line search
/// yields a non-converged report carrying the best iterate.
inline SolveReport solve_direct(const GrowthProblem& p, const Policy& init,
                                const DirectOptions& opt = {}) {
    if (!init.covers(p)) throw DomainError("solve_direct: initial policy must span [t0, T]");
    const std::size_t n = init.intervals();
    std::vector<double> width(n);
    for (std::size_t i = 0; i < n; ++i) width[i] = init.grid()[i + 1] - init.grid()[i];

    std::vector<double> x = init.values();
    ObjectiveGradient cur = objective_gradient(p, init, opt.dt);
    std::size_t iter = 0;
    bool converged = false;
    double pg_norm = 0.0;

    auto project = [](double v) { return std::clamp(v, 0.0, 1.0); };
    while (true) {
        std::vector<double> dir(n);
        double sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            dir[i] = cur.gradient[i] / width[i];
            const double step = project(x[i] + dir[i]) - x[i];
            sq += width[i] * step * step;
        }
        pg_norm = std::sqrt(sq);
        if (pg_norm <= opt.tol) {
            converged = true;
            break;
        }
        if (iter >= opt.max_iter) break;

        bool accepted = false;
        double alpha = opt.initial_step;
        for (std::size_t q = 0; q <= opt.max_halvings; ++q, alpha *= opt.shrink) {
            std::vector<double> trial(n);
            double predicted = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                trial[i] = project(x[i] + alpha * dir[i]);
                predicted += cur.gradient[i] * (trial[i] - x[i]);
            }
            if (!(predicted > 0.0)) break;
            ObjectiveGradient next = objective_gradient(p, init.with_values(trial), opt.dt);
            if (next.objective >= cur.objective + opt.armijo * predicted) {
                x = std::move(trial);
                cur = std::move(next);
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
        ++iter;
    }

    Policy policy = init.with_values(x);
    const double sim_dt = std::min(opt.dt, opt.resim_dt);
    SolveReport rep{SolveMethod::Direct, policy, integrate(p, policy, sim_dt)};
    rep.iterations = iter;
    rep.gradient_norm_final = pg_norm;
    rep.converged = converged;

    Policy zero = init.with_values(std::vector<double>(n, 0.0));
    Trajectory zero_tr = integrate(p, zero, sim_dt);
    if (zero_tr.objective > rep.trajectory.objective) {
        rep.policy = std::move(zero);
        rep.trajectory = std::move(zero_tr);
        rep.baseline_fallback = true;
    }
    rep.objective = rep.trajectory.objective;
    return rep;
}

/// Convenience overload with the uniform n_intervals grid and a constant
/// initial policy.
inline SolveReport solve_direct(const GrowthProblem& p, std::size_t n_intervals, double init_value,
                                const DirectOptions& opt = {}) {
    if (n_intervals < 1) throw DomainError("solve_direct: need at least one interval");
    return solve_direct(p, Policy::constant(p.t0(), p.T(), n_intervals, init_value), opt);
}

/// Runs solve_direct from each constant start and keeps the best objective
/// (earliest start wins ties).
inline SolveReport solve_direct_multistart(const GrowthProblem& p, std::size_t n_intervals,
                                           const std::vector<double>& starts,
                                           const DirectOptions& opt = {}) {
    if (starts.empty()) throw DomainError("solve_direct_multistart: no starting points");
    std::optional<SolveReport> best;
    for (double s0 : starts) {
        SolveReport r = solve_direct(p, n_intervals, s0, opt);
        if (!best || r.objective > best->objective) best = std::move(r);
    }
    return std::move(*best);
}

}  // namespace growthopt
