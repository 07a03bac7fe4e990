#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "growthopt/errors.hpp"
#include "growthopt/functions.hpp"

namespace growthopt {

/// Scalar data of a growth problem: horizon [t0, T], discount rate lambda,
/// labor growth rate sigma and initial capital-to-labor ratio k0.
struct ProblemParameters {
    double t0 = 0.0;
    double T = 1.0;
    double lambda = 0.0;
    double sigma = 0.5;
    double k0 = 1.0;
};

/// Finite-horizon optimal growth problem
///
///   maximize  int_{t0}^{T} omega((1 - s) phi(k)) e^{-lambda t} dt
///   s.t.      k' = s phi(k) - sigma k,  k(t0) = k0,  s in [0, 1],  k >= 0.
///
/// Immutable once constructed; the constructor enforces T > t0 >= 0,
/// sigma > 0, lambda >= 0 and k0 >= 0.
class GrowthProblem {
public:
    GrowthProblem(ProblemParameters params, ProductionFunction phi, UtilityFunction omega)
        : params_(params), phi_(std::move(phi)), omega_(std::move(omega)) {
        const auto& p = params_;
        auto finite = [](double x) { return std::isfinite(x); };
        if (!finite(p.t0) || !finite(p.T) || !finite(p.lambda) || !finite(p.sigma) ||
            !finite(p.k0))
            throw DomainError("problem parameters must be finite");
        if (!(p.t0 >= 0.0)) throw DomainError("t0 must be nonnegative");
        if (!(p.T > p.t0)) throw DomainError("T must exceed t0");
        if (!(p.sigma > 0.0)) throw DomainError("sigma must be positive");
        if (!(p.lambda >= 0.0)) throw DomainError("lambda must be nonnegative");
        if (!(p.k0 >= 0.0)) throw DomainError("k0 must be nonnegative");
    }

    const ProblemParameters& params() const noexcept { return params_; }
    const ProductionFunction& production() const noexcept { return phi_; }
    const UtilityFunction& utility() const noexcept { return omega_; }

    double t0() const noexcept { return params_.t0; }
    double T() const noexcept { return params_.T; }
    double lambda() const noexcept { return params_.lambda; }
    double sigma() const noexcept { return params_.sigma; }
    double k0() const noexcept { return params_.k0; }
    double horizon() const noexcept { return params_.T - params_.t0; }

private:
    ProblemParameters params_;
    ProductionFunction phi_;
    UtilityFunction omega_;
};

/// Piecewise-constant saving policy: value i applies on [grid[i], grid[i+1]).
class Policy {
public:
    Policy(std::vector<double> grid, std::vector<double> values)
        : grid_(std::move(grid)), values_(std::move(values)) {
        if (grid_.size() < 2) throw DomainError("policy: grid needs at least two nodes");
        if (values_.size() + 1 != grid_.size())
            throw DomainError("policy: expected one value per grid interval");
        for (std::size_t i = 1; i < grid_.size(); ++i)
            if (!(grid_[i] > grid_[i - 1]))
                throw DomainError("policy: grid must be strictly ascending");
        for (double s : values_)
            if (!(s >= 0.0 && s <= 1.0)) throw DomainError("policy: values must lie in [0, 1]");
    }

    static Policy uniform(double t0, double T, std::vector<double> values) {
        const std::size_t n = values.size();
        if (n == 0) throw DomainError("policy: at least one interval is required");
        std::vector<double> grid(n + 1);
        for (std::size_t i = 0; i <= n; ++i)
            grid[i] = t0 + (T - t0) * static_cast<double>(i) / static_cast<double>(n);
        grid[n] = T;
        return Policy(std::move(grid), std::move(values));
    }

    static Policy constant(double t0, double T, std::size_t intervals, double value) {
        return uniform(t0, T, std::vector<double>(intervals, value));
    }

    const std::vector<double>& grid() const noexcept { return grid_; }
    const std::vector<double>& values() const noexcept { return values_; }
    std::size_t intervals() const noexcept { return values_.size(); }

    /// Covers exactly [t0, T] of the problem.
    bool covers(const GrowthProblem& p, double tol = 1e-12) const {
        return std::abs(grid_.front() - p.t0()) <= tol * (1.0 + std::abs(p.t0())) &&
               std::abs(grid_.back() - p.T()) <= tol * (1.0 + std::abs(p.T()));
    }

    Policy with_values(std::vector<double> values) const { return Policy(grid_, std::move(values)); }

    friend bool operator==(const Policy&, const Policy&) = default;

private:
    std::vector<double> grid_;
    std::vector<double> values_;
};

/// State path on a time grid. `s[j]` is the control on [t[j], t[j+1]);
/// `integrand[j]` is the discounted utility at node j under the control of
/// the interval starting there (the last node reuses the last control);
/// `cumulative[j]` is the trapezoidal objective accumulated up to node j.
struct Trajectory {
    std::vector<double> t;
    std::vector<double> k;
    std::vector<double> s;
    std::vector<double> integrand;
    std::vector<double> cumulative;
    double objective = 0.0;

    std::size_t nodes() const noexcept { return t.size(); }

    friend bool operator==(const Trajectory&, const Trajectory&) = default;
};

// Tolerance on s and k before an argument counts as outside the domain.
inline constexpr double kDomainTolerance = 1e-12;
// Integrators clamp k in [-kClampTolerance, 0) to zero and fail below.
inline constexpr double kClampTolerance = 1e-9;

namespace detail {

inline void check_state_control(double k, double s) {
    if (!(k >= -kDomainTolerance))
        throw DomainError("capital ratio must be nonnegative, got " + std::to_string(k));
    if (!(s >= -kDomainTolerance && s <= 1.0 + kDomainTolerance))
        throw DomainError("saving rate must lie in [0, 1], got " + std::to_string(s));
}

}  // namespace detail

/// k' = s phi(k) - sigma k
inline double dynamics_rhs(double /*t*/, double k, double s, const GrowthProblem& p) {
    detail::check_state_control(k, s);
    k = std::max(k, 0.0);
    s = std::clamp(s, 0.0, 1.0);
    return s * p.production()(k) - p.sigma() * k;
}

/// omega((1 - s) phi(k)) e^{-lambda t}
inline double objective_integrand(double t, double k, double s, const GrowthProblem& p) {
    detail::check_state_control(k, s);
    k = std::max(k, 0.0);
    s = std::clamp(s, 0.0, 1.0);
    const double c = (1.0 - s) * p.production()(k);
    return p.utility()(c) * std::exp(-p.lambda() * t);
}

/// Zero-saving process s = 0, k(t) = k0 e^{-sigma (t - t0)}, sampled on
/// `intervals` equal steps. The objective is the trapezoidal sum on those
/// nodes, so it matches the trajectory's cumulative column exactly.
inline Trajectory baseline_process(const GrowthProblem& p, std::size_t intervals = 100000) {
    if (intervals == 0) throw DomainError("baseline_process: need at least one interval");
    Trajectory tr;
    const std::size_t n = intervals + 1;
    tr.t.resize(n);
    tr.k.resize(n);
    tr.integrand.resize(n);
    tr.cumulative.resize(n);
    tr.s.assign(intervals, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = j + 1 == n ? p.T()
                                    : p.t0() + p.horizon() * static_cast<double>(j) /
                                                   static_cast<double>(intervals);
        tr.t[j] = t;
        tr.k[j] = p.k0() * std::exp(-p.sigma() * (t - p.t0()));
        tr.integrand[j] = objective_integrand(t, tr.k[j], 0.0, p);
    }
    tr.cumulative[0] = 0.0;
    for (std::size_t j = 1; j < n; ++j)
        tr.cumulative[j] = tr.cumulative[j - 1] +
                           0.5 * (tr.t[j] - tr.t[j - 1]) * (tr.integrand[j - 1] + tr.integrand[j]);
    tr.objective = tr.cumulative.back();
    return tr;
}

/// A priori bound on any feasible capital path: (k0 + 1) e^{c (T - t0)} - 1,
/// where c is a growth constant with |s phi(k) - sigma k| <= c (k + 1).
inline double state_upper_bound(const GrowthProblem& p, std::optional<double> c) {
    if (!c) throw DomainError("state_upper_bound: no growth certificate supplied");
    if (!(*c >= 0.0) || !std::isfinite(*c))
        throw DomainError("state_upper_bound: growth constant must be finite and nonnegative");
    return (p.k0() + 1.0) * std::exp(*c * p.horizon()) - 1.0;
}

/// Reachability bound at an intermediate time t.
inline double reachable_bound(const GrowthProblem& p, double c, double t) {
    return (p.k0() + 1.0) * std::exp(c * (t - p.t0())) - 1.0;
}

enum class ProblemType { LinearLinear, LinearNonlinear, NonlinearLinear, NonlinearNonlinear, Other };

inline std::string_view to_string(ProblemType t) {
    switch (t) {
        case ProblemType::LinearLinear: return "LinearLinear";
        case ProblemType::LinearNonlinear: return "LinearNonlinear";
        case ProblemType::NonlinearLinear: return "NonlinearLinear";
        case ProblemType::NonlinearNonlinear: return "NonlinearNonlinear";
        case ProblemType::Other: return "Other";
    }
    return "Other";
}

/// Power production (AK / Cobb-Douglas) paired with power utility falls in
/// one of the four typical classes; everything else is Other.
inline ProblemType classify_problem(const GrowthProblem& p) {
    const auto kind = p.production().kind();
    if (kind != ProductionKind::AK && kind != ProductionKind::CobbDouglas) return ProblemType::Other;
    const auto beta = p.utility().power();
    if (!beta) return ProblemType::Other;
    const bool linear_phi = p.production().is_linear();
    const bool linear_omega = *beta == 1.0;
    if (linear_phi) return linear_omega ? ProblemType::LinearLinear : ProblemType::LinearNonlinear;
    return linear_omega ? ProblemType::NonlinearLinear : ProblemType::NonlinearNonlinear;
}

}  // namespace growthopt
