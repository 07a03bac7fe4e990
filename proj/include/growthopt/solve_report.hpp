#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "growthopt/problem.hpp"

namespace growthopt {

enum class SolveMethod { DP, Direct };

inline std::string_view to_string(SolveMethod m) { return m == SolveMethod::DP ? "DP" : "Direct"; }

/// Value function of the DP solver at the initial time.
struct ValueSlice {
    std::vector<double> states;
    std::vector<double> values;
    double value_at_k0 = 0.0;

    friend bool operator==(const ValueSlice&, const ValueSlice&) = default;
};

struct SolveReport {
    SolveReport(SolveMethod m, Policy pol, Trajectory traj)
        : method(m), policy(std::move(pol)), trajectory(std::move(traj)) {}

    SolveMethod method = SolveMethod::DP;
    Policy policy;
    Trajectory trajectory;
    /// Objective of `policy` re-simulated through integrate().
    double objective = 0.0;
    std::size_t iterations = 0;
    /// Direct only: weighted norm of the last projected gradient step.
    double gradient_norm_final = 0.0;
    /// Direct only: false marks a non-converged run (best iterate is kept).
    bool converged = true;
    /// True when the zero-saving process beat the method's own candidate.
    bool baseline_fallback = false;
    std::optional<ValueSlice> value_function;

    friend bool operator==(const SolveReport&, const SolveReport&) = default;
};

}  // namespace growthopt
