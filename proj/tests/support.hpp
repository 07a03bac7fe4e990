#pragma once

#include <cmath>
#include <algorithm>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "growthopt.hpp"

namespace gt {

using namespace growthopt;

inline GrowthProblem make_problem(ProductionFunction phi, UtilityFunction omega, double sigma = 0.5,
                                  double lambda = 0.0, double k0 = 1.0, double T = 1.0,
                                  double t0 = 0.0) {
    return GrowthProblem(ProblemParameters{t0, T, lambda, sigma, k0}, std::move(phi), std::move(omega));
}

/// The four typical instances: A = 1, sigma = 0.5, k0 = 1, [0, 1];
/// linear parts use exponent 1, nonlinear parts 0.5.
inline GrowthProblem typical_instance(ProblemType type, double lambda) {
    const bool lin_phi = type == ProblemType::LinearLinear || type == ProblemType::LinearNonlinear;
    const bool lin_omega = type == ProblemType::LinearLinear || type == ProblemType::NonlinearLinear;
    ProductionFunction phi = lin_phi ? ProductionFunction(AK{1.0}) : ProductionFunction(CobbDouglas{1.0, 0.5});
    UtilityFunction omega = lin_omega ? UtilityFunction::linear() : UtilityFunction(PowerUtility{0.5});
    return make_problem(std::move(phi), std::move(omega), 0.5, lambda);
}

inline const std::vector<ProblemType>& typical_types() {
    static const std::vector<ProblemType> t = {ProblemType::LinearLinear, ProblemType::LinearNonlinear,
                                               ProblemType::NonlinearLinear,
                                               ProblemType::NonlinearNonlinear};
    return t;
}

inline UtilityFunction zero_utility() { return UtilityFunction::tabulate({0.0, 1.0}, {0.0, 0.0}); }

/// Table of f on 0 and `n` log-spaced knots up to `top`.
inline ProductionFunction tabulate(const std::function<double(double)>& f, double top = 1e6,
                                   std::size_t n = 400) {
    std::vector<double> knots = {0.0};
    for (double k : logspace(1e-8, top, n)) knots.push_back(k);
    std::vector<double> values;
    for (double k : knots) values.push_back(f(k));
    return ProductionFunction::tabulate(knots, values);
}

struct CorpusEntry {
    std::string name;
    ProductionFunction phi;
    /// Known truth of limsup phi(k)/k < infinity.
    bool linear_growth;
    /// Known concavity on [0, infinity).
    bool concave;
};

/// Production functions with known growth and concavity, none borderline
/// at the default sampling resolution.
inline std::vector<CorpusEntry> corpus() {
    std::vector<CorpusEntry> c;
    auto name = [](std::string base, double a, double b = NAN) {
        std::string s = base + "_" + std::to_string(a);
        if (!std::isnan(b)) s += "_" + std::to_string(b);
        return s;
    };
    for (double A : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0})
        c.push_back({name("ak", A), ProductionFunction(AK{A}), true, true});
    for (double A : {0.5, 1.0, 2.0, 4.0})
        for (double alpha : {0.1, 0.3, 0.5, 0.7, 0.9})
            c.push_back({name("cobb_douglas", A, alpha), ProductionFunction(CobbDouglas{A, alpha}), true, true});
    for (double k_bar : {0.5, 1.0, 3.0})
        for (double phi0 : {0.0, 1.0, 2.0})
            for (double alpha : {0.5, 1.0})
                c.push_back({name("plateau", k_bar, phi0) + "_" + std::to_string(alpha),
                             ProductionFunction(PlateauPower{k_bar, phi0, 1.0, alpha}), true, false});

    // Tabulated, linear growth and concave.
    for (double alpha : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9})
        c.push_back({name("tab_power", alpha), tabulate([=](double k) { return 2.0 * std::pow(k, alpha); }),
                     true, true});
    for (double A : {0.5, 1.0, 3.0})
        c.push_back({name("tab_log", A), tabulate([=](double k) { return A * std::log1p(k); }), true, true});
    for (double A : {0.1, 0.5, 1.0, 2.0, 5.0})
        c.push_back({name("tab_linear", A), tabulate([=](double k) { return A * k; }), true, true});
    for (double top : {10.0, 1e3})
        c.push_back({name("tab_short_sqrt", top), tabulate([](double k) { return std::sqrt(k); }, top, 60), true,
                     true});
    for (double r : {0.5, 1.0, 2.0, 5.0})
        c.push_back({name("tab_saturating", r), tabulate([=](double k) { return r * k / (1.0 + k); }), true, true});

    // Tabulated, linear growth but not concave.
    for (double amp : {0.25, 0.5, 1.0})
        c.push_back({name("tab_oscillating", amp),
                     tabulate([=](double k) { return k * (2.0 + amp * std::sin(std::log1p(k))); }, 1e6, 2000), true,
                     false});
    for (double k_bar : {1.0, 10.0})
        c.push_back({name("tab_kinked", k_bar),
                     tabulate([=](double k) { return k < k_bar ? 0.1 * k : 0.1 * k_bar + 2.0 * (k - k_bar); }), true,
                     false});
    for (double mid : {1.0, 5.0, 20.0})
        c.push_back({name("tab_logistic", mid),
                     tabulate([=](double k) { return 10.0 / (1.0 + std::exp(-(k - mid))); }, 1e3, 800), true, false});
    c.push_back({"tab_convex_short", tabulate([](double k) { return k * k; }, 100.0, 200), true, false});

    // Tabulated, superlinear over the whole probe range.
    for (double e : {1.1, 1.25, 1.5, 1.75, 2.0, 3.0})
        for (double A : {0.5, 1.0, 2.0})
            c.push_back({name("tab_superlinear", e, A), tabulate([=](double k) { return A * std::pow(k, e); }), false,
                         false});
    for (double A : {0.5, 1.0, 2.0, 4.0})
        c.push_back({name("tab_klogk", A), tabulate([=](double k) { return A * k * std::log1p(k); }), false, false});
    for (double A : {0.5, 1.0, 2.0})
        c.push_back({name("tab_klog2k", A),
                     tabulate([=](double k) { return A * k * std::pow(std::log1p(k), 2.0); }), false, false});
    return c;
}

/// Piecewise-constant policy with known switches.
struct SyntheticPolicy {
    Policy policy;
    std::vector<double> switch_times;
    /// Widest grid interval, the location tolerance.
    double max_width;
};

/// `switches` jumps on a random grid over [0, 1]; adjacent plateau values
/// differ by at least `gap`, every plateau spans at least `min_len`
/// intervals. `noise` perturbs each interval value by up to that much.
inline SyntheticPolicy synthetic_policy(std::mt19937_64& rng, std::size_t switches, double gap = 0.4,
                                        std::size_t min_len = 3, double noise = 0.0,
                                        bool uniform_grid = false) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const std::size_t plateaus = switches + 1;
    const std::size_t n = plateaus * min_len + std::uniform_int_distribution<std::size_t>(0, 150)(rng);

    std::vector<double> grid(n + 1, 0.0);
    if (uniform_grid) {
        for (std::size_t i = 0; i <= n; ++i) grid[i] = static_cast<double>(i) / static_cast<double>(n);
    } else {
        for (std::size_t i = 1; i <= n; ++i) grid[i] = grid[i - 1] + 0.5 + u(rng);
        for (double& t : grid) t /= grid[n];
    }
    grid[n] = 1.0;

    std::vector<std::size_t> len(plateaus, min_len);
    for (std::size_t extra = n - plateaus * min_len; extra > 0; --extra)
        ++len[std::uniform_int_distribution<std::size_t>(0, plateaus - 1)(rng)];

    std::vector<double> level;
    for (std::size_t q = 0; q < plateaus; ++q) {
        double v = u(rng);
        while (q > 0 && std::abs(v - level.back()) < gap) v = u(rng);
        level.push_back(v);
    }

    std::vector<double> values;
    SyntheticPolicy out{Policy::constant(0.0, 1.0, 1, 0.0), {}, 0.0};
    for (std::size_t q = 0; q < plateaus; ++q) {
        if (q > 0) out.switch_times.push_back(grid[values.size()]);
        for (std::size_t i = 0; i < len[q]; ++i)
            values.push_back(std::clamp(level[q] + noise * (2.0 * u(rng) - 1.0), 0.0, 1.0));
    }
    for (std::size_t i = 0; i < n; ++i) out.max_width = std::max(out.max_width, grid[i + 1] - grid[i]);
    out.policy = Policy(std::move(grid), std::move(values));
    return out;
}

}  // namespace gt
