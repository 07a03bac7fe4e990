#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "growthopt/errors.hpp"
#include "growthopt/functions.hpp"
#include "growthopt/problem.hpp"

namespace growthopt {

// Verdicts ---------------------------------------------------------------

/// Strength of a verdict. Sampling can refute a "for all" claim but only
/// support it, so sampled success is kept apart from a closed-form proof.
enum class VerdictStatus { CertifiedTrue, SampledTrue, Refuted };

inline std::string_view to_string(VerdictStatus s) {
    switch (s) {
        case VerdictStatus::CertifiedTrue: return "CertifiedTrue";
        case VerdictStatus::SampledTrue: return "SampledTrue";
        case VerdictStatus::Refuted: return "Refuted";
    }
    return "Refuted";
}

struct Verdict {
    VerdictStatus status = VerdictStatus::SampledTrue;
    /// Growth constant c for the linear-growth conditions (also kept when the
    /// candidate c was refuted).
    std::optional<double> constant;
    /// Kind of witness: "k", "k_pair", "KL", "KL_pair" or "s_pair"; empty
    /// when there is none.
    std::string witness_kind;
    std::vector<double> witness;
    /// Amount by which the witness violates the defining inequality.
    double violation = 0.0;

    bool holds() const noexcept { return status != VerdictStatus::Refuted; }

    friend bool operator==(const Verdict&, const Verdict&) = default;
};

// Sampling -----------------------------------------------------------------

/// Deterministic sampling plan shared by the checkers.
struct SamplingPlan {
    double k_max = 1e6;
    std::size_t log_points = 4096;
    std::size_t unit_points = 512;
    /// The log-spaced grid starts at k_max * log_floor.
    double log_floor = 1e-12;
    std::size_t random_pairs = 4096;
    std::uint64_t seed = 20190716;
    /// Labor levels used when sampling F(K, L).
    std::vector<double> labor_levels = {0.25, 1.0, 4.0};
};

inline std::vector<double> logspace(double lo, double hi, std::size_t n) {
    std::vector<double> out(n);
    if (n == 1) {
        out[0] = hi;
        return out;
    }
    const double a = std::log(lo), b = std::log(hi);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = std::exp(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
    out.front() = lo;
    out.back() = hi;
    return out;
}

/// Ascending log-spaced probes on [k_max * log_floor, k_max].
inline std::vector<double> log_probes(const SamplingPlan& plan) {
    return logspace(plan.k_max * plan.log_floor, plan.k_max, plan.log_points);
}

/// Full sample grid: 0, uniform points on [0, 1] and the log probes; sorted,
/// without duplicates.
inline std::vector<double> sample_grid(const SamplingPlan& plan) {
    std::vector<double> g = log_probes(plan);
    g.push_back(0.0);
    if (plan.unit_points >= 2)
        for (std::size_t i = 0; i < plan.unit_points; ++i)
            g.push_back(static_cast<double>(i) / static_cast<double>(plan.unit_points - 1));
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    while (!g.empty() && g.back() > plan.k_max) g.pop_back();
    return g;
}

namespace detail {

// Number of tail blocks used to judge whether phi(k)/k has settled.
inline constexpr std::size_t kTailBlocks = 8;
// Growth of the running tail maximum must shrink at least by this factor
// from block to block for the tail to count as settled.
inline constexpr double kTailDecay = 0.5;
inline constexpr double kTailTolerance = 1e-6;
// Relative tolerance of the midpoint concavity / convexity tests.
inline constexpr double kMidpointTolerance = 1e-10;
// Relative tolerance when re-checking a growth certificate on samples.
inline constexpr double kGrowthTolerance = 1e-10;

// Running maxima of block maxima; empty blocks repeat the previous maximum.
inline std::vector<double> running_block_maxima(const std::vector<double>& block_max) {
    std::vector<double> run(block_max.size());
    double m = -std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < block_max.size(); ++b) {
        m = std::max(m, block_max[b]);
        run[b] = m;
    }
    return run;
}

// Sup estimate for a running maximum whose increments decay geometrically;
// falls back to the last value when they do not decay fast enough.
inline double extrapolated_sup(const std::vector<double>& running) {
    const std::size_t n = running.size();
    if (n < 3) return running.back();
    const double d_last = running[n - 1] - running[n - 2];
    const double d_prev = running[n - 2] - running[n - 3];
    if (!(d_last > 0.0)) return running.back();
    if (!(d_prev > 0.0)) return running.back();
    const double rho = d_last / d_prev;
    if (rho > kTailDecay) return running.back();
    return running.back() + d_last * rho / (1.0 - rho);
}

struct PairViolation {
    double amount = 0.0;
    std::size_t i = 0, j = 0;
};

// Deterministic index pairs over n points: neighbours at distance 1 and 2
// plus `random` uniformly drawn pairs.
inline std::vector<std::pair<std::size_t, std::size_t>> sample_pairs(std::size_t n,
                                                                     std::size_t random,
                                                                     std::uint64_t seed) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    if (n < 2) return pairs;
    pairs.reserve(2 * n + random);
    for (std::size_t i = 0; i + 1 < n; ++i) pairs.emplace_back(i, i + 1);
    for (std::size_t i = 0; i + 2 < n; ++i) pairs.emplace_back(i, i + 2);
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    for (std::size_t r = 0; r < random; ++r) {
        std::size_t a = pick(rng), b = pick(rng);
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        pairs.emplace_back(a, b);
    }
    return pairs;
}

inline double midpoint_gap_concave(double f_x, double f_y, double f_mid) {
    return 0.5 * (f_x + f_y) - f_mid;
}

inline double midpoint_tolerance(double a, double b, double c) {
    return kMidpointTolerance * (1.0 + std::max({std::abs(a), std::abs(b), std::abs(c)}));
}

inline bool growth_bound_holds(double value, double k_like, double l_like, double c, double sigma,
                               double* excess) {
    const double bound = (c - sigma) * k_like + c * l_like;
    const double e = value - bound;
    if (excess) *excess = e;
    return e <= kGrowthTolerance * (1.0 + std::abs(bound));
}

}  // namespace detail

// Linear growth condition -------------------------------------------------

/// Closed-form growth constant for the analytic production families, or
/// nothing for tabulated production.
inline std::optional<double> analytic_growth_constant(const ProductionFunction& phi, double sigma) {
    return std::visit(
        [sigma](const auto& f) -> std::optional<double> {
            using T = std::decay_t<decltype(f)>;
            if constexpr (std::is_same_v<T, AK> || std::is_same_v<T, CobbDouglas>) {
                // A k^alpha <= A (k + 1) for alpha in (0, 1]
                return f.A + sigma;
            } else if constexpr (std::is_same_v<T, PlateauPower>) {
                // (k - k_bar)^alpha <= k + 1 beyond the plateau, phi = phi0 on it
                return std::max(sigma + f.a, f.phi0 + f.a);
            } else {
                return std::nullopt;
            }
        },
        phi.variant());
}

/// Checks phi(k) <= (c - sigma) k + c for all k >= 0.
///
/// AK, Cobb-Douglas and PlateauPower are certified in closed form. For
/// tabulated production c is built the constructive way on the sample grid:
///
///  * mu is the first probe of the upper half of the log grid, eps = 0.01 mu;
///  * gamma2 = max phi on [0, eps), gamma3 = max phi(k)/k on [eps, mu];
///  * gamma1 bounds phi(k)/k beyond mu from the first seven of eight log-equal
///    tail blocks (geometric extrapolation of the running maximum when its
///    increments decay);
///  * c = max(gamma1 + sigma, gamma2, gamma3 + sigma).
///
/// The candidate is then re-checked on every sample including the held-out
/// last tail block; a violation refutes with the worst k as witness.
inline Verdict check_c1(const ProductionFunction& phi, double sigma, double k_max = 1e6,
                        std::size_t n = 4096) {
    if (!(k_max > 0.0)) throw DomainError("check_c1: k_max must be positive");
    if (n < 2) throw DomainError("check_c1: need at least two samples");
    Verdict v;
    if (auto c = analytic_growth_constant(phi, sigma)) {
        v.status = VerdictStatus::CertifiedTrue;
        v.constant = *c;
        return v;
    }

    SamplingPlan plan;
    plan.k_max = k_max;
    plan.log_points = std::max<std::size_t>(n, 2 * detail::kTailBlocks);
    const std::vector<double> probes = log_probes(plan);
    const std::vector<double> grid = sample_grid(plan);

    const double mu = probes[probes.size() / 2];
    const double eps = 0.01 * mu;
    double gamma2 = 0.0, gamma3 = 0.0;
    for (double k : grid) {
        if (k < eps) gamma2 = std::max(gamma2, phi(k));
        else if (k <= mu) gamma3 = std::max(gamma3, phi(k) / k);
    }

    const double log_mu = std::log(mu), log_top = std::log(k_max);
    std::vector<double> block_max(detail::kTailBlocks, 0.0);
    for (double k : probes) {
        if (!(k > mu)) continue;
        auto b = static_cast<std::size_t>(static_cast<double>(detail::kTailBlocks) *
                                          (std::log(k) - log_mu) / (log_top - log_mu));
        b = std::min(b, detail::kTailBlocks - 1);
        block_max[b] = std::max(block_max[b], phi(k) / k);
    }
    std::vector<double> body(block_max.begin(), block_max.end() - 1);
    const double gamma1 = detail::extrapolated_sup(detail::running_block_maxima(body));

    const double c = std::max({gamma1 + sigma, gamma2, gamma3 + sigma});
    v.constant = c;

    double worst = 0.0;
    std::optional<double> worst_k;
    for (double k : grid) {
        double excess = 0.0;
        if (!detail::growth_bound_holds(phi(k), k, 1.0, c, sigma, &excess) && excess > worst) {
            worst = excess;
            worst_k = k;
        }
    }
    if (worst_k) {
        v.status = VerdictStatus::Refuted;
        v.witness_kind = "k";
        v.witness = {*worst_k};
        v.violation = worst;
    } else {
        v.status = VerdictStatus::SampledTrue;
    }
    return v;
}

/// Tail behaviour of phi(k)/k on the given probes.
struct LimsupEstimate {
    double value = 0.0;   // max of phi(k)/k over the upper half of the probes
    bool finite = true;
};

/// Estimates limsup phi(k)/k. The upper half of the probes is cut into eight
/// consecutive blocks; the estimate is judged finite when the running maximum
/// has stopped growing by the last block (its last increment is at most half
/// the largest earlier one, up to 1e-6).
inline LimsupEstimate estimate_limsup(const ProductionFunction& phi,
                                      const std::vector<double>& probes) {
    if (probes.size() < 2 * detail::kTailBlocks)
        throw DomainError("estimate_limsup: need at least 16 probes");
    for (std::size_t i = 0; i < probes.size(); ++i) {
        if (!(probes[i] > 0.0)) throw DomainError("estimate_limsup: probes must be positive");
        if (i > 0 && !(probes[i] > probes[i - 1]))
            throw DomainError("estimate_limsup: probes must be ascending");
    }
    if (probes.back() < 1e4) throw DomainError("estimate_limsup: largest probe must be >= 1e4");

    const std::size_t start = probes.size() / 2;
    const std::size_t tail = probes.size() - start;
    std::vector<double> block_max(detail::kTailBlocks, -std::numeric_limits<double>::infinity());
    LimsupEstimate est;
    est.value = -std::numeric_limits<double>::infinity();
    for (std::size_t i = start; i < probes.size(); ++i) {
        const double r = phi(probes[i]) / probes[i];
        const std::size_t b = (i - start) * detail::kTailBlocks / tail;
        block_max[b] = std::max(block_max[b], r);
        est.value = std::max(est.value, r);
    }
    const auto run = detail::running_block_maxima(block_max);
    double largest_earlier = 0.0;
    for (std::size_t b = 1; b + 1 < run.size(); ++b)
        largest_earlier = std::max(largest_earlier, run[b] - run[b - 1]);
    const double last = run.back() - run[run.size() - 2];
    est.finite = last <= detail::kTailDecay * largest_earlier +
                             detail::kTailTolerance * (1.0 + std::abs(run.back()));
    return est;
}

/// Checks F(K, L) <= (c - sigma) K + c L for K >= 0, L > 0 by sampling F on
/// its own (K, L) grid. Analytic families are certified with the same c as
/// check_c1; tabulated ones rebuild the constant from F/L near the origin,
/// F/K on the middle range and the settled tail of F/K, then re-check every
/// sample.
inline Verdict check_c1_on_F(const TwoFactorProduction& F, double sigma,
                             const SamplingPlan& plan = {}) {
    Verdict v;
    if (auto c = analytic_growth_constant(F.per_capita(), sigma)) {
        v.status = VerdictStatus::CertifiedTrue;
        v.constant = *c;
        return v;
    }
    if (plan.labor_levels.empty()) throw DomainError("check_c1_on_F: no labor levels");

    struct Sample {
        double K, L, x, F;
    };
    const std::vector<double> ratios = sample_grid(plan);
    std::vector<Sample> samples;
    samples.reserve(ratios.size() * plan.labor_levels.size());
    for (double L : plan.labor_levels) {
        if (!(L > 0.0)) throw DomainError("check_c1_on_F: labor levels must be positive");
        for (double x : ratios) {
            const double K = x * L;
            samples.push_back({K, L, K / L, F(K, L)});
        }
    }

    const double x_lo = plan.k_max * plan.log_floor;
    const double mu = std::sqrt(x_lo * plan.k_max);
    const double eps = 0.01 * mu;
    double gamma2 = 0.0, gamma3 = 0.0;
    const double log_mu = std::log(mu), log_top = std::log(plan.k_max);
    std::vector<double> block_max(detail::kTailBlocks, 0.0);
    for (const auto& s : samples) {
        if (s.x < eps) {
            gamma2 = std::max(gamma2, s.F / s.L);
        } else if (s.x <= mu) {
            gamma3 = std::max(gamma3, s.F / s.K);
        } else {
            auto b = static_cast<std::size_t>(static_cast<double>(detail::kTailBlocks) *
                                              (std::log(s.x) - log_mu) / (log_top - log_mu));
            b = std::min(b, detail::kTailBlocks - 1);
            block_max[b] = std::max(block_max[b], s.F / s.K);
        }
    }
    std::vector<double> body(block_max.begin(), block_max.end() - 1);
    const double gamma1 = detail::extrapolated_sup(detail::running_block_maxima(body));
    const double c = std::max({gamma1 + sigma, gamma2, gamma3 + sigma});
    v.constant = c;

    double worst = 0.0;
    const Sample* worst_s = nullptr;
    for (const auto& s : samples) {
        double excess = 0.0;
        if (!detail::growth_bound_holds(s.F, s.K, s.L, c, sigma, &excess) && excess > worst) {
            worst = excess;
            worst_s = &s;
        }
    }
    if (worst_s) {
        v.status = VerdictStatus::Refuted;
        v.witness_kind = "KL";
        v.witness = {worst_s->K, worst_s->L};
        v.violation = worst;
    } else {
        v.status = VerdictStatus::SampledTrue;
    }
    return v;
}

// Concavity ----------------------------------------------------------------

namespace detail {

template <class Fn>
Verdict midpoint_concavity_1d(const Fn& f, const std::vector<double>& xs, std::size_t random,
                              std::uint64_t seed, std::string_view kind) {
    std::vector<double> fx(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) fx[i] = f(xs[i]);
    Verdict v;
    v.status = VerdictStatus::SampledTrue;
    PairViolation worst;
    for (auto [i, j] : sample_pairs(xs.size(), random, seed)) {
        const double fm = f(0.5 * (xs[i] + xs[j]));
        const double gap = midpoint_gap_concave(fx[i], fx[j], fm);
        if (gap > midpoint_tolerance(fx[i], fx[j], fm) && gap > worst.amount) worst = {gap, i, j};
    }
    if (worst.amount > 0.0) {
        v.status = VerdictStatus::Refuted;
        v.witness_kind = std::string(kind);
        v.witness = {xs[worst.i], xs[worst.j]};
        v.violation = worst.amount;
    }
    return v;
}

}  // namespace detail

/// Concavity of phi on R+. AK and Cobb-Douglas are concave in closed form
/// (phi'' = A alpha (alpha - 1) k^{alpha - 2} <= 0); everything else goes
/// through the midpoint test phi((x + y)/2) >= (phi(x) + phi(y))/2 over
/// neighbouring and random sample pairs.
inline Verdict check_concavity_phi(const ProductionFunction& phi, double k_max = 1e6,
                                   std::size_t n = 4096, std::uint64_t seed = SamplingPlan{}.seed) {
    if (n < 3) throw DomainError("check_concavity_phi: need at least three samples");
    const auto kind = phi.kind();
    if (kind == ProductionKind::AK || kind == ProductionKind::CobbDouglas)
        return Verdict{VerdictStatus::CertifiedTrue, std::nullopt, {}, {}, 0.0};
    SamplingPlan plan;
    plan.k_max = k_max;
    plan.log_points = n;
    return detail::midpoint_concavity_1d(phi, sample_grid(plan), plan.random_pairs, seed, "k_pair");
}

/// Midpoint concavity of F on R+ x (0, inf): pairs along each labor level
/// plus random pairs mixing capital and labor.
inline Verdict check_concavity_F(const TwoFactorProduction& F, const SamplingPlan& plan = {}) {
    if (plan.labor_levels.empty()) throw DomainError("check_concavity_F: no labor levels");
    struct Point {
        double K, L, F;
    };
    const std::vector<double> ks = sample_grid(plan);
    std::vector<Point> pts;
    pts.reserve(ks.size() * plan.labor_levels.size());
    for (double L : plan.labor_levels)
        for (double k : ks) pts.push_back({k * L, L, F(k * L, L)});

    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    const std::size_t per_level = ks.size();
    for (std::size_t l = 0; l < plan.labor_levels.size(); ++l) {
        const std::size_t off = l * per_level;
        for (std::size_t i = 0; i + 1 < per_level; ++i) pairs.emplace_back(off + i, off + i + 1);
        for (std::size_t i = 0; i + 2 < per_level; ++i) pairs.emplace_back(off + i, off + i + 2);
    }
    std::mt19937_64 rng(plan.seed ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
    for (std::size_t r = 0; r < plan.random_pairs; ++r) {
        const std::size_t a = pick(rng), b = pick(rng);
        if (a != b) pairs.emplace_back(a, b);
    }

    Verdict v;
    v.status = VerdictStatus::SampledTrue;
    detail::PairViolation worst;
    for (auto [i, j] : pairs) {
        const auto& p = pts[i];
        const auto& q = pts[j];
        const double fm = F(0.5 * (p.K + q.K), 0.5 * (p.L + q.L));
        const double gap = detail::midpoint_gap_concave(p.F, q.F, fm);
        if (gap > detail::midpoint_tolerance(p.F, q.F, fm) && gap > worst.amount)
            worst = {gap, i, j};
    }
    if (worst.amount > 0.0) {
        v.status = VerdictStatus::Refuted;
        v.witness_kind = "KL_pair";
        v.witness = {pts[worst.i].K, pts[worst.i].L, pts[worst.j].K, pts[worst.j].L};
        v.violation = worst.amount;
    }
    return v;
}

/// Concavity of omega: power utilities with beta in (0, 1] are concave in
/// closed form; tabulated ones are midpoint-tested up to twice their last
/// knot.
inline Verdict check_concavity_utility(const UtilityFunction& omega,
                                       std::uint64_t seed = SamplingPlan{}.seed) {
    if (omega.kind() == UtilityKind::Power)
        return Verdict{VerdictStatus::CertifiedTrue, std::nullopt, {}, {}, 0.0};
    const auto& table = std::get<CustomUtility>(omega.variant()).table;
    const double top = 2.0 * std::max(table.knots().back(), 1.0);
    std::vector<double> cs = logspace(top * 1e-9, top, 1024);
    cs.push_back(0.0);
    for (double x : table.knots()) cs.push_back(x);
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    return detail::midpoint_concavity_1d(omega, cs, 2048, seed, "c_pair");
}

// Orientor field -----------------------------------------------------------

/// Convexity of the set {(z0, z) : z0 >= -omega((1 - s) phi(k)) e^{-lambda t},
/// z = s phi(k) - sigma k, s in [0, 1]} at one (t, k). Because z is affine in
/// s, this is midpoint convexity of s -> -omega((1 - s) phi(k)) e^{-lambda t},
/// tested on all pairs of n uniform control samples.
inline Verdict check_qtilde_convexity(const GrowthProblem& p, double t, double k, std::size_t n = 46) {
    if (!(k >= 0.0)) throw DomainError("check_qtilde_convexity: k must be nonnegative");
    if (n < 3) throw DomainError("check_qtilde_convexity: need at least three control samples");
    const double phi_k = p.production()(k);
    const double discount = std::exp(-p.lambda() * t);
    auto lower = [&](double s) { return -p.utility()((1.0 - s) * phi_k) * discount; };

    std::vector<double> ss(n), g(n);
    for (std::size_t i = 0; i < n; ++i) {
        ss[i] = static_cast<double>(i) / static_cast<double>(n - 1);
        g[i] = lower(ss[i]);
    }
    Verdict v;
    v.status = VerdictStatus::SampledTrue;
    detail::PairViolation worst;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double gm = lower(0.5 * (ss[i] + ss[j]));
            const double gap = gm - 0.5 * (g[i] + g[j]);
            if (gap > detail::midpoint_tolerance(g[i], g[j], gm) && gap > worst.amount)
                worst = {gap, i, j};
        }
    if (worst.amount > 0.0) {
        v.status = VerdictStatus::Refuted;
        v.witness_kind = "s_pair";
        v.witness = {ss[worst.i], ss[worst.j], t, k};
        v.violation = worst.amount;
    }
    return v;
}

/// Runs check_qtilde_convexity over a time x state lattice; the first
/// refutation (in lattice order) is returned.
inline Verdict check_qtilde_field(const GrowthProblem& p, const std::vector<double>& times,
                                  const std::vector<double>& states, std::size_t n = 46) {
    for (double t : times)
        for (double k : states) {
            Verdict v = check_qtilde_convexity(p, t, k, n);
            if (!v.holds()) return v;
        }
    return Verdict{VerdictStatus::SampledTrue, std::nullopt, {}, {}, 0.0};
}

// Aggregate report ----------------------------------------------------------

/// Which existence result applies: the power-model result (typical
/// AK/Cobb-Douglas with power utility), the concave-model result, the
/// linear-growth result, or none.
enum class ExistenceBasis { PowerModel, ConcaveModel, LinearGrowth, None };

/// Stable report labels.
inline std::string_view to_string(ExistenceBasis e) {
    switch (e) {
        case ExistenceBasis::PowerModel: return "Thm4_1";
        case ExistenceBasis::ConcaveModel: return "Thm3_2";
        case ExistenceBasis::LinearGrowth: return "Thm3_1";
        case ExistenceBasis::None: return "None";
    }
    return "None";
}

struct ConditionReport {
    ProblemType problem_type = ProblemType::Other;
    Verdict c1;
    double limsup_estimate = 0.0;
    bool limsup_finite = true;
    Verdict phi_concave;
    Verdict F_concave;
    Verdict omega_concave;
    Verdict qtilde_convex;
    ExistenceBasis existence_conclusion = ExistenceBasis::None;

    bool existence() const noexcept { return existence_conclusion != ExistenceBasis::None; }

    friend bool operator==(const ConditionReport&, const ConditionReport&) = default;
};

/// Runs every checker with the plan and picks the strongest applicable
/// existence result.
inline ConditionReport full_report(const GrowthProblem& p, const SamplingPlan& plan = {}) {
    ConditionReport r;
    r.problem_type = classify_problem(p);
    const auto& phi = p.production();
    r.c1 = check_c1(phi, p.sigma(), plan.k_max, plan.log_points);
    const auto lim = estimate_limsup(phi, log_probes(plan));
    r.limsup_estimate = lim.value;
    r.limsup_finite = lim.finite;
    r.phi_concave = check_concavity_phi(phi, plan.k_max, plan.log_points, plan.seed);
    r.F_concave = check_concavity_F(TwoFactorProduction(phi), plan);
    r.omega_concave = check_concavity_utility(p.utility(), plan.seed);

    std::vector<double> times(9);
    for (std::size_t i = 0; i < times.size(); ++i)
        times[i] = p.t0() + p.horizon() * static_cast<double>(i) / 8.0;
    std::vector<double> states = logspace(1e-6, 1e3, 14);
    states.push_back(0.0);
    states.push_back(p.k0());
    r.qtilde_convex = check_qtilde_field(p, times, states);

    if (r.problem_type != ProblemType::Other)
        r.existence_conclusion = ExistenceBasis::PowerModel;
    else if (r.phi_concave.holds() && r.omega_concave.holds())
        r.existence_conclusion = ExistenceBasis::ConcaveModel;
    else if (r.omega_concave.holds() && r.c1.holds())
        r.existence_conclusion = ExistenceBasis::LinearGrowth;
    else
        r.existence_conclusion = ExistenceBasis::None;
    return r;
}

}  // namespace growthopt
