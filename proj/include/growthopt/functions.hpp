#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "growthopt/errors.hpp"

namespace growthopt {

/// Continuous piecewise-linear function given by knots and values.
///
/// Between knots the function is interpolated linearly. Past the last knot it
/// continues with the slope of the last segment; below the first knot (only
/// possible when the first knot is positive) it holds the first value.
class PiecewiseLinear {
public:
    PiecewiseLinear() = default;

    PiecewiseLinear(std::vector<double> knots, std::vector<double> values)
        : knots_(std::move(knots)), values_(std::move(values)) {
        if (knots_.size() != values_.size())
            throw DomainError("table: knots and values differ in length");
        if (knots_.size() < 2)
            throw DomainError("table: at least two knots are required");
        for (std::size_t i = 0; i < knots_.size(); ++i) {
            if (!std::isfinite(knots_[i]) || !std::isfinite(values_[i]))
                throw DomainError("table: non-finite entry at index " + std::to_string(i));
            if (knots_[i] < 0.0)
                throw DomainError("table: negative knot at index " + std::to_string(i));
            if (i > 0 && !(knots_[i] > knots_[i - 1]))
                throw DomainError("table: knots must be strictly ascending (index " +
                                  std::to_string(i) + ")");
        }
    }

    const std::vector<double>& knots() const noexcept { return knots_; }
    const std::vector<double>& values() const noexcept { return values_; }

    double operator()(double x) const {
        if (x <= knots_.front()) return values_.front();
        const std::size_t i = segment(x);
        const double w = (x - knots_[i]) / (knots_[i + 1] - knots_[i]);
        return values_[i] + w * (values_[i + 1] - values_[i]);
    }

    /// Right derivative (slope of the segment containing x).
    double slope(double x) const {
        if (x < knots_.front()) return 0.0;
        const std::size_t i = segment(x);
        return segment_slope(i);
    }

    double last_slope() const { return segment_slope(knots_.size() - 2); }

private:
    // Index i of the segment [knots_[i], knots_[i+1]) containing x; the last
    // segment also covers the extrapolated tail.
    std::size_t segment(double x) const {
        auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
        auto i = static_cast<std::size_t>(it - knots_.begin());
        i = i == 0 ? 0 : i - 1;
        return std::min(i, knots_.size() - 2);
    }

    double segment_slope(std::size_t i) const {
        return (values_[i + 1] - values_[i]) / (knots_[i + 1] - knots_[i]);
    }

    std::vector<double> knots_;
    std::vector<double> values_;
};

// Capital derivatives are evaluated no closer to zero than this, where the
// power laws have unbounded slope.
inline constexpr double kDerivativeFloor = 1e-12;

/// phi(k) = A k
struct AK {
    double A = 1.0;
};

/// phi(k) = A k^alpha
struct CobbDouglas {
    double A = 1.0;
    double alpha = 0.5;
};

/// Continuous but nonconcave production with a flat start:
/// phi(k) = phi0 on [0, k_bar], phi0 + a (k - k_bar)^alpha beyond.
struct PlateauPower {
    double k_bar = 1.0;
    double phi0 = 1.0;
    double a = 1.0;
    double alpha = 1.0;
};

/// Per-capita production tabulated on knots (see PiecewiseLinear).
struct Tabulated {
    PiecewiseLinear table;
};

enum class ProductionKind { AK, CobbDouglas, PlateauPower, Tabulated };

/// The per-capita production function phi(k) = F(k, 1).
class ProductionFunction {
public:
    using Variant = std::variant<AK, CobbDouglas, PlateauPower, Tabulated>;

    ProductionFunction(AK f) : f_(f) {
        if (!(f.A > 0.0) || !std::isfinite(f.A)) throw DomainError("AK: A must be positive");
    }

    ProductionFunction(CobbDouglas f) : f_(f) {
        if (!(f.A > 0.0) || !std::isfinite(f.A))
            throw DomainError("CobbDouglas: A must be positive");
        // alpha = 1 is the AK case written in Cobb-Douglas form
        if (!(f.alpha > 0.0 && f.alpha <= 1.0))
            throw DomainError("CobbDouglas: alpha must lie in (0, 1]");
    }

    ProductionFunction(PlateauPower f) : f_(f) {
        if (!(f.k_bar > 0.0)) throw DomainError("PlateauPower: k_bar must be positive");
        if (!(f.phi0 >= 0.0)) throw DomainError("PlateauPower: phi0 must be nonnegative");
        if (!(f.a > 0.0)) throw DomainError("PlateauPower: a must be positive");
        if (!(f.alpha > 0.0 && f.alpha <= 1.0))
            throw DomainError("PlateauPower: alpha must lie in (0, 1]");
    }

    ProductionFunction(Tabulated f) : f_(std::move(f)) {
        const auto& t = std::get<Tabulated>(f_).table;
        for (std::size_t i = 0; i < t.values().size(); ++i)
            if (t.values()[i] < 0.0)
                throw DomainError("Tabulated: negative value at index " + std::to_string(i));
        if (t.last_slope() < 0.0)
            throw DomainError("Tabulated: decreasing last segment would extrapolate below zero");
    }

    static ProductionFunction tabulate(std::vector<double> knots, std::vector<double> values) {
        return ProductionFunction(Tabulated{PiecewiseLinear(std::move(knots), std::move(values))});
    }

    ProductionKind kind() const noexcept { return static_cast<ProductionKind>(f_.index()); }
    const Variant& variant() const noexcept { return f_; }

    double operator()(double k) const {
        return std::visit(
            [k](const auto& f) -> double {
                using T = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<T, AK>) {
                    return f.A * k;
                } else if constexpr (std::is_same_v<T, CobbDouglas>) {
                    return f.A * std::pow(k, f.alpha);
                } else if constexpr (std::is_same_v<T, PlateauPower>) {
                    return k <= f.k_bar ? f.phi0 : f.phi0 + f.a * std::pow(k - f.k_bar, f.alpha);
                } else {
                    return f.table(k);
                }
            },
            f_);
    }

    /// phi'(k); power laws are differentiated at max(k, kDerivativeFloor)
    /// (right-derivative at the kink of PlateauPower and at table knots).
    double derivative(double k) const {
        return std::visit(
            [k](const auto& f) -> double {
                using T = std::decay_t<decltype(f)>;
                if constexpr (std::is_same_v<T, AK>) {
                    return f.A;
                } else if constexpr (std::is_same_v<T, CobbDouglas>) {
                    if (f.alpha == 1.0) return f.A;
                    return f.A * f.alpha * std::pow(std::max(k, kDerivativeFloor), f.alpha - 1.0);
                } else if constexpr (std::is_same_v<T, PlateauPower>) {
                    if (k < f.k_bar) return 0.0;
                    if (f.alpha == 1.0) return f.a;
                    const double d = std::max(k - f.k_bar, kDerivativeFloor);
                    return f.a * f.alpha * std::pow(d, f.alpha - 1.0);
                } else {
                    return f.table.slope(k);
                }
            },
            f_);
    }

    /// True for the linear production families (AK, Cobb-Douglas with alpha = 1).
    bool is_linear() const noexcept {
        if (kind() == ProductionKind::AK) return true;
        if (auto* cd = std::get_if<CobbDouglas>(&f_)) return cd->alpha == 1.0;
        return false;
    }

    /// Productivity constant A for AK / Cobb-Douglas, or nothing.
    std::optional<double> technology_level() const {
        if (auto* f = std::get_if<AK>(&f_)) return f->A;
        if (auto* f = std::get_if<CobbDouglas>(&f_)) return f->A;
        return std::nullopt;
    }

private:
    Variant f_;
};

/// Constant-returns production F(K, L) = L phi(K / L) built from phi.
class TwoFactorProduction {
public:
    explicit TwoFactorProduction(ProductionFunction phi) : phi_(std::move(phi)) {}

    const ProductionFunction& per_capita() const noexcept { return phi_; }

    double operator()(double K, double L) const {
        if (!(L > 0.0)) throw DomainError("F(K, L): labor must be positive");
        if (K < 0.0) throw DomainError("F(K, L): capital must be nonnegative");
        return L * phi_(K / L);
    }

private:
    ProductionFunction phi_;
};

/// omega(c) = c^beta, beta in (0, 1]; beta = 1 is the linear utility.
struct PowerUtility {
    double beta = 1.0;
};

/// Utility tabulated on consumption knots.
struct CustomUtility {
    PiecewiseLinear table;
};

enum class UtilityKind { Power, Custom };

class UtilityFunction {
public:
    using Variant = std::variant<PowerUtility, CustomUtility>;

    UtilityFunction(PowerUtility u) : u_(u) {
        if (!(u.beta > 0.0 && u.beta <= 1.0))
            throw DomainError("Power utility: beta must lie in (0, 1]");
    }
    UtilityFunction(CustomUtility u) : u_(std::move(u)) {}

    static UtilityFunction linear() { return UtilityFunction(PowerUtility{1.0}); }
    static UtilityFunction tabulate(std::vector<double> knots, std::vector<double> values) {
        return UtilityFunction(CustomUtility{PiecewiseLinear(std::move(knots), std::move(values))});
    }

    UtilityKind kind() const noexcept { return static_cast<UtilityKind>(u_.index()); }
    const Variant& variant() const noexcept { return u_; }

    double operator()(double c) const {
        if (auto* p = std::get_if<PowerUtility>(&u_))
            return p->beta == 1.0 ? c : std::pow(c, p->beta);
        return std::get<CustomUtility>(u_).table(c);
    }

    /// omega'(c); callers floor c away from zero for beta < 1.
    double derivative(double c) const {
        if (auto* p = std::get_if<PowerUtility>(&u_))
            return p->beta == 1.0 ? 1.0 : p->beta * std::pow(c, p->beta - 1.0);
        return std::get<CustomUtility>(u_).table.slope(c);
    }

    std::optional<double> power() const {
        if (auto* p = std::get_if<PowerUtility>(&u_)) return p->beta;
        return std::nullopt;
    }

private:
    Variant u_;
};

}  // namespace growthopt
