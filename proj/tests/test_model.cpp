#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support.hpp"

using namespace gt;

TEST(Production, VariantsEvaluate) {
    EXPECT_DOUBLE_EQ(ProductionFunction(AK{2.0})(3.0), 6.0);
    EXPECT_DOUBLE_EQ(ProductionFunction(CobbDouglas{2.0, 0.5})(4.0), 4.0);
    const ProductionFunction plateau(PlateauPower{1.0, 1.0, 2.0, 0.5});
    EXPECT_DOUBLE_EQ(plateau(0.3), 1.0);
    EXPECT_DOUBLE_EQ(plateau(1.0), 1.0);
    EXPECT_DOUBLE_EQ(plateau(5.0), 1.0 + 2.0 * 2.0);
    EXPECT_DOUBLE_EQ(ProductionFunction(AK{2.0})(0.0), 0.0);
    EXPECT_DOUBLE_EQ(ProductionFunction(CobbDouglas{1.0, 0.3})(0.0), 0.0);
}

TEST(Production, TableInterpolatesAndExtrapolatesLinearly) {
    const auto phi = ProductionFunction::tabulate({0.0, 1.0, 3.0}, {0.0, 2.0, 3.0});
    EXPECT_DOUBLE_EQ(phi(0.5), 1.0);
    EXPECT_DOUBLE_EQ(phi(2.0), 2.5);
    EXPECT_DOUBLE_EQ(phi(7.0), 5.0);
    const auto shifted = ProductionFunction::tabulate({1.0, 2.0}, {1.0, 3.0});
    EXPECT_DOUBLE_EQ(shifted(0.25), 1.0);
}

TEST(Production, RejectsInvalidParameters) {
    EXPECT_THROW(ProductionFunction(AK{0.0}), DomainError);
    EXPECT_THROW(ProductionFunction(CobbDouglas{1.0, 1.5}), DomainError);
    EXPECT_THROW(ProductionFunction(CobbDouglas{1.0, 0.0}), DomainError);
    EXPECT_THROW(ProductionFunction(PlateauPower{0.0, 1.0, 1.0, 1.0}), DomainError);
    EXPECT_THROW(ProductionFunction::tabulate({0.0, 1.0}, {0.0, -1.0}), DomainError);
    EXPECT_THROW(ProductionFunction::tabulate({0.0, 1.0, 2.0}, {0.0, 2.0, 1.0}), DomainError);
    EXPECT_THROW(ProductionFunction::tabulate({0.0, 0.0}, {0.0, 1.0}), DomainError);
    EXPECT_THROW(UtilityFunction(PowerUtility{0.0}), DomainError);
    EXPECT_THROW(UtilityFunction(PowerUtility{1.2}), DomainError);
}

TEST(Production, NonnegativeOnSampledDomain) {
    for (const auto& e : corpus())
        for (double k : logspace(1e-9, 1e7, 200)) ASSERT_GE(e.phi(k), 0.0) << e.name << " at " << k;
}

TEST(TwoFactor, ReducesToPerCapitaAtUnitLabor) {
    for (const auto& e : corpus()) {
        const TwoFactorProduction F(e.phi);
        for (double k : {0.0, 0.3, 1.0, 17.0, 4e4}) ASSERT_EQ(F(k, 1.0), e.phi(k)) << e.name;
    }
}

TEST(TwoFactor, ConstantReturnsToScale) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> logu(-4.0, 4.0);
    for (const auto& e : corpus()) {
        const TwoFactorProduction F(e.phi);
        for (int i = 0; i < 50; ++i) {
            const double K = std::pow(10.0, logu(rng)), L = std::pow(10.0, logu(rng) / 2);
            const double a = std::pow(10.0, logu(rng) / 4);
            const double base = F(K, L);
            ASSERT_LE(std::abs(F(a * K, a * L) - a * base), 1e-10 * (1.0 + std::abs(base)) * std::max(1.0, a))
                << e.name << " K=" << K << " L=" << L << " a=" << a;
        }
    }
}

TEST(TwoFactor, RequiresPositiveLabor) {
    const TwoFactorProduction F(ProductionFunction(AK{1.0}));
    EXPECT_THROW(F(1.0, 0.0), DomainError);
    EXPECT_THROW(F(-1.0, 1.0), DomainError);
}

TEST(Utility, PowerFamily) {
    const UtilityFunction u(PowerUtility{0.5});
    EXPECT_DOUBLE_EQ(u(0.0), 0.0);
    EXPECT_DOUBLE_EQ(u(4.0), 2.0);
    double prev = -1.0;
    for (double c : logspace(1e-6, 1e6, 100)) {
        EXPECT_GT(u(c), prev);
        prev = u(c);
    }
    EXPECT_DOUBLE_EQ(UtilityFunction::linear()(3.5), 3.5);
}

TEST(Problem, ValidatesParameters) {
    auto make = [](double t0, double T, double lambda, double sigma, double k0) {
        return GrowthProblem(ProblemParameters{t0, T, lambda, sigma, k0}, ProductionFunction(AK{1.0}),
                             UtilityFunction::linear());
    };
    EXPECT_NO_THROW(make(0, 1, 0, 0.5, 0));
    EXPECT_THROW(make(1, 1, 0, 0.5, 1), DomainError);
    EXPECT_THROW(make(-1, 1, 0, 0.5, 1), DomainError);
    EXPECT_THROW(make(0, 1, 0, 0.0, 1), DomainError);
    EXPECT_THROW(make(0, 1, -0.1, 0.5, 1), DomainError);
    EXPECT_THROW(make(0, 1, 0, 0.5, -1), DomainError);
    EXPECT_THROW(make(0, NAN, 0, 0.5, 1), DomainError);
}

TEST(Dynamics, ExamplesFromDirectSubstitution) {
    const auto p2 = make_problem(ProductionFunction(AK{2.0}), UtilityFunction::linear(), 0.5);
    EXPECT_DOUBLE_EQ(dynamics_rhs(0.0, 0.0, 1.0, p2), 0.0);
    const auto p1 = make_problem(ProductionFunction(AK{1.0}), UtilityFunction::linear(), 0.5);
    EXPECT_DOUBLE_EQ(dynamics_rhs(0.0, 1.0, 1.0, p1), 0.5);
    const auto cd = make_problem(ProductionFunction(CobbDouglas{3.0, 0.4}), UtilityFunction::linear(), 0.5);
    EXPECT_DOUBLE_EQ(dynamics_rhs(0.0, 1.0, 0.0, p1), -0.5);
    EXPECT_DOUBLE_EQ(dynamics_rhs(0.0, 1.0, 0.0, cd), -0.5);
}

TEST(Dynamics, RejectsOutOfDomainArguments) {
    const auto p = make_problem(ProductionFunction(AK{1.0}), UtilityFunction::linear());
    EXPECT_THROW(dynamics_rhs(0.0, -1e-6, 0.5, p), DomainError);
    EXPECT_THROW(dynamics_rhs(0.0, 1.0, 1.1, p), DomainError);
    EXPECT_THROW(dynamics_rhs(0.0, 1.0, -1e-9, p), DomainError);
    EXPECT_NO_THROW(dynamics_rhs(0.0, -1e-13, 1.0 + 1e-13, p));
    EXPECT_THROW(objective_integrand(0.0, 1.0, 2.0, p), DomainError);
}

TEST(Integrand, Examples) {
    const auto full = make_problem(ProductionFunction(CobbDouglas{1.0, 0.5}), UtilityFunction(PowerUtility{0.5}),
                                   0.5, 0.3);
    for (double k : {0.0, 0.5, 10.0})
        for (double t : {0.0, 0.7}) EXPECT_DOUBLE_EQ(objective_integrand(t, k, 1.0, full), 0.0);
    const auto lin = make_problem(ProductionFunction(AK{1.0}), UtilityFunction::linear(), 0.5, 0.1);
    EXPECT_DOUBLE_EQ(objective_integrand(0.0, 1.0, 0.0, lin), 1.0);
    const auto pw = make_problem(ProductionFunction(AK{2.0}), UtilityFunction(PowerUtility{0.5}), 0.5, 0.0);
    EXPECT_DOUBLE_EQ(objective_integrand(1.0, 1.0, 0.5, pw), 1.0);
}

TEST(Baseline, ClosedForm) {
    const auto p = make_problem(ProductionFunction(AK{1.0}), UtilityFunction::linear(), 1.0, 0.0, 1.0, 1.0);
    const auto tr = baseline_process(p, 10);
    EXPECT_EQ(tr.nodes(), 11u);
    EXPECT_NEAR(tr.k.back(), std::exp(-1.0), 1e-15);
    EXPECT_NEAR(tr.k.back(), 0.367879, 1e-6);
    EXPECT_DOUBLE_EQ(tr.cumulative.back(), tr.objective);

    const auto zero = make_problem(ProductionFunction(AK{1.0}), UtilityFunction::linear(), 1.0, 0.0, 0.0);
    for (double k : baseline_process(zero, 50).k) EXPECT_EQ(k, 0.0);
}

TEST(Baseline, ObjectiveMatchesClosedFormIntegral) {
    const auto p = make_problem(ProductionFunction(AK{1.0}), UtilityFunction::linear(), 0.5, 0.0, 1.0, 1.0);
    const double exact = (1.0 - std::exp(-0.5)) / 0.5;
    EXPECT_NEAR(exact, 0.786939, 1e-6);
    EXPECT_NEAR(baseline_process(p).objective, exact, 1e-10);
}

TEST(StateBound, Examples) {
    const auto p0 = make_problem(ProductionFunction(AK{1.0}), UtilityFunction::linear(), 0.5, 0.0, 0.0, 7.0);
    EXPECT_DOUBLE_EQ(state_upper_bound(p0, 0.0), 0.0);
    const auto p1 = make_problem(ProductionFunction(AK{1.0}), UtilityFunction::linear(), 0.5, 0.0, 1.0, 1.0);
    EXPECT_NEAR(state_upper_bound(p1, 1.0), 2.0 * std::exp(1.0) - 1.0, 1e-12);
    EXPECT_NEAR(state_upper_bound(p1, 1.0), 4.43656, 1e-5);
    const auto c = check_c1(p1.production(), p1.sigma()).constant;
    ASSERT_TRUE(c.has_value());
    EXPECT_NEAR(state_upper_bound(p1, c), 7.96337, 1e-5);
    EXPECT_THROW(state_upper_bound(p1, std::nullopt), DomainError);
}

TEST(StateBound, DominatesIntegratedComparisonEquation) {
    // k' = c (k + 1) from k0 = 1 over one unit of time
    const double c = 1.0;
    double k = 1.0;
    const int n = 100000;
    const double h = 1.0 / n;
    for (int i = 0; i < n; ++i) {
        const double a1 = c * (k + 1), a2 = c * (k + 0.5 * h * a1 + 1), a3 = c * (k + 0.5 * h * a2 + 1),
                     a4 = c * (k + h * a3 + 1);
        k += h / 6 * (a1 + 2 * a2 + 2 * a3 + a4);
    }
    EXPECT_NEAR(k, 2.0 * std::exp(1.0) - 1.0, 1e-9);
}

TEST(Classify, TypicalClasses) {
    EXPECT_EQ(classify_problem(make_problem(ProductionFunction(AK{1.0}), UtilityFunction(PowerUtility{1.0}))),
              ProblemType::LinearLinear);
    EXPECT_EQ(classify_problem(make_problem(ProductionFunction(AK{1.0}), UtilityFunction(PowerUtility{0.5}))),
              ProblemType::LinearNonlinear);
    EXPECT_EQ(classify_problem(make_problem(ProductionFunction(CobbDouglas{1.0, 0.5}), UtilityFunction::linear())),
              ProblemType::NonlinearLinear);
    EXPECT_EQ(classify_problem(
                  make_problem(ProductionFunction(CobbDouglas{1.0, 0.5}), UtilityFunction(PowerUtility{0.5}))),
              ProblemType::NonlinearNonlinear);
    EXPECT_EQ(classify_problem(make_problem(ProductionFunction(PlateauPower{1.0, 1.0, 1.0, 1.0}),
                                            UtilityFunction(PowerUtility{1.0}))),
              ProblemType::Other);
    EXPECT_EQ(classify_problem(make_problem(ProductionFunction(AK{1.0}), zero_utility())), ProblemType::Other);
}

TEST(Policy, Validation) {
    EXPECT_THROW(Policy({0.0, 1.0}, {1.5}), DomainError);
    EXPECT_THROW(Policy({0.0, 0.5, 0.5}, {0.0, 0.0}), DomainError);
    EXPECT_THROW(Policy({0.0, 1.0}, {0.0, 0.0}), DomainError);
    const auto p = Policy::constant(0.0, 2.0, 4, 0.25);
    EXPECT_EQ(p.intervals(), 4u);
    EXPECT_DOUBLE_EQ(p.grid().back(), 2.0);
}
