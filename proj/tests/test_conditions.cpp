#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace gt;

namespace {

// Re-evaluates a refutation witness against the inequality it claims to break.
void expect_sound_witness(const Verdict& v, const ProductionFunction& phi, double sigma) {
    ASSERT_EQ(v.status, VerdictStatus::Refuted);
    ASSERT_GT(v.violation, 0.0);
    if (v.witness_kind == "k") {
        ASSERT_TRUE(v.constant.has_value());
        const double k = v.witness.at(0), c = *v.constant;
        const double bound = (c - sigma) * k + c;
        EXPECT_GT(phi(k) - bound, 1e-10 * (1.0 + std::abs(bound)));
    } else if (v.witness_kind == "KL") {
        ASSERT_TRUE(v.constant.has_value());
        const TwoFactorProduction F(phi);
        const double K = v.witness.at(0), L = v.witness.at(1), c = *v.constant;
        const double bound = (c - sigma) * K + c * L;
        EXPECT_GT(F(K, L) - bound, 1e-10 * (1.0 + std::abs(bound)));
    } else if (v.witness_kind == "k_pair") {
        const double x = v.witness.at(0), y = v.witness.at(1);
        const double fm = phi(0.5 * (x + y)), avg = 0.5 * (phi(x) + phi(y));
        EXPECT_GT(avg - fm, 1e-10 * (1.0 + std::max({std::abs(phi(x)), std::abs(phi(y)), std::abs(fm)})));
    } else if (v.witness_kind == "KL_pair") {
        const TwoFactorProduction F(phi);
        const double K1 = v.witness.at(0), L1 = v.witness.at(1), K2 = v.witness.at(2), L2 = v.witness.at(3);
        const double fm = F(0.5 * (K1 + K2), 0.5 * (L1 + L2)), a = F(K1, L1), b = F(K2, L2);
        EXPECT_GT(0.5 * (a + b) - fm, 1e-10 * (1.0 + std::max({std::abs(a), std::abs(b), std::abs(fm)})));
    } else {
        FAIL() << "unexpected witness kind " << v.witness_kind;
    }
}

bool holds_on_grid(const ProductionFunction& phi, double c, double sigma) {
    for (double k : sample_grid({}))
        if (phi(k) > (c - sigma) * k + c + 1e-10 * (1.0 + (c - sigma) * k + c)) return false;
    return true;
}

}  // namespace

TEST(C1, AkAndCobbDouglasCertifiedWithAPlusSigma) {
    for (auto phi : {ProductionFunction(AK{1.0}), ProductionFunction(CobbDouglas{1.0, 0.5})}) {
        const Verdict v = check_c1(phi, 0.5);
        EXPECT_EQ(v.status, VerdictStatus::CertifiedTrue);
        ASSERT_TRUE(v.constant.has_value());
        EXPECT_DOUBLE_EQ(*v.constant, 1.5);
        EXPECT_TRUE(holds_on_grid(phi, *v.constant, 0.5));
    }
}

TEST(C1, PlateauPowerCertifiedWithFiniteConstant) {
    const ProductionFunction phi(PlateauPower{1.0, 1.0, 1.0, 1.0});
    const Verdict v = check_c1(phi, 1.0);
    EXPECT_EQ(v.status, VerdictStatus::CertifiedTrue);
    ASSERT_TRUE(v.constant.has_value());
    EXPECT_TRUE(std::isfinite(*v.constant));
    EXPECT_TRUE(holds_on_grid(phi, *v.constant, 1.0));
    for (double alpha : {0.3, 0.7})
        for (double phi0 : {0.0, 5.0}) {
            const ProductionFunction q(PlateauPower{2.0, phi0, 3.0, alpha});
            EXPECT_TRUE(holds_on_grid(q, *check_c1(q, 0.2).constant, 0.2));
        }
}

TEST(C1, TabulatedSublinearSampledTrue) {
    const auto phi = tabulate([](double k) { return 3.0 * std::sqrt(k); });
    const Verdict v = check_c1(phi, 0.5);
    EXPECT_EQ(v.status, VerdictStatus::SampledTrue);
    EXPECT_TRUE(holds_on_grid(phi, *v.constant, 0.5));
}

TEST(C1, TabulatedSuperlinearRefutedWithSoundWitness) {
    const auto phi = tabulate([](double k) { return k * k; });
    const Verdict v = check_c1(phi, 0.5);
    expect_sound_witness(v, phi, 0.5);
}

TEST(Limsup, Examples) {
    const auto probes = log_probes({});
    const auto ak = estimate_limsup(ProductionFunction(AK{2.0}), probes);
    EXPECT_DOUBLE_EQ(ak.value, 2.0);
    EXPECT_TRUE(ak.finite);

    const auto wide = logspace(1e2, 1e8, 1000);
    const auto cd = estimate_limsup(ProductionFunction(CobbDouglas{1.0, 0.5}), wide);
    EXPECT_TRUE(cd.finite);
    EXPECT_NEAR(cd.value, std::pow(wide[wide.size() / 2], -0.5), 1e-15);
    EXPECT_LT(cd.value, 1e-2);

    auto f = [](double k) { return k * (2.0 + std::sin(std::log1p(k))); };
    const auto osc = estimate_limsup(tabulate(f, 1e6, 4000), probes);
    double brute = 0.0;
    for (double k : logspace(probes[probes.size() / 2], probes.back(), 200000)) brute = std::max(brute, f(k) / k);
    EXPECT_TRUE(osc.finite);
    EXPECT_NEAR(osc.value, brute, 1e-3);
    EXPECT_NEAR(osc.value, 3.0, 1e-3);
}

TEST(Limsup, InfiniteForSuperlinearTables) {
    const auto est = estimate_limsup(tabulate([](double k) { return k * k; }), log_probes({}));
    EXPECT_FALSE(est.finite);
}

TEST(Limsup, RejectsBadProbes) {
    const ProductionFunction phi(AK{1.0});
    EXPECT_THROW(estimate_limsup(phi, logspace(1.0, 1e3, 100)), DomainError);
    EXPECT_THROW(estimate_limsup(phi, logspace(1.0, 1e5, 10)), DomainError);
    auto probes = logspace(1.0, 1e5, 100);
    std::swap(probes[3], probes[4]);
    EXPECT_THROW(estimate_limsup(phi, probes), DomainError);
}

TEST(ConcavityPhi, Examples) {
    EXPECT_EQ(check_concavity_phi(ProductionFunction(CobbDouglas{1.0, 0.5})).status, VerdictStatus::CertifiedTrue);
    EXPECT_EQ(check_concavity_phi(ProductionFunction(AK{3.0})).status, VerdictStatus::CertifiedTrue);

    const ProductionFunction plateau(PlateauPower{1.0, 1.0, 1.0, 1.0});
    const Verdict v = check_concavity_phi(plateau);
    expect_sound_witness(v, plateau, 0.0);
    const double x = std::min(v.witness[0], v.witness[1]), y = std::max(v.witness[0], v.witness[1]);
    EXPECT_LT(x, 1.0);
    EXPECT_GT(0.5 * (x + y), 1.0 - 1e-12);
}

TEST(C1OnF, SameConstantAsPerCapitaForAnalyticFamilies) {
    for (auto phi : {ProductionFunction(AK{1.0}), ProductionFunction(CobbDouglas{1.0, 0.5})}) {
        const Verdict v = check_c1_on_F(TwoFactorProduction(phi), 0.5);
        EXPECT_EQ(v.status, VerdictStatus::CertifiedTrue);
        EXPECT_EQ(v.constant, check_c1(phi, 0.5).constant);
    }
}

TEST(C1OnF, TruncatedSquareTableRefutedAndWitnessBreaksAnalyticForm) {
    const auto phi = tabulate([](double k) { return k * k; });
    const Verdict v = check_c1_on_F(TwoFactorProduction(phi), 0.5);
    expect_sound_witness(v, phi, 0.5);
    const double K = v.witness[0], L = v.witness[1], c = *v.constant;
    EXPECT_GT(K * K / L, (c - 0.5) * K + c * L);
}

TEST(ConcavityF, Examples) {
    EXPECT_EQ(check_concavity_F(TwoFactorProduction(ProductionFunction(CobbDouglas{2.0, 0.3}))).status,
              VerdictStatus::SampledTrue);
    EXPECT_EQ(check_concavity_F(TwoFactorProduction(ProductionFunction(AK{1.0}))).status,
              VerdictStatus::SampledTrue);

    const ProductionFunction plateau(PlateauPower{1.0, 1.0, 1.0, 1.0});
    const Verdict v = check_concavity_F(TwoFactorProduction(plateau));
    expect_sound_witness(v, plateau, 0.0);
    const double r1 = v.witness[0] / v.witness[1], r2 = v.witness[2] / v.witness[3];
    EXPECT_LT(std::min(r1, r2), 1.0);
    EXPECT_GT(std::max(r1, r2), 1.0);
}

TEST(Qtilde, ConvexForConcaveUtility) {
    const auto lin = make_problem(ProductionFunction(AK{1.0}), UtilityFunction::linear(), 0.5, 0.1);
    const auto pw = make_problem(ProductionFunction(CobbDouglas{1.0, 0.5}), UtilityFunction(PowerUtility{0.5}),
                                 0.5, 0.1);
    for (double t : {0.0, 0.5, 1.0})
        for (double k : {0.0, 0.01, 1.0, 50.0}) {
            EXPECT_EQ(check_qtilde_convexity(lin, t, k).status, VerdictStatus::SampledTrue);
            EXPECT_EQ(check_qtilde_convexity(pw, t, k).status, VerdictStatus::SampledTrue);
        }
}

TEST(Qtilde, ConvexUtilityCounterexample) {
    std::vector<double> knots, values;
    for (int i = 0; i <= 200; ++i) {
        knots.push_back(0.01 * i);
        values.push_back(knots.back() * knots.back());
    }
    // phi = 1 everywhere (flat table). The cost boundary does not involve
    // sigma, which only has to be positive for a valid problem.
    const auto p = make_problem(ProductionFunction::tabulate({0.0, 1.0}, {1.0, 1.0}),
                                UtilityFunction::tabulate(knots, values), 1e-9, 0.0);
    const Verdict v = check_qtilde_convexity(p, 0.0, 1.0);
    ASSERT_EQ(v.status, VerdictStatus::Refuted);
    EXPECT_EQ(v.witness_kind, "s_pair");
    EXPECT_DOUBLE_EQ(v.witness[0], 0.0);
    EXPECT_DOUBLE_EQ(v.witness[1], 1.0);
    EXPECT_NEAR(v.violation, 0.25, 1e-12);
    // brute-force midpoint evaluation of -(1 - s)^2
    const double mid = -std::pow(1.0 - 0.5, 2), ends = 0.5 * (-1.0 + 0.0);
    EXPECT_NEAR(mid - ends, 0.25, 1e-15);
}

TEST(FullReport, ExistenceConclusions) {
    const auto cd = make_problem(ProductionFunction(CobbDouglas{1.0, 0.5}), UtilityFunction(PowerUtility{0.5}));
    EXPECT_EQ(full_report(cd).existence_conclusion, ExistenceBasis::PowerModel);
    EXPECT_EQ(to_string(full_report(cd).existence_conclusion), "Thm4_1");

    const auto plateau = make_problem(ProductionFunction(PlateauPower{1.0, 1.0, 1.0, 1.0}),
                                      UtilityFunction(PowerUtility{1.0}));
    const auto rp = full_report(plateau);
    EXPECT_EQ(rp.problem_type, ProblemType::Other);
    EXPECT_EQ(rp.existence_conclusion, ExistenceBasis::LinearGrowth);

    const auto square = make_problem(tabulate([](double k) { return k * k; }), UtilityFunction(PowerUtility{1.0}));
    const auto rs = full_report(square);
    EXPECT_FALSE(rs.limsup_finite);
    EXPECT_FALSE(rs.c1.holds());
    EXPECT_EQ(rs.existence_conclusion, ExistenceBasis::None);

    const auto concave_tab = make_problem(tabulate([](double k) { return std::log1p(k); }), UtilityFunction::linear());
    EXPECT_EQ(full_report(concave_tab).existence_conclusion, ExistenceBasis::ConcaveModel);
}

TEST(FullReport, PowerModelAndConcaveInvariants) {
    for (auto type : typical_types()) {
        const auto r = full_report(typical_instance(type, 0.05));
        EXPECT_EQ(r.existence_conclusion, ExistenceBasis::PowerModel);
        EXPECT_TRUE(r.phi_concave.holds());
        EXPECT_TRUE(r.qtilde_convex.holds());
    }
    for (const auto& e : corpus()) {
        const auto r = full_report(make_problem(e.phi, UtilityFunction(PowerUtility{0.7})));
        if (r.phi_concave.holds() && r.omega_concave.holds())
            EXPECT_TRUE(r.existence_conclusion == ExistenceBasis::ConcaveModel ||
                        r.existence_conclusion == ExistenceBasis::PowerModel)
                << e.name;
    }
}

TEST(Equivalence, C1MatchesLimsupFinitenessOverCorpus) {
    const auto c = corpus();
    ASSERT_GE(c.size(), 100u);
    const auto probes = log_probes({});
    for (const auto& e : c) {
        const bool c1 = check_c1(e.phi, 0.5).holds();
        EXPECT_EQ(c1, estimate_limsup(e.phi, probes).finite) << e.name;
        EXPECT_EQ(c1, e.linear_growth) << e.name;
    }
}

TEST(Equivalence, C1OnFMatchesPerCapitaForAllSigma) {
    for (const auto& e : corpus())
        for (double sigma : {0.1, 0.5, 1.0, 2.0})
            EXPECT_EQ(check_c1_on_F(TwoFactorProduction(e.phi), sigma).holds(), check_c1(e.phi, sigma).holds())
                << e.name << " sigma=" << sigma;
}

TEST(Equivalence, ConcavityOfFMatchesPerCapita) {
    for (const auto& e : corpus()) {
        const bool phi_level = check_concavity_phi(e.phi).holds();
        EXPECT_EQ(check_concavity_F(TwoFactorProduction(e.phi)).holds(), phi_level) << e.name;
        EXPECT_EQ(phi_level, e.concave) << e.name;
    }
}

TEST(Witness, EveryRefutationIsSound) {
    for (const auto& e : corpus()) {
        for (double sigma : {0.1, 2.0}) {
            if (auto v = check_c1(e.phi, sigma); !v.holds()) expect_sound_witness(v, e.phi, sigma);
            if (auto v = check_c1_on_F(TwoFactorProduction(e.phi), sigma); !v.holds())
                expect_sound_witness(v, e.phi, sigma);
        }
        if (auto v = check_concavity_phi(e.phi); !v.holds()) expect_sound_witness(v, e.phi, 0.0);
        if (auto v = check_concavity_F(TwoFactorProduction(e.phi)); !v.holds()) expect_sound_witness(v, e.phi, 0.0);
    }
}

TEST(Certificate, LargerConstantStillCertifies) {
    for (const auto& e : corpus())
        for (double sigma : {0.1, 0.5, 2.0}) {
            const Verdict v = check_c1(e.phi, sigma);
            if (!v.holds()) continue;
            ASSERT_TRUE(v.constant.has_value()) << e.name;
            EXPECT_TRUE(holds_on_grid(e.phi, *v.constant, sigma)) << e.name;
            EXPECT_TRUE(holds_on_grid(e.phi, *v.constant + 1.0, sigma)) << e.name;
        }
}

TEST(Determinism, ReportsIndependentOfCallOrder) {
    const auto p = make_problem(tabulate([](double k) { return k * (2.0 + std::sin(std::log1p(k))); }),
                                UtilityFunction(PowerUtility{0.5}));
    const auto a = full_report(p);
    (void)full_report(typical_instance(ProblemType::LinearLinear, 0.0));
    EXPECT_EQ(a, full_report(p));
}
