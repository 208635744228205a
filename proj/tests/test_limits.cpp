#include "polyrec/limits.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace polyrec;

TEST(Poisson, LzConstantOne) {
    auto const d = diagnose_poisson(builtin(family::lz{}), 60, 4);
    EXPECT_EQ(d.doubling_factor, 1u);
    EXPECT_TRUE(d.c_constant);
    for (auto const& row : d.rows) EXPECT_EQ(row.c_estimate, rational(1)) << row.n;
    EXPECT_EQ(d.rows.back().g_over_f, rational(-1, 30));
    EXPECT_EQ(d.limit_description, "Pois(1)");
    EXPECT_LT(d.max_deviation_at_nmax, 0.6);
    ASSERT_EQ(d.factorial_moment_table.size(), 61u);
}

TEST(Poisson, DeviationShrinks) {
    auto const a = diagnose_poisson(builtin(family::lz{}), 20, 4);
    auto const b = diagnose_poisson(builtin(family::lz{}), 80, 4);
    EXPECT_LT(b.max_deviation_exact, a.max_deviation_exact);
}

TEST(Poisson, SymmetricUsesReduction) {
    auto const d = diagnose_poisson(builtin(family::lz_symmetric{}), 30, 3);
    EXPECT_EQ(d.doubling_factor, 2u);
    EXPECT_TRUE(d.c_constant);
    EXPECT_EQ(d.rows.front().c_estimate, rational(1, 2));
    EXPECT_EQ(d.limit_description, "2 x Pois(1/2)");
}

TEST(Poisson, RejectsOtherShapes) {
    EXPECT_THROW(diagnose_poisson(builtin(family::abn{}), 10, 3), std::domain_error);
    EXPECT_THROW(diagnose_poisson(builtin(family::eulerian{}), 10, 3), std::domain_error);
    EXPECT_THROW(diagnose_poisson(builtin(family::lz{}), 0, 3), std::invalid_argument);
    EXPECT_THROW(diagnose_poisson(builtin(family::lz{}), 10, 1), std::invalid_argument);
}

TEST(Clt, AbnReport) {
    auto const rep = clt_report_for(builtin(family::abn{}), 10);
    EXPECT_TRUE(rep.certificate.real_rooted);
    EXPECT_TRUE(rep.mean_contained);
    EXPECT_TRUE(rep.variance_contained);
    EXPECT_EQ(rep.variance, rational(77, 48));
    EXPECT_LE(rep.lyapunov.lo, rep.lyapunov.hi);
    EXPECT_NEAR(rep.standardized_m4, 3.0, 0.5);
}

TEST(Clt, LyapunovDecreases) {
    auto const a = clt_report_for(builtin(family::abn{}), 5);
    auto const b = clt_report_for(builtin(family::abn{}), 15);
    EXPECT_LT(b.lyapunov.hi, a.lyapunov.lo);
}

TEST(Clt, NotRealRooted) {
    EXPECT_THROW(make_clt_report(polynomial::from({1, 1, 1}), 0), not_real_rooted);
}

TEST(LocalLimit, AbnErrorDecreases) {
    auto const a = local_limit_report_for(family::abn{}, 15);
    auto const b = local_limit_report_for(family::abn{}, 30);
    EXPECT_EQ(a.pmf_total, rational(1));
    EXPECT_NEAR(a.mean, 12.0, 1e-12);
    EXPECT_NEAR(a.variance, 7.0 * 16 / 48, 1e-12);
    EXPECT_GT(a.sup_abs_error, b.sup_abs_error);
    EXPECT_NEAR(b.density_total, 1.0, 1e-3);
}

TEST(LocalLimit, OtherFamilyUsesExactMoments) {
    auto const r = local_limit_report_for(family::eulerian{}, 20);
    EXPECT_NEAR(r.mean, 9.5, 1e-12);
    EXPECT_NEAR(r.variance, 21.0 / 12, 1e-12);
    EXPECT_LT(r.sup_abs_error, 0.02);
}

TEST(LocalLimit, Errors) {
    EXPECT_THROW(local_limit_report_for(family::abn{}, 0), std::invalid_argument);
    EXPECT_THROW(make_local_limit_report(polynomial::from({0, 1}), 0, rational(1), rational(0)), std::domain_error);
}

TEST(ScaledMoments, Grid) {
    EXPECT_EQ(log_grid(1), (std::vector<long>{1}));
    EXPECT_EQ(log_grid(100), (std::vector<long>{1, 10, 100}));
    EXPECT_EQ(log_grid(250), (std::vector<long>{1, 10, 100, 250}));
}

TEST(ScaledMoments, AhTrend) {
    auto const rep = scaled_moment_limit(builtin(family::ah{}), 1000, 4);
    ASSERT_EQ(rep.rows.size(), 4u);
    auto const& last = rep.rows.back();
    EXPECT_EQ(last.n, 1000);
    ASSERT_EQ(last.ratios.size(), 4u);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_NEAR(last.ratios[k], 1.0, 0.07) << k + 1;
        EXPECT_LT(std::abs(last.ratios[k] - 1), std::abs(rep.rows[1].ratios[k] - 1)) << k + 1;
    }
    EXPECT_NEAR(last.variance_over_n, 4.0 - std::numbers::pi, 0.06);
    EXPECT_NEAR(last.factorial3_ratio, 1.0, 0.08);
}

TEST(ScaledMoments, MeanMatchesExactAtSmallN) {
    auto const exact = derivative_vector_recurrence(builtin(family::ah{}), 10, 3);
    auto const rep = scaled_moment_limit(builtin(family::ah{}), 10, 1);
    auto const t = rayleigh_target();
    double const want = to_double(exact[10].mean) / (t.scale(10) * t.moment(1));
    EXPECT_NEAR(rep.rows.back().ratios[0], want, 1e-12);
}

TEST(ScaledMoments, Errors) {
    EXPECT_THROW(scaled_moment_limit(builtin(family::ah{}), 0, 2), std::invalid_argument);
    EXPECT_THROW(scaled_moment_limit(builtin(family::w{rational(1), rational(1)}), 10, 2), std::domain_error);
}
