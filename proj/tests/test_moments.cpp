#include "polyrec/moments.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace polyrec;

namespace {

// E(X)_r straight from the coefficients: sum_k k(k-1)...(k-r+1) p_k / sum_k p_k
rational falling_moment_oracle(polynomial const& p, unsigned r) {
    rational num(0), den(0);
    for (std::size_t k = 0; k < p.size(); ++k) {
        rational fall(1);
        for (unsigned j = 0; j < r; ++j) fall *= rational(static_cast<long>(k) - static_cast<long>(j));
        num += fall * p.coeff(k);
        den += p.coeff(k);
    }
    return num / den;
}

std::vector<recurrence_spec> leibniz_families() {
    return {builtin(family::abn{}),      builtin(family::lz{}),  builtin(family::lz_symmetric{}),
            builtin(family::eulerian{}), builtin(family::dhh{}), builtin(family::ah{}),
            builtin(family::hj{rational(2), rational(3, 2)})};
}

}  // namespace

TEST(Moments, PmfOfLz3) {
    auto const d = pmf_of(polynomial::from({1, 4, 1}));
    ASSERT_EQ(d.probabilities.size(), 3u);
    EXPECT_EQ(d.probabilities[0], rational(1, 6));
    EXPECT_EQ(d.probabilities[1], rational(2, 3));
    EXPECT_EQ(d.probabilities[2], rational(1, 6));
}

TEST(Moments, RejectsNonDistributions) {
    EXPECT_THROW(pmf_of(polynomial::from({1, -1, 3})), std::domain_error);
    EXPECT_THROW(pmf_of(polynomial{}), std::domain_error);
    EXPECT_THROW(moment_report_of(polynomial::from({1, 1}), 1), std::invalid_argument);
}

TEST(Moments, Lz3Report) {
    auto const m = moment_report_of(polynomial::from({1, 4, 1}), 2, 3);
    EXPECT_EQ(m.normalizer, rational(6));
    EXPECT_EQ(m.mean, rational(1));
    EXPECT_EQ(m.variance, rational(1, 3));
    ASSERT_TRUE(m.standardized_moments.has_value());
    EXPECT_DOUBLE_EQ((*m.standardized_moments)[0], 0.0);
    EXPECT_NEAR((*m.standardized_moments)[1], 3.0, 1e-12);
}

TEST(Moments, Abn2Report) {
    auto const m = moment_report_of(polynomial::from({0, 1, 4, 3}), 3);
    EXPECT_EQ(m.mean, rational(9, 4));
    EXPECT_EQ(m.variance, rational(7, 16));
    EXPECT_EQ(m.factorial_moment(3), rational(9, 4));
}

TEST(Moments, DegenerateHasNoStandardizedMoments) {
    auto const m = moment_report_of(polynomial::from({0, 0, 5}), 3);
    EXPECT_EQ(m.variance, rational(0));
    EXPECT_FALSE(m.standardized_moments.has_value());
}

TEST(Moments, CentralMoments) {
    auto const mu = central_moments(pmf_of(polynomial::from({1, 4, 1})), 4);
    EXPECT_EQ(mu[0], rational(1));
    EXPECT_EQ(mu[1], rational(0));
    EXPECT_EQ(mu[2], rational(1, 3));
    EXPECT_EQ(mu[4], rational(1, 3));
}

TEST(Moments, LzMeanAndVariance) {
    auto const table = derivative_vector_recurrence(builtin(family::lz{}), 50, 2);
    for (long n = 2; n <= 50; ++n) {
        auto const& row = table[static_cast<std::size_t>(n)];
        EXPECT_EQ(row.mean, rational(1)) << n;
        EXPECT_EQ(row.variance, make_rational(n - 2, n)) << n;
    }
}

TEST(Moments, AhMeanIsCentralBinomialRatio) {
    auto const table = derivative_vector_recurrence(builtin(family::ah{}), 30, 2);
    for (unsigned long n = 0; n <= 30; ++n)
        EXPECT_EQ(table[n].mean, pow(rational(4), n) / binomial(2 * n, n)) << n;
}

TEST(Moments, AbnVarianceRecurrence) {
    auto const rec = abn_variance_recurrence(30);
    auto const table = derivative_vector_recurrence(builtin(family::abn{}), 30, 2);
    for (long n = 1; n <= 30; ++n) EXPECT_EQ(rec[static_cast<std::size_t>(n - 1)], table[static_cast<std::size_t>(n)].variance);
    EXPECT_EQ(rec[0], rational(1, 4));
    for (long n = 2; n <= 30; ++n) EXPECT_EQ(rec[static_cast<std::size_t>(n - 1)], make_rational(7 * (n + 1), 48));
}

TEST(Moments, VectorRecurrenceRequiresVanishingG) {
    EXPECT_THROW(derivative_vector_recurrence(builtin(family::w{rational(1), rational(2)}), 5, 2), std::domain_error);
    EXPECT_THROW(derivative_vector_recurrence_float(builtin(family::be1{1}), 5, 2), std::domain_error);
    EXPECT_THROW(derivative_vector_recurrence(builtin(family::lz{}), 5, 1), std::invalid_argument);
}

TEST(Moments, FloatKeepFilter) {
    auto const rows = derivative_vector_recurrence_float(builtin(family::lz{}), 100, 3, {10, 100});
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].n, 10);
    EXPECT_EQ(rows[1].n, 100);
    EXPECT_NEAR(rows[1].mean, 1.0, 1e-12);
    EXPECT_NEAR(rows[1].variance, 0.98, 1e-12);
}

TEST(Moments, RawFromFactorial) {
    // Poisson(1): every factorial moment is 1, raw moments are Bell numbers
    auto const raw = raw_from_factorial(std::vector<double>(6, 1.0));
    std::vector<double> const bell{1, 1, 2, 5, 15, 52};
    for (std::size_t k = 0; k < raw.size(); ++k) EXPECT_DOUBLE_EQ(raw[k], bell[k]);
}

TEST(MomentsProperty, FactorialMomentsMatchOracle) {
    for (auto const& spec : leibniz_families()) {
        auto const seq = generate(spec, 10);
        for (std::size_t n = 0; n <= 10; ++n) {
            auto const m = moment_report_of(seq[n], 5);
            for (unsigned r = 0; r <= 5; ++r)
                EXPECT_EQ(m.factorial_moment(r), falling_moment_oracle(seq[n], r)) << spec.name << " n=" << n;
        }
    }
}

TEST(MomentsProperty, VectorPathAgreesWithPolynomialPath) {
    for (auto const& spec : leibniz_families()) {
        auto const seq = generate(spec, 20);
        auto const table = derivative_vector_recurrence(spec, 20, 6);
        for (std::size_t n = 0; n <= 20; ++n) {
            auto const m = moment_report_of(seq[n], 6, static_cast<long>(n));
            EXPECT_EQ(table[n].normalizer, m.normalizer) << spec.name << " n=" << n;
            EXPECT_EQ(table[n].factorial_moments, m.factorial_moments) << spec.name << " n=" << n;
        }
    }
}

TEST(MomentsProperty, FloatPathTracksExact) {
    for (auto const& spec : leibniz_families()) {
        auto const exact = derivative_vector_recurrence(spec, 40, 4);
        auto const approx = derivative_vector_recurrence_float(spec, 40, 4);
        ASSERT_EQ(approx.size(), exact.size());
        for (std::size_t n = 0; n <= 40; ++n)
            for (std::size_t r = 0; r <= 4; ++r) {
                double const want = to_double(exact[n].factorial_moments[r]);
                EXPECT_NEAR(approx[n].factorial_moments[r], want, 1e-9 * std::max(1.0, std::abs(want)))
                    << spec.name << " n=" << n << " r=" << r;
            }
    }
}

TEST(MomentsProperty, VarianceIsNonNegative) {
    for (auto const& spec : leibniz_families())
        for (auto const& row : derivative_vector_recurrence(spec, 25, 2)) EXPECT_GE(row.variance, 0) << spec.name;
}
