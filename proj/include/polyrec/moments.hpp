#pragma once

/**
 * @file moments.hpp
 * @brief Distributions and factorial moments of generating polynomials.
 *
 * For a polynomial with nonnegative coefficients, X takes value k with
 * probability p_k / P(1), and the factorial moments are
 * E(X)_r = P^(r)(1) / P(1).
 *
 * Two independent routes compute the factorial moments of a recurrence:
 * materializing P_n and differentiating it, or propagating the vector
 * (P_n(1), P_n'(1), ..., P_n^(rmax)(1)) through the Leibniz expansion of the
 * recurrence evaluated at x = 1. When g_n(1) = 0 the expansion is lower
 * triangular, so P_n itself is never needed.
 */

#include "polyrec/polynomial.hpp"
#include "polyrec/recurrence.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyrec {

struct pmf {
    std::vector<rational> probabilities;  // index k -> P(X = k)
};

inline void require_distribution(polynomial const& p) {
    for (std::size_t k = 0; k < p.size(); ++k)
        if (p.coeff(k) < 0)
            throw std::domain_error("negative coefficient " + to_string(p.coeff(k)) + " of x^" + std::to_string(k));
    if (p(rational(1)) <= 0) throw std::domain_error("normalizer P(1) must be positive");
}

inline pmf pmf_of(polynomial const& p) {
    require_distribution(p);
    rational const total = p(rational(1));
    pmf out;
    out.probabilities.reserve(p.size());
    for (auto const& c : p.coeffs()) out.probabilities.push_back(c / total);
    return out;
}

struct moment_report {
    long n = -1;
    rational normalizer;
    std::vector<rational> factorial_moments;  // [r] = E(X)_r, r = 0..rmax; [0] = 1
    rational mean;
    rational variance;
    std::optional<std::vector<double>> standardized_moments;  // orders 3..kmax

    rational const& factorial_moment(std::size_t r) const { return factorial_moments.at(r); }
    std::size_t rmax() const { return factorial_moments.empty() ? 0 : factorial_moments.size() - 1; }
};

namespace detail {

/// var = E(X)_2 - mean^2 + mean
inline void fill_mean_variance(moment_report& m) {
    m.mean = m.factorial_moments.at(1);
    m.variance = m.factorial_moments.at(2) - m.mean * m.mean + m.mean;
}

inline moment_report report_from_derivatives(std::vector<rational> const& d, long n) {
    if (d.at(0) <= 0) throw std::domain_error("normalizer P(1) must be positive");
    moment_report m;
    m.n = n;
    m.normalizer = d[0];
    m.factorial_moments.reserve(d.size());
    for (auto const& x : d) m.factorial_moments.push_back(x / d[0]);
    fill_mean_variance(m);
    return m;
}

}  // namespace detail

/// Exact central moments mu_k = E(X - mean)^k for k = 0..kmax.
inline std::vector<rational> central_moments(pmf const& dist, std::size_t kmax) {
    rational mean(0);
    for (std::size_t k = 0; k < dist.probabilities.size(); ++k) mean += dist.probabilities[k] * static_cast<unsigned long>(k);
    std::vector<rational> mu(kmax + 1);
    for (std::size_t k = 0; k < dist.probabilities.size(); ++k) {
        if (dist.probabilities[k] == 0) continue;
        rational const dev = rational(static_cast<unsigned long>(k)) - mean;
        rational term = dist.probabilities[k];
        for (std::size_t j = 0; j <= kmax; ++j) {
            mu[j] += term;
            term *= dev;
        }
    }
    return mu;
}

/// Standardized moments mu_k / var^(k/2) for k = 3..kmax; empty if the variance is zero.
inline std::optional<std::vector<double>> standardized_moments(pmf const& dist, std::size_t kmax) {
    auto const mu = central_moments(dist, std::max<std::size_t>(kmax, 2));
    if (mu[2] == 0) return std::nullopt;
    double const sd = std::sqrt(to_double(mu[2]));
    std::vector<double> out;
    for (std::size_t k = 3; k <= kmax; ++k) out.push_back(to_double(mu[k]) / std::pow(sd, static_cast<double>(k)));
    return out;
}

inline moment_report moment_report_of(polynomial const& p, std::size_t rmax, long n = -1, std::size_t kmax = 4) {
    if (rmax < 2) throw std::invalid_argument("moment_report: rmax must be >= 2");
    require_distribution(p);
    auto m = detail::report_from_derivatives(derivatives_at_one(p, rmax), n);
    if (kmax >= 3) m.standardized_moments = standardized_moments(pmf_of(p), kmax);
    return m;
}

/// One row of the double-precision table: normalized factorial moments only.
struct float_moment_row {
    long n = 0;
    std::vector<double> factorial_moments;  // [0] = 1
    double mean = 0.0;
    double variance = 0.0;
};

namespace detail {

inline void require_leibniz_shape(recurrence_spec const& spec) {
    if (!spec.g_vanishes_at_one())
        throw std::domain_error("derivative-vector recurrence requires g_n(1) = 0" +
                                (spec.name.empty() ? std::string{} : " (" + spec.name + " violates it)"));
    if (spec.form == recurrence_form::derivative && !spec.norm)
        throw std::invalid_argument("derivative-form recurrence requires a normalization");
}

/**
 * Leibniz expansion at x = 1, applied to a vector v = (P(1), ..., P^(rmax)(1)).
 * Entry 0 of the result is only meaningful for the direct form.
 * Templated on the scalar so the exact and double tables share one code path.
 */
template <typename Scalar, typename Convert>
std::vector<Scalar> leibniz_step(recurrence_form form, std::vector<rational> const& fd, std::vector<rational> const& gd,
                                 std::vector<Scalar> const& v, Convert conv) {
    std::size_t const rmax = v.size() - 1;
    std::vector<Scalar> out(v.size(), Scalar(0));
    auto binom = [](std::size_t a, std::size_t b) { return binomial(a, b); };
    for (std::size_t r = 0; r <= rmax; ++r) {
        // derivative form differentiates f P + g P' only r-1 times
        if (form == recurrence_form::derivative && r == 0) continue;
        std::size_t const order = form == recurrence_form::direct ? r : r - 1;
        Scalar acc(0);
        for (std::size_t k = 0; k <= order; ++k) {
            if (fd[k] != 0) acc += conv(binom(order, k) * fd[k]) * v[order - k];
            if (k >= 1 && gd[k] != 0) acc += conv(binom(order, k) * gd[k]) * v[order - k + 1];
        }
        out[r] = acc;
    }
    return out;
}

}  // namespace detail

/**
 * Exact factorial-moment table for n = 0..nmax via the derivative vector.
 * Entry n equals moment_report_of(generate(spec, nmax)[n], rmax) in its
 * exact fields (standardized moments are not filled: P_n is never built).
 */
inline std::vector<moment_report> derivative_vector_recurrence(recurrence_spec const& spec, long nmax,
                                                                std::size_t rmax) {
    detail::require_leibniz_shape(spec);
    if (nmax < 0) throw std::invalid_argument("nmax must be >= 0");
    if (rmax < 2) throw std::invalid_argument("rmax must be >= 2");
    std::vector<rational> v = derivatives_at_one(spec.p0, rmax);
    std::vector<moment_report> table;
    table.reserve(static_cast<std::size_t>(nmax) + 1);
    table.push_back(detail::report_from_derivatives(v, 0));
    auto const id = [](rational const& q) { return q; };
    for (long n = 1; n <= nmax; ++n) {
        auto const fd = derivatives_at_one(spec.f.at(n), rmax);
        auto const gd = derivatives_at_one(spec.g.at(n), rmax);
        v = detail::leibniz_step<rational>(spec.form, fd, gd, v, id);
        if (spec.form == recurrence_form::derivative) v[0] = spec.norm->at(n);
        table.push_back(detail::report_from_derivatives(v, n));
    }
    return table;
}

/**
 * Double-precision variant for large n. Propagates the normalized vector
 * P^(r)(1) / P(1) so that P_n(1) itself (which overflows) is never formed.
 * Returns only the rows whose n is listed in `keep` (all rows if empty).
 */
inline std::vector<float_moment_row> derivative_vector_recurrence_float(recurrence_spec const& spec, long nmax,
                                                                         std::size_t rmax,
                                                                         std::vector<long> const& keep = {}) {
    detail::require_leibniz_shape(spec);
    if (nmax < 0) throw std::invalid_argument("nmax must be >= 0");
    if (rmax < 2) throw std::invalid_argument("rmax must be >= 2");

    auto const d0 = derivatives_at_one(spec.p0, rmax);
    if (d0[0] <= 0) throw std::domain_error("P_0(1) must be positive");
    std::vector<double> m(rmax + 1);
    for (std::size_t r = 0; r <= rmax; ++r) m[r] = to_double(d0[r] / d0[0]);

    std::vector<float_moment_row> rows;
    auto emit = [&](long n) {
        if (!keep.empty() && std::find(keep.begin(), keep.end(), n) == keep.end()) return;
        float_moment_row row;
        row.n = n;
        row.factorial_moments = m;
        row.mean = m[1];
        row.variance = m[2] - m[1] * m[1] + m[1];
        rows.push_back(std::move(row));
    };
    emit(0);
    auto const conv = [](rational const& q) { return to_double(q); };
    for (long n = 1; n <= nmax; ++n) {
        auto const fd = derivatives_at_one(spec.f.at(n), rmax);
        auto const gd = derivatives_at_one(spec.g.at(n), rmax);
        // growth P_n(1) / P_{n-1}(1)
        rational growth;
        if (spec.form == recurrence_form::direct)
            growth = fd[0];
        else
            growth = n == 1 ? spec.norm->at(1) / d0[0] : spec.norm->ratio(n);
        if (growth <= 0) throw std::domain_error("P_n(1) is not positive at n=" + std::to_string(n));
        double const s = to_double(growth);
        auto next = detail::leibniz_step<double>(spec.form, fd, gd, m, conv);
        next[0] = 1.0;
        for (std::size_t r = 1; r <= rmax; ++r) next[r] /= s;
        m = std::move(next);
        emit(n);
    }
    return rows;
}

/// E X^k from factorial moments: E X^k = sum_j S(k, j) E(X)_j.
inline std::vector<double> raw_from_factorial(std::vector<double> const& fm) {
    std::size_t const kmax = fm.size() - 1;
    // Stirling numbers of the second kind, row by row.
    std::vector<std::vector<double>> s(kmax + 1, std::vector<double>(kmax + 1, 0.0));
    s[0][0] = 1.0;
    for (std::size_t k = 1; k <= kmax; ++k)
        for (std::size_t j = 1; j <= k; ++j) s[k][j] = static_cast<double>(j) * s[k - 1][j] + s[k - 1][j - 1];
    std::vector<double> raw(kmax + 1, 0.0);
    for (std::size_t k = 0; k <= kmax; ++k)
        for (std::size_t j = 0; j <= k; ++j) raw[k] += s[k][j] * fm[j];
    return raw;
}

/**
 * Variance of the number of diagonal cells, var(D_n) for n = 1..nmax, from
 *   var(D_n) = (n-2)/n var(D_{n-1}) + 7/16,   n >= 2.
 * The recurrence relies on E D_{n-1} = 3n/4, which fails for n-1 = 0
 * (B_0 = x has mean 1), so the base is var(D_1) = 1/4 read off B_1 = x + x^2.
 */
inline std::vector<rational> abn_variance_recurrence(long nmax) {
    if (nmax < 1) throw std::invalid_argument("nmax must be >= 1");
    std::vector<rational> out;
    out.reserve(static_cast<std::size_t>(nmax));
    auto const b1 = generate(builtin(family::abn{}), 1).back();
    out.push_back(moment_report_of(b1, 2).variance);
    for (long n = 2; n <= nmax; ++n) {
        rational v = make_rational(n - 2, n) * out.back() + rational(7, 16);
        v.canonicalize();
        out.push_back(v);
    }
    return out;
}

}  // namespace polyrec
