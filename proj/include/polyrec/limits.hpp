#pragma once

/**
 * @file limits.hpp
 * @brief Finite-n diagnostics for distributional limits of recurrence families.
 *
 * Nothing here decides that a limit "holds"; every report is a convergence
 * table plus a scalar deviation, and callers pin tolerances.
 *
 *  - Poisson: derivative-form recurrences with f_n constant in x and
 *    g_n(x) = g_n (x - 1) have E(X_n)_r = (f_n + (r-1) g_n) P_{n-1}^(r-1)(1) / P_n(1),
 *    so g_n = o(f_n) and f_n P_{n-1}(1)/P_n(1) -> c give E(X_n)_r -> c^r.
 *  - Gaussian: a real-rooted P_n splits X_n into independent indicators;
 *    the Lyapunov ratio of that split controls the normal approximation.
 *  - Local limit: sup_k |P(X_n = k) - normal density at k|.
 *  - Scaled moments: E (X_n / s_n)^k against the moments of a target law.
 */

#include "polyrec/moments.hpp"
#include "polyrec/recurrence.hpp"
#include "polyrec/roots.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyrec {

// ---------------------------------------------------------------- Poisson

struct poisson_row {
    long n = 0;
    rational c_estimate;  // f_n P_{n-1}(1) / P_n(1)
    rational g_over_f;
};

struct poisson_diagnosis {
    recurrence_spec diagnosed;  // the spec actually analyzed (after any x -> x^2 reduction)
    unsigned doubling_factor = 1;
    std::vector<poisson_row> rows;                     // n = 1..nmax
    std::vector<moment_report> factorial_moment_table;  // n = 0..nmax
    bool c_constant = false;
    double c_limit = 0.0;  // c estimate at nmax
    rational max_deviation_exact;  // max_r |E(X_nmax)_r - c^r|
    double max_deviation_at_nmax = 0.0;
    std::string limit_description;
};

namespace detail {

/// Empty string when the spec has the Poisson-criterion shape, else the violated condition.
inline std::string poisson_shape_violation(recurrence_spec const& spec) {
    if (spec.form != recurrence_form::derivative) return "recurrence must be in derivative form (P_n' = ...)";
    if (!spec.norm) return "derivative form requires a normalization";
    if (spec.f.entries().size() > 1) return "f_n(x) must be constant in x";
    if (spec.g.entries().size() > 2) return "g_n(x) must have degree <= 1 in x";
    if (!spec.g_vanishes_at_one()) return "g_n(x) must have the form g_n (x - 1)";
    return {};
}

inline poisson_diagnosis diagnose_shaped(recurrence_spec const& spec, long nmax, std::size_t rmax) {
    poisson_diagnosis d;
    d.diagnosed = spec;
    auto const f_of = [&](long n) { return spec.f.entries().empty() ? rational(0) : spec.f.entries()[0].at(n); };
    auto const g_of = [&](long n) { return spec.g.entries().size() < 2 ? rational(0) : spec.g.entries()[1].at(n); };
    rational const p0_at_one = spec.p0(rational(1));
    for (long n = 1; n <= nmax; ++n) {
        rational const fn = f_of(n);
        if (fn == 0) throw std::domain_error("poisson criterion: f_n vanishes at n=" + std::to_string(n));
        rational const growth = n == 1 ? spec.norm->at(1) / p0_at_one : spec.norm->ratio(n);
        poisson_row row{n, fn / growth, g_of(n) / fn};
        row.c_estimate.canonicalize();
        row.g_over_f.canonicalize();
        d.rows.push_back(std::move(row));
    }
    d.factorial_moment_table = derivative_vector_recurrence(spec, nmax, rmax);
    d.c_constant = true;
    for (auto const& r : d.rows)
        if (r.c_estimate != d.rows.front().c_estimate) d.c_constant = false;
    if (!d.rows.empty()) {
        rational const c = d.rows.back().c_estimate;
        d.c_limit = to_double(c);
        auto const& last = d.factorial_moment_table.back();
        rational cr(1);
        d.max_deviation_exact = 0;
        for (std::size_t r = 1; r <= rmax; ++r) {
            cr *= c;
            rational dev = abs(last.factorial_moment(r) - cr);
            if (dev > d.max_deviation_exact) d.max_deviation_exact = dev;
        }
        d.max_deviation_at_nmax = to_double(d.max_deviation_exact);
        d.limit_description = "Pois(" + (d.c_constant ? to_string(c) : std::to_string(d.c_limit)) + ")";
    }
    return d;
}

}  // namespace detail

/**
 * Tables for the Poisson criterion. Specs outside the criterion's shape are
 * tried once more after the substitution Q(x) = P(x^2); a reduced spec that
 * fits is diagnosed with doubling factor 2 (X_Q = 2 X_P).
 */
inline poisson_diagnosis diagnose_poisson(recurrence_spec const& spec, long nmax, std::size_t rmax) {
    if (nmax < 1) throw std::invalid_argument("diagnose_poisson: nmax must be >= 1");
    if (rmax < 2) throw std::invalid_argument("diagnose_poisson: rmax must be >= 2");
    auto const why = detail::poisson_shape_violation(spec);
    if (why.empty()) return detail::diagnose_shaped(spec, nmax, rmax);
    if (auto reduced = reduce_square(spec); reduced && detail::poisson_shape_violation(*reduced).empty()) {
        auto d = detail::diagnose_shaped(*reduced, nmax, rmax);
        d.doubling_factor = 2;
        d.limit_description = "2 x " + d.limit_description;
        return d;
    }
    throw std::domain_error("poisson criterion does not apply: " + why);
}

// -------------------------------------------------------------------- CLT

struct clt_report {
    long n = 0;
    root_certificate certificate;
    moment_report moments;
    rational variance;
    bernoulli_decomposition_t decomposition;
    interval mean_bracket;
    interval variance_bracket;
    bool mean_contained = false;
    bool variance_contained = false;
    float_interval lyapunov;
    double standardized_m3 = 0.0;
    double standardized_m4 = 0.0;
    static constexpr double gaussian_m3 = 0.0;
    static constexpr double gaussian_m4 = 3.0;
};

inline clt_report make_clt_report(polynomial const& p, long n, rational const& eps = rational(1, 1 << 20)) {
    clt_report rep;
    rep.n = n;
    rep.certificate = isolate(p, eps);  // throws not_real_rooted with the certificate
    rep.moments = moment_report_of(p, 4, n, 4);
    rep.variance = rep.moments.variance;
    rep.decomposition = bernoulli_decomposition(p, eps);
    rep.mean_bracket = rep.decomposition.mean_bracket();
    rep.variance_bracket = rep.decomposition.variance_bracket();
    rep.mean_contained = rep.mean_bracket.contains(rep.moments.mean);
    rep.variance_contained = rep.variance_bracket.contains(rep.moments.variance);
    rep.lyapunov = lyapunov_ratio(rep.decomposition);
    if (rep.moments.standardized_moments) {
        rep.standardized_m3 = (*rep.moments.standardized_moments)[0];
        rep.standardized_m4 = (*rep.moments.standardized_moments)[1];
    }
    return rep;
}

inline clt_report clt_report_for(recurrence_spec const& spec, long n, rational const& eps = rational(1, 1 << 20)) {
    if (n < 0) throw std::invalid_argument("clt_report: n must be >= 0");
    return make_clt_report(generate(spec, n).back(), n, eps);
}

// ------------------------------------------------------------ local limit

struct local_limit_report {
    long n = 0;
    double mean = 0.0;
    double variance = 0.0;
    double sup_abs_error = 0.0;
    long argmax_k = 0;
    rational pmf_total;  // exactly 1
    double density_total = 0.0;
};

inline double normal_density(double x, double mean, double variance) {
    double const z = x - mean;
    return std::exp(-z * z / (2.0 * variance)) / std::sqrt(2.0 * std::numbers::pi * variance);
}

/// Compares the exact pmf of p with the normal density of the given mean and variance.
inline local_limit_report make_local_limit_report(polynomial const& p, long n, rational const& mean,
                                                  rational const& variance) {
    if (variance <= 0) throw std::domain_error("local limit: variance must be positive");
    auto const dist = pmf_of(p);
    local_limit_report rep;
    rep.n = n;
    rep.mean = to_double(mean);
    rep.variance = to_double(variance);
    rep.pmf_total = 0;
    for (std::size_t k = 0; k < dist.probabilities.size(); ++k) {
        double const phi = normal_density(static_cast<double>(k), rep.mean, rep.variance);
        double const err = std::abs(to_double(dist.probabilities[k]) - phi);
        rep.pmf_total += dist.probabilities[k];
        rep.density_total += phi;
        if (err > rep.sup_abs_error) {
            rep.sup_abs_error = err;
            rep.argmax_k = static_cast<long>(k);
        }
    }
    return rep;
}

/**
 * Local-limit comparison for a family. For ABN the density uses the closed
 * forms mean 3(n+1)/4 and variance 7(n+1)/48; other families use their exact
 * moments.
 */
inline local_limit_report local_limit_report_for(family_id const& id, long n) {
    if (n < 1) throw std::invalid_argument("local limit: n must be >= 1");
    auto const p = generate(builtin(id), n).back();
    if (std::holds_alternative<family::abn>(id))
        return make_local_limit_report(p, n, make_rational(3 * (n + 1), 4),
                                       make_rational(7 * (n + 1), 48));
    auto const m = moment_report_of(p, 2, n, 0);
    return make_local_limit_report(p, n, m.mean, m.variance);
}

// --------------------------------------------------------- scaled moments

/// Target law for X_n / s_n.
struct scaled_target {
    std::string description;
    std::function<double(long)> scale;            // s_n
    std::function<double(std::size_t)> moment;   // E X^k of the limit
    std::optional<double> variance_per_n;        // var(X_n)/n -> this
    std::function<double(long)> factorial3;      // asymptote of E(X_n)_3, optional
};

/// X_n / (2 sqrt n) -> density 2x exp(-x^2) on x >= 0, with E X^k = Gamma(k/2 + 1).
inline scaled_target rayleigh_target() {
    scaled_target t;
    t.description = "X_n/(2 sqrt n) -> density 2x exp(-x^2)";
    t.scale = [](long n) { return 2.0 * std::sqrt(static_cast<double>(n)); };
    t.moment = [](std::size_t k) { return std::tgamma(static_cast<double>(k) / 2.0 + 1.0); };
    t.variance_per_n = 4.0 - std::numbers::pi;
    t.factorial3 = [](long n) {
        return 6.0 * std::sqrt(std::numbers::pi) * std::pow(static_cast<double>(n), 1.5);
    };
    return t;
}

struct scaled_moment_row {
    long n = 0;
    std::vector<double> ratios;  // [k-1] = E(X_n/s_n)^k / target_k, k = 1..kmax
    double variance_over_n = 0.0;
    double factorial3_ratio = 0.0;  // E(X_n)_3 / asymptote, when the target has one
};

struct scaled_moment_report {
    std::string scaling;
    std::size_t kmax = 0;
    std::optional<double> variance_per_n_target;
    std::vector<scaled_moment_row> rows;
};

/// n = 1, 10, 100, ... up to nmax, plus nmax itself.
inline std::vector<long> log_grid(long nmax) {
    std::vector<long> g;
    for (long n = 1; n < nmax; n *= 10) g.push_back(n);
    g.push_back(nmax);
    return g;
}

inline scaled_moment_report scaled_moment_limit(recurrence_spec const& spec, long nmax, std::size_t kmax,
                                                scaled_target const& target = rayleigh_target()) {
    if (nmax < 1) throw std::invalid_argument("scaled_moment_limit: nmax must be >= 1");
    if (kmax < 1) throw std::invalid_argument("scaled_moment_limit: kmax must be >= 1");
    std::size_t const rmax = std::max<std::size_t>(kmax, 3);
    auto const grid = log_grid(nmax);
    auto const table = derivative_vector_recurrence_float(spec, nmax, rmax, grid);

    scaled_moment_report rep;
    rep.scaling = target.description;
    rep.kmax = kmax;
    rep.variance_per_n_target = target.variance_per_n;
    for (auto const& row : table) {
        if (row.n < 1) continue;
        auto const raw = raw_from_factorial(row.factorial_moments);
        scaled_moment_row out;
        out.n = row.n;
        double const s = target.scale(row.n);
        for (std::size_t k = 1; k <= kmax; ++k)
            out.ratios.push_back(raw[k] / (std::pow(s, static_cast<double>(k)) * target.moment(k)));
        out.variance_over_n = row.variance / static_cast<double>(row.n);
        if (target.factorial3) out.factorial3_ratio = row.factorial_moments[3] / target.factorial3(row.n);
        rep.rows.push_back(std::move(out));
    }
    return rep;
}

}  // namespace polyrec
