#pragma once

/**
 * @file roots.hpp
 * @brief Exact real-root counting (Sturm), isolation and the Bernoulli
 *        decomposition of real-rooted generating polynomials.
 *
 * Everything here is exact: root enclosures have rational endpoints and the
 * Bernoulli success probabilities come out as rational brackets, so claims
 * such as "the decomposition reproduces the mean" are interval containments
 * rather than float comparisons.
 */

#include "polyrec/moments.hpp"
#include "polyrec/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyrec {

/// Closed rational interval [lo, hi].
struct interval {
    rational lo;
    rational hi;

    rational width() const { return hi - lo; }
    bool contains(rational const& x) const { return lo <= x && x <= hi; }
    bool is_point() const { return lo == hi; }
    friend bool operator==(interval const&, interval const&) = default;
};

struct float_interval {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double x) const { return lo <= x && x <= hi; }
};

/// Negated-remainder chain with each entry reduced to its primitive part.
struct sturm_chain {
    std::vector<polynomial> chain;

    /// Sign variations at x, zeros skipped.
    std::size_t variations(rational const& x) const {
        std::size_t v = 0;
        int last = 0;
        for (auto const& p : chain) {
            int const s = sign(p(x));
            if (s == 0) continue;
            if (last != 0 && s != last) ++v;
            last = s;
        }
        return v;
    }

    bool ends_in_constant() const { return !chain.empty() && chain.back().size() == 1; }
};

inline sturm_chain make_sturm_chain(polynomial const& p) {
    if (p.is_zero()) throw std::domain_error("sturm chain of the zero polynomial");
    sturm_chain sc;
    sc.chain.push_back(primitive_part(p));
    polynomial d = primitive_part(differentiate(p));
    while (!d.is_zero()) {
        sc.chain.push_back(d);
        auto const& a = sc.chain[sc.chain.size() - 2];
        auto const& b = sc.chain.back();
        d = primitive_part(-divmod(a, b).second);
    }
    return sc;
}

/// p / gcd(p, p'), monic.
inline polynomial squarefree_part(polynomial const& p) {
    if (p.is_zero()) throw std::domain_error("squarefree part of the zero polynomial");
    if (p.size() == 1) return polynomial::constant(rational(1));
    auto q = divmod(p, gcd(p, differentiate(p))).first;
    return q * (rational(1) / q.leading());
}

/// 1 + max |a_i / a_d|: every complex root has modulus strictly below it.
inline rational cauchy_bound(polynomial const& p) {
    if (p.is_zero()) throw std::domain_error("cauchy bound of the zero polynomial");
    rational m(0);
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
        rational r = abs(p.coeff(k) / p.leading());
        if (r > m) m = r;
    }
    return m + 1;
}

/// Number of distinct real roots in the half-open interval (lo, hi].
inline std::size_t count_real_roots(polynomial const& p, rational const& lo, rational const& hi) {
    if (!(lo < hi)) throw std::invalid_argument("count_real_roots: need lo < hi");
    auto const sc = make_sturm_chain(squarefree_part(p));
    auto const a = sc.variations(lo);
    auto const b = sc.variations(hi);
    return a >= b ? a - b : 0;
}

struct root_enclosure {
    interval bounds;
    std::size_t multiplicity = 1;
    bool exact() const { return bounds.is_point(); }
};

struct root_certificate {
    std::size_t degree = 0;
    bool real_rooted = false;
    std::size_t real_root_count = 0;  // with multiplicity
    rational bound;                   // Cauchy bound used for the global count
    std::optional<interval> expected;
    std::optional<bool> all_in_expected;
    std::vector<root_enclosure> roots;  // ascending; filled by isolate()
    rational width_bound{0};
};

class not_real_rooted : public std::domain_error {
public:
    explicit not_real_rooted(root_certificate cert)
        : std::domain_error("polynomial is not real-rooted (" + std::to_string(cert.real_root_count) + " real roots, degree " +
                            std::to_string(cert.degree) + ")"),
          certificate(std::move(cert)) {}
    root_certificate certificate;
};

namespace detail {

/// Roots of a squarefree factor in [lo, hi] (closed).
inline std::size_t count_closed(sturm_chain const& sc, polynomial const& s, interval const& iv) {
    std::size_t n = s(iv.lo) == 0 ? 1 : 0;
    if (iv.lo < iv.hi) {
        auto const a = sc.variations(iv.lo);
        auto const b = sc.variations(iv.hi);
        n += a >= b ? a - b : 0;
    }
    return n;
}

}  // namespace detail

inline root_certificate certify(polynomial const& p, std::optional<interval> expect = std::nullopt) {
    if (p.is_zero()) throw std::domain_error("certify: zero polynomial");
    root_certificate cert;
    cert.degree = *p.degree();
    cert.bound = cauchy_bound(p);
    cert.expected = expect;
    std::size_t total = 0;
    std::size_t inside = 0;
    auto const factors = squarefree_decomposition(p);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        auto const& s = factors[i];
        if (s.size() <= 1) continue;
        auto const sc = make_sturm_chain(s);
        std::size_t const mult = i + 1;
        total += mult * detail::count_closed(sc, s, {-cert.bound, cert.bound});
        if (expect) inside += mult * detail::count_closed(sc, s, *expect);
    }
    cert.real_root_count = total;
    cert.real_rooted = total == cert.degree;
    if (expect) cert.all_in_expected = inside == cert.degree;
    return cert;
}

namespace detail {

struct isolator {
    polynomial const& s;
    sturm_chain const& sc;
    rational const& eps;
    integer lead;  // leading coefficient of the primitive factor
    std::vector<interval> out;

    std::size_t count(rational const& a, rational const& b) const {
        auto const va = sc.variations(a);
        auto const vb = sc.variations(b);
        return va >= vb ? va - vb : 0;
    }

    /// Isolates the c roots in (a, b]; b is never a root of s.
    void run(rational a, rational b, std::size_t c) {
        while (c > 0) {
            if (c == 1 && b - a <= eps) {
                emit_single(a, b);
                return;
            }
            rational m = (a + b) / 2;
            m.canonicalize();
            std::size_t const left = count(a, m);
            if (s(m) == 0) {
                out.push_back({m, m});
                // pull the left part's right end off the root m
                rational t = (m - a) / 2;
                while (s(m - t) == 0 || count(a, m - t) != left - 1) t /= 2;
                if (left > 1) run(a, m - t, left - 1);
            } else if (left > 0) {
                run(a, m, left);
            }
            c -= left;
            a = m;
        }
    }

    void emit_single(rational const& a, rational const& b) {
        // a rational root p/q of a primitive integer polynomial has q | lead
        rational const r = simplest_between(a, b);
        if (a < r && r <= b && mpz_divisible_p(lead.get_mpz_t(), r.get_den_mpz_t()) && s(r) == 0) {
            out.push_back({r, r});
            return;
        }
        out.push_back({a, b});
    }
};

}  // namespace detail

/**
 * Isolates every root of a real-rooted p to an enclosure of width <= eps.
 * Repeated roots appear once, with multiplicity from the squarefree
 * decomposition; exact rational roots found along the way are reported as
 * degenerate intervals.
 */
inline root_certificate isolate(polynomial const& p, rational const& eps,
                                std::optional<interval> expect = std::nullopt) {
    if (eps <= 0) throw std::invalid_argument("isolate: eps must be positive");
    auto cert = certify(p, expect);
    if (!cert.real_rooted) throw not_real_rooted(cert);
    auto const factors = squarefree_decomposition(p);
    for (std::size_t i = 0; i < factors.size(); ++i) {
        auto const s = primitive_part(factors[i]);
        if (s.size() <= 1) continue;
        auto const sc = make_sturm_chain(s);
        detail::isolator iso{s, sc, eps, s.leading().get_num(), {}};
        iso.run(-cert.bound, cert.bound, iso.count(-cert.bound, cert.bound));
        for (auto& iv : iso.out) cert.roots.push_back({std::move(iv), i + 1});
    }
    std::sort(cert.roots.begin(), cert.roots.end(),
              [](root_enclosure const& x, root_enclosure const& y) { return x.bounds.lo < y.bounds.lo; });
    cert.width_bound = 0;
    for (auto const& r : cert.roots)
        if (r.bounds.width() > cert.width_bound) cert.width_bound = r.bounds.width();
    return cert;
}

/// Success probabilities 1/(1 + pi_k), pi_k = -root_k, one bracket per root (with multiplicity).
struct bernoulli_decomposition_t {
    std::vector<interval> success_probs;
    rational width_bound{0};

    interval mean_bracket() const {
        interval s{rational(0), rational(0)};
        for (auto const& b : success_probs) {
            s.lo += b.lo;
            s.hi += b.hi;
        }
        return s;
    }

    /// Bracket on sum p(1-p); p(1-p) peaks at p = 1/2.
    interval variance_bracket() const {
        interval s{rational(0), rational(0)};
        for (auto const& b : success_probs) {
            auto const v = bracket_pq(b);
            s.lo += v.lo;
            s.hi += v.hi;
        }
        return s;
    }

    static interval bracket_pq(interval const& b) {
        rational const a = b.lo * (1 - b.lo);
        rational const c = b.hi * (1 - b.hi);
        rational const half(1, 2);
        rational hi = std::max(a, c);
        if (b.contains(half)) hi = rational(1, 4);
        return {std::min(a, c), hi};
    }
};

inline bernoulli_decomposition_t bernoulli_decomposition(polynomial const& p, rational const& eps) {
    require_distribution(p);
    auto const cert = isolate(p, eps);
    bernoulli_decomposition_t d;
    for (auto const& r : cert.roots) {
        // nonnegative coefficients: no positive roots, so clip at 0
        rational const lo = r.bounds.lo;
        rational const hi = r.bounds.hi > 0 ? rational(0) : r.bounds.hi;
        interval prob{1 / (1 - lo), 1 / (1 - hi)};
        prob.lo.canonicalize();
        prob.hi.canonicalize();
        for (std::size_t k = 0; k < r.multiplicity; ++k) d.success_probs.push_back(prob);
        if (prob.width() > d.width_bound) d.width_bound = prob.width();
    }
    return d;
}

/**
 * Lyapunov ratio sum E|xi - p|^3 / (sum p(1-p))^(3/2), with
 * E|xi - p|^3 = u(1 - 2u), u = p(1-p). The numerator is increasing in u on
 * [0, 1/4], so bracket endpoints map directly.
 */
inline float_interval lyapunov_ratio(bernoulli_decomposition_t const& d) {
    rational num_lo(0), num_hi(0);
    auto const var = d.variance_bracket();
    for (auto const& b : d.success_probs) {
        auto const u = bernoulli_decomposition_t::bracket_pq(b);
        num_lo += u.lo * (1 - 2 * u.lo);
        num_hi += u.hi * (1 - 2 * u.hi);
    }
    if (var.hi <= 0) throw std::domain_error("lyapunov ratio of a degenerate (zero-variance) decomposition");
    double const lo = to_double(num_lo) / std::pow(to_double(var.hi), 1.5);
    double const hi = var.lo > 0 ? to_double(num_hi) / std::pow(to_double(var.lo), 1.5)
                                 : std::numeric_limits<double>::infinity();
    // one ulp-scale cushion for the double conversion
    return {std::nextafter(lo, 0.0), std::nextafter(hi, std::numeric_limits<double>::infinity())};
}

}  // namespace polyrec
