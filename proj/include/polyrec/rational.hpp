#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational scalars (GMP-backed) and their canonical text form.
 *
 * The canonical text form is "num/den" with the denominator omitted when it
 * equals 1, e.g. "7/16", "-3", "0".
 */

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>

namespace polyrec {

using integer = mpz_class;
using rational = mpq_class;

/// Canonical "num/den" rendering.
inline std::string to_string(rational const& q) {
    rational c = q;
    c.canonicalize();
    if (c.get_den() == 1) return c.get_num().get_str();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline std::string to_string(integer const& z) { return z.get_str(); }

/// num/den in lowest terms (the two-argument mpq_class constructor does not reduce).
inline rational make_rational(integer const& num, integer const& den) {
    if (den == 0) throw std::domain_error("make_rational: zero denominator");
    rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "a", "a/b" or a plain decimal like "0.25" (decimal is converted exactly).
inline rational parse_rational(std::string_view text) {
    std::string s(text);
    auto const first = s.find_first_not_of(" \t");
    auto const last = s.find_last_not_of(" \t");
    if (first == std::string::npos) throw std::invalid_argument("empty rational literal");
    s = s.substr(first, last - first + 1);

    try {
        if (auto dot = s.find('.'); dot != std::string::npos) {
            if (s.find('/') != std::string::npos) throw std::invalid_argument("mixed '.' and '/'");
            bool neg = !s.empty() && s[0] == '-';
            std::string digits = s.substr(neg || s[0] == '+' ? 1 : 0);
            dot = digits.find('.');
            std::string whole = digits.substr(0, dot);
            std::string frac = digits.substr(dot + 1);
            if (whole.empty()) whole = "0";
            if (frac.empty()) frac = "0";
            for (char ch : whole + frac)
                if (ch < '0' || ch > '9') throw std::invalid_argument("bad digit");
            integer num(whole + frac, 10);
            integer den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
            rational r(num, den);
            r.canonicalize();
            return neg ? rational(-r) : r;
        }
        rational r(s, 10);
        if (r.get_den() == 0) throw std::invalid_argument("zero denominator");
        r.canonicalize();
        return r;
    } catch (std::invalid_argument const&) {
        throw std::invalid_argument("malformed rational literal '" + std::string(text) + "'");
    }
}

inline rational factorial(unsigned long n) {
    integer z;
    mpz_fac_ui(z.get_mpz_t(), n);
    return rational(z);
}

inline rational binomial(unsigned long n, unsigned long k) {
    integer z;
    mpz_bin_uiui(z.get_mpz_t(), n, k);
    return rational(z);
}

inline rational pow(rational const& base, unsigned long e) {
    rational r(1);
    rational b = base;
    while (e != 0) {
        if (e & 1UL) r *= b;
        b *= b;
        e >>= 1;
    }
    return r;
}

/// Nearest double; mpq_get_d truncates, which is fine for our 1e-12 budget.
inline double to_double(rational const& q) { return q.get_d(); }

inline int sign(rational const& q) { return sgn(q); }

/// Simplest rational (smallest denominator) in the closed interval [lo, hi].
inline rational simplest_between(rational lo, rational hi) {
    if (lo > hi) std::swap(lo, hi);
    if (lo <= 0 && hi >= 0) return rational(0);
    if (hi < 0) return -simplest_between(-hi, -lo);

    // Continued-fraction descent on 0 < lo <= hi.
    integer fl;
    mpz_fdiv_q(fl.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    if (rational(fl) == lo) return lo;
    if (rational(fl + 1) <= hi) return rational(fl + 1);
    rational const inv_lo = 1 / (hi - fl);
    rational const inv_hi = 1 / (lo - fl);
    rational r = rational(fl) + 1 / simplest_between(inv_lo, inv_hi);
    r.canonicalize();
    return r;
}

}  // namespace polyrec
