#pragma once

/**
 * @file polynomial.hpp
 * @brief Dense univariate polynomials with exact rational coefficients.
 *
 * Coefficients are stored in ascending degree order and the highest stored
 * coefficient is always nonzero. The zero polynomial is the empty vector and
 * has no degree (`degree()` returns `std::nullopt`).
 */

#include "polyrec/rational.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polyrec {

class polynomial {
public:
    polynomial() = default;

    explicit polynomial(std::vector<rational> coeffs) : c_(std::move(coeffs)) { normalize(); }

    polynomial(std::initializer_list<rational> coeffs) : c_(coeffs) { normalize(); }

    /// Shorthand for integer coefficient lists: polynomial::from({1, 4, 1}).
    static polynomial from(std::initializer_list<long> coeffs) {
        std::vector<rational> v;
        v.reserve(coeffs.size());
        for (long c : coeffs) v.emplace_back(c);
        return polynomial(std::move(v));
    }

    static polynomial constant(rational const& c) { return polynomial({c}); }

    /// c * x^k
    static polynomial monomial(rational const& c, std::size_t k) {
        std::vector<rational> v(k + 1);
        v[k] = c;
        return polynomial(std::move(v));
    }

    bool is_zero() const { return c_.empty(); }

    std::optional<std::size_t> degree() const {
        if (c_.empty()) return std::nullopt;
        return c_.size() - 1;
    }

    /// Coefficient of x^k; zero past the end.
    rational coeff(std::size_t k) const { return k < c_.size() ? c_[k] : rational(0); }

    rational leading() const { return c_.empty() ? rational(0) : c_.back(); }

    std::span<rational const> coeffs() const { return c_; }
    std::size_t size() const { return c_.size(); }

    friend bool operator==(polynomial const&, polynomial const&) = default;

    /// Ascending coefficient list, e.g. [1, 4, 1].
    friend std::ostream& operator<<(std::ostream& os, polynomial const& p) {
        os << '[';
        for (std::size_t k = 0; k < p.size(); ++k) os << (k ? ", " : "") << to_string(p.coeff(k));
        return os << ']';
    }

    polynomial& operator+=(polynomial const& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
        normalize();
        return *this;
    }

    polynomial& operator-=(polynomial const& o) {
        if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
        for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
        normalize();
        return *this;
    }

    polynomial& operator*=(rational const& s) {
        if (s == 0) {
            c_.clear();
            return *this;
        }
        for (auto& x : c_) x *= s;
        return *this;
    }

    friend polynomial operator+(polynomial a, polynomial const& b) { return a += b; }
    friend polynomial operator-(polynomial a, polynomial const& b) { return a -= b; }
    friend polynomial operator*(polynomial a, rational const& s) { return a *= s; }
    friend polynomial operator*(rational const& s, polynomial a) { return a *= s; }
    friend polynomial operator-(polynomial a) { return a *= rational(-1); }

    friend polynomial operator*(polynomial const& a, polynomial const& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<rational> r(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return polynomial(std::move(r));
    }

    polynomial& operator*=(polynomial const& o) { return *this = *this * o; }

    /// Exact Horner evaluation.
    rational operator()(rational const& x) const {
        rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            acc *= x;
            acc += *it;
        }
        return acc;
    }

    double eval_double(double x) const {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + it->get_d();
        return acc;
    }

private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
        for (auto& x : c_) x.canonicalize();
    }

    std::vector<rational> c_;
};

enum class arith_op { add, sub, mul };

inline polynomial arith(polynomial const& a, polynomial const& b, arith_op op) {
    switch (op) {
        case arith_op::add: return a + b;
        case arith_op::sub: return a - b;
        case arith_op::mul: return a * b;
    }
    throw std::logic_error("unreachable arith_op");
}

inline polynomial differentiate(polynomial const& p) {
    if (p.size() <= 1) return {};
    std::vector<rational> r(p.size() - 1);
    for (std::size_t k = 1; k < p.size(); ++k) r[k - 1] = p.coeff(k) * static_cast<unsigned long>(k);
    return polynomial(std::move(r));
}

/// Antiderivative with zero constant term.
inline polynomial integrate(polynomial const& p) {
    if (p.is_zero()) return {};
    std::vector<rational> r(p.size() + 1);
    for (std::size_t k = 0; k < p.size(); ++k) r[k + 1] = p.coeff(k) / static_cast<unsigned long>(k + 1);
    return polynomial(std::move(r));
}

inline rational evaluate(polynomial const& p, rational const& q) { return p(q); }

/**
 * [p(1), p'(1), ..., p^(rmax)(1)].
 *
 * Uses the Taylor shift p(x+1) = sum t_j x^j, so p^(j)(1) = j! t_j.
 */
inline std::vector<rational> derivatives_at_one(polynomial const& p, std::size_t rmax) {
    std::vector<rational> t(p.coeffs().begin(), p.coeffs().end());
    // Repeated synthetic division by (x - 1).
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = t.size() - 1; j > i; --j) t[j - 1] += t[j];
    std::vector<rational> out(rmax + 1);
    rational fact(1);
    for (std::size_t j = 0; j <= rmax; ++j) {
        if (j > 0) fact *= static_cast<unsigned long>(j);
        if (j < t.size()) out[j] = t[j] * fact;
    }
    return out;
}

/// p(x^2)
inline polynomial substitute_square(polynomial const& p) {
    if (p.is_zero()) return {};
    std::vector<rational> r(2 * p.size() - 1);
    for (std::size_t k = 0; k < p.size(); ++k) r[2 * k] = p.coeff(k);
    return polynomial(std::move(r));
}

/// Euclidean division over Q: a = q*b + r, deg r < deg b.
inline std::pair<polynomial, polynomial> divmod(polynomial const& a, polynomial const& b) {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    if (a.size() < b.size()) return {polynomial{}, a};
    std::vector<rational> rem(a.coeffs().begin(), a.coeffs().end());
    std::vector<rational> quo(a.size() - b.size() + 1);
    rational const lead = b.leading();
    std::size_t const db = b.size() - 1;
    for (std::size_t k = quo.size(); k-- > 0;) {
        rational const q = rem[k + db] / lead;
        quo[k] = q;
        if (q == 0) continue;
        for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q * b.coeff(j);
    }
    rem.resize(db);
    return {polynomial(std::move(quo)), polynomial(std::move(rem))};
}

/**
 * Primitive part with positive scaling: the unique integer polynomial with
 * coprime coefficients equal to p times a positive rational. The sign of the
 * leading coefficient is preserved.
 */
inline polynomial primitive_part(polynomial const& p) {
    if (p.is_zero()) return {};
    integer den_lcm(1);
    for (auto const& c : p.coeffs()) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
    std::vector<integer> ints;
    ints.reserve(p.size());
    integer g(0);
    for (auto const& c : p.coeffs()) {
        integer v = c.get_num() * (den_lcm / c.get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
        ints.push_back(std::move(v));
    }
    std::vector<rational> out;
    out.reserve(ints.size());
    for (auto& v : ints) out.emplace_back(integer(v / g));
    return polynomial(std::move(out));
}

/// Monic gcd (zero if both are zero).
inline polynomial gcd(polynomial a, polynomial b) {
    while (!b.is_zero()) {
        auto r = divmod(a, b).second;
        a = std::move(b);
        b = primitive_part(r);
    }
    if (a.is_zero()) return a;
    return a * (rational(1) / a.leading());
}

/**
 * Yun's squarefree decomposition: p = lc * prod_i s_i^i with each s_i monic,
 * squarefree and pairwise coprime. Entry i-1 holds s_i (possibly constant 1).
 */
inline std::vector<polynomial> squarefree_decomposition(polynomial const& p) {
    if (p.is_zero()) throw std::domain_error("squarefree decomposition of zero polynomial");
    std::vector<polynomial> out;
    if (p.size() == 1) return out;
    polynomial const dp = differentiate(p);
    polynomial a = gcd(p, dp);
    polynomial b = divmod(p, a).first;
    polynomial c = divmod(dp, a).first;
    polynomial d = c - differentiate(b);
    while (b.size() > 1) {
        polynomial s = gcd(b, d);
        out.push_back(s * (rational(1) / s.leading()));
        b = divmod(b, s).first;
        c = divmod(d, s).first;
        d = c - differentiate(b);
    }
    while (!out.empty() && out.back().size() == 1) out.pop_back();
    return out;
}

}  // namespace polyrec
