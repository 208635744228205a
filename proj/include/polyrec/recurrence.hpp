#pragma once

/**
 * @file recurrence.hpp
 * @brief Differential-difference recurrences with coefficients polynomial in n.
 *
 * Two forms are supported:
 *
 *   derivative form:  P_n'(x) = f_n(x) P_{n-1}(x) + g_n(x) P_{n-1}'(x)
 *   direct form:      P_n(x)  = f_n(x) P_{n-1}(x) + g_n(x) P_{n-1}'(x)
 *
 * The derivative form fixes P_n only up to a constant; the constant is
 * chosen so that P_n(1) matches a normalization sequence (typically the
 * number of combinatorial objects of size n).
 */

#include "polyrec/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace polyrec {

/// Polynomial in the index n, ascending powers of n.
class poly_in_n {
public:
    poly_in_n() = default;
    poly_in_n(std::initializer_list<rational> c) : p_(c) {}
    explicit poly_in_n(polynomial p) : p_(std::move(p)) {}

    rational at(long n) const { return p_(rational(n)); }
    polynomial const& as_polynomial() const { return p_; }
    bool is_zero() const { return p_.is_zero(); }

    friend bool operator==(poly_in_n const&, poly_in_n const&) = default;

private:
    polynomial p_;
};

/// f_n(x) or g_n(x): entry k is the coefficient of x^k, itself a polynomial in n.
class symbolic_coefficient {
public:
    symbolic_coefficient() = default;
    explicit symbolic_coefficient(std::vector<poly_in_n> entries) : e_(std::move(entries)) { trim(); }
    symbolic_coefficient(std::initializer_list<poly_in_n> entries) : e_(entries) { trim(); }

    polynomial at(long n) const {
        std::vector<rational> c;
        c.reserve(e_.size());
        for (auto const& e : e_) c.push_back(e.at(n));
        return polynomial(std::move(c));
    }

    /// Value at x = 1 as a polynomial in n.
    poly_in_n at_x_one() const {
        polynomial s;
        for (auto const& e : e_) s += e.as_polynomial();
        return poly_in_n(std::move(s));
    }

    std::vector<poly_in_n> const& entries() const { return e_; }
    std::size_t x_degree_bound() const { return e_.empty() ? 0 : e_.size() - 1; }

    friend bool operator==(symbolic_coefficient const&, symbolic_coefficient const&) = default;

private:
    void trim() {
        while (!e_.empty() && e_.back().is_zero()) e_.pop_back();
    }
    std::vector<poly_in_n> e_;
};

/**
 * Closed-form rule for P_n(1).
 *
 *   factorial        n!
 *   scaled_factorial base^n n!
 *   constant         value
 *   custom_product   initial * prod_{k=1..n} factor(k)
 */
struct normalization {
    enum class kind { factorial, scaled_factorial, constant, custom_product };

    kind type = kind::factorial;
    rational base{1};
    rational value{1};
    rational initial{1};
    poly_in_n factor;

    static normalization make_factorial() { return {}; }
    static normalization make_scaled_factorial(rational b) {
        normalization r;
        r.type = kind::scaled_factorial;
        r.base = std::move(b);
        return r;
    }
    static normalization make_constant(rational v) {
        normalization r;
        r.type = kind::constant;
        r.value = std::move(v);
        return r;
    }
    static normalization make_custom_product(rational init, poly_in_n f) {
        normalization r;
        r.type = kind::custom_product;
        r.initial = std::move(init);
        r.factor = std::move(f);
        return r;
    }

    rational at(long n) const {
        switch (type) {
            case kind::factorial: return factorial(static_cast<unsigned long>(n));
            case kind::scaled_factorial:
                return pow(base, static_cast<unsigned long>(n)) * factorial(static_cast<unsigned long>(n));
            case kind::constant: return value;
            case kind::custom_product: {
                rational r = initial;
                for (long k = 1; k <= n; ++k) r *= factor.at(k);
                return r;
            }
        }
        throw std::logic_error("unreachable normalization kind");
    }

    /// P_n(1) / P_{n-1}(1), for n >= 1.
    rational ratio(long n) const {
        switch (type) {
            case kind::factorial: return rational(n);
            case kind::scaled_factorial: return base * n;
            case kind::constant: return rational(1);
            case kind::custom_product: return factor.at(n);
        }
        throw std::logic_error("unreachable normalization kind");
    }

    friend bool operator==(normalization const& a, normalization const& b) {
        if (a.type != b.type) return false;
        switch (a.type) {
            case kind::factorial: return true;
            case kind::scaled_factorial: return a.base == b.base;
            case kind::constant: return a.value == b.value;
            case kind::custom_product: return a.initial == b.initial && a.factor == b.factor;
        }
        return false;
    }
};

enum class recurrence_form { derivative, direct };

struct recurrence_spec {
    recurrence_form form = recurrence_form::direct;
    symbolic_coefficient f;
    symbolic_coefficient g;
    polynomial p0;
    std::optional<normalization> norm;
    std::string name;  // informational, not part of equality

    /// g_n(1) = 0 for every n: the entries of g sum to the zero polynomial in n.
    bool g_vanishes_at_one() const { return g.at_x_one().is_zero(); }

    friend bool operator==(recurrence_spec const& a, recurrence_spec const& b) {
        return a.form == b.form && a.f == b.f && a.g == b.g && a.p0 == b.p0 && a.norm == b.norm;
    }
};

/// Builtin families. Parameters are carried by the variant alternatives.
namespace family {
struct abn {};
struct lz {};
struct lz_symmetric {};
struct hj {
    rational a;
    rational b;
};
struct eulerian {};
struct dhh {};
struct ah {};
struct w {
    rational c;
    rational m;
};
struct be1 {
    long m;
};
}  // namespace family

using family_id = std::variant<family::abn, family::lz, family::lz_symmetric, family::hj, family::eulerian,
                               family::dhh, family::ah, family::w, family::be1>;

namespace detail {
inline poly_in_n n_poly(long c0, long c1 = 0) { return poly_in_n{rational(c0), rational(c1)}; }
inline poly_in_n n_const(rational c) { return poly_in_n{std::move(c)}; }
}  // namespace detail

inline recurrence_spec builtin(family_id const& id) {
    using detail::n_const;
    using detail::n_poly;
    recurrence_spec s;
    std::visit(
        [&](auto const& fam) {
            using T = std::decay_t<decltype(fam)>;
            if constexpr (std::is_same_v<T, family::abn>) {
                // B_n = n x(x+1) B_{n-1} + x(1-x^2) B'_{n-1}, B_0 = x
                s.name = "abn";
                s.form = recurrence_form::direct;
                s.f = {n_poly(0), n_poly(0, 1), n_poly(0, 1)};
                s.g = {n_poly(0), n_poly(1), n_poly(0), n_poly(-1)};
                s.p0 = polynomial::from({0, 1});
            } else if constexpr (std::is_same_v<T, family::lz>) {
                // P_n' = n P_{n-1} + 2(1-x) P'_{n-1}, P_0 = 1, P_n(1) = n!
                s.name = "lz";
                s.form = recurrence_form::derivative;
                s.f = {n_poly(0, 1)};
                s.g = {n_poly(2), n_poly(-2)};
                s.p0 = polynomial::from({1});
                s.norm = normalization::make_factorial();
            } else if constexpr (std::is_same_v<T, family::lz_symmetric>) {
                // Q_n' = 2n x Q_{n-1} + 2(1-x^2) Q'_{n-1}, Q_0 = 1, Q_n(1) = 2^n n!
                s.name = "lz_symmetric";
                s.form = recurrence_form::derivative;
                s.f = {n_poly(0), n_poly(0, 2)};
                s.g = {n_poly(2), n_poly(0), n_poly(-2)};
                s.p0 = polynomial::from({1});
                s.norm = normalization::make_scaled_factorial(rational(2));
            } else if constexpr (std::is_same_v<T, family::hj> || std::is_same_v<T, family::eulerian>) {
                rational a(1), b(0);
                if constexpr (std::is_same_v<T, family::hj>) {
                    if (fam.a < 0 || fam.b < 0)
                        throw std::invalid_argument("hj: parameters a and b must be nonnegative, got a=" +
                                                    to_string(fam.a) + " b=" + to_string(fam.b));
                    a = fam.a;
                    b = fam.b;
                    s.name = "hj(" + to_string(a) + "," + to_string(b) + ")";
                } else {
                    s.name = "eulerian";
                }
                // P_n = ((n-1+b)x + a) P_{n-1} + x(1-x) P'_{n-1}, P_0 = 1
                s.form = recurrence_form::direct;
                s.f = {n_const(a), poly_in_n{rational(b - 1), rational(1)}};
                s.g = {n_poly(0), n_poly(1), n_poly(-1)};
                s.p0 = polynomial::from({1});
            } else if constexpr (std::is_same_v<T, family::dhh>) {
                // V_n = ((2n-1)x + 1) V_{n-1} + 2x(1-x) V'_{n-1}, V_0 = 1
                s.name = "dhh";
                s.form = recurrence_form::direct;
                s.f = {n_poly(1), n_poly(-1, 2)};
                s.g = {n_poly(0), n_poly(2), n_poly(-2)};
                s.p0 = polynomial::from({1});
            } else if constexpr (std::is_same_v<T, family::ah>) {
                // A_n = (2n-1) A_{n-1} + x(x-1) A'_{n-1}, A_0 = x
                s.name = "ah";
                s.form = recurrence_form::direct;
                s.f = {n_poly(-1, 2)};
                s.g = {n_poly(0), n_poly(-1), n_poly(1)};
                s.p0 = polynomial::from({0, 1});
            } else if constexpr (std::is_same_v<T, family::w>) {
                if (fam.c < 0 || fam.m <= 0)
                    throw std::invalid_argument("w: requires c >= 0 and m > 0, got c=" + to_string(fam.c) +
                                                " m=" + to_string(fam.m));
                // T_n = (x+c) T_{n-1} + m x T'_{n-1}, T_0 = 1
                s.name = "w(" + to_string(fam.c) + "," + to_string(fam.m) + ")";
                s.form = recurrence_form::direct;
                s.f = {n_const(fam.c), n_poly(1)};
                s.g = {n_poly(0), n_const(fam.m)};
                s.p0 = polynomial::from({1});
            } else if constexpr (std::is_same_v<T, family::be1>) {
                if (fam.m < 1) throw std::invalid_argument("be1: requires m >= 1, got m=" + std::to_string(fam.m));
                // F_n = (x+1) F_{n-1} + x(x+m) F'_{n-1}, F_0 = 1
                s.name = "be1(" + std::to_string(fam.m) + ")";
                s.form = recurrence_form::direct;
                s.f = {n_poly(1), n_poly(1)};
                s.g = {n_poly(0), n_poly(fam.m), n_poly(1)};
                s.p0 = polynomial::from({1});
            }
        },
        id);
    return s;
}

/**
 * Parses a family name, case-insensitively: abn, lz, lz_symmetric (or
 * lz-symmetric), eulerian, dhh, ah, hj:a,b, w:c,m, be1:m.
 */
inline family_id parse_family(std::string const& text) {
    std::string s;
    for (char ch : text) s.push_back(ch == '-' ? '_' : static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
    std::string head = s;
    std::vector<std::string> args;
    if (auto colon = s.find(':'); colon != std::string::npos) {
        head = s.substr(0, colon);
        std::string rest = s.substr(colon + 1);
        std::size_t pos = 0;
        while (true) {
            auto comma = rest.find(',', pos);
            args.push_back(rest.substr(pos, comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    auto want = [&](std::size_t k) {
        if (args.size() != k)
            throw std::invalid_argument("family '" + head + "' expects " + std::to_string(k) + " parameter(s)");
    };
    if (head == "abn") return want(0), family::abn{};
    if (head == "lz") return want(0), family::lz{};
    if (head == "lz_symmetric" || head == "lzs") return want(0), family::lz_symmetric{};
    if (head == "eulerian") return want(0), family::eulerian{};
    if (head == "dhh") return want(0), family::dhh{};
    if (head == "ah") return want(0), family::ah{};
    if (head == "hj") return want(2), family::hj{parse_rational(args[0]), parse_rational(args[1])};
    if (head == "w") return want(2), family::w{parse_rational(args[0]), parse_rational(args[1])};
    if (head == "be1") {
        want(1);
        rational m = parse_rational(args[0]);
        if (m.get_den() != 1) throw std::invalid_argument("be1: m must be an integer");
        return family::be1{m.get_num().get_si()};
    }
    throw std::invalid_argument("unknown family '" + text + "'");
}

/// One application of the recurrence at index n >= 1.
inline polynomial step(recurrence_spec const& spec, polynomial const& prev, long n) {
    if (n < 1) throw std::invalid_argument("step: n must be >= 1");
    polynomial d = spec.f.at(n) * prev + spec.g.at(n) * differentiate(prev);
    if (spec.form == recurrence_form::direct) return d;
    if (!spec.norm) throw std::invalid_argument("step: derivative-form recurrence requires a normalization");
    polynomial anti = integrate(d);
    rational const shift = spec.norm->at(n) - anti(rational(1));
    return anti + polynomial::constant(shift);
}

/**
 * [P_0, ..., P_nmax]. Every builtin has nonnegative coefficients, so a
 * negative coefficient is reported as an error (normalization or spec bug).
 */
inline std::vector<polynomial> generate(recurrence_spec const& spec, long nmax, bool require_nonnegative = true) {
    if (nmax < 0) throw std::invalid_argument("generate: nmax must be >= 0");
    std::vector<polynomial> seq;
    seq.reserve(static_cast<std::size_t>(nmax) + 1);
    seq.push_back(spec.p0);
    for (long n = 1; n <= nmax; ++n) {
        seq.push_back(step(spec, seq.back(), n));
        if (require_nonnegative) {
            auto const& p = seq.back();
            for (std::size_t k = 0; k < p.size(); ++k)
                if (p.coeff(k) < 0)
                    throw std::domain_error("generate: negative coefficient " + to_string(p.coeff(k)) + " of x^" +
                                            std::to_string(k) + " at n=" + std::to_string(n) +
                                            (spec.name.empty() ? "" : " for " + spec.name));
        }
    }
    return seq;
}

/**
 * If Q_n(x) = P_n(x^2) turns the spec into one for P_n, returns that spec.
 *
 * Derivative form: 2x P_n'(x^2) = f(x) P(x^2) + g(x) 2x P'(x^2) needs f odd,
 * g even. Direct form: P_n(x^2) = f(x) P(x^2) + 2x g(x) P'(x^2) needs f even,
 * g odd. The initial polynomial must be even in both cases.
 */
inline std::optional<recurrence_spec> reduce_square(recurrence_spec const& spec) {
    auto only_parity = [](symbolic_coefficient const& c, std::size_t parity) {
        auto const& e = c.entries();
        for (std::size_t k = 0; k < e.size(); ++k)
            if (k % 2 != parity && !e[k].is_zero()) return false;
        return true;
    };
    auto pick = [](symbolic_coefficient const& c, std::size_t parity, rational const& scale) {
        std::vector<poly_in_n> out;
        auto const& e = c.entries();
        for (std::size_t k = parity; k < e.size(); k += 2) out.emplace_back(e[k].as_polynomial() * scale);
        return symbolic_coefficient(std::move(out));
    };
    for (std::size_t k = 1; k < spec.p0.size(); k += 2)
        if (spec.p0.coeff(k) != 0) return std::nullopt;

    recurrence_spec r;
    r.form = spec.form;
    r.norm = spec.norm;
    r.name = spec.name.empty() ? std::string{} : spec.name + "|x->x^2";
    std::vector<rational> p0;
    for (std::size_t k = 0; k < spec.p0.size(); k += 2) p0.push_back(spec.p0.coeff(k));
    r.p0 = polynomial(std::move(p0));

    if (spec.form == recurrence_form::derivative) {
        if (!only_parity(spec.f, 1) || !only_parity(spec.g, 0)) return std::nullopt;
        r.f = pick(spec.f, 1, rational(1, 2));
        r.g = pick(spec.g, 0, rational(1));
    } else {
        if (!only_parity(spec.f, 0) || !only_parity(spec.g, 1)) return std::nullopt;
        r.f = pick(spec.f, 0, rational(1));
        r.g = pick(spec.g, 1, rational(2));
    }
    return r;
}

/**
 * Checks Q_n(x) = P_n(x^2) for n <= nmax, where Q_n comes from the
 * symmetric-tableaux recurrence (normalized to 2^n n!) and P_n from the
 * LZ recurrence carrying the same normalization. Also requires the
 * mechanically reduced recurrence to coincide with LZ's f and g.
 */
inline bool verify_symmetric_reduction(long nmax) {
    auto const q_spec = builtin(family::lz_symmetric{});
    auto const lz = builtin(family::lz{});
    auto reduced = reduce_square(q_spec);
    if (!reduced || reduced->form != lz.form || !(reduced->f == lz.f) || !(reduced->g == lz.g) ||
        !(reduced->p0 == lz.p0))
        return false;

    recurrence_spec p_spec = lz;
    p_spec.norm = q_spec.norm;
    auto const qs = generate(q_spec, nmax);
    auto const ps = generate(p_spec, nmax);
    for (long n = 0; n <= nmax; ++n)
        if (!(qs[static_cast<std::size_t>(n)] == substitute_square(ps[static_cast<std::size_t>(n)]))) return false;
    return true;
}

}  // namespace polyrec
