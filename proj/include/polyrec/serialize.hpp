#pragma once

/**
 * @file serialize.hpp
 * @brief JSON and CSV forms of polynomials, specs and reports.
 *
 * Exact rationals are always written as "num/den" strings; floats as JSON
 * numbers. Recurrence specs use
 *
 *   {"form": "derivative" | "direct",
 *    "f": [[c0, c1, ...], ...],        // entry k: coefficient of x^k, polynomial in n
 *    "g": [...],
 *    "p0": [a0, a1, ...],
 *    "normalization": {"kind": "factorial" | "scaled_factorial" | "constant" | "custom_product",
 *                      "params": {...}}}
 */

#include "polyrec/limits.hpp"
#include "polyrec/moments.hpp"
#include "polyrec/polynomial.hpp"
#include "polyrec/recurrence.hpp"
#include "polyrec/roots.hpp"
#include "polyrec/tableaux.hpp"

#include "json.hpp"

#include <cstdio>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyrec {

using json = nlohmann::ordered_json;

/// Shortest round-trip decimal for a double.
inline std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline json to_json(rational const& q) { return to_string(q); }

inline rational rational_from_json(json const& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return rational(j.get<long>());
    throw std::invalid_argument("expected a rational string or integer, got " + j.dump());
}

inline json to_json(polynomial const& p) {
    json a = json::array();
    for (auto const& c : p.coeffs()) a.push_back(to_string(c));
    return a;
}

inline polynomial polynomial_from_json(json const& j) {
    if (!j.is_array()) throw std::invalid_argument("polynomial must be a JSON array");
    std::vector<rational> c;
    for (auto const& e : j) c.push_back(rational_from_json(e));
    return polynomial(std::move(c));
}

inline json to_json(symbolic_coefficient const& s) {
    json a = json::array();
    for (auto const& e : s.entries()) a.push_back(to_json(e.as_polynomial()));
    return a;
}

inline symbolic_coefficient symbolic_from_json(json const& j) {
    if (!j.is_array()) throw std::invalid_argument("coefficient must be an array of polynomials in n");
    std::vector<poly_in_n> e;
    for (auto const& x : j) e.emplace_back(polynomial_from_json(x));
    return symbolic_coefficient(std::move(e));
}

inline json to_json(normalization const& nm) {
    json j;
    json params = json::object();
    switch (nm.type) {
        case normalization::kind::factorial: j["kind"] = "factorial"; break;
        case normalization::kind::scaled_factorial:
            j["kind"] = "scaled_factorial";
            params["base"] = to_string(nm.base);
            break;
        case normalization::kind::constant:
            j["kind"] = "constant";
            params["value"] = to_string(nm.value);
            break;
        case normalization::kind::custom_product:
            j["kind"] = "custom_product";
            params["initial"] = to_string(nm.initial);
            params["factor"] = to_json(nm.factor.as_polynomial());
            break;
    }
    j["params"] = params;
    return j;
}

inline normalization normalization_from_json(json const& j) {
    if (!j.is_object() || !j.contains("kind")) throw std::invalid_argument("normalization needs a 'kind'");
    auto const kind = j.at("kind").get<std::string>();
    json const params = j.value("params", json::object());
    auto need = [&](char const* key) -> json const& {
        if (!params.contains(key)) throw std::invalid_argument("normalization '" + kind + "' needs params." + key);
        return params.at(key);
    };
    if (kind == "factorial") return normalization::make_factorial();
    if (kind == "scaled_factorial") return normalization::make_scaled_factorial(rational_from_json(need("base")));
    if (kind == "constant") return normalization::make_constant(rational_from_json(need("value")));
    if (kind == "custom_product")
        return normalization::make_custom_product(rational_from_json(need("initial")),
                                                  poly_in_n(polynomial_from_json(need("factor"))));
    throw std::invalid_argument("unknown normalization kind '" + kind + "'");
}

inline json to_json(recurrence_spec const& s) {
    json j;
    if (!s.name.empty()) j["name"] = s.name;
    j["form"] = s.form == recurrence_form::derivative ? "derivative" : "direct";
    j["f"] = to_json(s.f);
    j["g"] = to_json(s.g);
    j["p0"] = to_json(s.p0);
    if (s.norm) j["normalization"] = to_json(*s.norm);
    // derived on load, written for the reader's benefit only
    j["g_vanishes_at_one"] = s.g_vanishes_at_one();
    return j;
}

inline recurrence_spec spec_from_json(json const& j) {
    if (!j.is_object()) throw std::invalid_argument("spec must be a JSON object");
    for (char const* key : {"form", "f", "g", "p0"})
        if (!j.contains(key)) throw std::invalid_argument(std::string("spec is missing '") + key + "'");
    recurrence_spec s;
    auto const form = j.at("form").get<std::string>();
    if (form == "derivative")
        s.form = recurrence_form::derivative;
    else if (form == "direct")
        s.form = recurrence_form::direct;
    else
        throw std::invalid_argument("spec form must be 'derivative' or 'direct', got '" + form + "'");
    s.f = symbolic_from_json(j.at("f"));
    s.g = symbolic_from_json(j.at("g"));
    s.p0 = polynomial_from_json(j.at("p0"));
    if (j.contains("normalization") && !j.at("normalization").is_null())
        s.norm = normalization_from_json(j.at("normalization"));
    if (s.form == recurrence_form::derivative && !s.norm)
        throw std::invalid_argument("derivative-form spec requires a normalization");
    s.name = j.value("name", std::string{});
    return s;
}

inline json to_json(pmf const& d) {
    json a = json::array();
    for (auto const& p : d.probabilities) a.push_back(to_string(p));
    return a;
}

inline json to_json(moment_report const& m) {
    json j;
    j["n"] = m.n;
    j["normalizer"] = to_string(m.normalizer);
    json fm = json::array();
    for (std::size_t r = 1; r < m.factorial_moments.size(); ++r) fm.push_back(to_string(m.factorial_moments[r]));
    j["factorial_moments"] = fm;
    j["mean"] = to_string(m.mean);
    j["variance"] = to_string(m.variance);
    if (m.standardized_moments) j["standardized_moments"] = *m.standardized_moments;
    return j;
}

inline json to_json(float_moment_row const& r) {
    json j;
    j["n"] = r.n;
    std::vector<double> fm(r.factorial_moments.begin() + 1, r.factorial_moments.end());
    j["factorial_moments"] = fm;
    j["mean"] = r.mean;
    j["variance"] = r.variance;
    return j;
}

inline json to_json(interval const& iv) { return json{{"lo", to_string(iv.lo)}, {"hi", to_string(iv.hi)}}; }

inline json to_json(float_interval const& iv) { return json{{"lo", iv.lo}, {"hi", iv.hi}}; }

inline json to_json(root_certificate const& c) {
    json j;
    j["degree"] = c.degree;
    j["real_rooted"] = c.real_rooted;
    j["real_root_count"] = c.real_root_count;
    json roots = json::array();
    for (auto const& r : c.roots)
        roots.push_back({{"lo", to_string(r.bounds.lo)}, {"hi", to_string(r.bounds.hi)}, {"multiplicity", r.multiplicity}});
    j["roots"] = roots;
    j["width_bound"] = to_string(c.width_bound);
    if (c.expected) {
        j["expected_interval"] = to_json(*c.expected);
        j["all_in_expected"] = c.all_in_expected.value_or(false);
    }
    return j;
}

inline json to_json(bernoulli_decomposition_t const& d) {
    json a = json::array();
    for (auto const& p : d.success_probs) a.push_back(to_json(p));
    return json{{"success_probs", a}, {"width_bound", to_string(d.width_bound)}};
}

inline json to_json(poisson_diagnosis const& d) {
    json j;
    j["spec"] = to_json(d.diagnosed);
    j["doubling_factor"] = d.doubling_factor;
    json rows = json::array();
    for (auto const& r : d.rows)
        rows.push_back({{"n", r.n}, {"c_estimate", to_string(r.c_estimate)}, {"g_over_f", to_string(r.g_over_f)}});
    j["rows"] = rows;
    json table = json::array();
    for (auto const& m : d.factorial_moment_table) {
        json fm = json::array();
        for (std::size_t r = 1; r < m.factorial_moments.size(); ++r) fm.push_back(to_string(m.factorial_moments[r]));
        table.push_back({{"n", m.n}, {"factorial_moments", fm}});
    }
    j["factorial_moment_table"] = table;
    j["c_constant"] = d.c_constant;
    j["c_limit"] = d.c_limit;
    j["max_deviation_at_nmax"] = to_string(d.max_deviation_exact);
    j["limit"] = d.limit_description;
    return j;
}

inline json to_json(clt_report const& r) {
    json j;
    j["n"] = r.n;
    j["certificate"] = to_json(r.certificate);
    j["mean"] = to_string(r.moments.mean);
    j["variance"] = to_string(r.variance);
    j["bernoulli"] = to_json(r.decomposition);
    j["mean_bracket"] = to_json(r.mean_bracket);
    j["variance_bracket"] = to_json(r.variance_bracket);
    j["mean_contained"] = r.mean_contained;
    j["variance_contained"] = r.variance_contained;
    j["lyapunov"] = to_json(r.lyapunov);
    j["standardized_m3"] = r.standardized_m3;
    j["standardized_m4"] = r.standardized_m4;
    j["gaussian_m3"] = clt_report::gaussian_m3;
    j["gaussian_m4"] = clt_report::gaussian_m4;
    return j;
}

inline json to_json(local_limit_report const& r) {
    return json{{"n", r.n},
                {"mean", r.mean},
                {"variance", r.variance},
                {"sup_abs_error", r.sup_abs_error},
                {"argmax_k", r.argmax_k},
                {"pmf_total", to_string(r.pmf_total)},
                {"density_total", r.density_total}};
}

inline json to_json(scaled_moment_report const& r) {
    json j;
    j["scaling"] = r.scaling;
    j["kmax"] = r.kmax;
    if (r.variance_per_n_target) j["variance_per_n_target"] = *r.variance_per_n_target;
    json rows = json::array();
    for (auto const& row : r.rows)
        rows.push_back({{"n", row.n},
                        {"moment_ratios", row.ratios},
                        {"variance_over_n", row.variance_over_n},
                        {"factorial3_ratio", row.factorial3_ratio}});
    j["rows"] = rows;
    return j;
}

inline json to_json(histogram const& h) {
    return json{{"statistic", to_string(h.stat)}, {"n", h.n}, {"counts", h.counts}};
}

// -------------------------------------------------------------------- CSV

/// CSV cell for an exact value: the rational string, or a decimal when `floats`.
inline std::string csv_value(rational const& q, bool floats) { return floats ? format_double(to_double(q)) : to_string(q); }

/// Columns: n, mean, variance, m3, m4 (m3/m4 standardized; blank when unavailable).
inline void write_moments_csv(std::ostream& os, std::vector<moment_report> const& rows, bool floats) {
    os << "n,mean,variance,m3,m4\n";
    for (auto const& m : rows) {
        os << m.n << ',' << csv_value(m.mean, floats) << ',' << csv_value(m.variance, floats) << ',';
        if (m.standardized_moments && m.standardized_moments->size() >= 2)
            os << format_double((*m.standardized_moments)[0]) << ',' << format_double((*m.standardized_moments)[1]);
        else
            os << ',';
        os << '\n';
    }
}

inline void write_moments_csv(std::ostream& os, std::vector<float_moment_row> const& rows) {
    os << "n,mean,variance,m3,m4\n";
    for (auto const& r : rows) os << r.n << ',' << format_double(r.mean) << ',' << format_double(r.variance) << ",,\n";
}

/// Columns: n, r, factorial_moment.
inline void write_factorial_table_csv(std::ostream& os, std::vector<moment_report> const& rows, bool floats) {
    os << "n,r,factorial_moment\n";
    for (auto const& m : rows)
        for (std::size_t r = 1; r < m.factorial_moments.size(); ++r)
            os << m.n << ',' << r << ',' << csv_value(m.factorial_moments[r], floats) << '\n';
}

/// Columns: n, k, moment_ratio, variance_over_n, factorial3_ratio.
inline void write_scaled_csv(std::ostream& os, scaled_moment_report const& rep) {
    os << "n,k,moment_ratio,variance_over_n,factorial3_ratio\n";
    for (auto const& row : rep.rows)
        for (std::size_t k = 1; k <= row.ratios.size(); ++k)
            os << row.n << ',' << k << ',' << format_double(row.ratios[k - 1]) << ','
               << format_double(row.variance_over_n) << ',' << format_double(row.factorial3_ratio) << '\n';
}

/// Columns: k, count.
inline void write_histogram_csv(std::ostream& os, histogram const& h) {
    os << "k,count\n";
    for (std::size_t k = 0; k < h.counts.size(); ++k) os << k << ',' << h.counts[k] << '\n';
}

/// Human-readable polynomial, highest degree first: "6x^2 + 12x + 6".
inline std::string to_text(polynomial const& p) {
    if (p.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = p.size(); k-- > 0;) {
        rational c = p.coeff(k);
        if (c == 0) continue;
        bool const neg = c < 0;
        if (neg) c = -c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool const unit = c == 1 && k > 0;
        if (!unit) os << to_string(c);
        if (k >= 1) os << 'x';
        if (k >= 2) os << '^' << k;
    }
    return os.str();
}

}  // namespace polyrec
