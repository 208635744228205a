#pragma once

// Command-line front end for polyrec. Kept in a header so tests can drive
// run() in-process with string streams.

#include "polyrec/polyrec.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace polyrec::cli {

enum exit_code : int { ok = 0, computation_error = 1, usage_error = 2 };

struct usage_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

struct source_opts {
    std::string family;
    std::string spec_file;
};

inline void add_source(CLI::App* sub, source_opts& s) {
    auto* fam = sub->add_option("--family", s.family, "builtin family: abn, lz, lz_symmetric, eulerian, dhh, ah, hj:a,b, w:c,m, be1:m");
    auto* file = sub->add_option("--spec-file", s.spec_file, "JSON recurrence spec");
    fam->excludes(file);
}

inline recurrence_spec load_spec(source_opts const& s, std::string const& fallback = {}) {
    if (!s.spec_file.empty()) {
        std::ifstream in(s.spec_file);
        if (!in) throw usage_failure("cannot open spec file '" + s.spec_file + "'");
        json j;
        try {
            j = json::parse(in);
        } catch (json::exception const& e) {
            throw usage_failure("malformed spec file '" + s.spec_file + "': " + e.what());
        }
        try {
            return spec_from_json(j);
        } catch (std::exception const& e) {
            throw usage_failure("malformed spec file '" + s.spec_file + "': " + e.what());
        }
    }
    std::string const name = s.family.empty() ? fallback : s.family;
    if (name.empty()) throw usage_failure("one of --family or --spec-file is required");
    try {
        return builtin(parse_family(name));
    } catch (std::invalid_argument const& e) {
        throw usage_failure(e.what());
    }
}

inline rational parse_eps(std::string const& s) {
    try {
        auto e = parse_rational(s);
        if (e <= 0) throw usage_failure("--eps must be positive");
        return e;
    } catch (std::invalid_argument const& e) {
        throw usage_failure(e.what());
    }
}

inline std::string bracket_list(std::vector<std::uint64_t> const& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + "]";
}

inline std::string bracket_list(polynomial const& p) {
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + to_string(p.coeff(i));
    return s + "]";
}

}  // namespace detail

/// Runs one command. Results go to `out`, diagnostics to `err`.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"polyrec: exact analysis of polynomial sequences defined by differential-difference recurrences"};
    app.require_subcommand(1);
    std::string format = "json";
    auto const formats = CLI::IsMember({"json", "csv", "text"});

    // gen
    auto* gen = app.add_subcommand("gen", "generate P_n of a family or spec file");
    detail::source_opts gen_src;
    long gen_n = 0;
    bool emit_spec = false;
    bool gen_all = false;
    detail::add_source(gen, gen_src);
    gen->add_option("--n", gen_n, "index n")->required()->check(CLI::NonNegativeNumber);
    gen->add_flag("--emit-spec", emit_spec, "print the recurrence spec as JSON instead");
    gen->add_flag("--all", gen_all, "print P_0..P_n");
    gen->add_option("--format", format)->check(formats);

    // moments
    auto* mom = app.add_subcommand("moments", "factorial moments, mean and variance for n = 0..nmax");
    detail::source_opts mom_src;
    long nmax = 10;
    std::size_t rmax = 4;
    bool vector_rec = false;
    bool float_mode = false;
    bool floats = false;
    detail::add_source(mom, mom_src);
    mom->add_option("--nmax", nmax)->required()->check(CLI::NonNegativeNumber);
    mom->add_option("--rmax", rmax, "highest factorial moment (default 4, max 12)")->check(CLI::Range(2, 12));
    mom->add_flag("--vector-recurrence", vector_rec, "propagate derivatives at 1 instead of building P_n");
    mom->add_flag("--float", float_mode, "double-precision vector recurrence (implies --vector-recurrence)");
    mom->add_flag("--floats", floats, "render exact CSV values as decimals (lossy)");
    mom->add_option("--format", format)->check(formats);

    // roots
    auto* roots = app.add_subcommand("roots", "real-rootedness certificate and root enclosures of P_n");
    detail::source_opts roots_src;
    long roots_n = 0;
    std::string eps_text = "1/1024";
    std::vector<std::string> cert_iv;
    bool with_bernoulli = false;
    detail::add_source(roots, roots_src);
    roots->add_option("--n", roots_n)->required()->check(CLI::NonNegativeNumber);
    roots->add_option("--eps", eps_text, "enclosure width (rational, default 1/1024)");
    roots->add_option("--certify-interval", cert_iv, "lo,hi that must contain every root")->delimiter(',')->expected(2);
    roots->add_flag("--bernoulli", with_bernoulli, "include the Bernoulli decomposition");
    roots->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));

    // diagnose
    auto* diag = app.add_subcommand("diagnose", "limit-law diagnostics");
    diag->require_subcommand(1);
    auto* d_poisson = diag->add_subcommand("poisson", "Poisson criterion tables");
    auto* d_clt = diag->add_subcommand("clt", "real-rootedness CLT pipeline at one n");
    auto* d_local = diag->add_subcommand("local-limit", "sup |pmf - normal density|");
    auto* d_scaled = diag->add_subcommand("scaled-moments", "scaled moment ratios on a log grid");
    detail::source_opts dp_src, dc_src, dl_src, ds_src;
    long dp_nmax = 50, dc_n = 10, dl_n = 15, ds_nmax = 10000;
    std::size_t dp_rmax = 5, ds_kmax = 4;
    std::string dc_eps = "1/1048576";
    detail::add_source(d_poisson, dp_src);
    d_poisson->add_option("--nmax", dp_nmax)->check(CLI::PositiveNumber);
    d_poisson->add_option("--rmax", dp_rmax)->check(CLI::Range(2, 12));
    d_poisson->add_option("--format", format)->check(formats);
    detail::add_source(d_clt, dc_src);
    d_clt->add_option("--n", dc_n)->required()->check(CLI::NonNegativeNumber);
    d_clt->add_option("--eps", dc_eps);
    d_clt->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    d_local->add_option("--family", dl_src.family, "builtin family (default abn)");
    d_local->add_option("--n", dl_n)->required()->check(CLI::PositiveNumber);
    d_local->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    d_scaled->add_option("--family", ds_src.family, "builtin family (default ah)");
    d_scaled->add_option("--spec-file", ds_src.spec_file);
    d_scaled->add_option("--nmax", ds_nmax)->check(CLI::PositiveNumber);
    d_scaled->add_option("--kmax", ds_kmax)->check(CLI::Range(1, 12));
    d_scaled->add_option("--format", format)->check(formats);

    // tableaux
    auto* tab = app.add_subcommand("tableaux", "enumerate tree-like tableaux");
    tab->require_subcommand(1);
    auto* t_enum = tab->add_subcommand("enumerate", "list all tableaux of a size");
    auto* t_dist = tab->add_subcommand("distribution", "histogram of a statistic");
    int t_size = 1;
    bool t_sym = false;
    std::string t_stat = "occupied-corners";
    t_enum->add_option("--size", t_size, "size n (or n_half with --symmetric)")->required()->check(CLI::PositiveNumber);
    t_enum->add_flag("--symmetric", t_sym, "symmetric tableaux of size 2*size+1");
    t_enum->add_option("--format", format)->check(CLI::IsMember({"json", "text"}));
    t_dist->add_option("--size", t_size)->required()->check(CLI::PositiveNumber);
    t_dist->add_option("--stat", t_stat)->required();
    t_dist->add_option("--format", format)->check(formats);

    // crosscheck
    auto* cross = app.add_subcommand("crosscheck", "enumerated histogram vs generating polynomial");
    std::string c_stat;
    int c_n = 1;
    cross->add_option("--stat", c_stat, "occupied-corners | diagonal-cells | symmetric-occupied-corners")->required();
    cross->add_option("--n", c_n)->required()->check(CLI::PositiveNumber);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (CLI::CallForHelp const&) {
        out << app.help();
        return ok;
    } catch (CLI::CallForAllHelp const&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (CLI::ParseError const& e) {
        err << "usage error: " << e.what() << '\n';
        return usage_error;
    }

    try {
        if (gen->parsed()) {
            auto const spec = detail::load_spec(gen_src);
            if (emit_spec) {
                out << to_json(spec).dump(2) << '\n';
                return ok;
            }
            auto const seq = generate(spec, gen_n);
            if (format == "json") {
                if (gen_all) {
                    json a = json::array();
                    for (auto const& p : seq) a.push_back(to_json(p));
                    out << a.dump() << '\n';
                } else {
                    out << to_json(seq.back()).dump() << '\n';
                }
            } else if (format == "csv") {
                out << "n,k,coefficient\n";
                for (std::size_t n = gen_all ? 0 : seq.size() - 1; n < seq.size(); ++n)
                    for (std::size_t k = 0; k < seq[n].size(); ++k) out << n << ',' << k << ',' << to_string(seq[n].coeff(k)) << '\n';
            } else {
                for (std::size_t n = gen_all ? 0 : seq.size() - 1; n < seq.size(); ++n)
                    out << "P_" << n << " = " << to_text(seq[n]) << '\n';
            }
            return ok;
        }

        if (mom->parsed()) {
            auto const spec = detail::load_spec(mom_src);
            if (float_mode) {
                auto const rows = derivative_vector_recurrence_float(spec, nmax, rmax);
                if (format == "json") {
                    json a = json::array();
                    for (auto const& r : rows) a.push_back(to_json(r));
                    out << a.dump(2) << '\n';
                } else if (format == "csv") {
                    write_moments_csv(out, rows);
                } else {
                    for (auto const& r : rows)
                        out << "n=" << r.n << " mean=" << format_double(r.mean) << " variance=" << format_double(r.variance) << '\n';
                }
                return ok;
            }
            std::vector<moment_report> rows;
            if (vector_rec) {
                rows = derivative_vector_recurrence(spec, nmax, rmax);
            } else {
                auto const seq = generate(spec, nmax);
                for (std::size_t n = 0; n < seq.size(); ++n) rows.push_back(moment_report_of(seq[n], rmax, static_cast<long>(n)));
            }
            if (format == "json") {
                json a = json::array();
                for (auto const& r : rows) a.push_back(to_json(r));
                out << a.dump(2) << '\n';
            } else if (format == "csv") {
                write_moments_csv(out, rows, floats);
            } else {
                for (auto const& r : rows)
                    out << "n=" << r.n << " mean=" << to_string(r.mean) << " variance=" << to_string(r.variance) << '\n';
            }
            return ok;
        }

        if (roots->parsed()) {
            auto const spec = detail::load_spec(roots_src);
            auto const eps = detail::parse_eps(eps_text);
            std::optional<interval> expect;
            if (!cert_iv.empty()) {
                try {
                    expect = interval{parse_rational(cert_iv[0]), parse_rational(cert_iv[1])};
                } catch (std::invalid_argument const& e) {
                    throw usage_failure(e.what());
                }
                if (expect->lo > expect->hi) throw usage_failure("--certify-interval needs lo <= hi");
            }
            auto const p = generate(spec, roots_n).back();
            if (p.is_zero()) throw std::domain_error("P_n is the zero polynomial");
            auto cert = certify(p, expect);
            if (cert.real_rooted) cert = isolate(p, eps, expect);
            if (format == "json") {
                json j = to_json(cert);
                if (with_bernoulli && cert.real_rooted) j["bernoulli"] = to_json(bernoulli_decomposition(p, eps));
                out << j.dump(2) << '\n';
            } else {
                out << "degree " << cert.degree << ", real roots " << cert.real_root_count << ", "
                    << (cert.real_rooted ? "real-rooted" : "NOT real-rooted") << '\n';
                if (cert.all_in_expected)
                    out << "all roots in [" << to_string(expect->lo) << ", " << to_string(expect->hi)
                        << "]: " << (*cert.all_in_expected ? "yes" : "no") << '\n';
                for (auto const& r : cert.roots)
                    out << "  [" << to_string(r.bounds.lo) << ", " << to_string(r.bounds.hi) << "] x" << r.multiplicity << '\n';
            }
            bool const pass = cert.real_rooted && cert.all_in_expected.value_or(true);
            return pass ? ok : computation_error;
        }

        if (diag->parsed()) {
            if (d_poisson->parsed()) {
                auto const d = diagnose_poisson(detail::load_spec(dp_src), dp_nmax, dp_rmax);
                if (format == "json") {
                    out << to_json(d).dump(2) << '\n';
                } else if (format == "csv") {
                    write_factorial_table_csv(out, d.factorial_moment_table, false);
                } else {
                    out << "limit " << d.limit_description << " (c estimates " << (d.c_constant ? "constant" : "varying")
                        << ", c_nmax=" << format_double(d.c_limit) << ")\n"
                        << "max_r |E(X_nmax)_r - c^r| = " << to_string(d.max_deviation_exact) << " ~ "
                        << format_double(d.max_deviation_at_nmax) << '\n';
                }
                return ok;
            }
            if (d_clt->parsed()) {
                auto const spec = detail::load_spec(dc_src);
                auto const eps = detail::parse_eps(dc_eps);
                try {
                    auto const rep = clt_report_for(spec, dc_n, eps);
                    if (format == "json") {
                        out << to_json(rep).dump(2) << '\n';
                    } else {
                        out << "n=" << rep.n << " variance=" << to_string(rep.variance) << " lyapunov=["
                            << format_double(rep.lyapunov.lo) << ", " << format_double(rep.lyapunov.hi) << "]"
                            << " m3=" << format_double(rep.standardized_m3) << " m4=" << format_double(rep.standardized_m4)
                            << '\n';
                    }
                    return ok;
                } catch (not_real_rooted const& e) {
                    err << "error: " << e.what() << '\n' << to_json(e.certificate).dump(2) << '\n';
                    return computation_error;
                }
            }
            if (d_local->parsed()) {
                family_id id = family::abn{};
                if (!dl_src.family.empty()) {
                    try {
                        id = parse_family(dl_src.family);
                    } catch (std::invalid_argument const& e) {
                        throw usage_failure(e.what());
                    }
                }
                auto const rep = local_limit_report_for(id, dl_n);
                if (format == "json")
                    out << to_json(rep).dump(2) << '\n';
                else
                    out << "n=" << rep.n << " sup_abs_error=" << format_double(rep.sup_abs_error) << " at k=" << rep.argmax_k << '\n';
                return ok;
            }
            if (d_scaled->parsed()) {
                auto const spec = detail::load_spec(ds_src, "ah");
                auto const rep = scaled_moment_limit(spec, ds_nmax, ds_kmax);
                if (format == "json") {
                    out << to_json(rep).dump(2) << '\n';
                } else if (format == "csv") {
                    write_scaled_csv(out, rep);
                } else {
                    for (auto const& row : rep.rows) {
                        out << "n=" << row.n;
                        for (std::size_t k = 0; k < row.ratios.size(); ++k) out << " r" << k + 1 << "=" << format_double(row.ratios[k]);
                        out << " var/n=" << format_double(row.variance_over_n) << '\n';
                    }
                }
                return ok;
            }
        }

        if (tab->parsed()) {
            auto const caps = enumeration_caps::from_env();
            if (t_enum->parsed()) {
                auto const all = t_sym ? enumerate_symmetric(t_size, caps) : enumerate_tableaux(t_size, caps);
                if (format == "json") {
                    json a = json::array();
                    for (auto const& t : all) {
                        json pts = json::array();
                        for (auto const& p : t.points()) pts.push_back({p.row, p.col});
                        a.push_back({{"rows", t.shape().rows}, {"points", pts}});
                    }
                    out << a.dump() << '\n';
                } else {
                    for (auto const& t : all) out << to_text(t) << '\n';
                }
                return ok;
            }
            statistic stat{};
            try {
                stat = parse_statistic(t_stat);
            } catch (std::invalid_argument const& e) {
                throw usage_failure(e.what());
            }
            auto const h = statistic_distribution(stat, t_size, caps);
            if (format == "json")
                out << to_json(h).dump() << '\n';
            else if (format == "csv")
                write_histogram_csv(out, h);
            else
                out << to_string(h.stat) << " n=" << h.n << " counts=" << detail::bracket_list(h.counts) << '\n';
            return ok;
        }

        if (cross->parsed()) {
            statistic stat{};
            try {
                stat = parse_statistic(c_stat);
            } catch (std::invalid_argument const& e) {
                throw usage_failure(e.what());
            }
            family_id fam;
            switch (stat) {
                case statistic::occupied_corners: fam = family::lz{}; break;
                case statistic::diagonal_cells: fam = family::abn{}; break;
                case statistic::symmetric_occupied_corners: fam = family::lz_symmetric{}; break;
                case statistic::corners: throw usage_failure("no generating-polynomial family for 'corners'");
            }
            auto const h = statistic_distribution(stat, c_n, enumeration_caps::from_env());
            auto const p = generate(builtin(fam), c_n).back();
            if (h.to_polynomial() == p) {
                out << "MATCH counts=" << detail::bracket_list(h.counts) << '\n';
                return ok;
            }
            out << "MISMATCH enumerated=" << detail::bracket_list(h.counts) << " polynomial=" << detail::bracket_list(p) << '\n';
            return computation_error;
        }
    } catch (usage_failure const& e) {
        err << "usage error: " << e.what() << '\n';
        return usage_error;
    } catch (std::exception const& e) {
        err << "error: " << e.what() << '\n';
        return computation_error;
    }
    err << app.help();
    return usage_error;
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(std::move(args), out, err);
}

}  // namespace polyrec::cli
