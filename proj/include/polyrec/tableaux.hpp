#pragma once

/**
 * @file tableaux.hpp
 * @brief Brute-force enumeration of tree-like tableaux and their statistics.
 *
 * A tree-like tableau of size n is a Ferrers diagram of half-perimeter n+1
 * with pointed cells such that
 *   1. the top-left cell is pointed (the root),
 *   2. every row and every column holds a point,
 *   3. every non-root point has either only empty cells above it in its
 *      column or only empty cells to its left in its row, but not both.
 *
 * Enumeration is definition-level backtracking, so the histograms it
 * produces serve as an oracle for the generating polynomials.
 */

#include "polyrec/moments.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polyrec {

struct ferrers_shape {
    std::vector<int> rows;  // weakly decreasing, positive

    int num_rows() const { return static_cast<int>(rows.size()); }
    int num_cols() const { return rows.empty() ? 0 : rows.front(); }
    int half_perimeter() const { return num_rows() + num_cols(); }
    bool contains(int r, int c) const { return r >= 0 && c >= 0 && r < num_rows() && c < rows[static_cast<std::size_t>(r)]; }

    /// Column lengths.
    std::vector<int> conjugate() const {
        std::vector<int> cols(static_cast<std::size_t>(num_cols()), 0);
        for (int len : rows)
            for (int c = 0; c < len; ++c) ++cols[static_cast<std::size_t>(c)];
        return cols;
    }

    bool is_symmetric() const { return conjugate() == rows; }

    friend bool operator==(ferrers_shape const&, ferrers_shape const&) = default;
};

struct cell {
    int row = 0;
    int col = 0;
    friend auto operator<=>(cell const&, cell const&) = default;
};

class tableau {
public:
    tableau() = default;
    tableau(ferrers_shape shape, std::vector<cell> const& points) : shape_(std::move(shape)) {
        marks_.resize(shape_.rows.size());
        for (std::size_t r = 0; r < shape_.rows.size(); ++r) marks_[r].assign(static_cast<std::size_t>(shape_.rows[r]), 0);
        for (auto const& p : points) {
            if (!shape_.contains(p.row, p.col))
                throw std::invalid_argument("point (" + std::to_string(p.row) + "," + std::to_string(p.col) +
                                            ") outside the shape");
            marks_[static_cast<std::size_t>(p.row)][static_cast<std::size_t>(p.col)] = 1;
        }
    }

    ferrers_shape const& shape() const { return shape_; }
    int size() const { return shape_.half_perimeter() - 1; }

    bool pointed(int r, int c) const {
        return shape_.contains(r, c) && marks_[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] != 0;
    }

    std::vector<cell> points() const {
        std::vector<cell> out;
        for (int r = 0; r < shape_.num_rows(); ++r)
            for (int c = 0; c < shape_.rows[static_cast<std::size_t>(r)]; ++c)
                if (pointed(r, c)) out.push_back({r, c});
        return out;
    }

    friend bool operator==(tableau const&, tableau const&) = default;

private:
    friend class tableau_builder;
    ferrers_shape shape_;
    std::vector<std::vector<std::uint8_t>> marks_;
};

/// All Ferrers shapes with rows + columns = half_perimeter, lexicographically descending.
inline std::vector<ferrers_shape> enumerate_shapes(int half_perimeter) {
    if (half_perimeter < 2) throw std::invalid_argument("enumerate_shapes: half-perimeter must be >= 2");
    std::vector<ferrers_shape> out;
    std::vector<int> cur;
    // rows, each in [1, cols], first row exactly cols
    auto rec = [&](auto&& self, int remaining_rows, int max_len) -> void {
        if (remaining_rows == 0) {
            out.push_back({cur});
            return;
        }
        for (int len = max_len; len >= 1; --len) {
            cur.push_back(len);
            self(self, remaining_rows - 1, len);
            cur.pop_back();
        }
    };
    for (int nrows = 1; nrows < half_perimeter; ++nrows) {
        int const ncols = half_perimeter - nrows;
        cur = {ncols};
        rec(rec, nrows - 1, ncols);
    }
    std::sort(out.begin(), out.end(), [](ferrers_shape const& a, ferrers_shape const& b) { return a.rows > b.rows; });
    return out;
}

/// Enumeration caps; the environment may raise or lower the defaults.
struct enumeration_caps {
    int plain = 7;
    int symmetric = 4;

    static enumeration_caps from_env() {
        enumeration_caps caps;
        auto read = [](char const* name, int& slot) {
            if (char const* v = std::getenv(name); v != nullptr && *v != '\0') {
                try {
                    slot = std::stoi(v);
                } catch (std::exception const&) {
                    throw std::invalid_argument(std::string("malformed ") + name + "='" + v + "'");
                }
            }
        };
        read("POLYREC_CAP_PLAIN", caps.plain);
        read("POLYREC_CAP_SYMMETRIC", caps.symmetric);
        return caps;
    }
};

/// Checks the three rules directly against the definitions. Returns the first violation.
inline std::optional<std::string> validate(tableau const& t) {
    auto const& sh = t.shape();
    if (sh.rows.empty()) return "empty shape";
    for (std::size_t r = 0; r < sh.rows.size(); ++r) {
        if (sh.rows[r] <= 0) return "row " + std::to_string(r) + " is empty";
        if (r > 0 && sh.rows[r] > sh.rows[r - 1]) return "row lengths are not weakly decreasing";
    }
    if (!t.pointed(0, 0)) return "rule 1: root cell is not pointed";
    for (int r = 0; r < sh.num_rows(); ++r) {
        bool any = false;
        for (int c = 0; c < sh.rows[static_cast<std::size_t>(r)]; ++c) any = any || t.pointed(r, c);
        if (!any) return "rule 2: row " + std::to_string(r) + " has no point";
    }
    auto const cols = sh.conjugate();
    for (int c = 0; c < sh.num_cols(); ++c) {
        bool any = false;
        for (int r = 0; r < cols[static_cast<std::size_t>(c)]; ++r) any = any || t.pointed(r, c);
        if (!any) return "rule 2: column " + std::to_string(c) + " has no point";
    }
    for (auto const& p : t.points()) {
        if (p.row == 0 && p.col == 0) continue;
        bool above_empty = true;
        for (int r = 0; r < p.row; ++r) above_empty = above_empty && !t.pointed(r, p.col);
        bool left_empty = true;
        for (int c = 0; c < p.col; ++c) left_empty = left_empty && !t.pointed(p.row, c);
        if (above_empty == left_empty)
            return "rule 3: point (" + std::to_string(p.row) + "," + std::to_string(p.col) + ") has " +
                   (above_empty ? "neither" : "both") + " a point above and a point to its left";
    }
    return std::nullopt;
}

struct tableau_stats {
    int size = 0;
    int corners = 0;
    int occupied_corners = 0;
    int diagonal_cells = 0;
};

inline tableau_stats stats(tableau const& t) {
    if (auto why = validate(t)) throw std::invalid_argument("invalid tableau: " + *why);
    auto const& rows = t.shape().rows;
    tableau_stats s;
    s.size = t.size();
    for (std::size_t r = 0; r < rows.size(); ++r) {
        int const c = rows[r] - 1;
        // right edge on the border always; bottom edge on the border iff the next row is shorter
        bool const corner = r + 1 == rows.size() || rows[r + 1] <= c;
        if (corner) {
            ++s.corners;
            if (t.pointed(static_cast<int>(r), c)) ++s.occupied_corners;
        }
        if (static_cast<int>(r) < rows[r]) ++s.diagonal_cells;
    }
    return s;
}

class tableau_builder {
public:
    /// Backtracks over one shape; `mirror` forces cell (r,c) = (c,r) for r > c.
    static void fill(ferrers_shape const& shape, bool mirror, std::vector<tableau>& out) {
        tableau t;
        t.shape_ = shape;
        t.marks_.resize(shape.rows.size());
        for (std::size_t r = 0; r < shape.rows.size(); ++r) t.marks_[r].assign(static_cast<std::size_t>(shape.rows[r]), 0);
        auto const cols = shape.conjugate();
        std::vector<char> row_has(shape.rows.size(), 0);
        std::vector<char> col_has(cols.size(), 0);

        std::vector<cell> order;
        for (int r = 0; r < shape.num_rows(); ++r)
            for (int c = 0; c < shape.rows[static_cast<std::size_t>(r)]; ++c) order.push_back({r, c});

        auto rec = [&](auto&& self, std::size_t i) -> void {
            if (i == order.size()) {
                out.push_back(t);
                return;
            }
            auto const [r, c] = order[i];
            auto const ur = static_cast<std::size_t>(r);
            auto const uc = static_cast<std::size_t>(c);
            bool const end_of_row = c == shape.rows[ur] - 1;
            bool const end_of_col = r == cols[uc] - 1;

            auto try_value = [&](bool point) {
                if (point && !(r == 0 && c == 0) && (col_has[uc] != 0) == (row_has[ur] != 0)) return;
                char const saved_row = row_has[ur];
                char const saved_col = col_has[uc];
                if (point) {
                    t.marks_[ur][uc] = 1;
                    row_has[ur] = 1;
                    col_has[uc] = 1;
                }
                if ((!end_of_row || row_has[ur]) && (!end_of_col || col_has[uc])) self(self, i + 1);
                t.marks_[ur][uc] = 0;
                row_has[ur] = saved_row;
                col_has[uc] = saved_col;
            };

            if (r == 0 && c == 0) {
                try_value(true);
            } else if (mirror && r > c) {
                try_value(t.marks_[uc][ur] != 0);
            } else {
                try_value(false);
                try_value(true);
            }
        };
        rec(rec, 0);
    }
};

/// Every tree-like tableau of size n (n! of them), grouped by shape in canonical order.
inline std::vector<tableau> enumerate_tableaux(int n, enumeration_caps const& caps = {}) {
    if (n < 1) throw std::invalid_argument("enumerate_tableaux: n must be >= 1");
    if (n > caps.plain)
        throw std::invalid_argument("enumerate_tableaux: n=" + std::to_string(n) + " exceeds the cap " +
                                    std::to_string(caps.plain) + " (POLYREC_CAP_PLAIN)");
    std::vector<tableau> out;
    for (auto const& sh : enumerate_shapes(n + 1)) tableau_builder::fill(sh, false, out);
    return out;
}

/// Every symmetric tree-like tableau of size 2 n_half + 1 (2^n_half n_half! of them).
inline std::vector<tableau> enumerate_symmetric(int n_half, enumeration_caps const& caps = {}) {
    if (n_half < 1) throw std::invalid_argument("enumerate_symmetric: n_half must be >= 1");
    if (n_half > caps.symmetric)
        throw std::invalid_argument("enumerate_symmetric: n_half=" + std::to_string(n_half) + " exceeds the cap " +
                                    std::to_string(caps.symmetric) + " (POLYREC_CAP_SYMMETRIC)");
    std::vector<tableau> out;
    for (auto const& sh : enumerate_shapes(2 * n_half + 2))
        if (sh.is_symmetric()) tableau_builder::fill(sh, true, out);
    return out;
}

enum class statistic { occupied_corners, corners, diagonal_cells, symmetric_occupied_corners };

inline std::string to_string(statistic s) {
    switch (s) {
        case statistic::occupied_corners: return "occupied-corners";
        case statistic::corners: return "corners";
        case statistic::diagonal_cells: return "diagonal-cells";
        case statistic::symmetric_occupied_corners: return "symmetric-occupied-corners";
    }
    return "?";
}

inline statistic parse_statistic(std::string s) {
    std::replace(s.begin(), s.end(), '_', '-');
    if (s == "occupied-corners") return statistic::occupied_corners;
    if (s == "corners") return statistic::corners;
    if (s == "diagonal-cells") return statistic::diagonal_cells;
    if (s == "symmetric-occupied-corners") return statistic::symmetric_occupied_corners;
    throw std::invalid_argument("unknown statistic '" + s + "'");
}

/// Plain statistics take the size n; symmetric ones take n_half (size 2 n_half + 1).
inline bool is_symmetric_statistic(statistic s) {
    return s == statistic::diagonal_cells || s == statistic::symmetric_occupied_corners;
}

struct histogram {
    statistic stat = statistic::occupied_corners;
    int n = 0;
    std::vector<std::uint64_t> counts;  // index = statistic value

    std::uint64_t total() const {
        std::uint64_t t = 0;
        for (auto c : counts) t += c;
        return t;
    }

    pmf to_pmf() const {
        pmf out;
        auto const tot = total();
        for (auto c : counts) out.probabilities.emplace_back(integer(static_cast<unsigned long>(c)), integer(static_cast<unsigned long>(tot)));
        for (auto& p : out.probabilities) p.canonicalize();
        return out;
    }

    /// Counts as a polynomial sum_k counts[k] x^k.
    polynomial to_polynomial() const {
        std::vector<rational> c;
        for (auto v : counts) c.emplace_back(static_cast<unsigned long>(v));
        return polynomial(std::move(c));
    }
};

inline histogram statistic_distribution(statistic stat, int n, enumeration_caps const& caps = {}) {
    auto const all = is_symmetric_statistic(stat) ? enumerate_symmetric(n, caps) : enumerate_tableaux(n, caps);
    histogram h;
    h.stat = stat;
    h.n = n;
    for (auto const& t : all) {
        auto const s = stats(t);
        int v = 0;
        switch (stat) {
            case statistic::occupied_corners:
            case statistic::symmetric_occupied_corners: v = s.occupied_corners; break;
            case statistic::corners: v = s.corners; break;
            case statistic::diagonal_cells: v = s.diagonal_cells; break;
        }
        if (static_cast<std::size_t>(v) >= h.counts.size()) h.counts.resize(static_cast<std::size_t>(v) + 1, 0);
        ++h.counts[static_cast<std::size_t>(v)];
    }
    return h;
}

// ------------------------------------------------------------ text format

/// First line: row lengths. Then one line per row, '•' for a point and '.' for an empty cell.
inline std::string to_text(tableau const& t) {
    std::ostringstream os;
    auto const& rows = t.shape().rows;
    for (std::size_t r = 0; r < rows.size(); ++r) os << (r ? " " : "") << rows[r];
    os << '\n';
    for (int r = 0; r < t.shape().num_rows(); ++r) {
        for (int c = 0; c < rows[static_cast<std::size_t>(r)]; ++c) os << (t.pointed(r, c) ? "•" : ".");
        os << '\n';
    }
    return os.str();
}

/// Inverse of to_text; also accepts '*' or 'o' for a point.
inline tableau parse_tableau(std::string const& text) {
    std::istringstream is(text);
    std::string line;
    if (!std::getline(is, line)) throw std::invalid_argument("tableau text: missing row-length line");
    ferrers_shape shape;
    {
        std::istringstream ls(line);
        int len = 0;
        while (ls >> len) shape.rows.push_back(len);
    }
    if (shape.rows.empty()) throw std::invalid_argument("tableau text: no row lengths");
    std::vector<cell> points;
    for (int r = 0; r < shape.num_rows(); ++r) {
        if (!std::getline(is, line)) throw std::invalid_argument("tableau text: missing row " + std::to_string(r));
        int c = 0;
        for (std::size_t i = 0; i < line.size();) {
            std::string const bullet = "•";
            if (line.compare(i, bullet.size(), bullet) == 0) {
                points.push_back({r, c++});
                i += bullet.size();
            } else if (line[i] == '*' || line[i] == 'o') {
                points.push_back({r, c++});
                ++i;
            } else if (line[i] == '.') {
                ++c;
                ++i;
            } else {
                ++i;  // whitespace
            }
        }
        if (c != shape.rows[static_cast<std::size_t>(r)])
            throw std::invalid_argument("tableau text: row " + std::to_string(r) + " has " + std::to_string(c) +
                                        " cells, expected " + std::to_string(shape.rows[static_cast<std::size_t>(r)]));
    }
    return tableau(std::move(shape), points);
}

}  // namespace polyrec
