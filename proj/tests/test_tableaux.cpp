#include "polyrec/tableaux.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace polyrec;

namespace {

tableau figure_i() {
    return tableau({{7, 7, 5, 5, 2, 2, 1}}, {{0, 0}, {0, 1}, {0, 3}, {0, 6}, {1, 1}, {1, 5}, {2, 1}, {3, 0}, {3, 2},
                                             {3, 4}, {4, 1}, {5, 0}, {6, 0}});
}

tableau figure_ii() {
    return tableau({{6, 5, 4, 3, 2, 1}},
                   {{0, 0}, {0, 1}, {0, 4}, {0, 5}, {1, 0}, {1, 3}, {2, 3}, {3, 1}, {3, 2}, {4, 0}, {5, 0}});
}

std::uint64_t fact(int n) { return n <= 1 ? 1 : static_cast<std::uint64_t>(n) * fact(n - 1); }

}  // namespace

TEST(Shapes, SmallHalfPerimeter) {
    auto const s = enumerate_shapes(3);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0].rows, (std::vector<int>{2}));
    EXPECT_EQ(s[1].rows, (std::vector<int>{1, 1}));
    // lattice paths with hp steps: 2^(hp-2) shapes
    EXPECT_EQ(enumerate_shapes(8).size(), 64u);
    EXPECT_THROW(enumerate_shapes(1), std::invalid_argument);
}

TEST(Shapes, Conjugate) {
    ferrers_shape const s{{3, 1}};
    EXPECT_EQ(s.conjugate(), (std::vector<int>{2, 1, 1}));
    EXPECT_FALSE(s.is_symmetric());
    EXPECT_TRUE((ferrers_shape{{2, 1}}).is_symmetric());
}

TEST(Tableau, FigureOneLeft) {
    auto const t = figure_i();
    EXPECT_FALSE(validate(t).has_value()) << *validate(t);
    auto const s = stats(t);
    EXPECT_EQ(s.size, 13);
    EXPECT_EQ(s.corners, 4);
    EXPECT_EQ(s.occupied_corners, 2);
}

TEST(Tableau, FigureOneRight) {
    auto const t = figure_ii();
    EXPECT_TRUE(t.shape().is_symmetric());
    EXPECT_FALSE(validate(t).has_value()) << *validate(t);
    auto const s = stats(t);
    EXPECT_EQ(s.size, 11);
    EXPECT_EQ(s.corners, 6);
    EXPECT_EQ(s.occupied_corners, 4);
    EXPECT_EQ(s.diagonal_cells, 3);
}

TEST(Tableau, ValidatorRules) {
    EXPECT_NE(validate(tableau({{2}}, {{0, 1}}))->find("rule 1"), std::string::npos);
    EXPECT_NE(validate(tableau({{2, 1}}, {{0, 0}, {0, 1}}))->find("rule 2"), std::string::npos);
    EXPECT_NE(validate(tableau({{2, 2}}, {{0, 0}, {0, 1}, {1, 0}, {1, 1}}))->find("rule 3"), std::string::npos);
    EXPECT_NE(validate(tableau({{2, 2}}, {{0, 0}, {1, 1}}))->find("rule 3"), std::string::npos);
    EXPECT_FALSE(validate(tableau({{2, 2}}, {{0, 0}, {0, 1}, {1, 0}})).has_value());
    EXPECT_THROW(tableau({{1}}, {{0, 1}}), std::invalid_argument);
    EXPECT_THROW(stats(tableau({{2}}, {{0, 1}})), std::invalid_argument);
}

TEST(Tableau, TextRoundTrip) {
    auto const t = figure_ii();
    auto const text = to_text(t);
    EXPECT_EQ(text.substr(0, 12), "6 5 4 3 2 1\n");
    EXPECT_EQ(parse_tableau(text), t);
    EXPECT_EQ(parse_tableau("2 1\n*o\n.\n"), tableau({{2, 1}}, {{0, 0}, {0, 1}}));
    EXPECT_THROW(parse_tableau("2 1\n**\n"), std::invalid_argument);
    EXPECT_THROW(parse_tableau("2\n***\n"), std::invalid_argument);
}

TEST(Enumerate, SmallCounts) {
    EXPECT_EQ(enumerate_tableaux(1).size(), 1u);
    EXPECT_EQ(enumerate_tableaux(2).size(), 2u);
    EXPECT_EQ(enumerate_tableaux(3).size(), 6u);
    EXPECT_EQ(enumerate_symmetric(1).size(), 2u);
    EXPECT_EQ(enumerate_symmetric(2).size(), 8u);
}

TEST(Enumerate, Caps) {
    EXPECT_THROW(enumerate_tableaux(8), std::invalid_argument);
    EXPECT_THROW(enumerate_symmetric(5), std::invalid_argument);
    EXPECT_THROW(enumerate_tableaux(0), std::invalid_argument);
    enumeration_caps small{3, 1};
    EXPECT_THROW(enumerate_tableaux(4, small), std::invalid_argument);
    EXPECT_THROW(enumerate_symmetric(2, small), std::invalid_argument);
}

TEST(Enumerate, SymmetricSize3) {
    auto const all = enumerate_symmetric(1);
    std::set<std::vector<int>> shapes;
    for (auto const& t : all) shapes.insert(t.shape().rows);
    EXPECT_EQ(shapes, (std::set<std::vector<int>>{{2, 1}, {2, 2}}));
    auto const d = statistic_distribution(statistic::diagonal_cells, 1);
    EXPECT_EQ(d.counts, (std::vector<std::uint64_t>{0, 1, 1}));
    auto const o = statistic_distribution(statistic::symmetric_occupied_corners, 1);
    EXPECT_EQ(o.counts, (std::vector<std::uint64_t>{1, 0, 1}));
}

TEST(Distribution, OccupiedCornersSize3) {
    auto const h = statistic_distribution(statistic::occupied_corners, 3);
    EXPECT_EQ(h.counts, (std::vector<std::uint64_t>{1, 4, 1}));
    EXPECT_EQ(h.total(), 6u);
    EXPECT_EQ(h.to_polynomial(), polynomial::from({1, 4, 1}));
    EXPECT_EQ(h.to_pmf().probabilities[1], rational(2, 3));
}

TEST(Distribution, ParseStatistic) {
    EXPECT_EQ(parse_statistic("diagonal_cells"), statistic::diagonal_cells);
    EXPECT_EQ(parse_statistic("occupied-corners"), statistic::occupied_corners);
    EXPECT_EQ(to_string(statistic::symmetric_occupied_corners), "symmetric-occupied-corners");
    EXPECT_THROW(parse_statistic("rows"), std::invalid_argument);
}

TEST(TableauxProperty, EnumeratedAreValidDistinctAndSized) {
    for (int n = 1; n <= 6; ++n) {
        auto const all = enumerate_tableaux(n);
        EXPECT_EQ(all.size(), fact(n));
        std::set<std::string> seen;
        for (auto const& t : all) {
            EXPECT_FALSE(validate(t).has_value());
            EXPECT_EQ(t.size(), n);
            EXPECT_EQ(static_cast<int>(t.points().size()), n);
            seen.insert(to_text(t));
        }
        EXPECT_EQ(seen.size(), all.size());
    }
}

TEST(TableauxProperty, SymmetricAreMirrorImages) {
    for (int m = 1; m <= 3; ++m) {
        auto const all = enumerate_symmetric(m);
        EXPECT_EQ(all.size(), (std::uint64_t{1} << m) * fact(m));
        for (auto const& t : all) {
            EXPECT_TRUE(t.shape().is_symmetric());
            EXPECT_FALSE(validate(t).has_value());
            EXPECT_EQ(t.size(), 2 * m + 1);
            for (auto const& p : t.points()) EXPECT_TRUE(t.pointed(p.col, p.row));
        }
    }
}

TEST(TableauxProperty, TextRoundTripAll) {
    for (auto const& t : enumerate_tableaux(5)) EXPECT_EQ(parse_tableau(to_text(t)), t);
}

TEST(TableauxProperty, CornersAreAtLeastOccupied) {
    for (auto const& t : enumerate_tableaux(6)) {
        auto const s = stats(t);
        EXPECT_GE(s.corners, 1);
        EXPECT_LE(s.occupied_corners, s.corners);
    }
}
