#include "polyrec/polyrec.hpp"
#include "polyrec/serialize.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace polyrec;

TEST(Serialize, PolynomialJson) {
    auto const p = polynomial::from({6, 12, 6});
    EXPECT_EQ(to_json(p).dump(), R"(["6","12","6"])");
    EXPECT_EQ(polynomial_from_json(json::parse(R"(["1/2", 3, "0.25"])")),
              polynomial({rational(1, 2), rational(3), rational(1, 4)}));
    EXPECT_THROW(polynomial_from_json(json::parse("{}")), std::invalid_argument);
    EXPECT_THROW(polynomial_from_json(json::parse("[1.5]")), std::invalid_argument);
}

TEST(Serialize, PolynomialText) {
    EXPECT_EQ(to_text(polynomial::from({6, 12, 6})), "6x^2 + 12x + 6");
    EXPECT_EQ(to_text(polynomial::from({0, 1, 0, -1})), "-x^3 + x");
    EXPECT_EQ(to_text(polynomial{}), "0");
    EXPECT_EQ(to_text(polynomial({rational(1, 2)})), "1/2");
}

TEST(Serialize, SpecRoundTripBuiltins) {
    for (auto const& id : std::vector<family_id>{family::abn{}, family::lz{}, family::lz_symmetric{},
                                                 family::hj{rational(3, 2), rational(2)}, family::eulerian{},
                                                 family::dhh{}, family::ah{}, family::w{rational(1), rational(2)},
                                                 family::be1{3}}) {
        auto const spec = builtin(id);
        auto const back = spec_from_json(json::parse(to_json(spec).dump()));
        EXPECT_EQ(back, spec) << spec.name;
        EXPECT_EQ(back.name, spec.name);
        EXPECT_EQ(generate(back, 8, false), generate(spec, 8, false)) << spec.name;
    }
}

TEST(Serialize, CustomNormalizationRoundTrip) {
    auto spec = builtin(family::lz{});
    spec.norm = normalization::make_custom_product(rational(1), poly_in_n{rational(0), rational(1)});
    auto const back = spec_from_json(to_json(spec));
    EXPECT_EQ(back, spec);
    EXPECT_EQ(generate(back, 6), generate(builtin(family::lz{}), 6));
}

TEST(Serialize, ClassificationIsRederived) {
    auto j = to_json(builtin(family::w{rational(1), rational(1)}));
    j["g_vanishes_at_one"] = true;
    EXPECT_FALSE(spec_from_json(j).g_vanishes_at_one());
}

TEST(Serialize, MalformedSpecs) {
    EXPECT_THROW(spec_from_json(json::parse("[]")), std::invalid_argument);
    EXPECT_THROW(spec_from_json(json::parse(R"({"form":"direct","f":[],"g":[]})")), std::invalid_argument);
    EXPECT_THROW(spec_from_json(json::parse(R"({"form":"weird","f":[],"g":[],"p0":["1"]})")), std::invalid_argument);
    EXPECT_THROW(spec_from_json(json::parse(R"({"form":"derivative","f":[["1"]],"g":[],"p0":["1"]})")),
                 std::invalid_argument);
    EXPECT_THROW(
        spec_from_json(json::parse(
            R"({"form":"derivative","f":[["1"]],"g":[],"p0":["1"],"normalization":{"kind":"scaled_factorial"}})")),
        std::invalid_argument);
    EXPECT_THROW(spec_from_json(json::parse(
                     R"({"form":"derivative","f":[["1"]],"g":[],"p0":["1"],"normalization":{"kind":"magic"}})")),
                 std::invalid_argument);
}

TEST(Serialize, HistogramJson) {
    auto const h = statistic_distribution(statistic::occupied_corners, 3);
    EXPECT_EQ(to_json(h).dump(), R"({"statistic":"occupied-corners","n":3,"counts":[1,4,1]})");
    std::ostringstream os;
    write_histogram_csv(os, h);
    EXPECT_EQ(os.str(), "k,count\n0,1\n1,4\n2,1\n");
}

TEST(Serialize, MomentsCsv) {
    auto const rows = derivative_vector_recurrence(builtin(family::lz{}), 3, 2);
    std::ostringstream exact, approx;
    write_moments_csv(exact, rows, false);
    write_moments_csv(approx, rows, true);
    EXPECT_NE(exact.str().find("3,1,1/3,,"), std::string::npos);
    EXPECT_NE(approx.str().find("3,1,0.33333333333333331,,"), std::string::npos);
    std::ostringstream fm;
    write_factorial_table_csv(fm, rows, false);
    EXPECT_EQ(fm.str().substr(0, 18), "n,r,factorial_mome");
}

TEST(Serialize, CertificateJson) {
    auto const cert = isolate(polynomial::from({0, 1, 4, 3}), rational(1, 64), interval{rational(-1), rational(0)});
    auto const j = to_json(cert);
    EXPECT_EQ(j.at("degree"), 3);
    EXPECT_EQ(j.at("real_rooted"), true);
    EXPECT_EQ(j.at("roots").size(), 3u);
    EXPECT_EQ(j.at("roots")[1].at("lo"), "-1/3");
    EXPECT_EQ(j.at("all_in_expected"), true);
}

TEST(Serialize, Deterministic) {
    auto const a = to_json(diagnose_poisson(builtin(family::lz{}), 20, 3)).dump();
    auto const b = to_json(diagnose_poisson(builtin(family::lz{}), 20, 3)).dump();
    EXPECT_EQ(a, b);
}
