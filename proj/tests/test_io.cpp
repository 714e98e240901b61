#include <doctest.h>

#include <sstream>

#include "census/io.hpp"

using namespace census;

TEST_CASE("polynomial JSON round trip is bit-exact") {
    for (const char* s : {"x0^4+x1^4-x2^4-x3^4", "6t1^2+9t2", "t1^3+t2*t3-1"}) {
        IntPolynomial p = parse_polynomial(s);
        Json j = poly_to_json(p);
        CHECK(poly_from_json(j) == p);
        CHECK(poly_to_json(poly_from_json(j)).dump() == j.dump());
    }
    IntPolynomial big(2);
    Monomial m(2);
    m.e[0] = 3;
    big.add_term(m, mpz_class("123456789012345678901234567890"));
    Json j = poly_to_json(big);
    CHECK(j["terms"][0]["c"] == "123456789012345678901234567890");
    CHECK(poly_from_json(j) == big);

    // zero polynomial keeps its arity
    Json z = poly_to_json(IntPolynomial::zero(3));
    CHECK(poly_from_json(z).is_zero());
    CHECK(poly_from_json(z).arity() == 3);

    // canonical term order in the emitted array: graded lex, leading first
    Json f = poly_to_json(parse_polynomial("1+t1^2+t2"));
    CHECK(f["terms"][0]["e"] == Json::array({2, 0}));
    CHECK(f["terms"][2]["e"] == Json::array({0, 0}));

    Json badlen = Json::parse(R"({"arity":2,"terms":[{"e":[1],"c":"1"}]})");
    CHECK_THROWS_AS(poly_from_json(badlen), std::invalid_argument);
}

TEST_CASE("series CSV round trip with header block") {
    CountSeries s;
    s.experiment_id = "demo";
    s.points = {{10, 100}, {20, 420}, {40, 1700}};
    std::ostringstream os;
    write_series_csv(os, s, "00ff00ff00ff00ff");
    std::string text = os.str();
    CHECK(text.find("# census 0.1.0") == 0);
    CHECK(text.find("# spec 00ff00ff00ff00ff") != std::string::npos);
    CHECK(text.find("B,count") != std::string::npos);

    std::istringstream is(text);
    CountSeries back = read_series_csv(is);
    CHECK(back.points == s.points);

    std::istringstream decreasing("B,count\n10,5\n10,6\n");
    CHECK_THROWS_AS(read_series_csv(decreasing), std::invalid_argument);
}

TEST_CASE("spec hash is order-sensitive and stable") {
    auto h1 = spec_hash({{"cmd", "count"}, {"bound", "10"}});
    auto h2 = spec_hash({{"cmd", "count"}, {"bound", "10"}});
    auto h3 = spec_hash({{"cmd", "count"}, {"bound", "11"}});
    CHECK(h1 == h2);
    CHECK(h1 != h3);
    CHECK(h1.size() == 16);
}

TEST_CASE("report JSON shapes") {
    ModPSummary s;
    s.prime = 5;
    s.projective_count = 80;
    s.affine_zero_count = 321;
    Json j = to_json(s);
    CHECK(j["prime"] == 5);
    CHECK(j["projective_count"] == 80);

    EqualSumsTally t;
    t.s = 2;
    t.B = 10;
    t.total = 210;
    t.trivial = 190;
    t.nontrivial = 20;
    Json jt = to_json(t);
    CHECK(jt["s_factorial_leading_term"] == doctest::Approx(200.0));
}
