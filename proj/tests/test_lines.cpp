#include <doctest.h>

#include "census/counting.hpp"
#include "census/lines.hpp"

using namespace census;

namespace {

IntPolynomial P(const std::string& s, int min_arity = 0) { return parse_polynomial(s, min_arity); }

bool line_contains(const Line& l, const std::vector<i64>& pt) { return point_on_line(l, pt); }

}  // namespace

TEST_CASE("detect_lines on the Fermat quartic") {
    IntPolynomial fermat = P("x0^4+x1^4-x2^4-x3^4");
    SUBCASE("the x0=x2, x1=x3 line") {
        auto lines = detect_lines(fermat, {{1, 0, 1, 0}, {0, 1, 0, 1}});
        REQUIRE(lines.size() == 1);
        CHECK(line_contains(lines[0], {1, 0, 1, 0}));
        CHECK(line_contains(lines[0], {0, 1, 0, 1}));
        CHECK(line_contains(lines[0], {3, -5, 3, -5}));
        CHECK_FALSE(line_contains(lines[0], {1, 0, -1, 0}));
        // containment re-verified at d+1 points of the line
        for (i64 t = 0; t <= 4; ++t) {
            std::vector<i64> pt{1, t, 1, t};
            CHECK(fermat.evaluate(pt) == 0);
        }
    }
    SUBCASE("sign-flipped companion") {
        auto lines = detect_lines(fermat, {{1, 0, 1, 0}, {0, 1, 0, -1}});
        REQUIRE(lines.size() == 1);
        CHECK(line_contains(lines[0], {2, 1, 2, -1}));
    }
    SUBCASE("pairs on different lines yield nothing") {
        auto lines = detect_lines(fermat, {{1, 0, 1, 0}, {1, 1, 1, -1}});
        // the joining line is not inside the quartic
        for (const auto& l : lines) {
            CHECK(line_contains(l, {1, 0, 1, 0}));
        }
    }
    SUBCASE("duplicate pairs dedupe to one line") {
        auto lines = detect_lines(fermat, {{1, 0, 1, 0}, {0, 1, 0, 1}, {1, 1, 1, 1}, {2, 1, 2, 1}});
        // all four points lie on the single line x0=x2, x1=x3
        REQUIRE(lines.size() == 1);
        for (const auto& pt :
             std::vector<std::vector<i64>>{{1, 0, 1, 0}, {0, 1, 0, 1}, {1, 1, 1, 1}, {2, 1, 2, 1}})
            CHECK(line_contains(lines[0], pt));
    }
    SUBCASE("empty sample, no lines") { CHECK(detect_lines(fermat, {}).empty()); }
}

TEST_CASE("count_off_lines on the Fermat quartic at height 1") {
    IntPolynomial fermat = P("x0^4+x1^4-x2^4-x3^4");
    OffLineCounts c = count_off_lines(fermat, 1);
    CHECK(c.total == 32);
    CHECK(c.on_lines == 32);
    CHECK(c.off_lines == 0);
    CHECK_FALSE(c.lines.empty());
}

TEST_CASE("count_off_lines on the quintic: only permutation solutions at small height") {
    IntPolynomial quintic = P("x0^5+x1^5-x2^5-x3^5");
    OffLineCounts c = count_off_lines(quintic, 10);
    CHECK(c.off_lines == 0);
    CHECK(c.total > 0);
    CHECK(c.total == c.on_lines);
}

TEST_CASE("no lines on a pointless quadric") {
    IntPolynomial q = P("x0^2+x1^2+x2^2+x3^2");
    OffLineCounts c = count_off_lines(q, 5);
    CHECK(c.total == 0);
    CHECK(c.on_lines == 0);
    CHECK(c.lines.empty());
}

TEST_CASE("line detection is seed-deterministic") {
    IntPolynomial quintic = P("x0^5+x1^5-x2^5-x3^5");
    OffLineCounts a = count_off_lines(quintic, 8, {}, 16, 42);
    OffLineCounts b = count_off_lines(quintic, 8, {}, 16, 42);
    CHECK(a.total == b.total);
    CHECK(a.on_lines == b.on_lines);
    REQUIRE(a.lines.size() == b.lines.size());
    for (std::size_t i = 0; i < a.lines.size(); ++i) {
        CHECK(a.lines[i].basis == b.lines[i].basis);
        CHECK(a.lines[i].pluecker == b.lines[i].pluecker);
    }
}

TEST_CASE("quintic counts match the closed-form three-line model") {
    // at small heights every point lies on the three rational lines
    // (s,t,s,t), (s,t,t,s), (s,-s,t,-t); the union has 3*P(B) - 6 vectors
    // where P(B) counts primitive nonzero (s,t) with sup-norm <= B
    auto mobius = [](i64 n) {
        int m = 1;
        for (i64 p = 2; p * p <= n; ++p) {
            if (n % p != 0) continue;
            n /= p;
            if (n % p == 0) return 0;
            m = -m;
        }
        if (n > 1) m = -m;
        return m;
    };
    auto primitive_pairs = [&](i64 B) {
        i64 total = 0;
        for (i64 k = 1; k <= B; ++k) {
            i64 side = 2 * (B / k) + 1;
            total += mobius(k) * (side * side - 1);
        }
        return total;
    };
    IntPolynomial quintic = parse_polynomial("x0^5+x1^5-x2^5-x3^5");
    for (i64 B : {1, 2, 5, 8}) {
        CHECK(count_projective(quintic, B) == 3 * primitive_pairs(B) - 6);
    }
}
