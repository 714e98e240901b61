#include <doctest.h>

#include <cmath>

#include "census/exponents.hpp"

using namespace census;

namespace {

CountSeries series_of(std::vector<std::pair<i64, i64>> pts) {
    CountSeries s;
    s.points = std::move(pts);
    return s;
}

}  // namespace

TEST_CASE("closed forms at pinned parameters") {
    CHECK(theorem1_exponent(4, 3) == doctest::Approx(1.0 + 1.0 + 1.0 / 3 - 0.25).epsilon(1e-12));
    CHECK(theorem1_exponent(5, 3) == doctest::Approx(1.9953574).epsilon(1e-6));
    CHECK(theorem1_exponent(5, 3) < 2.0);  // the d >= 5 conjecture case
    CHECK(theorem1_exponent(1000000, 3) == doctest::Approx(1.0).epsilon(1e-2));
    CHECK(theorem2_exponent(4) == doctest::Approx(1.0 + 1.0 / 3 - 0.25).epsilon(1e-12));
    CHECK(theorem2_exponent(9) == doctest::Approx(2.0 / 3 + 0.125 - 1.0 / 21).epsilon(1e-12));
    CHECK(pila_exponent(3) == doctest::Approx(1.0 / 3).epsilon(1e-15));
    CHECK(pila_exponent(1) == 1.0);
    CHECK(hb_theta(4) == doctest::Approx(1.0 + 2.0 / 3).epsilon(1e-12));
    CHECK(lemma7_exponent(4, 3) == doctest::Approx(1.0 / 3 - 1.0 / 4).epsilon(1e-12));
    CHECK_THROWS_AS(theorem1_exponent(3, 3), std::invalid_argument);
    CHECK_THROWS_AS(theorem2_exponent(3), std::invalid_argument);
    CHECK_THROWS_AS(proposition1_exponent(5, 1), std::invalid_argument);
    CHECK_THROWS_AS(proposition1_exponent(5, 5), std::invalid_argument);
    CHECK_THROWS_AS(lemma7_exponent(4, 2), std::invalid_argument);
}

TEST_CASE("identities used in the deductions") {
    for (int d = 4; d <= 50; ++d) {
        CHECK(std::abs(proposition1_exponent(d, d - 2) - theorem2_exponent(d)) < 1e-12);
        for (int n = 3; n <= 10; ++n)
            CHECK(std::abs(theorem1_exponent(d, n) - (theorem2_exponent(d) + n - 2)) < 1e-12);
    }
    for (int n = 3; n <= 10; ++n)
        CHECK(std::abs(sand_exponent(4, n) - theorem1_exponent(4, n)) < 1e-12);
    for (int d = 4; d <= 10000; d += (d < 120 ? 1 : 97))
        CHECK(cor1_theta(d) < hb_theta(d));
    for (int d = 4; d <= 100; ++d) {
        if (d == 4)
            CHECK(cor1_theta(d) >= 1.0);
        else
            CHECK(cor1_theta(d) < 1.0);
    }
}

TEST_CASE("evaluate_formula carries symbolic forms") {
    ExponentParams p;
    p.d = 5;
    p.n = 3;
    EvaluatedFormula f = evaluate_formula(FormulaId::Theorem1, p);
    CHECK(f.value == doctest::Approx(theorem1_exponent(5, 3)));
    CHECK(f.symbolic.find("sqrt(5)") != std::string::npos);
    CHECK(formula_from_name("theorem1") == FormulaId::Theorem1);
    CHECK(formula_from_name("nope") == std::nullopt);
    CHECK(formula_name(FormulaId::Cor1Theta) == "cor1_theta");
    ExponentParams missing;
    CHECK_THROWS_AS(evaluate_formula(FormulaId::Theorem1, missing), std::invalid_argument);
}

TEST_CASE("fit_exponent") {
    // exact power law c * B^2
    std::vector<std::pair<i64, i64>> pts;
    for (i64 b : {10, 100, 1000, 10000}) pts.emplace_back(b, 7 * b * b);
    FitResult r = fit_exponent(series_of(pts));
    CHECK(std::abs(r.slope - 2.0) < 1e-9);
    CHECK(std::abs(r.intercept - std::log(7.0)) < 1e-9);
    CHECK(r.residual < 1e-9);

    FitResult c = fit_exponent(series_of({{10, 5}, {100, 5}, {1000, 5}}));
    CHECK(std::abs(c.slope) < 1e-12);

    CHECK_THROWS_AS(fit_exponent(series_of({{10, 5}, {100, 6}})), std::invalid_argument);
    CHECK_THROWS_AS(fit_exponent(series_of({{10, 0}, {100, 0}, {1000, 0}})), std::invalid_argument);
}

TEST_CASE("bound_report") {
    ExponentParams p;
    p.d = 5;
    p.n = 3;
    // slope-2 series against theorem1(5,3) + enough margin to cover B^{n-1}
    std::vector<std::pair<i64, i64>> quad;
    for (i64 b : {20, 40, 80, 160, 320}) quad.emplace_back(b, 3 * b * b);
    BoundReport ok = bound_report(series_of(quad), FormulaId::Theorem1, p, 0.1);
    CHECK(ok.compliant);
    CHECK(ok.fitted_slope == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(ok.witness_constant > 0);

    // cubic growth against exponent 2 + 0.1: a constructed violation
    std::vector<std::pair<i64, i64>> cubic;
    for (i64 b : {10, 20, 40, 80}) cubic.emplace_back(b, b * b * b);
    ExponentParams p2;
    p2.delta = 4;  // theorem2(4) = 1.0833
    BoundReport bad = bound_report(series_of(cubic), FormulaId::Theorem2, p2, 0.1);
    CHECK_FALSE(bad.compliant);
    CHECK(bad.worst_B != 0);  // carries a witness point

    BoundReport single = bound_report(series_of({{10, 100}}), FormulaId::Theorem2, p2, 0.1);
    CHECK(single.compliant);
    CHECK(single.low_confidence);

    CHECK_THROWS_AS(bound_report(series_of({}), FormulaId::Theorem2, p2, 0.1), std::invalid_argument);
}
