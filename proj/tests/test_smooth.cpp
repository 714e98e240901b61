#include <doctest.h>

#include <random>

#include "census/intmatrix.hpp"
#include "census/modp.hpp"
#include "census/smooth.hpp"

using namespace census;

namespace {

IntPolynomial P(const std::string& s, int min_arity = 0) { return parse_polynomial(s, min_arity); }

/// Independent mod-p singular scan: raw loops over projective reps.
std::vector<std::vector<i64>> oracle_singular(const IntPolynomial& F, i64 p) {
    auto grads = gradient(F);
    std::vector<std::vector<i64>> out;
    int n = F.arity();
    std::vector<i64> x(static_cast<std::size_t>(n), 0);
    auto vanishes = [&](const IntPolynomial& g) {
        mpz_class v = g.evaluate(x);
        return mpz_fdiv_ui(v.get_mpz_t(), static_cast<unsigned long>(p)) == 0;
    };
    for (int lead = 0; lead < n; ++lead) {
        std::fill(x.begin(), x.end(), 0);
        x[static_cast<std::size_t>(lead)] = 1;
        for (;;) {
            bool all = vanishes(F);
            for (std::size_t i = 0; all && i < grads.size(); ++i)
                if (!vanishes(grads[i])) all = false;
            if (all) out.push_back(x);
            int i = n - 1;
            while (i > lead && x[static_cast<std::size_t>(i)] == p - 1) {
                x[static_cast<std::size_t>(i)] = 0;
                --i;
            }
            if (i == lead) break;
            ++x[static_cast<std::size_t>(i)];
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("find_singular_points_mod_p on the spec families") {
    IntPolynomial fermat4 = P("x0^4+x1^4-x2^4-x3^4");
    CHECK(find_singular_points_mod_p(fermat4, 3).empty());

    IntPolynomial cone = P("x0^2*x1", 4);
    auto sing5 = find_singular_points_mod_p(cone, 5);
    CHECK_FALSE(sing5.empty());
    CHECK(sing5 == oracle_singular(cone, 5));
    // every witness satisfies F = 0 and grad F = 0 mod p, re-checked by evaluation
    auto grads = gradient(cone);
    for (const auto& w : sing5) {
        mpz_class v = cone.evaluate(w);
        CHECK(mpz_fdiv_ui(v.get_mpz_t(), 5) == 0);
        for (const auto& g : grads) {
            mpz_class gv = g.evaluate(w);
            CHECK(mpz_fdiv_ui(gv.get_mpz_t(), 5) == 0);
        }
    }

    // characteristic divides the degree: Frobenius collapses the quintic
    IntPolynomial fermat5 = P("x0^5+x1^5-x2^5-x3^5");
    CHECK_FALSE(find_singular_points_mod_p(fermat5, 5).empty());
    CHECK(find_singular_points_mod_p(fermat5, 5) == oracle_singular(fermat5, 5));
    CHECK(find_singular_points_mod_p(fermat5, 3).empty());

    CHECK_THROWS_AS(find_singular_points_mod_p(P("5x0^2", 2) * mpz_class(5), 5), std::domain_error);
    CHECK_THROWS_AS(find_singular_points_mod_p(fermat4, 103), std::invalid_argument);
}

TEST_CASE("diagonal forms with p not dividing d or coefficients reduce smoothly") {
    for (const char* s : {"x0^4+x1^4-x2^4-x3^4", "x0^5+x1^5-x2^5-x3^5", "2x0^3+3x1^3+5x2^3"}) {
        IntPolynomial F = P(s);
        int d = F.degree();
        for (i64 p : {3, 5, 7, 11, 13}) {
            if (d % p == 0) continue;
            bool divides_coeff = false;
            for (const auto& [m, c] : F.terms())
                if (mpz_fdiv_ui(c.get_mpz_t(), static_cast<unsigned long>(p)) == 0) divides_coeff = true;
            if (divides_coeff) continue;
            CHECK(find_singular_points_mod_p(F, p).empty());
        }
    }
}

TEST_CASE("smoothness_verdict") {
    CHECK(smoothness_verdict(P("x0^5+x1^5-x2^5-x3^5")).status == SmoothStatus::CertifiedSmoothDiagonal);
    CHECK(smoothness_verdict(P("t1^4+t2^4+t3^4-1")).status == SmoothStatus::CertifiedSmoothDiagonal);

    SmoothnessVerdict v = smoothness_verdict(P("x0^2*x1", 4));
    CHECK(v.status == SmoothStatus::SingularWithWitness);
    REQUIRE_FALSE(v.rational_witnesses.empty());
    auto grads = gradient(P("x0^2*x1", 4));
    for (const auto& w : v.rational_witnesses) {
        CHECK(P("x0^2*x1", 4).evaluate(w) == 0);
        for (const auto& g : grads)
            if (!g.is_zero()) CHECK(g.evaluate(w) == 0);
    }
    CHECK_FALSE(v.passes());

    // non-diagonal smooth quadric: evidence, not certification
    SmoothnessVerdict q = smoothness_verdict(P("x0*x3-x1*x2"));
    CHECK(q.status == SmoothStatus::NoSingularPointsModPList);
    CHECK(q.primes_checked == std::vector<i64>{3, 5, 7, 11, 13});

    CHECK_THROWS_AS(smoothness_verdict(IntPolynomial::zero(2)), std::domain_error);

    // a homogeneous slice read as an affine curve: closure is a singular cone
    CHECK(smoothness_verdict(P("t1^4+t2^4"), {}, VarietyKind::Affine).status ==
          SmoothStatus::SingularWithWitness);
    // the same input read projectively is a smooth binary form
    CHECK(smoothness_verdict(P("t1^4+t2^4"), {}, VarietyKind::Projective).passes());
}

TEST_CASE("tangent section multiplicity") {
    IntPolynomial quadric = P("x0*x3-x1*x2");
    for (auto pt : {std::vector<i64>{1, 0, 0, 0}, std::vector<i64>{0, 0, 0, 1},
                    std::vector<i64>{1, 1, 1, 1}, std::vector<i64>{2, 1, 2, 1}}) {
        TangentSection t = tangent_section_multiplicity(quadric, pt);
        CHECK_FALSE(t.tangent_plane_in_surface);
        CHECK(t.multiplicity == 2);
    }

    // Fermat quartic at [1,0,1,0]: restricting to the tangent plane x0 = x2
    // gives u^4 - v^4, so the local multiplicity is 4
    IntPolynomial fermat4 = P("x0^4+x1^4-x2^4-x3^4");
    TangentSection t = tangent_section_multiplicity(fermat4, {1, 0, 1, 0});
    CHECK_FALSE(t.tangent_plane_in_surface);
    CHECK(t.multiplicity == 4);

    // multiplicity at least 2 at every smooth point (tangency)
    std::mt19937_64 rng(7);
    int tested = 0;
    while (tested < 25) {
        std::vector<i64> pt{static_cast<i64>(rng() % 9) - 4, static_cast<i64>(rng() % 9) - 4,
                            static_cast<i64>(rng() % 9) - 4, 0};
        if (pt[0] == 0 && pt[1] == 0 && pt[2] == 0) continue;
        // complete to a quadric point: x3 = x1*x2/x0 rarely integral; use the known family
        std::vector<i64> qpt{pt[0], pt[1], pt[2], 0};
        // point on x0*x3 = x1*x2 with x3 = 0 requires x1*x2 = 0
        if (qpt[0] == 0 || qpt[1] * qpt[2] != 0) continue;
        TangentSection ts = tangent_section_multiplicity(quadric, qpt);
        CHECK(ts.multiplicity >= 2);
        ++tested;
    }

    // singular point refused
    IntPolynomial cone = P("x0^2*x1", 4);
    CHECK_THROWS_AS(tangent_section_multiplicity(cone, {0, 0, 1, 0}), std::domain_error);
    // point not on the surface refused
    CHECK_THROWS_AS(tangent_section_multiplicity(quadric, {1, 1, 1, 0}), std::invalid_argument);

    // over F_p: generic smooth points of the Fermat quartic mod 7 have multiplicity 2
    ModPoly fm = to_mod_poly(fermat4, 7);
    ModPEvaluator fe(fm);
    int found_mult2 = 0;
    for_each_projective_rep(7, 4, [&](const std::vector<i64>& x) {
        if (fe.eval(x) != 0) return;
        auto grads = gradient(fermat4);
        bool singular = true;
        for (const auto& gp : grads) {
            mpz_class gv = gp.evaluate(x);
            if (mpz_fdiv_ui(gv.get_mpz_t(), 7) != 0) singular = false;
        }
        if (singular) return;
        TangentSection ts = tangent_section_multiplicity(fermat4, x, 7);
        if (!ts.tangent_plane_in_surface && ts.multiplicity == 2) ++found_mult2;
    });
    CHECK(found_mult2 > 0);

    // a plane inside the surface: x0*x3 - x0*x1 vanishes on the whole plane x0 = 0
    IntPolynomial degen = P("x0*x3-x0*x1+x0^2");
    TangentSection td = tangent_section_multiplicity(degen, {0, 1, 0, 0});
    CHECK(td.tangent_plane_in_surface);
}

TEST_CASE("good_slice_search on the affine Fermat quartic") {
    IntPolynomial f = P("t1^4+t2^4+t3^4-1");
    SliceReport r = good_slice_search(f);
    CHECK(r.direction == std::vector<i64>{1, 0, 0});
    CHECK(r.good_value == 0);
    CHECK(r.completion == std::vector<std::vector<i64>>{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
    CHECK(r.bad_values.empty());

    // the slice along (a, k) and the original agree through the completion:
    // g(A x) = f(x) on sampled lattice points
    IntMatrix a = IntMatrix::from_rows_i64(r.completion);
    IntPolynomial g = transformed_polynomial(f, a);
    std::mt19937_64 rng(11);
    for (int i = 0; i < 100; ++i) {
        std::vector<i64> x{static_cast<i64>(rng() % 21) - 10, static_cast<i64>(rng() % 21) - 10,
                           static_cast<i64>(rng() % 21) - 10};
        std::vector<i64> ax(3, 0);
        for (int r2 = 0; r2 < 3; ++r2)
            for (int c = 0; c < 3; ++c)
                ax[static_cast<std::size_t>(r2)] +=
                    to_i64(a.at(r2, c)) * x[static_cast<std::size_t>(c)];
        CHECK(g.evaluate(ax) == f.evaluate(x));
    }

    // the gate refuses singular input unless overridden
    CHECK_THROWS_AS(good_slice_search(P("x0^2*x1", 4)), std::invalid_argument);
    CHECK_NOTHROW(good_slice_search(P("t1^2+t2^2+t3^2-3")));
}

TEST_CASE("bad_slice_values spec examples") {
    SUBCASE("quartic: exactly the two singular slices") {
        auto bad = bad_slice_values(P("t1^4+t2^4+t3^4-1"), {1, 0, 0}, 10);
        REQUIRE(bad.size() == 2);
        CHECK(bad[0].kappa == -1);
        CHECK(bad[0].reason == BadSliceValue::Reason::Singular);
        CHECK(bad[1].kappa == 1);
        CHECK(bad[1].reason == BadSliceValue::Reason::Singular);
    }
    SUBCASE("sphere: no integer bad slices") {
        CHECK(bad_slice_values(P("t1^2+t2^2+t3^2-3"), {1, 0, 0}, 5).empty());
    }
    SUBCASE("degree drop along a linear fiber") {
        auto bad = bad_slice_values(P("t1*t2+t3"), {0, 1, 0}, 4);
        REQUIRE(bad.size() == 9);
        for (const auto& b : bad) CHECK(b.reason == BadSliceValue::Reason::DegreeDrop);
    }
    SUBCASE("monotone in the bound and stable for diagonal forms") {
        auto b5 = bad_slice_values(P("t1^4+t2^4+t3^4-1"), {1, 0, 0}, 5);
        auto b10 = bad_slice_values(P("t1^4+t2^4+t3^4-1"), {1, 0, 0}, 10);
        auto b15 = bad_slice_values(P("t1^4+t2^4+t3^4-1"), {1, 0, 0}, 15);
        auto kappas = [](const std::vector<BadSliceValue>& v) {
            std::vector<i64> k;
            for (const auto& b : v) k.push_back(b.kappa);
            return k;
        };
        auto k5 = kappas(b5), k10 = kappas(b10), k15 = kappas(b15);
        CHECK(std::includes(k10.begin(), k10.end(), k5.begin(), k5.end()));
        CHECK(k10 == k15);
    }
}

TEST_CASE("good_slice_search in four variables") {
    IntPolynomial f = P("t1^4+t2^4+t3^4+t4^4-2");
    SliceReport r = good_slice_search(f);
    CHECK(r.direction == std::vector<i64>{1, 0, 0, 0});
    CHECK(r.good_value == 0);
    IntMatrix a = IntMatrix::from_rows_i64(r.completion);
    CHECK(a.det() == 1);
    // the chosen slice is a smooth diagonal quartic surface
    IntPolynomial h = directional_slice(f, a, r.good_value);
    CHECK(h.degree() == 4);
    CHECK(smoothness_verdict(h, {}, VarietyKind::Affine).passes());
}

TEST_CASE("bad slice sets stabilize across bounds for diagonal families") {
    for (const char* s : {"t1^4+t2^4+t3^4-1", "t1^2+t2^2+t3^2-3", "t1^5+t2^5+t3^5-3",
                          "t1^4+t2^4+t3^4+t4^4-2"}) {
        IntPolynomial f = P(s);
        std::vector<i64> dir(static_cast<std::size_t>(f.arity()), 0);
        dir[0] = 1;
        auto b10 = bad_slice_values(f, dir, 10);
        auto b14 = bad_slice_values(f, dir, 14);
        auto kap = [](const std::vector<BadSliceValue>& v) {
            std::vector<i64> k;
            for (const auto& b : v) k.push_back(b.kappa);
            return k;
        };
        CHECK(kap(b10) == kap(b14));
    }
}

TEST_CASE("dimension mismatches are rejected") {
    CHECK_THROWS_AS(bad_slice_values(P("t1^2+t2^2+t3^2+t4^2-4"), {1, 0, 0}, 5),
                    std::invalid_argument);
    CHECK_THROWS_AS(transformed_polynomial(P("t1+t2+t3"), IntMatrix::identity(2)),
                    std::invalid_argument);
}

TEST_CASE("good_slice_search skips degree-dropping directions") {
    // slicing t1*t2 + t3 along t1 or t2 always drops the degree; the first
    // workable direction is (0,0,1), where kappa = 0 still gives a pair of
    // crossing lines and kappa = 1 a smooth conic
    IntPolynomial f = P("t1*t2+t3");
    SliceReport r = good_slice_search(f);
    CHECK(r.direction == std::vector<i64>{0, 0, 1});
    CHECK(r.good_value == 1);
    REQUIRE(r.exhausted_directions.size() == 2);
    CHECK(r.exhausted_directions[0] == std::vector<i64>{1, 0, 0});
    CHECK(r.exhausted_directions[1] == std::vector<i64>{0, 1, 0});
    REQUIRE_FALSE(r.bad_values.empty());
    CHECK(r.bad_values[0].kappa == 0);
    CHECK(r.bad_values[0].reason == BadSliceValue::Reason::Singular);

    // undoing the completion reproduces f on sampled lattice points
    IntMatrix a = IntMatrix::from_rows_i64(r.completion);
    CHECK(a.det() == 1);
    IntPolynomial g = transformed_polynomial(f, a);
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        std::vector<i64> x{static_cast<i64>(rng() % 41) - 20, static_cast<i64>(rng() % 41) - 20,
                           static_cast<i64>(rng() % 41) - 20};
        std::vector<i64> ax(3, 0);
        for (int r2 = 0; r2 < 3; ++r2)
            for (int c = 0; c < 3; ++c)
                ax[static_cast<std::size_t>(r2)] += to_i64(a.at(r2, c)) * x[static_cast<std::size_t>(c)];
        CHECK(g.evaluate(ax) == f.evaluate(x));
    }

    // the slice at the good value really is the hyperplane section t3 = 1
    IntPolynomial h = directional_slice(f, a, 1);
    CHECK(h.degree() == 2);
    CHECK(smoothness_verdict(h, {}, VarietyKind::Affine).passes());
}
