#include "census/smooth.hpp"

#include <algorithm>
#include <stdexcept>

#include "census/modp.hpp"

namespace census {

namespace {

bool is_diagonal_form(const IntPolynomial& F) {
    if (F.is_zero() || !F.is_homogeneous() || F.degree() < 1) return false;
    if (F.term_count() != static_cast<std::size_t>(F.arity())) return false;
    std::vector<bool> seen(static_cast<std::size_t>(F.arity()), false);
    for (const auto& [m, c] : F.terms()) {
        int nonzero_var = -1;
        for (std::size_t i = 0; i < m.e.size(); ++i) {
            if (m.e[i] == 0) continue;
            if (nonzero_var >= 0) return false;
            nonzero_var = static_cast<int>(i);
        }
        if (nonzero_var < 0) return false;  // constant term
        if (seen[static_cast<std::size_t>(nonzero_var)]) return false;
        seen[static_cast<std::size_t>(nonzero_var)] = true;
    }
    return std::all_of(seen.begin(), seen.end(), [](bool b) { return b; });
}

/// Canonical primitive representatives with sup-norm <= radius, first
/// nonzero coordinate positive, ascending lexicographic order.
std::vector<std::vector<i64>> primitive_box_reps(int arity, i64 radius) {
    std::vector<std::vector<i64>> out;
    std::vector<i64> x(static_cast<std::size_t>(arity), -radius);
    for (;;) {
        i64 g = gcd_all(x);
        if (g == 1) {
            i64 first = 0;
            for (i64 c : x)
                if (c != 0) {
                    first = c;
                    break;
                }
            if (first > 0) out.push_back(x);
        }
        int i = arity - 1;
        while (i >= 0 && x[static_cast<std::size_t>(i)] == radius) {
            x[static_cast<std::size_t>(i)] = -radius;
            --i;
        }
        if (i < 0) break;
        ++x[static_cast<std::size_t>(i)];
    }
    return out;
}

}  // namespace

std::vector<std::vector<i64>> find_singular_points_mod_p(const IntPolynomial& F, i64 p,
                                                         i64 scan_cap) {
    if (p < 2) throw std::invalid_argument("find_singular_points_mod_p: modulus must be >= 2");
    if (p > scan_cap)
        throw std::invalid_argument("find_singular_points_mod_p: prime exceeds exhaustive scan cap");
    ModPoly fm = to_mod_poly(F, p);
    if (fm.is_zero())
        throw std::domain_error("find_singular_points_mod_p: reduction is identically zero");
    ModPEvaluator fe(fm);
    std::vector<ModPEvaluator> partials;
    partials.reserve(static_cast<std::size_t>(F.arity()));
    for (int i = 0; i < F.arity(); ++i) partials.emplace_back(to_mod_poly(derivative(F, i), p));

    std::vector<std::vector<i64>> found;
    for_each_projective_rep(p, F.arity(), [&](const std::vector<i64>& x) {
        if (fe.eval(x) != 0) return;
        for (const auto& d : partials)
            if (d.eval(x) != 0) return;
        found.push_back(x);
    });
    std::sort(found.begin(), found.end());
    return found;
}

SmoothnessVerdict smoothness_verdict(const IntPolynomial& f, const SmoothOptions& opts,
                                     VarietyKind kind) {
    if (f.is_zero()) throw std::domain_error("smoothness_verdict: zero polynomial");
    SmoothnessVerdict v;
    if (f.degree() == 0) {
        // nonzero constant: empty hypersurface, vacuously smooth
        v.status = SmoothStatus::NoSingularPointsModPList;
        return v;
    }
    bool as_projective = kind == VarietyKind::Projective ||
                         (kind == VarietyKind::Auto && f.is_homogeneous());
    if (kind == VarietyKind::Projective && !f.is_homogeneous())
        throw std::invalid_argument("smoothness_verdict: projective input must be homogeneous");
    IntPolynomial F = as_projective ? f : homogenize(f, f.degree());
    F = primitive_part(F);

    if (is_diagonal_form(F)) {
        v.status = SmoothStatus::CertifiedSmoothDiagonal;
        return v;
    }

    // exact witness search over a small primitive box
    std::vector<IntPolynomial> grads = gradient(F);
    for (const auto& x : primitive_box_reps(F.arity(), opts.witness_box_radius)) {
        if (F.evaluate(x) != 0) continue;
        bool all_zero = true;
        for (const auto& g : grads)
            if (!g.is_zero() && g.evaluate(x) != 0) {
                all_zero = false;
                break;
            }
        if (all_zero) v.rational_witnesses.push_back(x);
    }
    if (!v.rational_witnesses.empty()) {
        v.status = SmoothStatus::SingularWithWitness;
        return v;
    }

    for (i64 p : opts.evidence_primes) {
        auto sing = find_singular_points_mod_p(F, p, opts.modp_scan_cap);
        if (sing.empty())
            v.primes_checked.push_back(p);
        else
            v.modp_witnesses.emplace_back(p, sing.front());
    }
    v.status = v.primes_checked.empty() ? SmoothStatus::SingularWithWitness
                                        : SmoothStatus::NoSingularPointsModPList;
    return v;
}

namespace {

i64 mod_pos(i64 a, i64 p) {
    i64 r = a % p;
    return r < 0 ? r + p : r;
}

bool rank3_over(const std::vector<std::vector<i64>>& rows, i64 p) {
    // any nonvanishing 3x3 minor of the 3 x n stack
    int n = static_cast<int>(rows[0].size());
    for (int c0 = 0; c0 < n; ++c0)
        for (int c1 = c0 + 1; c1 < n; ++c1)
            for (int c2 = c1 + 1; c2 < n; ++c2) {
                __int128 det = 0;
                const auto& r0 = rows[0];
                const auto& r1 = rows[1];
                const auto& r2 = rows[2];
                auto m = [&](int i, int j, int k) {
                    return static_cast<__int128>(r0[static_cast<std::size_t>(i)]) *
                           (static_cast<__int128>(r1[static_cast<std::size_t>(j)]) * r2[static_cast<std::size_t>(k)] -
                            static_cast<__int128>(r1[static_cast<std::size_t>(k)]) * r2[static_cast<std::size_t>(j)]);
                };
                det = m(c0, c1, c2) - m(c1, c0, c2) + m(c2, c0, c1);
                if (p > 0) det %= p;
                if (det != 0) return true;
            }
    return false;
}

}  // namespace

TangentSection tangent_section_multiplicity(const IntPolynomial& F, const std::vector<i64>& point,
                                            i64 p) {
    if (!F.is_homogeneous() || F.is_zero())
        throw std::invalid_argument("tangent_section_multiplicity: need a nonzero form");
    if (point.size() != static_cast<std::size_t>(F.arity()))
        throw std::invalid_argument("tangent_section_multiplicity: point arity mismatch");
    int n = F.arity();

    auto value_of = [&](const IntPolynomial& g) -> mpz_class {
        mpz_class v = g.evaluate(point);
        if (p > 0) {
            mpz_class r, pz = static_cast<long>(p);
            mpz_mod(r.get_mpz_t(), v.get_mpz_t(), pz.get_mpz_t());
            return r;
        }
        return v;
    };

    if (value_of(F) != 0)
        throw std::invalid_argument("tangent_section_multiplicity: point not on the hypersurface");

    std::vector<i64> normal(static_cast<std::size_t>(n));
    bool any_nonzero = false;
    for (int i = 0; i < n; ++i) {
        mpz_class gi = value_of(derivative(F, i));
        if (!fits_i64(gi)) throw std::overflow_error("tangent_section_multiplicity: gradient overflow");
        normal[static_cast<std::size_t>(i)] = to_i64(gi);
        if (normal[static_cast<std::size_t>(i)] != 0) any_nonzero = true;
    }
    if (!any_nonzero)
        throw std::domain_error("tangent_section_multiplicity: singular point (undefined)");

    // basis vectors of the tangent hyperplane {y : normal . y = 0}
    int k = 0;
    while (normal[static_cast<std::size_t>(k)] == 0) ++k;
    std::vector<std::vector<i64>> plane_basis;
    for (int j = 0; j < n; ++j) {
        if (j == k) continue;
        std::vector<i64> b(static_cast<std::size_t>(n), 0);
        b[static_cast<std::size_t>(j)] = normal[static_cast<std::size_t>(k)];
        b[static_cast<std::size_t>(k)] = -normal[static_cast<std::size_t>(j)];
        if (p > 0)
            for (auto& c : b) c = mod_pos(c, p);
        plane_basis.push_back(std::move(b));
    }

    // pick two basis vectors making {point, v1, v2} a rank-3 frame
    std::vector<i64> pt = point;
    if (p > 0)
        for (auto& c : pt) c = mod_pos(c, p);
    std::vector<i64>*v1 = nullptr, *v2 = nullptr;
    for (std::size_t i = 0; i < plane_basis.size() && v1 == nullptr; ++i)
        for (std::size_t j = i + 1; j < plane_basis.size(); ++j) {
            std::vector<std::vector<i64>> frame{pt, plane_basis[i], plane_basis[j]};
            if (rank3_over(frame, p)) {
                v1 = &plane_basis[i];
                v2 = &plane_basis[j];
                break;
            }
        }
    if (v1 == nullptr)
        throw std::domain_error("tangent_section_multiplicity: tangent frame degenerates");

    // G(s, u, v) = F(s*pt + u*v1 + v*v2); x maps to [1, 0, 0]
    std::vector<IntPolynomial> repl;
    repl.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        IntPolynomial li(3);
        Monomial s(3), u(3), v(3);
        s.e[0] = 1;
        u.e[1] = 1;
        v.e[2] = 1;
        li.add_term(s, pt[static_cast<std::size_t>(i)]);
        li.add_term(u, (*v1)[static_cast<std::size_t>(i)]);
        li.add_term(v, (*v2)[static_cast<std::size_t>(i)]);
        repl.push_back(std::move(li));
    }
    IntPolynomial G = substitute(F, repl);
    if (p > 0) G = reduce_mod_p(G, p);

    TangentSection out;
    if (G.is_zero()) {
        out.tangent_plane_in_surface = true;
        return out;
    }
    IntPolynomial g = slice(G, 0, 1);
    if (p > 0) g = reduce_mod_p(g, p);
    if (g.is_zero()) {
        out.tangent_plane_in_surface = true;
        return out;
    }
    int min_deg = g.degree();
    for (const auto& [m, c] : g.terms()) min_deg = std::min(min_deg, m.total_degree());
    out.multiplicity = min_deg;
    return out;
}

IntPolynomial transformed_polynomial(const IntPolynomial& f, const IntMatrix& completion) {
    if (completion.rows() != f.arity() || completion.cols() != f.arity())
        throw std::invalid_argument("transformed_polynomial: completion shape must match arity");
    IntMatrix inv = completion.inverse_unimodular();
    int nu = f.arity();
    std::vector<IntPolynomial> repl;
    repl.reserve(static_cast<std::size_t>(nu));
    for (int i = 0; i < nu; ++i) {
        IntPolynomial li(nu);
        for (int j = 0; j < nu; ++j) {
            if (inv.at(i, j) == 0) continue;
            Monomial m(static_cast<std::size_t>(nu));
            m.e[static_cast<std::size_t>(j)] = 1;
            li.add_term(m, inv.at(i, j));
        }
        repl.push_back(std::move(li));
    }
    return substitute(f, repl);
}

IntPolynomial directional_slice(const IntPolynomial& f, const IntMatrix& completion, i64 kappa) {
    return slice(transformed_polynomial(f, completion), 0, static_cast<long>(kappa));
}

namespace {

std::optional<BadSliceValue::Reason> classify_slice(const IntPolynomial& h, int expected_degree,
                                                    const SmoothOptions& opts) {
    if (h.is_zero()) return BadSliceValue::Reason::Vanishes;
    if (h.degree() < expected_degree) return BadSliceValue::Reason::DegreeDrop;
    // slices are affine polynomials; judge their projective closure
    if (!smoothness_verdict(h, opts, VarietyKind::Affine).passes())
        return BadSliceValue::Reason::Singular;
    return std::nullopt;
}

/// Directions in the same deterministic order as completion candidates:
/// sup-norm ascending, canonical sign (first nonzero positive), primitive.
std::vector<std::vector<i64>> direction_candidates(int nu, i64 max_norm) {
    auto reps = primitive_box_reps(nu, max_norm);
    std::stable_sort(reps.begin(), reps.end(),
                     [](const std::vector<i64>& a, const std::vector<i64>& b) {
                         auto norm = [](const std::vector<i64>& v) {
                             i64 m = 0;
                             for (i64 c : v) m = std::max(m, std::abs(c));
                             return m;
                         };
                         auto nnz = [](const std::vector<i64>& v) {
                             int k = 0;
                             for (i64 c : v)
                                 if (c != 0) ++k;
                             return k;
                         };
                         if (norm(a) != norm(b)) return norm(a) < norm(b);
                         if (nnz(a) != nnz(b)) return nnz(a) < nnz(b);
                         auto key = [](const std::vector<i64>& v) {
                             std::vector<std::pair<int, i64>> k;
                             for (i64 c : v) k.emplace_back(c > 0 ? 0 : (c == 0 ? 1 : 2), std::abs(c));
                             return k;
                         };
                         return key(a) < key(b);
                     });
    return reps;
}

}  // namespace

SliceReport good_slice_search(const IntPolynomial& f, i64 radius, bool override_smoothness_gate,
                              const SmoothOptions& opts) {
    if (f.is_zero()) throw std::domain_error("good_slice_search: zero polynomial");
    if (f.arity() < 2) throw std::invalid_argument("good_slice_search: need at least 2 variables");
    if (!override_smoothness_gate && !smoothness_verdict(f, opts).passes())
        throw std::invalid_argument("good_slice_search: input fails the smoothness evidence gate");

    constexpr i64 kMaxRadius = 64;
    constexpr i64 kValueRange = 32;
    int delta = f.degree();
    SliceReport report;

    i64 limit = std::min(radius, kMaxRadius);
    i64 scanned_up_to = 0;
    while (true) {
        for (const auto& dir : direction_candidates(f.arity(), limit)) {
            i64 norm = 0;
            for (i64 c : dir) norm = std::max(norm, std::abs(c));
            if (norm <= scanned_up_to) continue;  // seen in a previous pass
            IntMatrix a = unimodular_completion(dir);
            IntPolynomial g = transformed_polynomial(f, a);
            std::vector<BadSliceValue> bad;
            for (i64 step = 0; step <= 2 * kValueRange; ++step) {
                // k runs 0, 1, -1, 2, -2, ...
                i64 k = (step % 2 == 1) ? (step + 1) / 2 : -(step / 2);
                if (std::abs(k) > kValueRange) break;
                IntPolynomial h = slice(g, 0, static_cast<long>(k));
                auto reason = classify_slice(h, delta, opts);
                if (!reason) {
                    report.direction = dir;
                    report.completion = a.to_rows_i64();
                    report.good_value = k;
                    report.bad_values = std::move(bad);
                    return report;
                }
                bad.push_back({k, *reason});
            }
            report.exhausted_directions.push_back(dir);
        }
        scanned_up_to = limit;
        if (limit >= kMaxRadius) break;
        limit = std::min(limit * 2, kMaxRadius);
    }
    throw std::runtime_error("good_slice_search: search exhausted at radius 64");
}

std::vector<BadSliceValue> bad_slice_values(const IntPolynomial& f, const std::vector<i64>& direction,
                                            i64 range_bound, const SmoothOptions& opts) {
    if (f.is_zero()) throw std::domain_error("bad_slice_values: zero polynomial");
    if (direction.size() != static_cast<std::size_t>(f.arity()))
        throw std::invalid_argument("bad_slice_values: direction arity mismatch");
    if (gcd_all(direction) != 1)
        throw std::invalid_argument("bad_slice_values: direction must be primitive");
    IntMatrix a = unimodular_completion(direction);
    IntPolynomial g = transformed_polynomial(f, a);
    int delta = f.degree();
    std::vector<BadSliceValue> out;
    for (i64 kappa = -range_bound; kappa <= range_bound; ++kappa) {
        IntPolynomial h = slice(g, 0, static_cast<long>(kappa));
        auto reason = classify_slice(h, delta, opts);
        if (reason) out.push_back({kappa, *reason});
    }
    return out;
}

}  // namespace census
