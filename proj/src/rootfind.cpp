#include "census/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace census {

namespace {

constexpr i64 kScanLimit = 1 << 18;

mpz_class eval_mpz(const std::vector<mpz_class>& c, i64 t) {
    mpz_class acc = 0;
    mpz_class tz = static_cast<long>(t);
    for (std::size_t i = c.size(); i-- > 0;) {
        acc *= tz;
        acc += c[i];
    }
    return acc;
}

int sign_at(const std::vector<mpz_class>& c, i64 t) { return sgn(eval_mpz(c, t)); }

int degree_of(const std::vector<mpz_class>& c) { return static_cast<int>(c.size()) - 1; }

/// p(t+1) - p(t); degree drops by one.
std::vector<mpz_class> finite_difference(const std::vector<mpz_class>& c) {
    std::size_t n = c.size();
    std::vector<mpz_class> shifted(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        // row i of Pascal's triangle
        std::vector<mpz_class> binom(i + 1, 0);
        binom[0] = 1;
        for (std::size_t row = 1; row <= i; ++row)
            for (std::size_t j = row; j >= 1; --j) binom[j] += binom[j - 1];
        for (std::size_t j = 0; j <= i; ++j) shifted[j] += c[i] * binom[j];
    }
    std::vector<mpz_class> d(n > 0 ? n - 1 : 0, 0);
    for (std::size_t j = 0; j + 1 < n; ++j) d[j] = shifted[j] - c[j];
    while (!d.empty() && d.back() == 0) d.pop_back();
    return d;
}

void sign_run_boundaries(const std::vector<mpz_class>& q, i64 lo, i64 hi, std::vector<i64>& out);

/// Cut positions lo = c0 < c1 < ... < ck = hi such that the integer samples
/// of p are weakly monotone on every [c_i, c_{i+1}].
std::vector<i64> monotone_cuts(const std::vector<mpz_class>& p, i64 lo, i64 hi) {
    std::vector<i64> cuts{lo, hi};
    if (degree_of(p) > 1 && hi > lo + 1) {
        std::vector<mpz_class> d = finite_difference(p);
        if (degree_of(d) >= 1) {
            std::vector<i64> bnds;
            sign_run_boundaries(d, lo, hi - 1, bnds);
            for (i64 b : bnds)
                if (b > lo && b < hi) cuts.push_back(b);
        }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    return cuts;
}

/// First m in [a, b] with pred(m) true; pred must be monotone (false..true).
template <typename Pred>
i64 first_true(i64 a, i64 b, Pred pred) {
    while (a < b) {
        i64 mid = a + (b - a) / 2;
        if (pred(mid))
            b = mid;
        else
            a = mid + 1;
    }
    return a;
}

/// Start positions of each new maximal sign run of q's integer samples
/// (positions m in (lo, hi] with sign(q(m)) != sign(q(m-1))).
void sign_run_boundaries(const std::vector<mpz_class>& q, i64 lo, i64 hi, std::vector<i64>& out) {
    if (lo >= hi || degree_of(q) <= 0) return;
    if (degree_of(q) == 1 && hi - lo > 64) {
        // linear: boundaries cluster around the rational crossing -c0/c1
        mpz_class t_floor;
        mpz_class neg_c0 = -q[0];
        mpz_fdiv_q(t_floor.get_mpz_t(), neg_c0.get_mpz_t(), q[1].get_mpz_t());
        if (!fits_i64(t_floor)) return;  // crossing far outside the window
        i64 tf = to_i64(t_floor);
        if (tf + 2 < lo || tf - 2 > hi) return;
        i64 lo2 = std::max(lo, tf - 2), hi2 = std::min(hi, tf + 2);
        for (i64 m = std::max(lo + 1, lo2); m <= hi2; ++m)
            if (sign_at(q, m) != sign_at(q, m - 1)) out.push_back(m);
        return;
    }
    if (hi - lo <= 64) {
        int prev = sign_at(q, lo);
        for (i64 m = lo + 1; m <= hi; ++m) {
            int s = sign_at(q, m);
            if (s != prev) out.push_back(m);
            prev = s;
        }
        return;
    }
    std::vector<i64> cuts = monotone_cuts(q, lo, hi);
    for (std::size_t ci = 0; ci + 1 < cuts.size(); ++ci) {
        i64 a = cuts[ci], b = cuts[ci + 1];
        mpz_class va = eval_mpz(q, a), vb = eval_mpz(q, b);
        if (ci > 0 && sgn(va) != sign_at(q, a - 1)) out.push_back(a);
        if (sgn(va) == sgn(vb)) continue;  // weakly monotone, same endpoint sign: no change inside
        bool asc = va < vb;
        // sign pattern along the segment: (-)* (0)* (+)* if ascending
        auto ge0 = [&](i64 m) { return asc ? eval_mpz(q, m) >= 0 : eval_mpz(q, m) <= 0; };
        auto gt0 = [&](i64 m) { return asc ? eval_mpz(q, m) > 0 : eval_mpz(q, m) < 0; };
        i64 m1 = first_true(a, b, ge0);
        if (m1 > a) out.push_back(m1);
        i64 m2 = first_true(m1, b, gt0);
        if (m2 > a && m2 != m1 && !gt0(m2 - 1) && gt0(m2)) out.push_back(m2);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

/// All integer roots of nonzero p in [lo, hi], appended to out.
void roots_by_isolation(const std::vector<mpz_class>& p, i64 lo, i64 hi, std::vector<i64>& out) {
    if (lo > hi) return;
    std::vector<i64> cuts = monotone_cuts(p, lo, hi);
    int max_roots = degree_of(p);
    for (std::size_t ci = 0; ci + 1 < cuts.size(); ++ci) {
        i64 a = cuts[ci], b = cuts[ci + 1];
        mpz_class va = eval_mpz(p, a), vb = eval_mpz(p, b);
        if (va == 0) out.push_back(a);
        if (vb == 0) out.push_back(b);
        if (va == vb) {
            // weakly monotone with equal endpoints: constant along the segment;
            // a constant-zero run is bounded by the root count
            if (va == 0) {
                int guard = max_roots + 2;
                for (i64 t = a + 1; t < b && guard > 0; ++t, --guard)
                    if (eval_mpz(p, t) == 0) out.push_back(t);
            }
            continue;
        }
        bool asc = va < vb;
        if (asc ? (va > 0 || vb < 0) : (va < 0 || vb > 0)) continue;
        auto past0 = [&](i64 m) { return asc ? eval_mpz(p, m) >= 0 : eval_mpz(p, m) <= 0; };
        i64 m = first_true(a, b, past0);
        // zeros form one short run starting at m
        int guard = max_roots + 1;
        for (i64 t = m; t <= b && guard > 0; ++t, --guard) {
            if (eval_mpz(p, t) != 0) break;
            out.push_back(t);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
}

void push_if_in(std::vector<i64>& roots, i64 t, i64 bound, bool allow_zero = false) {
    if ((t != 0 || allow_zero) && t >= -bound && t <= bound) roots.push_back(t);
}

}  // namespace

std::vector<i64> univariate_integer_roots(const std::vector<mpz_class>& coeffs_in, i64 bound) {
    if (bound < 0) throw std::invalid_argument("univariate_integer_roots: negative bound");
    std::vector<mpz_class> c = coeffs_in;
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.empty()) throw std::invalid_argument("univariate_integer_roots: zero polynomial");

    std::vector<i64> roots;
    std::size_t k = 0;
    while (k < c.size() && c[k] == 0) ++k;
    if (k > 0) {
        roots.push_back(0);
        c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k));
    }
    int deg = degree_of(c);
    if (deg == 1) {
        mpz_class q, r;
        mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), c[0].get_mpz_t(), c[1].get_mpz_t());
        if (r == 0) {
            mpz_class t = -q;
            if (fits_i64(t)) push_if_in(roots, to_i64(t), bound);
        }
    } else if (deg == 2) {
        mpz_class disc = c[1] * c[1] - 4 * c[2] * c[0];
        if (disc >= 0 && mpz_perfect_square_p(disc.get_mpz_t())) {
            mpz_class s;
            mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
            for (int sign : {-1, 1}) {
                mpz_class num = -c[1] + sign * s;
                mpz_class den = 2 * c[2];
                mpz_class q2, r2;
                mpz_tdiv_qr(q2.get_mpz_t(), r2.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
                if (r2 == 0 && fits_i64(q2)) push_if_in(roots, to_i64(q2), bound);
            }
        }
    } else if (deg >= 3) {
        bool binomial = true;
        for (int i = 1; i < deg; ++i)
            if (c[static_cast<std::size_t>(i)] != 0) binomial = false;
        if (binomial) {
            mpz_class q, r;
            mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), c[0].get_mpz_t(),
                        c[static_cast<std::size_t>(deg)].get_mpz_t());
            if (r == 0) {
                mpz_class target = -q;
                auto root = exact_root(target, deg);
                if (root && fits_i64(*root)) {
                    i64 tv = to_i64(*root);
                    push_if_in(roots, tv, bound);
                    if (deg % 2 == 0 && tv != 0) push_if_in(roots, -tv, bound);
                }
            }
        } else {
            mpz_class mx = 0;
            for (int i = 0; i < deg; ++i) {
                mpz_class a = abs(c[static_cast<std::size_t>(i)]);
                if (a > mx) mx = a;
            }
            mpz_class lead = abs(c[static_cast<std::size_t>(deg)]);
            mpz_class cauchy = mx / lead + 2;
            i64 range = bound;
            if (cauchy < static_cast<long>(bound)) range = to_i64(cauchy);
            if (range <= kScanLimit) {
                const mpz_class& a0 = c[0];
                for (i64 t = 1; t <= range; ++t) {
                    if (!mpz_divisible_ui_p(a0.get_mpz_t(), static_cast<unsigned long>(t))) continue;
                    if (eval_mpz(c, t) == 0) roots.push_back(t);
                    if (eval_mpz(c, -t) == 0) roots.push_back(-t);
                }
            } else {
                std::vector<i64> iso;
                roots_by_isolation(c, -range, range, iso);
                for (i64 t : iso) push_if_in(roots, t, bound);
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

bool univariate_roots_i64(const std::vector<i64>& coeffs, i64 bound, std::vector<i64>& out) {
    out.clear();
    std::vector<i64> c = coeffs;
    while (!c.empty() && c.back() == 0) c.pop_back();
    if (c.empty()) return false;  // zero polynomial: caller decides
    std::size_t k = 0;
    while (k < c.size() && c[k] == 0) ++k;
    if (k > 0) {
        out.push_back(0);
        c.erase(c.begin(), c.begin() + static_cast<std::ptrdiff_t>(k));
    }
    int deg = static_cast<int>(c.size()) - 1;
    auto finish = [&out] {
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return true;
    };
    if (deg == 0) return finish();
    if (deg == 1) {
        if (c[0] % c[1] == 0) {
            i64 t = -(c[0] / c[1]);
            if (t != 0 && t >= -bound && t <= bound) out.push_back(t);
        }
        return finish();
    }
    if (deg == 2) {
        __int128 disc = static_cast<__int128>(c[1]) * c[1] - 4 * static_cast<__int128>(c[2]) * c[0];
        if (disc >= 0) {
            unsigned __int128 d = static_cast<unsigned __int128>(disc);
            u64 s = static_cast<u64>(sqrtl(static_cast<long double>(d)));
            while (s > 0 && static_cast<unsigned __int128>(s) * s > d) --s;
            while (static_cast<unsigned __int128>(s + 1) * (s + 1) <= d) ++s;
            if (static_cast<unsigned __int128>(s) * s == d) {
                for (int sign : {-1, 1}) {
                    __int128 num = -static_cast<__int128>(c[1]) + sign * static_cast<__int128>(s);
                    __int128 den = 2 * static_cast<__int128>(c[2]);
                    if (num % den == 0) {
                        __int128 t = num / den;
                        if (t != 0 && t >= -bound && t <= bound) out.push_back(static_cast<i64>(t));
                    }
                }
            }
        }
        return finish();
    }
    bool binomial = true;
    for (int i = 1; i < deg; ++i)
        if (c[static_cast<std::size_t>(i)] != 0) binomial = false;
    if (binomial) {
        if (c[0] % c[static_cast<std::size_t>(deg)] == 0) {
            i64 target = -(c[0] / c[static_cast<std::size_t>(deg)]);
            auto r = exact_root_i64(target, deg);
            if (r && *r != 0 && *r >= -bound && *r <= bound) {
                out.push_back(*r);
                if (deg % 2 == 0) out.push_back(-*r);
            }
        }
        return finish();
    }
    i64 mx = 0;
    for (int i = 0; i < deg; ++i) mx = std::max(mx, std::abs(c[static_cast<std::size_t>(i)]));
    i64 lead = std::abs(c[static_cast<std::size_t>(deg)]);
    i64 range = std::min(bound, mx / lead + 2);
    if (range > kScanLimit) return false;
    for (i64 t = -range; t <= range; ++t) {
        if (t == 0) continue;
        i64 acc = 0;
        for (std::size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
        if (acc == 0) out.push_back(t);
    }
    return finish();
}

}  // namespace census
