#include "census/counting.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "census/modp.hpp"
#include "census/rootfind.hpp"
#include "census/smooth.hpp"

namespace census {

namespace {

constexpr int kMaxEnumArity = kMaxModArity;

i64 mod_pos(i64 a, i64 p) {
    i64 r = a % p;
    return r < 0 ? r + p : r;
}

template <typename Int>
struct ETerm {
    std::array<std::uint8_t, kMaxEnumArity> e{};
    Int c{};
};

template <typename Int>
std::vector<ETerm<Int>> to_eterms(const IntPolynomial& f) {
    std::vector<ETerm<Int>> out;
    out.reserve(f.term_count());
    for (const auto& [m, c] : f.terms()) {
        ETerm<Int> t;
        for (std::size_t i = 0; i < m.e.size(); ++i) {
            if (m.e[i] > 255) throw std::invalid_argument("enumeration: exponent too large");
            t.e[i] = static_cast<std::uint8_t>(m.e[i]);
        }
        if constexpr (std::is_same_v<Int, i64>) {
            t.c = to_i64(c);
        } else {
            t.c = c;
        }
        out.push_back(std::move(t));
    }
    return out;
}

struct SieveTable {
    i64 p = 0;
    int arity = 0;
    int words = 0;
    std::vector<u64> mask;  // class-major root bitmap over t in [0, p)

    bool empty_class(std::size_t idx) const {
        for (int w = 0; w < words; ++w)
            if (mask[idx * static_cast<std::size_t>(words) + static_cast<std::size_t>(w)] != 0)
                return false;
        return true;
    }
};

SieveTable build_sieve_table(const IntPolynomial& f, i64 p, i64 mem_cap_bytes) {
    ModPoly fm = to_mod_poly(f, p);
    if (fm.is_zero()) throw std::logic_error("build_sieve_table: zero reduction");
    SieveTable t;
    t.p = p;
    t.arity = f.arity();
    t.words = static_cast<int>((p + 63) / 64);
    i64 classes = 1;
    for (int i = 0; i + 1 < t.arity; ++i) {
        if (classes > (i64(1) << 40) / p) throw ResourceCapError("sieve table: too many residue classes");
        classes *= p;
    }
    i64 bytes = classes * t.words * 8;
    if (bytes > mem_cap_bytes)
        throw ResourceCapError("sieve table exceeds the memory cap; lower the prime or raise --mem-cap");
    i64 work = classes * p;
    if (work > (i64(1) << 31))
        throw ResourceCapError("sieve table build too large; lower the prime");
    t.mask.assign(static_cast<std::size_t>(classes) * static_cast<std::size_t>(t.words), 0);

    ModPEvaluator fe(fm);
    std::vector<i64> x(static_cast<std::size_t>(t.arity), 0);
    // odometer over (x_0 .. x_{m-2}, t) with the class index tracked directly
    for (i64 cls = 0; cls < classes; ++cls) {
        i64 rem = cls;
        for (int i = 0; i + 1 < t.arity; ++i) {
            x[static_cast<std::size_t>(i)] = rem % p;
            rem /= p;
        }
        for (i64 v = 0; v < p; ++v) {
            x[static_cast<std::size_t>(t.arity - 1)] = v;
            if (fe.eval(x) == 0)
                t.mask[static_cast<std::size_t>(cls) * static_cast<std::size_t>(t.words) +
                       static_cast<std::size_t>(v / 64)] |= (u64(1) << (v % 64));
        }
    }
    return t;
}

template <typename Int>
class ShardRunner {
public:
    ShardRunner(std::vector<ETerm<Int>> root_terms, int arity, i64 B, bool projective,
                const SieveTable* sieve, bool collect)
        : arity_(arity), B_(B), projective_(projective), sieve_(sieve), collect_(collect) {
        levels_.resize(static_cast<std::size_t>(arity_));
        levels_[0] = std::move(root_terms);
        prefix_.assign(static_cast<std::size_t>(arity_), 0);
    }

    i64 run(i64 lo, i64 hi) {
        count_ = 0;
        if (lo > hi) return 0;
        recurse(0, lo, hi, 0);
        return count_;
    }

    std::vector<std::vector<i64>> points;

private:
    void recurse(int level, i64 lo, i64 hi, i64 g) {
        if (arity_ - level == 1) {
            solve_base(level, lo, hi, g);
            return;
        }
        for (i64 b = lo; b <= hi; ++b) {
            slice_level(level, b);
            prefix_[static_cast<std::size_t>(level)] = b;
            recurse(level + 1, -B_, B_, gcd_i64(g, b));
        }
    }

    void slice_level(int level, i64 b) {
        auto& out = levels_[static_cast<std::size_t>(level + 1)];
        out.clear();
        for (const auto& t : levels_[static_cast<std::size_t>(level)]) {
            Int c = t.c;
            for (std::uint8_t k = 0; k < t.e[0]; ++k) c = c * b;
            if (c == 0) continue;
            std::array<std::uint8_t, kMaxEnumArity> key{};
            for (int i = 1; i < kMaxEnumArity; ++i) key[static_cast<std::size_t>(i - 1)] = t.e[static_cast<std::size_t>(i)];
            bool merged = false;
            for (auto& o : out) {
                if (o.e == key) {
                    o.c = o.c + c;
                    merged = true;
                    break;
                }
            }
            if (!merged) {
                ETerm<Int> nt;
                nt.e = key;
                nt.c = std::move(c);
                out.push_back(std::move(nt));
            }
        }
        out.erase(std::remove_if(out.begin(), out.end(), [](const ETerm<Int>& t) { return t.c == 0; }),
                  out.end());
    }

    void handle_solution(int level, i64 t, i64 g) {
        if (projective_ && gcd_i64(g, t) != 1) return;
        ++count_;
        if (collect_) {
            std::vector<i64> coords(prefix_.begin(), prefix_.begin() + level);
            coords.push_back(t);
            points.push_back(std::move(coords));
        }
    }

    void solve_base(int level, i64 lo, i64 hi, i64 g) {
        const auto& terms = levels_[static_cast<std::size_t>(level)];
        if (terms.empty()) {
            // the slice vanished identically: every value solves it
            if (!projective_ && !collect_) {
                count_ += hi - lo + 1;
                return;
            }
            for (i64 t = lo; t <= hi; ++t) handle_solution(level, t, g);
            return;
        }
        int deg = 0;
        for (const auto& t : terms) deg = std::max(deg, static_cast<int>(t.e[0]));
        coeffs_.assign(static_cast<std::size_t>(deg + 1), Int{});
        for (const auto& t : terms) coeffs_[t.e[0]] = coeffs_[t.e[0]] + t.c;
        bool all_zero = true;
        for (const auto& c : coeffs_)
            if (!(c == 0)) all_zero = false;
        if (all_zero) {
            for (i64 t = lo; t <= hi; ++t) handle_solution(level, t, g);
            return;
        }

        if (sieve_ != nullptr) {
            sieve_base(level, lo, hi, g);
            return;
        }

        roots_.clear();
        if constexpr (std::is_same_v<Int, i64>) {
            if (!univariate_roots_i64(coeffs_, B_, roots_)) {
                std::vector<mpz_class> big(coeffs_.begin(), coeffs_.end());
                roots_ = univariate_integer_roots(big, B_);
            }
        } else {
            roots_ = univariate_integer_roots(coeffs_, B_);
        }
        for (i64 t : roots_)
            if (t >= lo && t <= hi) handle_solution(level, t, g);
    }

    void sieve_base(int level, i64 lo, i64 hi, i64 g) {
        const SieveTable& s = *sieve_;
        std::size_t cls = 0;
        i64 mult = 1;
        for (int i = 0; i < level; ++i) {
            cls += static_cast<std::size_t>(mod_pos(prefix_[static_cast<std::size_t>(i)], s.p) * mult);
            mult *= s.p;
        }
        const u64* words = &s.mask[cls * static_cast<std::size_t>(s.words)];
        for (int w = 0; w < s.words; ++w) {
            u64 bits = words[w];
            while (bits != 0) {
                int bit = __builtin_ctzll(bits);
                bits &= bits - 1;
                i64 r = static_cast<i64>(w) * 64 + bit;
                i64 start = lo + mod_pos(r - lo, s.p);
                for (i64 t = start; t <= hi; t += s.p) {
                    // exact Horner check on the lift
                    Int acc{};
                    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * t + coeffs_[i];
                    if (acc == 0) handle_solution(level, t, g);
                }
            }
        }
    }

    int arity_;
    i64 B_;
    bool projective_;
    const SieveTable* sieve_;
    bool collect_;
    i64 count_ = 0;
    std::vector<std::vector<ETerm<Int>>> levels_;
    std::vector<i64> prefix_;
    std::vector<Int> coeffs_;
    std::vector<i64> roots_;
};

template <typename Int>
class BruteRunner {
public:
    BruteRunner(std::vector<ETerm<Int>> terms, int arity, i64 B, bool projective, bool collect)
        : terms_(std::move(terms)), arity_(arity), B_(B), projective_(projective), collect_(collect) {
        int deg = 0;
        for (const auto& t : terms_)
            for (int v = 0; v < arity_; ++v) deg = std::max(deg, static_cast<int>(t.e[static_cast<std::size_t>(v)]));
        stride_ = deg + 1;
        pow_.assign(static_cast<std::size_t>(arity_) * static_cast<std::size_t>(2 * B + 1) *
                        static_cast<std::size_t>(stride_),
                    Int{});
        for (int v = 0; v < arity_; ++v)
            for (i64 x = -B; x <= B; ++x) {
                Int acc{};
                acc = acc + 1;  // Int(1) for both i64 and mpz_class
                for (int e = 0; e < stride_; ++e) {
                    pow_at(v, x, e) = acc;
                    acc = acc * x;
                }
            }
    }

    i64 run(i64 lo, i64 hi) {
        i64 count = 0;
        if (lo > hi) return 0;
        std::vector<i64> x(static_cast<std::size_t>(arity_), -B_);
        x[0] = lo;
        for (;;) {
            Int acc{};
            for (const auto& t : terms_) {
                Int prod = t.c;
                for (int v = 0; v < arity_; ++v) {
                    std::uint8_t e = t.e[static_cast<std::size_t>(v)];
                    if (e != 0) prod = prod * pow_at(v, x[static_cast<std::size_t>(v)], e);
                }
                acc = acc + prod;
            }
            if (acc == 0 && (!projective_ || gcd_all(x) == 1)) {
                ++count;
                if (collect_) points.push_back(x);
            }
            int i = arity_ - 1;
            while (i >= 1 && x[static_cast<std::size_t>(i)] == B_) {
                x[static_cast<std::size_t>(i)] = -B_;
                --i;
            }
            if (i == 0) {
                if (x[0] == hi) break;
                ++x[0];
            } else {
                ++x[static_cast<std::size_t>(i)];
            }
        }
        return count;
    }

    std::vector<std::vector<i64>> points;

private:
    Int& pow_at(int v, i64 x, int e) {
        return pow_[(static_cast<std::size_t>(v) * static_cast<std::size_t>(2 * B_ + 1) +
                     static_cast<std::size_t>(x + B_)) *
                        static_cast<std::size_t>(stride_) +
                    static_cast<std::size_t>(e)];
    }

    std::vector<ETerm<Int>> terms_;
    int arity_;
    i64 B_;
    bool projective_;
    bool collect_;
    int stride_;
    std::vector<Int> pow_;
};

/// Worst-case magnitude of any slice coefficient, Horner intermediate, or
/// evaluation reached by the engines: sum over terms of |c| * B^deg(term).
bool int64_certificate(const IntPolynomial& f, i64 B) {
    mpz_class bound = 0, bz = static_cast<long>(B), pw;
    for (const auto& [m, c] : f.terms()) {
        mpz_pow_ui(pw.get_mpz_t(), bz.get_mpz_t(), static_cast<unsigned long>(m.total_degree()));
        bound += abs(c) * pw;
    }
    static const mpz_class limit = mpz_class(1) << 60;
    return bound <= limit;
}

struct EnumResult {
    i64 count = 0;
    std::vector<std::vector<i64>> points;
};

template <typename Int>
EnumResult run_shards(const IntPolynomial& f, i64 B, bool projective, const CountOptions& opts,
                      const SieveTable* sieve) {
    int shards = std::max(1, opts.shards);
    bool collect = opts.collect_points != nullptr;
    i64 span = 2 * B + 1;
    i64 chunk = (span + shards - 1) / shards;

    std::vector<i64> counts(static_cast<std::size_t>(shards), 0);
    std::vector<std::vector<std::vector<i64>>> pts(static_cast<std::size_t>(shards));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(shards));

    auto work = [&](int s) {
        try {
            i64 lo = -B + static_cast<i64>(s) * chunk;
            i64 hi = std::min(B, lo + chunk - 1);
            if (lo > B) return;
            if (opts.engine == Engine::Brute) {
                BruteRunner<Int> r(to_eterms<Int>(f), f.arity(), B, projective, collect);
                counts[static_cast<std::size_t>(s)] = r.run(lo, hi);
                pts[static_cast<std::size_t>(s)] = std::move(r.points);
            } else {
                ShardRunner<Int> r(to_eterms<Int>(f), f.arity(), B, projective, sieve, collect);
                counts[static_cast<std::size_t>(s)] = r.run(lo, hi);
                pts[static_cast<std::size_t>(s)] = std::move(r.points);
            }
        } catch (...) {
            errors[static_cast<std::size_t>(s)] = std::current_exception();
        }
    };

    if (shards == 1) {
        work(0);
    } else {
        std::vector<std::thread> threads;
        threads.reserve(static_cast<std::size_t>(shards));
        for (int s = 0; s < shards; ++s) threads.emplace_back(work, s);
        for (auto& t : threads) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    EnumResult out;
    for (i64 c : counts) {
        if (!checked_add(out.count, c, out.count)) throw std::overflow_error("count overflow");
    }
    if (collect) {
        for (auto& p : pts)
            out.points.insert(out.points.end(), std::make_move_iterator(p.begin()),
                              std::make_move_iterator(p.end()));
        std::sort(out.points.begin(), out.points.end());
    }
    return out;
}

i64 run_enumeration(const IntPolynomial& f, i64 B, bool projective, const CountOptions& opts,
                    const char* who) {
    if (f.is_zero()) throw std::domain_error(std::string(who) + ": zero polynomial");
    if (B < 1) throw std::invalid_argument(std::string(who) + ": bound must be >= 1");
    if (f.arity() > kMaxEnumArity)
        throw std::invalid_argument(std::string(who) + ": arity above 8 is unsupported");
    if (projective) {
        if (!f.is_homogeneous()) {
            int d = f.degree();
            for (const auto& [m, c] : f.terms())
                if (m.total_degree() != d) {
                    IntPolynomial offender(f.arity());
                    offender.add_term(m, c);
                    std::ostringstream os;
                    os << who << ": form is not homogeneous; term " << to_string(offender)
                       << " has degree " << m.total_degree() << " but the form has degree " << d;
                    throw std::invalid_argument(os.str());
                }
        }
        if (f.degree() < 1)
            throw std::invalid_argument(std::string(who) + ": constant form has no projective zeros");
    }

    SieveTable table;
    const SieveTable* sieve = nullptr;
    if (opts.engine == Engine::Sieve) {
        i64 p = opts.sieve_prime.value_or(default_sieve_prime(B, std::max(1, f.degree())));
        if (p < 2) throw std::invalid_argument("sieve prime must be >= 2");
        while (to_mod_poly(f, p).is_zero()) p = static_cast<i64>(next_prime_at_least(static_cast<u64>(p) + 1));
        table = build_sieve_table(f, p, opts.mem_cap_bytes);
        sieve = &table;
    }

    EnumResult r = int64_certificate(f, B) ? run_shards<i64>(f, B, projective, opts, sieve)
                                           : run_shards<mpz_class>(f, B, projective, opts, sieve);
    if (opts.collect_points != nullptr) *opts.collect_points = std::move(r.points);
    return r.count;
}

}  // namespace

i64 count_affine(const IntPolynomial& f, i64 B, const CountOptions& opts) {
    return run_enumeration(f, B, false, opts, "count_affine");
}

i64 count_projective(const IntPolynomial& F, i64 B, const CountOptions& opts) {
    return run_enumeration(F, B, true, opts, "count_projective");
}

i64 count_affine_sieved(const IntPolynomial& f, i64 B, std::optional<i64> prime, int shards) {
    CountOptions opts;
    opts.engine = Engine::Sieve;
    opts.sieve_prime = prime;
    opts.shards = shards;
    return run_enumeration(f, B, false, opts, "count_affine_sieved");
}

i64 default_sieve_prime(i64 B, int degree) {
    return select_primes(std::max<i64>(B, 2), std::max(degree, 2), 1).front();
}

std::vector<i64> select_primes(i64 B, int d, int count) {
    if (B < 2 || d < 2 || count < 1) throw std::invalid_argument("select_primes: need B >= 2, d >= 2");
    long double threshold = expl(logl(static_cast<long double>(B)) / sqrtl(static_cast<long double>(d)));
    u64 start = static_cast<u64>(ceill(threshold * (1.0L - 1e-12L)));
    std::vector<i64> out;
    u64 p = next_prime_at_least(std::max<u64>(start, 2));
    while (static_cast<int>(out.size()) < count) {
        out.push_back(static_cast<i64>(p));
        p = next_prime_at_least(p + 1);
    }
    return out;
}

i64 count_curve_points(const IntPolynomial& g, i64 B) {
    if (g.arity() != 2) throw std::invalid_argument("count_curve_points: need exactly 2 variables");
    return count_affine(g, B);
}

ModPSummary count_mod_p(const IntPolynomial& F, i64 p, bool with_u_count) {
    if (!F.is_homogeneous() || F.is_zero())
        throw std::invalid_argument("count_mod_p: need a nonzero form");
    ModPoly fm = to_mod_poly(F, p);
    if (fm.is_zero()) throw std::domain_error("count_mod_p: reduction is identically zero");
    double reps = (std::pow(static_cast<double>(p), F.arity()) - 1) / (static_cast<double>(p) - 1);
    if (reps > static_cast<double>(i64(1) << 26))
        throw ResourceCapError("count_mod_p: projective scan too large at this prime");

    ModPEvaluator fe(fm);
    std::vector<ModPEvaluator> partials;
    for (int i = 0; i < F.arity(); ++i) partials.emplace_back(to_mod_poly(derivative(F, i), p));

    ModPSummary s;
    s.prime = p;
    for_each_projective_rep(p, F.arity(), [&](const std::vector<i64>& x) {
        if (fe.eval(x) != 0) return;
        ++s.projective_count;
        bool singular = true;
        for (const auto& d : partials)
            if (d.eval(x) != 0) {
                singular = false;
                break;
            }
        if (singular) {
            ++s.singular_count;
            return;
        }
        if (!with_u_count) return;
        TangentSection t = tangent_section_multiplicity(F, x, p);
        if (t.tangent_plane_in_surface)
            ++s.degenerate_tangent_count;
        else if (t.multiplicity <= 2)
            ++s.u_count;
    });
    s.affine_zero_count = s.projective_count * (p - 1) + 1;
    return s;
}

}  // namespace census
