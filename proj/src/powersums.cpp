#include "census/powersums.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace census {

namespace {

/// Sorted (value, multiplicity) table of two-term power sums t1^d + t2^d
/// over ordered pairs, restricted to sums <= limit and, when sharded,
/// to sums with value % shards == shard.
std::vector<std::pair<i64, i64>> pair_sum_table(const std::vector<i64>& powers, i64 limit,
                                                i64 shards, i64 shard) {
    std::vector<std::pair<i64, i64>> raw;
    std::size_t T = powers.size() - 1;  // powers[t] = t^d, t in [1, T]
    for (std::size_t t1 = 1; t1 <= T; ++t1) {
        i64 p1 = powers[t1];
        if (p1 + 1 > limit) break;
        for (std::size_t t2 = t1; t2 <= T; ++t2) {
            i64 s = p1 + powers[t2];
            if (s > limit) break;
            if (shards > 1 && s % shards != shard) continue;
            raw.emplace_back(s, t1 == t2 ? 1 : 2);
        }
    }
    std::sort(raw.begin(), raw.end());
    std::vector<std::pair<i64, i64>> merged;
    for (const auto& [v, m] : raw) {
        if (!merged.empty() && merged.back().first == v)
            merged.back().second += m;
        else
            merged.emplace_back(v, m);
    }
    return merged;
}

std::vector<i64> power_list(i64 X, int d) {
    std::vector<i64> powers{0};
    for (i64 t = 1;; ++t) {
        i64 acc = 1;
        bool ok = true;
        for (int i = 0; i < d && ok; ++i) ok = checked_mul(acc, t, acc);
        if (!ok || acc > X) break;
        powers.push_back(acc);
    }
    return powers;
}

i64 lookup(const std::vector<std::pair<i64, i64>>& table, i64 value) {
    auto it = std::lower_bound(table.begin(), table.end(), std::make_pair(value, i64(0)));
    if (it != table.end() && it->first == value) return it->second;
    return 0;
}

i64 pair_shard_count(i64 T, i64 mem_cap_bytes) {
    i64 entries = T * (T + 1) / 2;
    i64 bytes = entries * 16;
    i64 shards = bytes / std::max<i64>(mem_cap_bytes, 1) + 1;
    return std::max<i64>(shards, 1);
}

}  // namespace

RepCount r_d(i64 N, int d, i64 mem_cap_bytes) {
    if (N < 1 || d < 2) throw std::invalid_argument("r_d: need N >= 1 and d >= 2");
    RepCount out;
    out.N = N;
    out.d = d;
    std::vector<i64> powers = power_list(N, d);
    i64 T = static_cast<i64>(powers.size()) - 1;
    if (T == 0) return out;
    i64 shards = pair_shard_count(T, mem_cap_bytes);
    for (i64 shard = 0; shard < shards; ++shard) {
        auto table = pair_sum_table(powers, N - 1, shards, shard);
        for (i64 t3 = 1; t3 <= T; ++t3) {
            i64 need = N - powers[static_cast<std::size_t>(t3)];
            if (need < 2) continue;
            if (shards > 1 && need % shards != shard) continue;
            out.r += lookup(table, need);
        }
    }
    return out;
}

RdBatch r_d_batch(i64 X, int d, i64 mem_cap_bytes) {
    if (X < 1 || d < 2) throw std::invalid_argument("r_d_batch: need X >= 1 and d >= 2");
    i64 result_bytes = (X + 1) * static_cast<i64>(sizeof(i64));
    if (result_bytes > mem_cap_bytes)
        throw ResourceCapError("r_d_batch: result vector exceeds the memory cap");
    RdBatch out;
    out.r.assign(static_cast<std::size_t>(X) + 1, 0);
    std::vector<i64> powers = power_list(X, d);
    i64 T = static_cast<i64>(powers.size()) - 1;
    if (T == 0) return out;
    i64 shards = pair_shard_count(T, mem_cap_bytes - result_bytes > 0 ? mem_cap_bytes - result_bytes : 1);
    for (i64 shard = 0; shard < shards; ++shard) {
        auto table = pair_sum_table(powers, X - 1, shards, shard);
        for (i64 t3 = 1; t3 <= T; ++t3) {
            i64 p3 = powers[static_cast<std::size_t>(t3)];
            for (const auto& [v, m] : table) {
                i64 s = v + p3;
                if (s > X) break;
                out.r[static_cast<std::size_t>(s)] += m;
            }
        }
    }
    for (i64 n = 1; n <= X; ++n) {
        if (out.r[static_cast<std::size_t>(n)] > out.max_r) {
            out.max_r = out.r[static_cast<std::size_t>(n)];
            out.argmax = n;
        }
    }
    return out;
}

namespace {

i64 factorial(int s) {
    i64 f = 1;
    for (int i = 2; i <= s; ++i) f *= i;
    return f;
}

/// total and trivial for s >= 3 by direct enumeration of 2s-tuples.
EqualSumsTally equal_sums_brute(const std::vector<mpz_class>& values, int s, i64 B) {
    double tuples = std::pow(static_cast<double>(B), 2.0 * s);
    if (tuples > 2e8)
        throw ResourceCapError("equal_sums: brute-force s >= 3 engine limited to B^(2s) <= 2e8");
    EqualSumsTally out;
    out.s = s;
    out.B = B;
    std::vector<i64> x(static_cast<std::size_t>(2 * s), 1);
    std::vector<i64> left(static_cast<std::size_t>(s)), right(static_cast<std::size_t>(s));
    for (;;) {
        mpz_class lhs = 0, rhs = 0;
        for (int i = 0; i < s; ++i) lhs += values[static_cast<std::size_t>(x[static_cast<std::size_t>(i)])];
        for (int i = s; i < 2 * s; ++i) rhs += values[static_cast<std::size_t>(x[static_cast<std::size_t>(i)])];
        if (lhs == rhs) {
            ++out.total;
            for (int i = 0; i < s; ++i) {
                left[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
                right[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i + s)];
            }
            std::sort(left.begin(), left.end());
            std::sort(right.begin(), right.end());
            if (left == right) ++out.trivial;
        }
        int i = 2 * s - 1;
        while (i >= 0 && x[static_cast<std::size_t>(i)] == B) {
            x[static_cast<std::size_t>(i)] = 1;
            --i;
        }
        if (i < 0) break;
        ++x[static_cast<std::size_t>(i)];
    }
    out.nontrivial = out.total - out.trivial;
    return out;
}

}  // namespace

EqualSumsTally equal_sums(const IntPolynomial& f, int s, i64 B, i64 mem_cap_bytes) {
    if (s < 2) throw std::invalid_argument("equal_sums: need s >= 2");
    if (f.arity() != 1) throw std::invalid_argument("equal_sums: polynomial must be univariate");
    if (f.is_zero()) throw std::domain_error("equal_sums: zero polynomial");
    if (B < 1) throw std::invalid_argument("equal_sums: need B >= 1");

    std::vector<mpz_class> values(static_cast<std::size_t>(B) + 1);
    for (i64 x = 1; x <= B; ++x) values[static_cast<std::size_t>(x)] = f.evaluate(std::vector<i64>{x});

    if (s >= 3) return equal_sums_brute(values, s, B);

    EqualSumsTally out;
    out.s = 2;
    out.B = B;
    bool small = std::all_of(values.begin() + 1, values.end(), [](const mpz_class& v) {
        return fits_i64(v) && abs(v) < (mpz_class(1) << 61);
    });

    i64 pair_count = B * B;
    i64 shards = (pair_count * 16) / std::max<i64>(mem_cap_bytes, 1) + 1;

    if (small) {
        std::vector<i64> v(static_cast<std::size_t>(B) + 1);
        for (i64 x = 1; x <= B; ++x) v[static_cast<std::size_t>(x)] = to_i64(values[static_cast<std::size_t>(x)]);
        for (i64 shard = 0; shard < shards; ++shard) {
            std::vector<i64> sums;
            for (i64 a = 1; a <= B; ++a)
                for (i64 b = 1; b <= B; ++b) {
                    i64 sv = v[static_cast<std::size_t>(a)] + v[static_cast<std::size_t>(b)];
                    i64 res = sv % shards;
                    if (res < 0) res += shards;
                    if (shards > 1 && res != shard) continue;
                    sums.push_back(sv);
                }
            std::sort(sums.begin(), sums.end());
            for (std::size_t i = 0; i < sums.size();) {
                std::size_t j = i;
                while (j < sums.size() && sums[j] == sums[i]) ++j;
                i64 mult = static_cast<i64>(j - i);
                out.total += mult * mult;
                i = j;
            }
        }
    } else {
        for (i64 shard = 0; shard < shards; ++shard) {
            std::vector<mpz_class> sums;
            mpz_class sv, res;
            for (i64 a = 1; a <= B; ++a)
                for (i64 b = 1; b <= B; ++b) {
                    sv = values[static_cast<std::size_t>(a)] + values[static_cast<std::size_t>(b)];
                    if (shards > 1) {
                        mpz_class m = static_cast<long>(shards);
                        mpz_mod(res.get_mpz_t(), sv.get_mpz_t(), m.get_mpz_t());
                        if (res != shard) continue;
                    }
                    sums.push_back(sv);
                }
            std::sort(sums.begin(), sums.end());
            for (std::size_t i = 0; i < sums.size();) {
                std::size_t j = i;
                while (j < sums.size() && sums[j] == sums[i]) ++j;
                i64 mult = static_cast<i64>(j - i);
                out.total += mult * mult;
                i = j;
            }
        }
    }
    out.trivial = trivial_count(2, B);
    out.nontrivial = out.total - out.trivial;
    return out;
}

i64 trivial_count(int s, i64 B) {
    if (s < 2 || B < 1) throw std::invalid_argument("trivial_count: need s >= 2 and B >= 1");
    if (s == 2) return 2 * B * B - B;
    // enumerate multisets of size s over [1, B]; each contributes
    // (number of orderings)^2 tuples
    i64 total = 0;
    std::vector<i64> pick(static_cast<std::size_t>(s), 1);  // nondecreasing
    i64 s_fact = factorial(s);
    for (;;) {
        i64 orderings = s_fact;
        i64 run = 1;
        for (int i = 1; i < s; ++i) {
            if (pick[static_cast<std::size_t>(i)] == pick[static_cast<std::size_t>(i - 1)]) {
                ++run;
                orderings /= run;  // divide by run! incrementally
            } else {
                run = 1;
            }
        }
        total += orderings * orderings;
        int i = s - 1;
        while (i >= 0 && pick[static_cast<std::size_t>(i)] == B) --i;
        if (i < 0) break;
        ++pick[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < s; ++j) pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(i)];
        if (total > (i64(1) << 62)) throw std::overflow_error("trivial_count overflow");
    }
    return total;
}

}  // namespace census
