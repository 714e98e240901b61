#pragma once

#include <vector>

#include "census/counting.hpp"
#include "census/intmath.hpp"
#include "census/poly.hpp"

namespace census {

struct RepCount {
    i64 N = 0;
    int d = 0;
    i64 r = 0;  // ordered positive triples with t1^d + t2^d + t3^d = N
};

struct EqualSumsTally {
    int s = 0;
    i64 B = 0;
    i64 total = 0;
    i64 trivial = 0;     // exact permutation-solution count
    i64 nontrivial = 0;  // total - trivial
};

struct RdBatch {
    std::vector<i64> r;  // r[N] for 0 <= N <= X (r[0] = 0)
    i64 max_r = 0;
    i64 argmax = 0;
};

/// Meet-in-the-middle count of ordered positive (t1,t2,t3) with
/// t1^d + t2^d + t3^d = N; the pair-sum table shards by value residue when
/// it would exceed the memory cap.
RepCount r_d(i64 N, int d, i64 mem_cap_bytes = i64(4) << 30);

RdBatch r_d_batch(i64 X, int d, i64 mem_cap_bytes = i64(4) << 30);

/// L_s(f;B) with its exact decomposition into permutation (trivial) and
/// nontrivial solutions. s = 2 uses the hashed pair-sum engine; s >= 3 falls
/// back to brute force and is guarded to small B.
EqualSumsTally equal_sums(const IntPolynomial& f, int s, i64 B, i64 mem_cap_bytes = i64(4) << 30);

/// Exact number of 2s-tuples over [1,B] whose second half is a permutation
/// of the first (2B^2 - B when s = 2).
i64 trivial_count(int s, i64 B);

}  // namespace census
