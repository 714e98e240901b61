#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace census {

using i64 = std::int64_t;
using u64 = std::uint64_t;

/// gcd over int64, always non-negative; gcd(0,0) = 0.
i64 gcd_i64(i64 a, i64 b);

/// gcd of a coordinate vector (non-negative; 0 iff all entries are 0).
i64 gcd_all(const std::vector<i64>& v);
mpz_class gcd_all(const std::vector<mpz_class>& v);

bool is_primitive(const std::vector<i64>& v);

/// floor(sqrt(n)) for n >= 0.
i64 isqrt_i64(i64 n);

/// floor(|n|^(1/k)) with the sign of n; k >= 1, and k odd when n < 0.
i64 iroot_i64(i64 n, int k);

/// Exact k-th root: returns r with r^k == n if one exists.
std::optional<i64> exact_root_i64(i64 n, int k);
std::optional<mpz_class> exact_root(const mpz_class& n, int k);

/// n^k without overflow checks; caller guarantees the result fits.
i64 pow_i64(i64 base, unsigned exp);

/// Checked arithmetic: false on int64 overflow.
bool checked_add(i64 a, i64 b, i64& out);
bool checked_mul(i64 a, i64 b, i64& out);

bool fits_i64(const mpz_class& z);
i64 to_i64(const mpz_class& z);

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(u64 n);

/// Smallest prime >= n (n >= 0).
u64 next_prime_at_least(u64 n);

/// FNV-1a 64-bit over a byte string, used for output header spec hashes.
u64 fnv1a64(const std::string& bytes);
std::string fnv1a64_hex(const std::string& bytes);

inline constexpr const char* kToolVersion = "census 0.1.0";

}  // namespace census
