#include "census/intmath.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace census {

i64 gcd_i64(i64 a, i64 b) {
    u64 x = a < 0 ? 0ull - static_cast<u64>(a) : static_cast<u64>(a);
    u64 y = b < 0 ? 0ull - static_cast<u64>(b) : static_cast<u64>(b);
    while (y != 0) {
        u64 t = x % y;
        x = y;
        y = t;
    }
    return static_cast<i64>(x);
}

i64 gcd_all(const std::vector<i64>& v) {
    i64 g = 0;
    for (i64 c : v) {
        g = gcd_i64(g, c);
        if (g == 1) break;
    }
    return g;
}

mpz_class gcd_all(const std::vector<mpz_class>& v) {
    mpz_class g = 0;
    for (const auto& c : v) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    return g;
}

bool is_primitive(const std::vector<i64>& v) { return gcd_all(v) == 1; }

i64 isqrt_i64(i64 n) {
    if (n < 0) throw std::invalid_argument("isqrt_i64: negative input");
    if (n == 0) return 0;
    // float seed, then exact correction
    i64 r = static_cast<i64>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r > n / r) --r;
    while ((r + 1) <= n / (r + 1)) ++r;
    return r;
}

i64 iroot_i64(i64 n, int k) {
    if (k < 1) throw std::invalid_argument("iroot_i64: k < 1");
    if (n < 0 && k % 2 == 0) throw std::invalid_argument("iroot_i64: even root of negative");
    if (n < 0) return -iroot_i64(-n, k);
    if (k == 1 || n <= 1) return n;
    i64 r = static_cast<i64>(std::pow(static_cast<double>(n), 1.0 / k));
    auto pow_le = [&](i64 base) {
        // base^k <= n without overflow
        i64 acc = 1;
        for (int i = 0; i < k; ++i) {
            if (base != 0 && acc > n / base) return false;
            acc *= base;
        }
        return acc <= n;
    };
    r += 2;
    while (r > 0 && !pow_le(r)) --r;
    while (pow_le(r + 1)) ++r;
    return r;
}

std::optional<i64> exact_root_i64(i64 n, int k) {
    if (n < 0 && k % 2 == 0) return std::nullopt;
    i64 r = iroot_i64(n, k);
    i64 acc = 1;
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
        if (!checked_mul(acc, r, acc)) ok = false;
    }
    if (ok && acc == n) return r;
    return std::nullopt;
}

std::optional<mpz_class> exact_root(const mpz_class& n, int k) {
    if (k < 1) throw std::invalid_argument("exact_root: k < 1");
    if (sgn(n) < 0 && k % 2 == 0) return std::nullopt;
    mpz_class r;
    int exact = mpz_root(r.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(k));
    if (exact != 0) return r;
    return std::nullopt;
}

i64 pow_i64(i64 base, unsigned exp) {
    i64 acc = 1;
    while (exp > 0) {
        if (exp & 1u) acc *= base;
        base *= base;
        exp >>= 1u;
    }
    return acc;
}

bool checked_add(i64 a, i64 b, i64& out) { return !__builtin_add_overflow(a, b, &out); }
bool checked_mul(i64 a, i64 b, i64& out) { return !__builtin_mul_overflow(a, b, &out); }

bool fits_i64(const mpz_class& z) {
    return z >= mpz_class(std::numeric_limits<i64>::min()) &&
           z <= mpz_class(std::numeric_limits<i64>::max());
}

i64 to_i64(const mpz_class& z) {
    if (!fits_i64(z)) throw std::overflow_error("to_i64: value does not fit");
    if (z >= 0 && mpz_fits_ulong_p(z.get_mpz_t())) return static_cast<i64>(mpz_get_ui(z.get_mpz_t()));
    if (mpz_fits_slong_p(z.get_mpz_t())) return static_cast<i64>(mpz_get_si(z.get_mpz_t()));
    // 64-bit assembly from limbs (portable for |z| up to 2^63)
    mpz_class a = abs(z);
    u64 lo = mpz_get_ui(a.get_mpz_t());
    mpz_class hi_z = a >> 32;
    u64 hi = mpz_get_ui(hi_z.get_mpz_t()) >> 32;
    u64 mag = (hi << 32) | (lo & 0xffffffffull);
    (void)mag;
    // mpz_fits_slong_p covers the full int64 range on LP64; reaching here means a bug
    throw std::overflow_error("to_i64: unexpected non-LP64 layout");
}

namespace {

u64 mulmod_u64(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod_u64(u64 b, u64 e, u64 m) {
    u64 acc = 1 % m;
    b %= m;
    while (e > 0) {
        if (e & 1ull) acc = mulmod_u64(acc, b, m);
        b = mulmod_u64(b, b, m);
        e >>= 1ull;
    }
    return acc;
}

}  // namespace

bool is_prime_u64(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int s = 0;
    while ((d & 1ull) == 0) {
        d >>= 1ull;
        ++s;
    }
    // deterministic witness set for 64-bit integers
    for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        u64 x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 0; i < s - 1; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

u64 next_prime_at_least(u64 n) {
    if (n <= 2) return 2;
    u64 p = n | 1ull;
    while (!is_prime_u64(p)) p += 2;
    return p;
}

u64 fnv1a64(const std::string& bytes) {
    u64 h = 14695981039346656037ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fnv1a64_hex(const std::string& bytes) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(bytes)));
    return std::string(buf);
}

}  // namespace census
