#pragma once

#include <optional>
#include <string>
#include <vector>

#include "census/intmath.hpp"
#include "census/poly.hpp"

namespace census {

enum class Engine { Brute, Slice, Sieve };

struct PointRecord {
    std::vector<i64> coords;
    bool primitive = false;
    bool on_detected_line = false;
};

struct ModPSummary {
    i64 prime = 0;
    i64 affine_zero_count = 0;  // includes the origin
    i64 projective_count = 0;   // #X_p(F_p)
    i64 u_count = 0;            // #U_p(F_p)
    i64 singular_count = 0;
    i64 degenerate_tangent_count = 0;  // tangent plane contained in X_p
};

struct CountSeries {
    std::string experiment_id;
    std::vector<std::pair<i64, i64>> points;  // (B, count), strictly increasing B
};

class ResourceCapError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CountOptions {
    Engine engine = Engine::Slice;
    int shards = 1;
    std::optional<i64> sieve_prime;
    i64 mem_cap_bytes = i64(4) << 30;
    /// When set, receives every counted point in canonical (lexicographic)
    /// order, independent of engine and shard plan.
    std::vector<std::vector<i64>>* collect_points = nullptr;
};

/// M(f;B): integer points t with max|t_i| <= B and f(t) = 0.
i64 count_affine(const IntPolynomial& f, i64 B, const CountOptions& opts = {});

/// N(F;B): primitive integer vectors (both signs) with sup-norm <= B on the
/// projective hypersurface F = 0; the zero vector is excluded.
i64 count_projective(const IntPolynomial& F, i64 B, const CountOptions& opts = {});

/// Same value as count_affine; the mod-p sieve is a pure acceleration.
i64 count_affine_sieved(const IntPolynomial& f, i64 B, std::optional<i64> prime = std::nullopt,
                        int shards = 1);

/// Smallest prime >= B^(1/sqrt(degree)).
i64 default_sieve_prime(i64 B, int degree);

/// The `count` smallest primes >= B^(1/sqrt(d)), deterministically tested.
std::vector<i64> select_primes(i64 B, int d, int count);

/// Exact count of integer points on the plane curve g = 0 with sup-norm <= B.
i64 count_curve_points(const IntPolynomial& g, i64 B);

/// Exhaustive mod-p census of a form: affine zeros, projective points, and
/// the subset U_p of smooth points with tangent-section multiplicity <= 2.
ModPSummary count_mod_p(const IntPolynomial& F, i64 p, bool with_u_count = true);

}  // namespace census
