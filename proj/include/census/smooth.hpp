#pragma once

#include <optional>
#include <vector>

#include "census/intmatrix.hpp"
#include "census/poly.hpp"

namespace census {

enum class SmoothStatus {
    CertifiedSmoothDiagonal,
    NoSingularPointsModPList,
    SingularWithWitness,
};

struct SmoothnessVerdict {
    SmoothStatus status;
    /// Exact projective integer points with F = 0 and grad F = 0 (re-checkable
    /// by evaluation); present for SingularWithWitness found over Q.
    std::vector<std::vector<i64>> rational_witnesses;
    /// (prime, point) pairs for evidence primes whose reduction has singular
    /// points; verifiable by evaluation mod p.
    std::vector<std::pair<i64, std::vector<i64>>> modp_witnesses;
    /// Evidence primes with nonzero reduction and an empty singular locus.
    std::vector<i64> primes_checked;

    bool passes() const { return status != SmoothStatus::SingularWithWitness; }
};

struct SmoothOptions {
    std::vector<i64> evidence_primes{3, 5, 7, 11, 13};
    i64 witness_box_radius = 2;
    i64 modp_scan_cap = 101;
};

/// All projective F_p-points where F and every partial derivative vanish;
/// empty result = smooth reduction. Throws if the reduction is identically
/// zero or p exceeds the exhaustive-scan cap.
std::vector<std::vector<i64>> find_singular_points_mod_p(const IntPolynomial& F, i64 p,
                                                         i64 scan_cap = 101);

/// How to read the input polynomial. Affine polynomials are judged through
/// their projective model (homogenization at their own degree); this matters
/// even for inputs that happen to be homogeneous, whose affine closure is a
/// cone. Auto treats homogeneous inputs as projective forms.
enum class VarietyKind { Auto, Affine, Projective };

SmoothnessVerdict smoothness_verdict(const IntPolynomial& f, const SmoothOptions& opts = {},
                                     VarietyKind kind = VarietyKind::Auto);

struct TangentSection {
    int multiplicity = 0;
    /// Tangent plane contained in the surface; multiplicity is then undefined
    /// and the point is excluded from U.
    bool tangent_plane_in_surface = false;
};

/// Multiplicity of a smooth point of {F = 0} on the plane curve cut by its
/// tangent plane, computed by moving the point to the origin of coordinates
/// inside the plane and reading off the lowest nonvanishing part.
/// p = 0 works over Q; p > 0 over F_p. Throws on singular points.
TangentSection tangent_section_multiplicity(const IntPolynomial& F, const std::vector<i64>& point,
                                            i64 p = 0);

struct BadSliceValue {
    i64 kappa;
    enum class Reason { DegreeDrop, Singular, Vanishes } reason;
};

struct SliceReport {
    std::vector<i64> direction;
    std::vector<std::vector<i64>> completion;  // det exactly 1, first row = direction
    i64 good_value = 0;
    std::vector<BadSliceValue> bad_values;
    /// Directions scanned before the winner that admitted no integral good k.
    std::vector<std::vector<i64>> exhausted_directions;
};

/// The polynomial f(A^{-1} S) whose S_1 = kappa slice realizes the hyperplane
/// section {a . t = kappa} of f, where A completes the direction a.
IntPolynomial transformed_polynomial(const IntPolynomial& f, const IntMatrix& completion);
IntPolynomial directional_slice(const IntPolynomial& f, const IntMatrix& completion, i64 kappa);

/// Constructive good-slice search: first (direction, k) in a deterministic
/// sup-norm order whose slice keeps the degree and passes the smoothness
/// evidence. Directions extend past `radius` by doubling, capped at 64.
SliceReport good_slice_search(const IntPolynomial& f, i64 radius = 8,
                              bool override_smoothness_gate = false,
                              const SmoothOptions& opts = {});

std::vector<BadSliceValue> bad_slice_values(const IntPolynomial& f, const std::vector<i64>& direction,
                                            i64 range_bound, const SmoothOptions& opts = {});

}  // namespace census
