#pragma once

#include <array>
#include <functional>
#include <vector>

#include "census/intmath.hpp"
#include "census/poly.hpp"

namespace census {

inline constexpr int kMaxModArity = 8;
inline constexpr i64 kMaxModPrime = 32749;  // keeps per-term products in int64

/// Flat mod-p image of an IntPolynomial, coefficients in [0, p).
struct ModPoly {
    i64 p = 0;
    int arity = 0;
    int degree = 0;
    struct Term {
        std::array<std::uint8_t, kMaxModArity> e{};
        i64 c = 0;
    };
    std::vector<Term> terms;

    bool is_zero() const { return terms.empty(); }
};

ModPoly to_mod_poly(const IntPolynomial& f, i64 p);

/// Evaluator with per-variable power tables; points have entries in [0, p).
class ModPEvaluator {
public:
    explicit ModPEvaluator(const ModPoly& f);
    i64 eval(const std::vector<i64>& x) const;

private:
    const ModPoly f_;
    int stride_;
    std::vector<i64> pow_;  // pow_[v * stride_ + e] = v^e mod p
};

/// Visits the canonical projective representatives over F_p: leading
/// coordinate 1, earlier coordinates 0. (p^arity - 1)/(p - 1) points.
void for_each_projective_rep(i64 p, int arity, const std::function<void(const std::vector<i64>&)>& fn);

}  // namespace census
