#pragma once

#include <vector>

#include <gmpxx.h>

#include "census/intmath.hpp"

namespace census {

/// Dense exact integer matrix, sized for the small lattice work here
/// (completions, kernels, minors); not a general linear algebra library.
class IntMatrix {
public:
    IntMatrix(int rows, int cols);
    static IntMatrix identity(int n);
    static IntMatrix from_rows_i64(const std::vector<std::vector<i64>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    mpz_class& at(int r, int c) { return a_[static_cast<std::size_t>(r * cols_ + c)]; }
    const mpz_class& at(int r, int c) const { return a_[static_cast<std::size_t>(r * cols_ + c)]; }

    IntMatrix operator*(const IntMatrix& o) const;
    bool operator==(const IntMatrix& o) const = default;

    /// Fraction-free (Bareiss) determinant; square matrices only.
    mpz_class det() const;

    /// Exact inverse for |det| = 1 matrices (adjugate route).
    IntMatrix inverse_unimodular() const;

    std::vector<std::vector<i64>> to_rows_i64() const;

private:
    int rows_, cols_;
    std::vector<mpz_class> a_;
};

/// gcd of all maximal minors of a k x n matrix with k <= n; the rows extend
/// to a basis of Z^n exactly when this is 1.
mpz_class maximal_minor_gcd(const IntMatrix& m);

/// Completes a primitive direction to A in SL_n(Z) with first row equal to
/// the direction. Completion rows are chosen greedily by sup-norm with a
/// deterministic tie order, falling back to a Bezout construction with size
/// reduction if the bounded search runs dry.
IntMatrix unimodular_completion(const std::vector<i64>& direction, i64 entry_bound = 64);

/// Basis of the saturated integer kernel {x in Z^c : Mx = 0}.
std::vector<std::vector<mpz_class>> kernel_basis(const IntMatrix& m);

}  // namespace census
