#pragma once

#include <climits>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "census/intmath.hpp"

namespace census {

/// Exponent vector of one term; its length is the ambient arity.
struct Monomial {
    std::vector<std::uint32_t> e;

    Monomial() = default;
    explicit Monomial(std::size_t arity) : e(arity, 0) {}
    explicit Monomial(std::vector<std::uint32_t> exps) : e(std::move(exps)) {}

    int total_degree() const {
        long t = 0;
        for (auto x : e) t += x;
        return static_cast<int>(t);
    }
    bool operator==(const Monomial& o) const { return e == o.e; }
};

/// Canonical term order: graded lexicographic, leading term first
/// (higher total degree first, ties broken by larger exponent vector).
struct GrlexBefore {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.total_degree(), db = b.total_degree();
        if (da != db) return da > db;
        return a.e > b.e;
    }
};

struct LatticePoint {
    std::vector<mpz_class> coords;

    LatticePoint() = default;
    explicit LatticePoint(std::vector<mpz_class> c) : coords(std::move(c)) {}
    static LatticePoint from_i64(const std::vector<i64>& v) {
        LatticePoint p;
        p.coords.reserve(v.size());
        for (i64 x : v) p.coords.emplace_back(static_cast<long>(x));
        return p;
    }
    std::size_t arity() const { return coords.size(); }
};

/// Sparse multivariate polynomial with exact integer coefficients.
/// The zero polynomial is a first-class value (empty term map,
/// degree() == kDegreeNegInf).
class IntPolynomial {
public:
    using TermMap = std::map<Monomial, mpz_class, GrlexBefore>;
    static constexpr int kDegreeNegInf = INT_MIN;

    explicit IntPolynomial(int arity = 1);

    static IntPolynomial zero(int arity);
    static IntPolynomial constant(int arity, mpz_class c);
    static IntPolynomial variable(int arity, int index);

    /// Adds c * X^m into the polynomial, merging and dropping zeros.
    void add_term(const Monomial& m, const mpz_class& c);

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    int degree() const;
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    bool is_homogeneous() const;
    /// Leading term in the canonical order; throws on the zero polynomial.
    const std::pair<const Monomial, mpz_class>& leading_term() const;

    bool operator==(const IntPolynomial& o) const {
        return arity_ == o.arity_ && terms_ == o.terms_;
    }

    IntPolynomial operator-() const;
    IntPolynomial operator+(const IntPolynomial& o) const;
    IntPolynomial operator-(const IntPolynomial& o) const;
    IntPolynomial operator*(const IntPolynomial& o) const;
    IntPolynomial operator*(const mpz_class& c) const;

    /// Exact evaluation; int64 fast path with checked arithmetic and
    /// transparent promotion to arbitrary precision.
    mpz_class evaluate(const LatticePoint& x) const;
    mpz_class evaluate(const std::vector<i64>& x) const;

private:
    int arity_;
    TermMap terms_;
};

IntPolynomial homogenize(const IntPolynomial& f, int delta);
IntPolynomial slice(const IntPolynomial& F, int var_index, const mpz_class& value);
mpz_class content(const IntPolynomial& p);
IntPolynomial primitive_part(const IntPolynomial& p);
mpz_class height(const IntPolynomial& p);
std::vector<IntPolynomial> gradient(const IntPolynomial& p);
IntPolynomial reduce_mod_p(const IntPolynomial& p, i64 prime);
IntPolynomial derivative(const IntPolynomial& p, int var_index);

/// f(r_0, ..., r_{arity-1}) where each r_i is a polynomial in a common
/// target ring; all r_i must share one arity.
IntPolynomial substitute(const IntPolynomial& f, const std::vector<IntPolynomial>& repl);

enum class VarStyle { X, T };

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t position)
        : std::runtime_error(msg), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

/// Text grammar: variables x0..x9 or t1..t9, integer coefficients,
/// '^' powers, '*' optional. Arity is inferred from the highest variable
/// (and at least min_arity).
IntPolynomial parse_polynomial(const std::string& text, int min_arity = 0);
std::string to_string(const IntPolynomial& p, VarStyle style = VarStyle::X);

}  // namespace census
