#include "census/intmatrix.hpp"

#include <algorithm>
#include <stdexcept>

namespace census {

IntMatrix::IntMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("IntMatrix: bad dimensions");
    a_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), mpz_class(0));
}

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::from_rows_i64(const std::vector<std::vector<i64>>& rows) {
    if (rows.empty()) throw std::invalid_argument("from_rows_i64: empty");
    IntMatrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (int r = 0; r < m.rows(); ++r) {
        if (rows[static_cast<std::size_t>(r)].size() != static_cast<std::size_t>(m.cols()))
            throw std::invalid_argument("from_rows_i64: ragged rows");
        for (int c = 0; c < m.cols(); ++c)
            m.at(r, c) = static_cast<long>(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
    }
    return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("operator*: shape mismatch");
    IntMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const mpz_class& aik = at(i, k);
            if (aik == 0) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += aik * o.at(k, j);
        }
    return r;
}

mpz_class IntMatrix::det() const {
    if (rows_ != cols_) throw std::invalid_argument("det: non-square");
    int n = rows_;
    IntMatrix w = *this;
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k + 1 < n; ++k) {
        if (w.at(k, k) == 0) {
            int swap_row = -1;
            for (int r = k + 1; r < n; ++r)
                if (w.at(r, k) != 0) {
                    swap_row = r;
                    break;
                }
            if (swap_row < 0) return 0;
            for (int c = 0; c < n; ++c) std::swap(w.at(k, c), w.at(swap_row, c));
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) {
                mpz_class num = w.at(i, j) * w.at(k, k) - w.at(i, k) * w.at(k, j);
                mpz_divexact(w.at(i, j).get_mpz_t(), num.get_mpz_t(), prev.get_mpz_t());
            }
            w.at(i, k) = 0;
        }
        prev = w.at(k, k);
    }
    return sign > 0 ? w.at(n - 1, n - 1) : mpz_class(-w.at(n - 1, n - 1));
}

namespace {

mpz_class minor_det(const IntMatrix& m, const std::vector<int>& rows, const std::vector<int>& cols) {
    int k = static_cast<int>(rows.size());
    IntMatrix sub(k, k);
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
            sub.at(i, j) = m.at(rows[static_cast<std::size_t>(i)], cols[static_cast<std::size_t>(j)]);
    return sub.det();
}

void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (;;) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

}  // namespace

IntMatrix IntMatrix::inverse_unimodular() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse_unimodular: non-square");
    mpz_class d = det();
    if (d != 1 && d != -1) throw std::invalid_argument("inverse_unimodular: determinant not +-1");
    int n = rows_;
    IntMatrix inv(n, n);
    if (n == 1) {
        inv.at(0, 0) = d;
        return inv;
    }
    std::vector<int> all_rows, all_cols;
    for (int i = 0; i < n; ++i) all_rows.push_back(i);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            std::vector<int> rs, cs;
            for (int r = 0; r < n; ++r)
                if (r != j) rs.push_back(r);
            for (int c = 0; c < n; ++c)
                if (c != i) cs.push_back(c);
            mpz_class cof = minor_det(*this, rs, cs);
            if ((i + j) % 2 != 0) cof = -cof;
            inv.at(i, j) = cof * d;  // adj / det with det = +-1
        }
    }
    return inv;
}

std::vector<std::vector<i64>> IntMatrix::to_rows_i64() const {
    std::vector<std::vector<i64>> out(static_cast<std::size_t>(rows_));
    for (int r = 0; r < rows_; ++r) {
        out[static_cast<std::size_t>(r)].resize(static_cast<std::size_t>(cols_));
        for (int c = 0; c < cols_; ++c) {
            if (!fits_i64(at(r, c))) throw std::overflow_error("to_rows_i64: entry too large");
            out[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] = to_i64(at(r, c));
        }
    }
    return out;
}

mpz_class maximal_minor_gcd(const IntMatrix& m) {
    int k = m.rows(), n = m.cols();
    if (k > n) throw std::invalid_argument("maximal_minor_gcd: more rows than columns");
    std::vector<int> rs;
    for (int i = 0; i < k; ++i) rs.push_back(i);
    mpz_class g = 0;
    for_each_combination(n, k, [&](const std::vector<int>& cols) {
        if (g == 1) return;
        mpz_class d = minor_det(m, rs, cols);
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    });
    return g;
}

namespace {

/// Deterministic candidate order for completion rows: sup-norm ascending,
/// then fewer nonzeros, then positive entries in earlier positions first.
struct CandidateKey {
    int norm;
    int nnz;
    std::vector<std::pair<int, i64>> entry_keys;  // (sign class, |e|)
};

CandidateKey key_of(const std::vector<i64>& v) {
    CandidateKey k;
    k.norm = 0;
    k.nnz = 0;
    for (i64 e : v) {
        k.norm = std::max<int>(k.norm, static_cast<int>(std::abs(e)));
        if (e != 0) ++k.nnz;
        int sc = e > 0 ? 0 : (e == 0 ? 1 : 2);
        k.entry_keys.emplace_back(sc, std::abs(e));
    }
    return k;
}

bool key_less(const CandidateKey& a, const CandidateKey& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    if (a.nnz != b.nnz) return a.nnz < b.nnz;
    return a.entry_keys < b.entry_keys;
}

std::vector<std::vector<i64>> candidates_with_norm(int nu, int norm) {
    std::vector<std::vector<i64>> out;
    std::vector<i64> v(static_cast<std::size_t>(nu), -norm);
    for (;;) {
        bool has_max = false;
        for (i64 e : v)
            if (std::abs(e) == norm) has_max = true;
        if (has_max) out.push_back(v);
        int i = nu - 1;
        while (i >= 0 && v[static_cast<std::size_t>(i)] == norm) {
            v[static_cast<std::size_t>(i)] = -norm;
            --i;
        }
        if (i < 0) break;
        ++v[static_cast<std::size_t>(i)];
    }
    std::sort(out.begin(), out.end(), [](const std::vector<i64>& x, const std::vector<i64>& y) {
        return key_less(key_of(x), key_of(y));
    });
    return out;
}

mpz_class rounded_div(const mpz_class& a, const mpz_class& b) {
    // nearest integer to a/b, b > 0
    mpz_class num = 2 * a + b, den = 2 * b, q;
    mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return q;
}

}  // namespace

IntMatrix unimodular_completion(const std::vector<i64>& direction, i64 entry_bound) {
    int nu = static_cast<int>(direction.size());
    if (nu < 1) throw std::invalid_argument("unimodular_completion: empty direction");
    if (gcd_all(direction) != 1)
        throw std::invalid_argument("unimodular_completion: direction not primitive");
    if (nu == 1) {
        if (direction[0] != 1)
            throw std::invalid_argument("unimodular_completion: 1-d direction must be (1)");
        return IntMatrix::identity(1);
    }

    std::vector<std::vector<i64>> rows{direction};
    auto stacked = [&](const std::vector<i64>& extra) {
        std::vector<std::vector<i64>> all = rows;
        all.push_back(extra);
        return IntMatrix::from_rows_i64(all);
    };

    // rows 2..nu-1: greedily smallest row keeping the stack extendable
    for (int r = 2; r < nu; ++r) {
        bool found = false;
        for (int norm = 1; norm <= 3 && !found; ++norm) {
            for (const auto& cand : candidates_with_norm(nu, norm)) {
                if (maximal_minor_gcd(stacked(cand)) == 1) {
                    rows.push_back(cand);
                    found = true;
                    break;
                }
            }
        }
        if (!found)
            throw std::runtime_error("unimodular_completion: no small extendable row found");
    }

    // final row: exact determinant +1
    int final_cap = static_cast<int>(std::min<i64>(entry_bound, 4));
    for (int norm = 1; norm <= final_cap; ++norm) {
        for (const auto& cand : candidates_with_norm(nu, norm)) {
            IntMatrix a = stacked(cand);
            if (a.det() == 1) return a;
        }
    }

    // Bezout fallback: det([rows; w]) is linear in w with cofactor coefficients
    std::vector<mpz_class> cof(static_cast<std::size_t>(nu));
    for (int j = 0; j < nu; ++j) {
        std::vector<i64> ej(static_cast<std::size_t>(nu), 0);
        ej[static_cast<std::size_t>(j)] = 1;
        cof[static_cast<std::size_t>(j)] = stacked(ej).det();
    }
    // fold extended gcd over the cofactors
    mpz_class g = cof[0];
    std::vector<mpz_class> w(static_cast<std::size_t>(nu), 0);
    w[0] = 1;
    for (int j = 1; j < nu; ++j) {
        mpz_class s, t, g2;
        mpz_gcdext(g2.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(),
                   cof[static_cast<std::size_t>(j)].get_mpz_t());
        for (int i = 0; i < j; ++i) w[static_cast<std::size_t>(i)] *= s;
        w[static_cast<std::size_t>(j)] = t;
        g = g2;
    }
    if (g == -1) {
        for (auto& x : w) x = -x;
        g = 1;
    }
    if (g != 1) throw std::runtime_error("unimodular_completion: rows not extendable");
    // size-reduce w against the chosen rows
    for (int pass = 0; pass < 4; ++pass) {
        for (const auto& row : rows) {
            mpz_class dot = 0, norm2 = 0;
            for (int j = 0; j < nu; ++j) {
                dot += w[static_cast<std::size_t>(j)] * row[static_cast<std::size_t>(j)];
                norm2 += mpz_class(static_cast<long>(row[static_cast<std::size_t>(j)])) *
                         static_cast<long>(row[static_cast<std::size_t>(j)]);
            }
            mpz_class q = rounded_div(dot, norm2);
            if (q == 0) continue;
            for (int j = 0; j < nu; ++j)
                w[static_cast<std::size_t>(j)] -= q * static_cast<long>(row[static_cast<std::size_t>(j)]);
        }
    }
    std::vector<i64> wr(static_cast<std::size_t>(nu));
    for (int j = 0; j < nu; ++j) {
        if (!fits_i64(w[static_cast<std::size_t>(j)]))
            throw std::runtime_error("unimodular_completion: reduced row still too large");
        wr[static_cast<std::size_t>(j)] = to_i64(w[static_cast<std::size_t>(j)]);
    }
    IntMatrix a = stacked(wr);
    if (a.det() != 1) throw std::logic_error("unimodular_completion: internal determinant error");
    return a;
}

std::vector<std::vector<mpz_class>> kernel_basis(const IntMatrix& m) {
    int r = m.rows(), c = m.cols();
    IntMatrix w = m;
    IntMatrix u = IntMatrix::identity(c);
    int rank = 0;
    for (int row = 0; row < r && rank < c; ++row) {
        for (;;) {
            int best = -1;
            for (int j = rank; j < c; ++j) {
                if (w.at(row, j) == 0) continue;
                if (best < 0 || abs(w.at(row, j)) < abs(w.at(row, best))) best = j;
            }
            if (best < 0) break;
            if (best != rank)
                for (int i = 0; i < r; ++i) std::swap(w.at(i, best), w.at(i, rank));
            if (best != rank)
                for (int i = 0; i < c; ++i) std::swap(u.at(i, best), u.at(i, rank));
            bool cleared = true;
            for (int j = rank + 1; j < c; ++j) {
                if (w.at(row, j) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), w.at(row, j).get_mpz_t(), w.at(row, rank).get_mpz_t());
                if (q != 0) {
                    for (int i = 0; i < r; ++i) w.at(i, j) -= q * w.at(i, rank);
                    for (int i = 0; i < c; ++i) u.at(i, j) -= q * u.at(i, rank);
                }
                if (w.at(row, j) != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (w.at(row, rank) != 0) ++rank;
    }
    std::vector<std::vector<mpz_class>> basis;
    for (int j = rank; j < c; ++j) {
        std::vector<mpz_class> v(static_cast<std::size_t>(c));
        for (int i = 0; i < c; ++i) v[static_cast<std::size_t>(i)] = u.at(i, j);
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace census
