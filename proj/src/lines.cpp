#include "census/lines.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <stdexcept>

#include "census/intmatrix.hpp"

namespace census {

namespace {

/// Unique Hermite form of the row lattice: pivots positive, entries above a
/// pivot reduced into [0, pivot).
IntMatrix row_hnf(IntMatrix m) {
    int r = m.rows(), c = m.cols();
    int row = 0;
    for (int col = 0; col < c && row < r; ++col) {
        for (;;) {
            int best = -1;
            for (int i = row; i < r; ++i) {
                if (m.at(i, col) == 0) continue;
                if (best < 0 || abs(m.at(i, col)) < abs(m.at(best, col))) best = i;
            }
            if (best < 0) break;
            if (best != row)
                for (int j = 0; j < c; ++j) std::swap(m.at(row, j), m.at(best, j));
            bool cleared = true;
            for (int i = row + 1; i < r; ++i) {
                if (m.at(i, col) == 0) continue;
                mpz_class q;
                mpz_fdiv_q(q.get_mpz_t(), m.at(i, col).get_mpz_t(), m.at(row, col).get_mpz_t());
                for (int j = 0; j < c; ++j) m.at(i, j) -= q * m.at(row, j);
                if (m.at(i, col) != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (m.at(row, col) == 0) continue;
        if (m.at(row, col) < 0)
            for (int j = 0; j < c; ++j) m.at(row, j) = -m.at(row, j);
        for (int i = 0; i < row; ++i) {
            mpz_class q;
            mpz_fdiv_q(q.get_mpz_t(), m.at(i, col).get_mpz_t(), m.at(row, col).get_mpz_t());
            if (q != 0)
                for (int j = 0; j < c; ++j) m.at(i, j) -= q * m.at(row, j);
        }
        ++row;
    }
    return m;
}

std::array<mpz_class, 6> primitive_pluecker(const std::vector<i64>& p, const std::vector<i64>& q) {
    std::array<mpz_class, 6> pl;
    int idx = 0;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            pl[static_cast<std::size_t>(idx++)] =
                mpz_class(static_cast<long>(p[static_cast<std::size_t>(i)])) * q[static_cast<std::size_t>(j)] -
                mpz_class(static_cast<long>(p[static_cast<std::size_t>(j)])) * q[static_cast<std::size_t>(i)];
        }
    mpz_class g = 0;
    for (const auto& v : pl) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 0) throw std::invalid_argument("pluecker: points are proportional");
    int sign = 0;
    for (auto& v : pl) {
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
        if (sign == 0 && v != 0) sign = sgn(v);
    }
    if (sign < 0)
        for (auto& v : pl) v = -v;
    return pl;
}

/// Canonical basis of the saturated lattice of the line spanned by p and q:
/// kernel of the kernel, then Hermite-reduced.
std::array<std::vector<i64>, 2> saturated_basis(const std::vector<i64>& p, const std::vector<i64>& q) {
    IntMatrix span = IntMatrix::from_rows_i64({p, q});
    auto ortho = kernel_basis(span);  // basis of {y : p.y = q.y = 0}
    if (ortho.size() != 2) throw std::logic_error("saturated_basis: unexpected kernel dimension");
    IntMatrix w(2, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 4; ++j)
            w.at(i, j) = ortho[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    auto lattice = kernel_basis(w);
    if (lattice.size() != 2) throw std::logic_error("saturated_basis: line lattice not rank 2");
    IntMatrix l(2, 4);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 4; ++j)
            l.at(i, j) = lattice[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    IntMatrix h = row_hnf(l);
    auto rows = h.to_rows_i64();
    return {rows[0], rows[1]};
}

bool proportional(const std::vector<i64>& p, const std::vector<i64>& q) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) {
            __int128 m = static_cast<__int128>(p[static_cast<std::size_t>(i)]) * q[static_cast<std::size_t>(j)] -
                         static_cast<__int128>(p[static_cast<std::size_t>(j)]) * q[static_cast<std::size_t>(i)];
            if (m != 0) return false;
        }
    return true;
}

}  // namespace

std::vector<Line> detect_lines(const IntPolynomial& F, const std::vector<std::vector<i64>>& sample) {
    if (F.arity() != 4 || !F.is_homogeneous() || F.is_zero())
        throw std::invalid_argument("detect_lines: need a nonzero form in 4 variables");
    int d = F.degree();

    std::vector<std::vector<i64>> on_x;
    for (const auto& x : sample) {
        if (x.size() != 4) throw std::invalid_argument("detect_lines: sample points must have 4 coordinates");
        if (F.evaluate(x) == 0) on_x.push_back(x);
    }

    std::map<std::array<std::string, 6>, Line> found;
    std::vector<i64> probe(4);
    for (std::size_t i = 0; i < on_x.size(); ++i) {
        for (std::size_t j = i + 1; j < on_x.size(); ++j) {
            const auto& p = on_x[i];
            const auto& q = on_x[j];
            if (proportional(p, q)) continue;
            // F restricted to the line is a degree-d binary form; it vanishes
            // identically iff it vanishes at d+1 distinct parameter points.
            bool contained = true;
            for (i64 t = 1; t <= d - 1 && contained; ++t) {
                for (int k = 0; k < 4; ++k)
                    probe[static_cast<std::size_t>(k)] =
                        p[static_cast<std::size_t>(k)] + t * q[static_cast<std::size_t>(k)];
                if (F.evaluate(probe) != 0) contained = false;
            }
            if (!contained) continue;
            auto pl = primitive_pluecker(p, q);
            std::array<std::string, 6> key;
            for (int k = 0; k < 6; ++k) key[static_cast<std::size_t>(k)] = pl[static_cast<std::size_t>(k)].get_str();
            if (found.contains(key)) continue;
            Line line;
            line.basis = saturated_basis(p, q);
            line.pluecker = pl;
            found.emplace(std::move(key), std::move(line));
        }
    }
    std::vector<Line> out;
    out.reserve(found.size());
    for (auto& [k, v] : found) out.push_back(std::move(v));
    return out;
}

bool point_on_line(const Line& line, const std::vector<i64>& x) {
    // rank([b1; b2; x]) == 2: every 3x3 minor of the 3x4 stack vanishes
    const auto& b1 = line.basis[0];
    const auto& b2 = line.basis[1];
    bool small = true;
    for (int k = 0; k < 4; ++k) {
        i64 lim = i64(1) << 30;
        if (std::abs(b1[static_cast<std::size_t>(k)]) >= lim || std::abs(b2[static_cast<std::size_t>(k)]) >= lim ||
            std::abs(x[static_cast<std::size_t>(k)]) >= lim)
            small = false;
    }
    auto minor_zero = [&](int c0, int c1, int c2) -> bool {
        auto at = [&](const std::vector<i64>& v, int c) { return v[static_cast<std::size_t>(c)]; };
        if (small) {
            __int128 det =
                static_cast<__int128>(at(b1, c0)) *
                    (static_cast<__int128>(at(b2, c1)) * at(x, c2) - static_cast<__int128>(at(b2, c2)) * at(x, c1)) -
                static_cast<__int128>(at(b1, c1)) *
                    (static_cast<__int128>(at(b2, c0)) * at(x, c2) - static_cast<__int128>(at(b2, c2)) * at(x, c0)) +
                static_cast<__int128>(at(b1, c2)) *
                    (static_cast<__int128>(at(b2, c0)) * at(x, c1) - static_cast<__int128>(at(b2, c1)) * at(x, c0));
            return det == 0;
        }
        IntMatrix m(3, 3);
        const std::array<const std::vector<i64>*, 3> rows{&b1, &b2, &x};
        const std::array<int, 3> cols{c0, c1, c2};
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c)
                m.at(r, c) = static_cast<long>((*rows[static_cast<std::size_t>(r)])[static_cast<std::size_t>(cols[static_cast<std::size_t>(c)])]);
        return m.det() == 0;
    };
    for (int c0 = 0; c0 < 4; ++c0)
        for (int c1 = c0 + 1; c1 < 4; ++c1)
            for (int c2 = c1 + 1; c2 < 4; ++c2)
                if (!minor_zero(c0, c1, c2)) return false;
    return true;
}

std::vector<PointRecord> classify_points(const std::vector<std::vector<i64>>& points,
                                         const std::vector<Line>& lines) {
    std::vector<PointRecord> out;
    out.reserve(points.size());
    for (const auto& p : points) {
        PointRecord r;
        r.coords = p;
        r.primitive = gcd_all(p) == 1;
        for (const auto& l : lines)
            if (point_on_line(l, p)) {
                r.on_detected_line = true;
                break;
            }
        out.push_back(std::move(r));
    }
    return out;
}

OffLineCounts count_off_lines(const IntPolynomial& F, i64 B, const CountOptions& opts,
                              std::size_t sample_size, u64 seed) {
    std::vector<std::vector<i64>> points;
    CountOptions o = opts;
    o.collect_points = &points;
    OffLineCounts out;
    out.total = count_projective(F, B, o);

    // deterministic seeded sample of the (canonically sorted) point list
    std::vector<std::vector<i64>> sample;
    if (points.size() <= sample_size) {
        sample = points;
    } else {
        std::mt19937_64 rng(seed);
        std::vector<std::size_t> idx(points.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        for (std::size_t i = 0; i < sample_size; ++i) {
            std::size_t j = i + static_cast<std::size_t>(rng() % (idx.size() - i));
            std::swap(idx[i], idx[j]);
        }
        idx.resize(sample_size);
        std::sort(idx.begin(), idx.end());
        for (std::size_t i : idx) sample.push_back(points[i]);
    }
    out.lines = detect_lines(F, sample);

    for (const auto& x : points) {
        for (const auto& line : out.lines) {
            if (point_on_line(line, x)) {
                ++out.on_lines;
                break;
            }
        }
    }
    out.off_lines = out.total - out.on_lines;
    return out;
}

}  // namespace census
