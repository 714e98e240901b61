#pragma once

#include <array>
#include <vector>

#include "census/counting.hpp"
#include "census/poly.hpp"

namespace census {

/// A line in P^3 contained in a surface, with the canonical (Hermite) basis
/// of its saturated coordinate lattice and primitive Pluecker coordinates.
struct Line {
    std::array<std::vector<i64>, 2> basis;
    std::array<mpz_class, 6> pluecker;  // minors (01,02,03,12,13,23), primitive, first nonzero > 0
};

/// Tests, for every pair of sample points, whether the joining line lies in
/// the surface (evaluating F at deg F + 1 points of the line), and returns
/// the deduplicated lines found. Sample-based, hence a lower bound on the
/// true line set.
std::vector<Line> detect_lines(const IntPolynomial& F, const std::vector<std::vector<i64>>& sample);

bool point_on_line(const Line& line, const std::vector<i64>& x);

struct OffLineCounts {
    i64 total = 0;
    i64 on_lines = 0;
    i64 off_lines = 0;
    std::vector<Line> lines;
};

/// N(F;B) split exactly into points on/off the detected-line set.
OffLineCounts count_off_lines(const IntPolynomial& F, i64 B, const CountOptions& opts = {},
                              std::size_t sample_size = 256, u64 seed = 0);

/// Tags collected points with primitivity and detected-line membership.
std::vector<PointRecord> classify_points(const std::vector<std::vector<i64>>& points,
                                         const std::vector<Line>& lines);

}  // namespace census
