#include "census/exponents.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace census {

namespace {

void require(bool cond, const char* msg) {
    if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

double theorem1_exponent(int d, int n) {
    require(d >= 4 && n >= 3, "theorem1_exponent: need d >= 4 and n >= 3");
    double sd = std::sqrt(static_cast<double>(d));
    return n - 2 + 2.0 / sd + 1.0 / (d - 1) - 1.0 / ((d - 2) * sd);
}

double theorem2_exponent(int delta) {
    require(delta >= 4, "theorem2_exponent: need delta >= 4");
    double sd = std::sqrt(static_cast<double>(delta));
    return 2.0 / sd + 1.0 / (delta - 1) - 1.0 / ((delta - 2) * sd);
}

double proposition1_exponent(int d, int k) {
    require(d >= 3, "proposition1_exponent: need d >= 3");
    require(k >= 2 && k <= d - 1, "proposition1_exponent: need 2 <= k <= d-1");
    double sd = std::sqrt(static_cast<double>(d));
    return 2.0 / sd + 1.0 / (k + 1) - 1.0 / (k * sd);
}

double sand_exponent(int d, int n) {
    require(d >= 3 && n >= 3, "sand_exponent: need d >= 3 and n >= 3");
    if (d == 3) return n - 7.0 / 4.0 + 5.0 / (3.0 * std::sqrt(3.0));
    double second = n - 5.0 / 3.0 + 3.0 / (2.0 * std::sqrt(static_cast<double>(d)));
    return std::max(static_cast<double>(n - 1), second);
}

double hb_theta(int d) {
    require(d >= 2, "hb_theta: need d >= 2");
    return 2.0 / std::sqrt(static_cast<double>(d)) + 2.0 / (d - 1);
}

double cor1_theta(int d) {
    require(d >= 4, "cor1_theta: need d >= 4");
    double sd = std::sqrt(static_cast<double>(d));
    return 2.0 / sd + 1.0 / (d - 1) - 1.0 / ((d - 2) * sd);
}

double pila_exponent(int delta) {
    require(delta >= 1, "pila_exponent: need delta >= 1");
    return 1.0 / delta;
}

double lemma7_exponent(int d, int e) {
    require(d >= 2, "lemma7_exponent: need d >= 2");
    require(e >= 3, "lemma7_exponent: need e >= 3");
    return 1.0 / e - 1.0 / ((e - 1) * std::sqrt(static_cast<double>(d)));
}

namespace {

int need(const std::optional<int>& v, const char* what) {
    if (!v) throw std::invalid_argument(std::string("missing parameter ") + what);
    return *v;
}

}  // namespace

EvaluatedFormula evaluate_formula(FormulaId id, const ExponentParams& p) {
    EvaluatedFormula out;
    std::ostringstream sym;
    switch (id) {
        case FormulaId::Theorem1: {
            int d = need(p.d, "d"), n = need(p.n, "n");
            out.value = theorem1_exponent(d, n);
            sym << n << " - 2 + 2/sqrt(" << d << ") + 1/" << (d - 1) << " - 1/(" << (d - 2)
                << "*sqrt(" << d << "))";
            break;
        }
        case FormulaId::Theorem2: {
            int delta = p.delta ? *p.delta : need(p.d, "delta");
            out.value = theorem2_exponent(delta);
            sym << "2/sqrt(" << delta << ") + 1/" << (delta - 1) << " - 1/(" << (delta - 2)
                << "*sqrt(" << delta << "))";
            break;
        }
        case FormulaId::Proposition1: {
            int d = need(p.d, "d"), k = need(p.k, "k");
            out.value = proposition1_exponent(d, k);
            sym << "2/sqrt(" << d << ") + 1/" << (k + 1) << " - 1/(" << k << "*sqrt(" << d << "))";
            break;
        }
        case FormulaId::Sand: {
            int d = need(p.d, "d"), n = need(p.n, "n");
            out.value = sand_exponent(d, n);
            if (d == 3)
                sym << n << " - 7/4 + 5/(3*sqrt(3))";
            else
                sym << "max(" << n << " - 1, " << n << " - 5/3 + 3/(2*sqrt(" << d << ")))";
            break;
        }
        case FormulaId::HbTheta: {
            int d = need(p.d, "d");
            out.value = hb_theta(d);
            sym << "2/sqrt(" << d << ") + 2/" << (d - 1);
            break;
        }
        case FormulaId::Cor1Theta: {
            int d = need(p.d, "d");
            out.value = cor1_theta(d);
            sym << "2/sqrt(" << d << ") + 1/" << (d - 1) << " - 1/(" << (d - 2) << "*sqrt(" << d
                << "))";
            break;
        }
        case FormulaId::Pila: {
            int delta = p.delta ? *p.delta : need(p.d, "delta");
            out.value = pila_exponent(delta);
            sym << "1/" << delta;
            break;
        }
        case FormulaId::Lemma7: {
            int d = need(p.d, "d"), e = need(p.e, "e");
            out.value = lemma7_exponent(d, e);
            sym << "1/" << e << " - 1/(" << (e - 1) << "*sqrt(" << d << "))";
            break;
        }
    }
    out.symbolic = sym.str();
    return out;
}

std::optional<FormulaId> formula_from_name(const std::string& name) {
    if (name == "theorem1") return FormulaId::Theorem1;
    if (name == "theorem2") return FormulaId::Theorem2;
    if (name == "proposition1") return FormulaId::Proposition1;
    if (name == "sand") return FormulaId::Sand;
    if (name == "hb_theta") return FormulaId::HbTheta;
    if (name == "cor1_theta") return FormulaId::Cor1Theta;
    if (name == "pila") return FormulaId::Pila;
    if (name == "lemma7") return FormulaId::Lemma7;
    return std::nullopt;
}

std::string formula_name(FormulaId id) {
    switch (id) {
        case FormulaId::Theorem1: return "theorem1";
        case FormulaId::Theorem2: return "theorem2";
        case FormulaId::Proposition1: return "proposition1";
        case FormulaId::Sand: return "sand";
        case FormulaId::HbTheta: return "hb_theta";
        case FormulaId::Cor1Theta: return "cor1_theta";
        case FormulaId::Pila: return "pila";
        case FormulaId::Lemma7: return "lemma7";
    }
    return "?";
}

namespace {

struct LogPoints {
    std::vector<double> x, y;
};

LogPoints log_points(const CountSeries& series) {
    LogPoints p;
    for (const auto& [B, c] : series.points) {
        if (c <= 0) continue;
        p.x.push_back(std::log(static_cast<double>(B)));
        p.y.push_back(std::log(static_cast<double>(c)));
    }
    return p;
}

std::pair<double, double> least_squares(const LogPoints& p) {
    std::size_t n = p.x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += p.x[i];
        sy += p.y[i];
        sxx += p.x[i] * p.x[i];
        sxy += p.x[i] * p.y[i];
    }
    double denom = n * sxx - sx * sx;
    double slope = (n * sxy - sx * sy) / denom;
    double intercept = (sy - slope * sx) / n;
    return {slope, intercept};
}

}  // namespace

FitResult fit_exponent(const CountSeries& series) {
    LogPoints p = log_points(series);
    if (p.x.size() < 3)
        throw std::invalid_argument("fit_exponent: need at least 3 points with positive counts");
    auto [slope, intercept] = least_squares(p);
    FitResult r;
    r.slope = slope;
    r.intercept = intercept;
    for (std::size_t i = 0; i < p.x.size(); ++i)
        r.residual = std::max(r.residual, std::abs(p.y[i] - (intercept + slope * p.x[i])));
    return r;
}

BoundReport bound_report(const CountSeries& series, FormulaId id, const ExponentParams& params,
                         double eps) {
    if (series.points.empty()) throw std::invalid_argument("bound_report: empty series");
    BoundReport r;
    r.formula = formula_name(id);
    r.exponent = evaluate_formula(id, params).value;
    r.eps = eps;

    double gate = r.exponent + eps;
    auto [bmax, cmax] = series.points.back();
    r.witness_constant = static_cast<double>(cmax) / std::pow(static_cast<double>(bmax), gate);

    LogPoints p = log_points(series);
    if (p.x.size() < 2) {
        r.low_confidence = true;
        r.compliant = true;
        r.fitted_slope = std::numeric_limits<double>::quiet_NaN();
        return r;
    }
    r.fitted_slope = least_squares(p).first;
    r.compliant = r.fitted_slope <= gate + 1e-9;

    for (const auto& [B, c] : series.points) {
        if (c <= 0) continue;
        double predicted = r.witness_constant * std::pow(static_cast<double>(B), gate);
        double ratio = predicted > 0 ? static_cast<double>(c) / predicted : 0.0;
        if (ratio > r.worst_excess_ratio) {
            r.worst_excess_ratio = ratio;
            r.worst_B = B;
        }
    }
    return r;
}

}  // namespace census
