#pragma once

#include <optional>
#include <string>

#include "census/counting.hpp"

namespace census {

double theorem1_exponent(int d, int n);     // d >= 4, n >= 3
double theorem2_exponent(int delta);        // delta >= 4
double proposition1_exponent(int d, int k); // d >= 3, 2 <= k <= d-1
double sand_exponent(int d, int n);         // d >= 3, n >= 3; max of the two branch terms
double hb_theta(int d);                     // d >= 2
double cor1_theta(int d);                   // d >= 4
double pila_exponent(int delta);            // delta >= 1
double lemma7_exponent(int d, int e);       // d >= 2, e >= 3

enum class FormulaId { Theorem1, Theorem2, Proposition1, Sand, HbTheta, Cor1Theta, Pila, Lemma7 };

struct ExponentParams {
    std::optional<int> d, n, k, e, delta;
};

struct EvaluatedFormula {
    double value = 0.0;
    std::string symbolic;  // exact closed form with the parameters substituted
};

EvaluatedFormula evaluate_formula(FormulaId id, const ExponentParams& p);
std::optional<FormulaId> formula_from_name(const std::string& name);
std::string formula_name(FormulaId id);

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  // max absolute log-space deviation
};

/// Unweighted least squares through (log B, log count); needs at least
/// 3 points with positive counts.
FitResult fit_exponent(const CountSeries& series);

struct BoundReport {
    std::string formula;
    double exponent = 0.0;
    double eps = 0.0;
    double witness_constant = 0.0;  // calibrated at the largest B
    double fitted_slope = 0.0;
    bool compliant = false;
    bool low_confidence = false;  // fewer than 2 points
    double worst_excess_ratio = 0.0;
    i64 worst_B = 0;
};

/// Consistency verdict of a count series against a closed-form growth
/// exponent: compliant when the fitted log-log slope stays within
/// exponent + eps. The witness constant is anchored at the largest B.
BoundReport bound_report(const CountSeries& series, FormulaId id, const ExponentParams& params,
                         double eps = 0.1);

}  // namespace census
