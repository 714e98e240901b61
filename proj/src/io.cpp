#include "census/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace census {

Json poly_to_json(const IntPolynomial& p) {
    Json j;
    j["arity"] = p.arity();
    Json terms = Json::array();
    for (const auto& [m, c] : p.terms()) {
        Json t;
        t["e"] = m.e;
        t["c"] = c.get_str();
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

IntPolynomial poly_from_json(const Json& j) {
    if (!j.contains("arity") || !j.contains("terms"))
        throw std::invalid_argument("polynomial JSON needs \"arity\" and \"terms\"");
    int arity = j.at("arity").get<int>();
    IntPolynomial p(arity);
    for (const auto& t : j.at("terms")) {
        const auto& e = t.at("e");
        if (static_cast<int>(e.size()) != arity)
            throw std::invalid_argument("polynomial JSON: exponent vector length != arity");
        Monomial m;
        for (const auto& x : e) {
            long long v = x.get<long long>();
            if (v < 0) throw std::invalid_argument("polynomial JSON: negative exponent");
            m.e.push_back(static_cast<std::uint32_t>(v));
        }
        mpz_class c;
        if (t.at("c").is_string())
            c = mpz_class(t.at("c").get<std::string>());
        else
            c = mpz_class(static_cast<long>(t.at("c").get<long long>()));
        p.add_term(m, c);
    }
    return p;
}

namespace {

Json points_json(const std::vector<std::vector<i64>>& pts) {
    Json a = Json::array();
    for (const auto& p : pts) a.push_back(p);
    return a;
}

}  // namespace

Json to_json(const ModPSummary& s) {
    Json j;
    j["prime"] = s.prime;
    j["affine_zero_count"] = s.affine_zero_count;
    j["projective_count"] = s.projective_count;
    j["u_count"] = s.u_count;
    j["singular_count"] = s.singular_count;
    j["degenerate_tangent_count"] = s.degenerate_tangent_count;
    return j;
}

Json to_json(const SmoothnessVerdict& v) {
    Json j;
    switch (v.status) {
        case SmoothStatus::CertifiedSmoothDiagonal: j["status"] = "certified-smooth-diagonal"; break;
        case SmoothStatus::NoSingularPointsModPList: j["status"] = "no-singular-points-mod-p-list"; break;
        case SmoothStatus::SingularWithWitness: j["status"] = "singular-with-witness"; break;
    }
    j["primes_checked"] = v.primes_checked;
    j["rational_witnesses"] = points_json(v.rational_witnesses);
    Json mw = Json::array();
    for (const auto& [p, pt] : v.modp_witnesses) {
        Json w;
        w["prime"] = p;
        w["point"] = pt;
        mw.push_back(std::move(w));
    }
    j["modp_witnesses"] = std::move(mw);
    return j;
}

Json to_json(const BadSliceValue& b) {
    Json j;
    j["kappa"] = b.kappa;
    switch (b.reason) {
        case BadSliceValue::Reason::DegreeDrop: j["reason"] = "degree-drop"; break;
        case BadSliceValue::Reason::Singular: j["reason"] = "singular"; break;
        case BadSliceValue::Reason::Vanishes: j["reason"] = "vanishes"; break;
    }
    return j;
}

Json to_json(const SliceReport& r) {
    Json j;
    j["direction"] = r.direction;
    j["completion"] = r.completion;
    j["good_value"] = r.good_value;
    Json bad = Json::array();
    for (const auto& b : r.bad_values) bad.push_back(to_json(b));
    j["bad_values"] = std::move(bad);
    j["exhausted_directions"] = points_json(r.exhausted_directions);
    return j;
}

Json to_json(const Line& l) {
    Json j;
    j["basis"] = Json::array({l.basis[0], l.basis[1]});
    Json pl = Json::array();
    for (const auto& c : l.pluecker) pl.push_back(c.get_str());
    j["pluecker"] = std::move(pl);
    return j;
}

Json to_json(const OffLineCounts& c) {
    Json j;
    j["total"] = c.total;
    j["on_lines"] = c.on_lines;
    j["off_lines"] = c.off_lines;
    Json lines = Json::array();
    for (const auto& l : c.lines) lines.push_back(to_json(l));
    j["detected_lines"] = std::move(lines);
    return j;
}

Json to_json(const RepCount& r) {
    Json j;
    j["N"] = r.N;
    j["d"] = r.d;
    j["r"] = r.r;
    return j;
}

Json to_json(const EqualSumsTally& t) {
    Json j;
    j["s"] = t.s;
    j["B"] = t.B;
    j["total"] = t.total;
    j["trivial"] = t.trivial;
    j["nontrivial"] = t.nontrivial;
    // asymptotic leading term s!*B^s, for comparison with the exact count
    double lead = 1;
    for (int i = 2; i <= t.s; ++i) lead *= i;
    for (int i = 0; i < t.s; ++i) lead *= static_cast<double>(t.B);
    j["s_factorial_leading_term"] = lead;
    return j;
}

Json to_json(const FitResult& f) {
    Json j;
    j["slope"] = f.slope;
    j["intercept"] = f.intercept;
    j["residual"] = f.residual;
    return j;
}

Json to_json(const BoundReport& r) {
    Json j;
    j["formula"] = r.formula;
    j["exponent"] = r.exponent;
    j["eps"] = r.eps;
    j["witness_constant"] = r.witness_constant;
    j["fitted_slope"] = r.fitted_slope;
    j["compliant"] = r.compliant;
    j["low_confidence"] = r.low_confidence;
    j["worst_excess_ratio"] = r.worst_excess_ratio;
    j["worst_B"] = r.worst_B;
    return j;
}

std::string spec_hash(const std::vector<std::pair<std::string, std::string>>& kv) {
    std::string canon;
    for (const auto& [k, v] : kv) {
        canon += k;
        canon += '=';
        canon += v;
        canon += '\n';
    }
    return fnv1a64_hex(canon);
}

void write_series_csv(std::ostream& os, const CountSeries& series, const std::string& hash) {
    os << "# " << kToolVersion << "\n";
    os << "# spec " << hash << "\n";
    if (!series.experiment_id.empty()) os << "# experiment " << series.experiment_id << "\n";
    os << "B,count\n";
    for (const auto& [b, c] : series.points) os << b << "," << c << "\n";
}

CountSeries read_series_csv(std::istream& is) {
    CountSeries s;
    std::string line;
    i64 prev_b = 0;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("B,", 0) == 0 || line.rfind("B ,", 0) == 0) continue;
        std::istringstream row(line);
        std::string bs, cs;
        if (!std::getline(row, bs, ',') || !std::getline(row, cs))
            throw std::invalid_argument("series CSV: malformed row: " + line);
        i64 b = std::stoll(bs);
        i64 c = std::stoll(cs);
        if (b <= prev_b) throw std::invalid_argument("series CSV: B values must be strictly increasing");
        prev_b = b;
        s.points.emplace_back(b, c);
    }
    return s;
}

}  // namespace census
