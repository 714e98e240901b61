#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "census/counting.hpp"
#include "census/exponents.hpp"
#include "census/lines.hpp"
#include "census/powersums.hpp"
#include "census/smooth.hpp"

namespace census {

using Json = nlohmann::ordered_json;

/// {"arity":4,"terms":[{"e":[4,0,0,0],"c":"1"},...]} with canonical term
/// order and decimal-string coefficients; bit-exact round trip.
Json poly_to_json(const IntPolynomial& p);
IntPolynomial poly_from_json(const Json& j);

Json to_json(const ModPSummary& s);
Json to_json(const SmoothnessVerdict& v);
Json to_json(const SliceReport& r);
Json to_json(const BadSliceValue& b);
Json to_json(const Line& l);
Json to_json(const OffLineCounts& c);
Json to_json(const RepCount& r);
Json to_json(const EqualSumsTally& t);
Json to_json(const FitResult& f);
Json to_json(const BoundReport& r);

/// FNV-1a hash of a canonical key=value rendering of a resolved experiment
/// spec; shard counts and other scheduling knobs must not be included.
std::string spec_hash(const std::vector<std::pair<std::string, std::string>>& kv);

/// CSV with a leading header block carrying tool version and spec hash.
void write_series_csv(std::ostream& os, const CountSeries& series, const std::string& hash);
CountSeries read_series_csv(std::istream& is);

}  // namespace census
