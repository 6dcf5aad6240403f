#pragma once

#include <string>

#include <json.hpp>

#include "lembed/embedding.hpp"
#include "lembed/feasibility.hpp"
#include "lembed/sampler.hpp"
#include "lembed/verify.hpp"

namespace lembed::report {

using nlohmann::json;

json to_json(const Rational& r);
Rational rational_from_json(const json& j);

json to_json(const Witness& w);
json to_json(const ConstrainedSets& s);
json to_json(const Constraint& c);
json to_json(const ConstraintSystem& s);
json to_json(const FeasibilityOutcome& o);
json to_json(const ValidationReport& v);
json to_json(const VerificationReport& v);
json to_json(const GraphStats& s);

/// {"thresholds", "pi1", "breakpoints": [["x","y"], ...], "provenance", "approximate"}
json to_json(const Embedding& e);
/// Throws std::invalid_argument on malformed or non-monotone input.
Embedding embedding_from_json(const json& j);

/// "2 d1 - d2 + a - 1/2 < 0"
std::string format(const Constraint& c);

/// Lowercase hex SHA-256.
std::string sha256_hex(const std::string& data);

}  // namespace lembed::report
