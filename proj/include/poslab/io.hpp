#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "poslab/bounds.hpp"
#include "poslab/certificate.hpp"
#include "poslab/grid.hpp"
#include "poslab/poly.hpp"
#include "poslab/sos.hpp"

namespace poslab {

using Json = nlohmann::ordered_json;

/// {"n": 2, "objective": "x1 + x2", "constraints": ["1 - x1^2", ...],
///  "box": [[-1, 1], [-1, 1]], "options": {...}}. "n", "constraints", "box"
/// and "options" are optional.
struct ProblemFile {
  Polynomial objective;
  SemialgebraicSystem system{1};
  std::optional<Box> box;
  Json options = Json::object();
};

/// Throws ArgumentError on any schema or parse problem.
ProblemFile problem_from_json(const Json& j);
Json problem_to_json(const ProblemFile& p);

Json certificate_to_json(const Certificate& c);
/// Throws ArgumentError on schema mismatch.
Certificate certificate_from_json(const Json& j);

/// Reads and parses a JSON file; ArgumentError when missing or malformed.
Json read_json_file(const std::string& path);
/// Two-space indented, trailing newline.
std::string dump_json(const Json& j);

/// Finite doubles as numbers, infinities as "inf" / "-inf", NaN as "nan".
Json number(double v);

Json to_json(const VerificationReport& r);
Json to_json(const SdpDiagnostics& d);
Json to_json(const MembershipResult& r);
Json to_json(const LasserreResult& r);
Json to_json(const BoundInputs& b);
Json to_json(const BoundValue& v);
Json to_json(const LiftingParameters& p);
Json to_json(const LiftingSearch& s);
Json to_json(const LojasiewiczFit& f);
Json to_json(const RoundResult& r);

}  // namespace poslab
