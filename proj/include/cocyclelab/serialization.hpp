#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "cocyclelab/observable.hpp"
#include "cocyclelab/solver.hpp"
#include "cocyclelab/system.hpp"
#include "cocyclelab/witness.hpp"

namespace cocyclelab {

using Json = nlohmann::ordered_json;

// System records: {"type":"perm","map":[1,2,0]} or
// {"type":"rotation","alpha":"2/5"}.
Json system_to_json(const SystemDescriptor& sys);
SystemDescriptor system_from_json(const Json& j);

// Observable records: {"type":"finite","values":["1","-2","1"]} or
// {"type":"pwl","offset":"0","bumps":[{"center","radius","weight"}]}.
Json observable_to_json(const Observable& obs);
Observable observable_from_json(const Json& j);

// Points render as an index (finite) or a rational string (circle).
Json point_to_json(const Point& x);
Point point_from_json(const Json& j);

Json certificate_to_json(const ObstructionCertificate& cert);
Json solve_outcome_to_json(const SolveOutcome& outcome);
Json orbit_integrals_to_json(const std::vector<OrbitIntegral>& integrals);
Json witness_report_to_json(const WitnessReport& report);

// Plot-ready sweep table. Header:
// n,r_n,sup_phi,sup_phi_decimal,quotient_lb,amplification,support_disjoint,expanded_matches_direct
// Throws std::invalid_argument on an empty report list.
std::string emit_sweep_csv(const std::vector<WitnessReport>& reports);

// One CSV row per witness report, same columns as the sweep table.
std::string emit_witness_csv(const WitnessReport& report);

// Parse a full JSON document into the corresponding value, translating JSON
// syntax errors into ParseError.
SystemDescriptor parse_system_text(const std::string& text);
Observable parse_observable_text(const std::string& text);

}  // namespace cocyclelab
