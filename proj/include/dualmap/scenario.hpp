#ifndef DUALMAP_SCENARIO_HPP
#define DUALMAP_SCENARIO_HPP

// Scenario files: a list of witness requests, each naming a theorem id, the
// space, parameters (an omitted block takes catalog defaults), and optionally a
// schedule and tolerances. Running a file yields one certificate record per
// scenario, in input order.

#include <string>
#include <vector>

#include "dualmap/json_io.hpp"
#include "dualmap/witness.hpp"

namespace dualmap {

struct Scenario {
  std::string theorem;
  Json space;   // descriptor object
  Json params;  // as given, before defaults
  Json schedule;  // null, or any of t0 / ratio / steps
  EngineTolerances tolerances;
};

struct ScenarioFile {
  std::vector<Scenario> scenarios;
  EngineTolerances tolerances;
  std::string output;
};

/// Accepts {"scenarios": [...], "tolerances": {...}, "output": "..."} or a
/// bare array of scenarios.
ScenarioFile parse_scenario_file(const Json& j);

/// Catalog parameters used when a scenario gives none.
Json default_params(const std::string& theorem);
Json default_space(const std::string& theorem);

AnyWitness build_witness(const std::string& theorem, const Json& space, const Json& params);

struct ScenarioResult {
  std::string theorem;
  double bound = 0.0;
  NonMembershipCertificate certificate;
  Json record;
};

/// Builds every witness first, so a bad scenario fails the whole file before
/// any sampling starts; then estimates the scenarios concurrently.
std::vector<ScenarioResult> run_scenarios(const ScenarioFile& file);

Json tolerances_to_json(const EngineTolerances& t);
EngineTolerances tolerances_from_json(const Json& j, EngineTolerances base = {});

/// Judges a stored certificate record from its samples alone.
RecheckResult recheck_certificate_record(const Json& record);

}  // namespace dualmap

#endif  // DUALMAP_SCENARIO_HPP
