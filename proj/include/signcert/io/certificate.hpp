#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "signcert/builder/build.hpp"
#include "signcert/io/config.hpp"

namespace signcert {

// Malformed, mismatched or tampered plan/certificate files.
class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kSchemaVersion = 1;
std::string tool_version();

nlohmann::json to_json(const IVec3& v);
IVec3 ivec3_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Check& c);
Check check_from_json(const nlohmann::json& j);

nlohmann::json plan_to_json(const Plan& p);
Plan plan_from_json(const nlohmann::json& j);
nlohmann::json schedule_to_json(const Schedule& s);
Schedule schedule_from_json(const nlohmann::json& j);
nlohmann::json state_to_json(const ConstructionState& st);
// The convergent table is regenerated from the plan.
ConstructionState state_from_json(const nlohmann::json& j, const Plan& plan, const Schedule& schedule);

// plan.json: {schema, tool, config, config_hash, plan, schedule, plan_hash}
nlohmann::json make_plan_file(const RunConfig& config, const PlanResult& r);

struct PlanFile {
  RunConfig config;
  PlanResult result;
};

PlanFile read_plan_file(const nlohmann::json& j);

// cert.json: plan.json plus {construction, construction_hash, ledger}.
nlohmann::json make_certificate(const RunConfig& config, const ConstructionState& st);

struct CertFile {
  RunConfig config;
  ConstructionState state;
};

CertFile read_certificate(const nlohmann::json& j);

nlohmann::json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const nlohmann::json& j);

}  // namespace signcert
