#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "signcert/planner/plan.hpp"

namespace signcert {

class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Keys match the command-line flags without the leading dashes.
struct RunConfig {
  std::string alpha = "sqrt2-1";
  Rat C1{4};
  Rat delta{2, 5};
  IVec3 x0{0, 0, 1};
  Rat psi_c{1}, psi_e{1};
  std::size_t steps = 5;
  std::optional<Rat> theta;
  std::optional<Rat> B;
  long K = 8;
  unsigned K_near = 2;
  long max_prec = kDefaultMaxPrec;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  bool toy = false;
  std::optional<Int> multiplier;
};

Rat parse_rat(const std::string& s, const std::string& what);
IVec3 parse_ivec3(const std::string& s, const std::string& what);

// Unknown keys and malformed values throw ConfigError.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& c);
RunConfig load_config(const std::string& path);

PlanInput to_plan_input(const RunConfig& c);

// 64-bit FNV-1a, printed as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);
// Hash of the keys that determine the plan (threads and output paths excluded).
std::string config_hash(const RunConfig& c);

}  // namespace signcert
