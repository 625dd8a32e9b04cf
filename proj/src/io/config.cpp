#include "signcert/io/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <set>

namespace signcert {

using nlohmann::json;

namespace {

const std::set<std::string> kKeys = {"alpha", "C1",      "delta",    "x0",      "psi-c", "psi-e",
                                     "steps", "theta",   "B",        "K",       "K-near", "max-prec",
                                     "threads", "seed",  "toy",      "multiplier"};

std::string as_text(const json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  throw ConfigError(key + ": expected a string or an integer");
}

long long as_int(const json& v, const std::string& key, long long lo, long long hi) {
  long long r = 0;
  if (v.is_number_integer()) {
    r = v.get<long long>();
  } else if (v.is_string()) {
    try {
      std::size_t pos = 0;
      r = std::stoll(v.get<std::string>(), &pos);
      if (pos != v.get<std::string>().size()) throw ConfigError("");
    } catch (const std::exception&) {
      throw ConfigError(key + ": not an integer");
    }
  } else {
    throw ConfigError(key + ": expected an integer");
  }
  if (r < lo || r > hi) throw ConfigError(key + ": out of range");
  return r;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\n") - b + 1);
}

// Decimal digits with an optional leading minus.
bool is_integer(const std::string& s, bool allow_sign) {
  std::size_t i = allow_sign && !s.empty() && s[0] == '-' ? 1 : 0;
  if (i == s.size()) return false;
  return std::all_of(s.begin() + static_cast<long>(i), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

Rat parse_rat(const std::string& s, const std::string& what) {
  const std::string t = trim(s);
  const auto slash = t.find('/');
  const std::string num = trim(t.substr(0, slash));
  const std::string den = slash == std::string::npos ? "1" : trim(t.substr(slash + 1));
  if (!is_integer(num, true) || !is_integer(den, false))
    throw ConfigError(what + ": expected p or p/q, got '" + s + "'");
  if (Int(den) == 0) throw ConfigError(what + ": zero denominator");
  Rat r{Int(num), Int(den)};
  r.canonicalize();
  return r;
}

IVec3 parse_ivec3(const std::string& s, const std::string& what) {
  std::string t = trim(s);
  if (t.size() >= 2 && t.front() == '(' && t.back() == ')') t = t.substr(1, t.size() - 2);
  IVec3 v;
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    const std::size_t comma = k < 2 ? t.find(',', pos) : t.size();
    if (comma == std::string::npos) throw ConfigError(what + ": expected a,b,c, got '" + s + "'");
    const std::string part = trim(t.substr(pos, comma - pos));
    if (!is_integer(part, true)) throw ConfigError(what + ": expected a,b,c, got '" + s + "'");
    v[k] = Int(part);
    pos = comma + 1;
  }
  return v;
}

RunConfig config_from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [k, v] : j.items())
    if (!kKeys.count(k)) throw ConfigError("unknown config key '" + k + "'");
  RunConfig c;
  auto rat = [&](const char* key, Rat& out) {
    if (j.contains(key)) out = parse_rat(as_text(j[key], key), key);
  };
  if (j.contains("alpha")) {
    if (!j["alpha"].is_string()) throw ConfigError("alpha: expected a string");
    c.alpha = j["alpha"].get<std::string>();
  }
  rat("C1", c.C1);
  rat("delta", c.delta);
  rat("psi-c", c.psi_c);
  rat("psi-e", c.psi_e);
  if (j.contains("x0")) {
    const json& v = j["x0"];
    if (v.is_array() && v.size() == 3) {
      for (std::size_t k = 0; k < 3; ++k) c.x0[k] = Int(as_text(v[k], "x0"));
    } else if (v.is_string()) {
      c.x0 = parse_ivec3(v.get<std::string>(), "x0");
    } else {
      throw ConfigError("x0: expected \"a,b,c\" or [a, b, c]");
    }
  }
  if (j.contains("steps")) c.steps = static_cast<std::size_t>(as_int(j["steps"], "steps", 2, 64));
  if (j.contains("theta")) c.theta = parse_rat(as_text(j["theta"], "theta"), "theta");
  if (j.contains("B")) c.B = parse_rat(as_text(j["B"], "B"), "B");
  if (j.contains("K")) c.K = static_cast<long>(as_int(j["K"], "K", 1, 1000));
  if (j.contains("K-near")) c.K_near = static_cast<unsigned>(as_int(j["K-near"], "K-near", 2, 64));
  if (j.contains("max-prec")) c.max_prec = static_cast<long>(as_int(j["max-prec"], "max-prec", 64, 1L << 24));
  if (j.contains("threads")) c.threads = static_cast<unsigned>(as_int(j["threads"], "threads", 1, 1024));
  if (j.contains("seed")) c.seed = static_cast<std::uint64_t>(as_int(j["seed"], "seed", 0, INT64_MAX));
  if (j.contains("toy")) {
    if (!j["toy"].is_boolean()) throw ConfigError("toy: expected true or false");
    c.toy = j["toy"].get<bool>();
  }
  if (j.contains("multiplier")) {
    const std::string s = as_text(j["multiplier"], "multiplier");
    try {
      c.multiplier = Int(s);
    } catch (const std::exception&) {
      throw ConfigError("multiplier: not an integer");
    }
  }
  if (c.K_near % 2) throw ConfigError("K-near must be even");
  return c;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["alpha"] = c.alpha;
  j["C1"] = c.C1.get_str();
  j["delta"] = c.delta.get_str();
  j["x0"] = {c.x0[0].get_str(), c.x0[1].get_str(), c.x0[2].get_str()};
  j["psi-c"] = c.psi_c.get_str();
  j["psi-e"] = c.psi_e.get_str();
  j["steps"] = c.steps;
  if (c.theta) j["theta"] = c.theta->get_str();
  if (c.B) j["B"] = c.B->get_str();
  j["K"] = c.K;
  j["K-near"] = c.K_near;
  j["max-prec"] = c.max_prec;
  j["threads"] = c.threads;
  j["seed"] = c.seed;
  j["toy"] = c.toy;
  if (c.multiplier) j["multiplier"] = c.multiplier->get_str();
  return j;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return config_from_json(j);
}

PlanInput to_plan_input(const RunConfig& c) {
  PlanInput in;
  try {
    in.alpha = QuadraticIrrational::parse(c.alpha);
  } catch (const CfError& e) {
    throw ConfigError(e.what());
  }
  in.C1 = c.C1;
  in.delta = c.delta;
  in.x0 = c.x0;
  in.psi.c = c.psi_c;
  in.psi.e = c.psi_e;
  in.steps = c.steps;
  in.theta = c.theta;
  in.toy = c.toy;
  in.multiplier = c.multiplier;
  in.max_prec = c.max_prec;
  return in;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string config_hash(const RunConfig& c) {
  json j = config_to_json(c);
  for (const char* k : {"threads", "seed", "B", "K", "K-near"}) j.erase(k);
  return fnv1a_hex(j.dump());
}

}  // namespace signcert
