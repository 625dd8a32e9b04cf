#include "signcert/io/certificate.hpp"

#include <fstream>

#include "signcert/verifier/ledger.hpp"

namespace signcert {

using nlohmann::json;

namespace {

Status status_from_string(const std::string& s) {
  if (s == "Pass") return Status::Pass;
  if (s == "Fail") return Status::Fail;
  if (s == "Undecided") return Status::Undecided;
  throw CertificateError("unknown status '" + s + "'");
}

json checks_to_json(const std::vector<Check>& cs) {
  json a = json::array();
  for (const auto& c : cs) a.push_back(to_json(c));
  return a;
}

std::vector<Check> checks_from_json(const json& a) {
  std::vector<Check> out;
  for (const auto& c : a) out.push_back(check_from_json(c));
  return out;
}

Int int_of(const json& v) {
  try {
    return Int(v.get<std::string>());
  } catch (const std::exception&) {
    throw CertificateError("expected a decimal integer string");
  }
}

Rat rat_of(const json& v) {
  try {
    return parse_rat(v.get<std::string>(), "certificate");
  } catch (const std::exception& e) {
    throw CertificateError(e.what());
  }
}

YSpec y_for(const Schedule& s, std::size_t i) {
  if (i >= 2) return PowGamma{s.X_int(i)};
  return SqrtPowGamma{s.X_sq[i]};
}

void check_schema(const json& j) {
  if (!j.is_object() || !j.contains("schema")) throw CertificateError("missing schema field");
  if (j["schema"] != kSchemaVersion) throw CertificateError("unsupported schema version");
}

std::string plan_hash(const json& plan, const json& schedule) { return fnv1a_hex(plan.dump() + schedule.dump()); }

}  // namespace

std::string tool_version() { return "signcert 0.1.0"; }

json to_json(const IVec3& v) { return {v[0].get_str(), v[1].get_str(), v[2].get_str()}; }

IVec3 ivec3_from_json(const json& j) {
  if (!j.is_array() || j.size() != 3) throw CertificateError("expected a 3-vector");
  return {int_of(j[0]), int_of(j[1]), int_of(j[2])};
}

json to_json(const Check& c) {
  json j{{"clause", c.clause}, {"status", to_string(c.status)}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"prec", c.prec}};
  if (!c.note.empty()) j["note"] = c.note;
  if (!c.id.empty()) j["id"] = c.id;
  if (c.index >= 0) j["index"] = c.index;
  return j;
}

Check check_from_json(const json& j) {
  Check c;
  c.clause = j.at("clause").get<std::string>();
  c.status = status_from_string(j.at("status").get<std::string>());
  c.lhs = j.at("lhs").get<std::string>();
  c.rhs = j.at("rhs").get<std::string>();
  c.prec = j.at("prec").get<mpfr_prec_t>();
  c.note = j.value("note", "");
  c.id = j.value("id", "");
  c.index = j.value("index", -1);
  return c;
}

json plan_to_json(const Plan& p) {
  json j;
  j["alpha"] = p.alpha.to_string();
  j["C1"] = p.C1.get_str();
  j["delta"] = p.delta.get_str();
  j["x0"] = to_json(p.x0);
  j["x0_base"] = to_json(p.x0_base);
  j["x0_companion"] = to_json(p.x0_companion);
  j["companion_shift"] = p.companion_shift.get_str();
  j["x0_third"] = to_json(p.x0_third);
  j["multiplier"] = p.multiplier.get_str();
  j["x1"] = to_json(p.x1);
  j["delta0_sq"] = p.delta0_sq.get_str();
  j["theta"] = p.theta.get_str();
  j["psi"] = {{"c", p.psi.c.get_str()}, {"e", p.psi.e.get_str()}};
  j["N"] = p.N_steps;
  j["toy"] = p.toy;
  j["multiplier_rule"] = p.multiplier_rule;
  j["checks"] = checks_to_json(p.checks);
  return j;
}

Plan plan_from_json(const json& j) {
  try {
    Plan p;
    p.alpha = QuadraticIrrational::parse(j.at("alpha").get<std::string>());
    p.C1 = rat_of(j.at("C1"));
    p.delta = rat_of(j.at("delta"));
    p.x0 = ivec3_from_json(j.at("x0"));
    p.x0_base = ivec3_from_json(j.at("x0_base"));
    p.x0_companion = ivec3_from_json(j.at("x0_companion"));
    p.companion_shift = int_of(j.at("companion_shift"));
    p.x0_third = ivec3_from_json(j.at("x0_third"));
    p.multiplier = int_of(j.at("multiplier"));
    p.x1 = ivec3_from_json(j.at("x1"));
    p.delta0_sq = rat_of(j.at("delta0_sq"));
    p.theta = rat_of(j.at("theta"));
    p.psi.c = rat_of(j.at("psi").at("c"));
    p.psi.e = rat_of(j.at("psi").at("e"));
    p.N_steps = j.at("N").get<std::size_t>();
    p.toy = j.at("toy").get<bool>();
    p.multiplier_rule = j.at("multiplier_rule").get<std::string>();
    p.checks = checks_from_json(j.at("checks"));
    return p;
  } catch (const json::exception& e) {
    throw CertificateError(std::string("plan: ") + e.what());
  } catch (const CfError& e) {
    throw CertificateError(std::string("plan: ") + e.what());
  }
}

json schedule_to_json(const Schedule& s) {
  json j;
  j["X_sq"] = json::array();
  for (const auto& v : s.X_sq) j["X_sq"].push_back(v.get_str());
  j["log2X"] = s.log2X;
  j["rule"] = s.rule;
  j["checks"] = checks_to_json(s.checks);
  return j;
}

Schedule schedule_from_json(const json& j) {
  try {
    Schedule s;
    for (const auto& v : j.at("X_sq")) s.X_sq.push_back(int_of(v));
    s.log2X = j.at("log2X").get<std::vector<long>>();
    s.rule = j.at("rule").get<std::vector<std::string>>();
    s.checks = checks_from_json(j.at("checks"));
    if (s.log2X.size() != s.X_sq.size()) throw CertificateError("schedule: inconsistent lengths");
    return s;
  } catch (const json::exception& e) {
    throw CertificateError(std::string("schedule: ") + e.what());
  }
}

json state_to_json(const ConstructionState& st) {
  json j;
  j["x"] = json::array();
  for (const auto& v : st.x) j["x"].push_back(to_json(v));
  j["y"] = json::array();
  for (std::size_t i = 1; i < st.y.size(); ++i) j["y"].push_back(to_json(st.y[i]));
  j["steps"] = json::array();
  for (const auto& r : st.steps) {
    json s;
    s["i"] = r.i;
    s["conv_index"] = r.out.conv_index;
    s["y0"] = to_json(r.out.y0);
    s["y"] = to_json(r.out.y);
    s["x_prime"] = to_json(r.out.x_prime);
    s["a"] = r.out.a.get_str();
    s["m"] = r.out.m.get_str();
    s["ell"] = r.out.ell.get_str();
    s["r"] = r.out.r.get_str();
    s["s"] = r.out.s.get_str();
    s["flipped"] = r.out.flipped;
    s["H2"] = r.cert.H2.get_str();
    s["det_y"] = r.cert.det_y.get_str();
    s["det_x_prime"] = r.cert.det_x_prime.get_str();
    s["det_y_x_prime"] = r.cert.det_y_x_prime.get_str();
    if (!r.cert.a_note.empty()) s["a_note"] = r.cert.a_note;
    s["checks"] = checks_to_json(r.cert.checks);
    j["steps"].push_back(s);
  }
  j["delta_ub"] = json::array();
  for (const auto& d : st.delta_ub) j["delta_ub"].push_back(d.get_str());
  j["checks"] = checks_to_json(st.checks);
  j["table_size"] = st.table.size();
  return j;
}

ConstructionState state_from_json(const json& j, const Plan& plan, const Schedule& schedule) {
  try {
    ConstructionState st;
    st.plan = plan;
    st.schedule = schedule;
    for (const auto& v : j.at("x")) st.x.push_back(ivec3_from_json(v));
    st.y.resize(1);
    for (const auto& v : j.at("y")) st.y.push_back(ivec3_from_json(v));
    if (st.x.size() != plan.N_steps + 1 || st.y.size() != plan.N_steps)
      throw CertificateError("construction: wrong number of points");
    if (st.x[0] != plan.x0 || st.x[1] != plan.x1) throw CertificateError("construction: x0, x1 differ from the plan");
    if (schedule.size() < plan.N_steps + 3) throw CertificateError("construction: schedule too short");
    st.table = convergents(plan.alpha, j.at("table_size").get<std::size_t>(), plan.C1);
    for (const auto& s : j.at("steps")) {
      StepRecord r;
      r.i = s.at("i").get<std::size_t>();
      if (r.i < 1 || r.i >= st.x.size() - 1) throw CertificateError("construction: bad step index");
      r.input = StepInput{st.x[r.i - 1], st.x[r.i], y_for(schedule, r.i), schedule.X_int(r.i + 1), nullptr,
                          kDefaultMaxPrec};
      r.out.conv_index = s.at("conv_index").get<std::size_t>();
      if (r.out.conv_index < 1 || r.out.conv_index > st.table.size())
        throw CertificateError("construction: convergent index outside the table");
      r.out.y0 = ivec3_from_json(s.at("y0"));
      r.out.y = ivec3_from_json(s.at("y"));
      r.out.x_prime = ivec3_from_json(s.at("x_prime"));
      r.out.a = int_of(s.at("a"));
      r.out.m = int_of(s.at("m"));
      r.out.ell = int_of(s.at("ell"));
      r.out.r = rat_of(s.at("r"));
      r.out.s = rat_of(s.at("s"));
      r.out.flipped = s.at("flipped").get<bool>();
      r.cert.H2 = int_of(s.at("H2"));
      r.cert.det_y = int_of(s.at("det_y"));
      r.cert.det_x_prime = int_of(s.at("det_x_prime"));
      r.cert.det_y_x_prime = int_of(s.at("det_y_x_prime"));
      r.cert.a_note = s.value("a_note", "");
      r.cert.checks = checks_from_json(s.at("checks"));
      if (r.out.x_prime != st.x[r.i + 1] || r.out.y != st.y[r.i])
        throw CertificateError("construction: step record disagrees with the point list");
      st.steps.push_back(std::move(r));
    }
    for (const auto& d : j.at("delta_ub")) st.delta_ub.push_back(rat_of(d));
    st.checks = checks_from_json(j.at("checks"));
    return st;
  } catch (const json::exception& e) {
    throw CertificateError(std::string("construction: ") + e.what());
  } catch (const CfError& e) {
    throw CertificateError(std::string("construction: ") + e.what());
  }
}

json make_plan_file(const RunConfig& config, const PlanResult& r) {
  json j;
  j["schema"] = kSchemaVersion;
  j["tool"] = tool_version();
  j["config"] = config_to_json(config);
  j["config_hash"] = config_hash(config);
  j["plan"] = plan_to_json(r.plan);
  j["schedule"] = schedule_to_json(r.schedule);
  j["plan_hash"] = plan_hash(j["plan"], j["schedule"]);
  return j;
}

PlanFile read_plan_file(const json& j) {
  check_schema(j);
  PlanFile f;
  try {
    f.config = config_from_json(j.at("config"));
    if (j.at("config_hash") != config_hash(f.config)) throw CertificateError("config hash mismatch");
    if (j.at("plan_hash") != plan_hash(j.at("plan"), j.at("schedule"))) throw CertificateError("plan hash mismatch");
  } catch (const json::exception& e) {
    throw CertificateError(e.what());
  } catch (const ConfigError& e) {
    throw CertificateError(e.what());
  }
  f.result.plan = plan_from_json(j["plan"]);
  f.result.schedule = schedule_from_json(j["schedule"]);
  return f;
}

json make_certificate(const RunConfig& config, const ConstructionState& st) {
  json j = make_plan_file(config, PlanResult{st.plan, st.schedule});
  j["construction"] = state_to_json(st);
  j["construction_hash"] = fnv1a_hex(j["construction"].dump());
  const StarredLedger L = starred_ledger_audit(st);
  j["ledger"] = checks_to_json(L.clauses);
  return j;
}

CertFile read_certificate(const json& j) {
  const PlanFile pf = read_plan_file(j);
  if (!j.contains("construction") || !j.contains("construction_hash"))
    throw CertificateError("not a certificate (no construction)");
  if (j["construction_hash"] != fnv1a_hex(j["construction"].dump()))
    throw CertificateError("construction hash mismatch");
  CertFile c;
  c.config = pf.config;
  c.state = state_from_json(j["construction"], pf.result.plan, pf.result.schedule);
  return c;
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CertificateError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw CertificateError(path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(1) << "\n";
}

}  // namespace signcert
