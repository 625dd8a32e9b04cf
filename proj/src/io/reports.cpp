#include "signcert/io/reports.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "signcert/io/certificate.hpp"

namespace signcert {

using nlohmann::json;

namespace {

json checks_json(const std::vector<Check>& cs, bool only_failing) {
  json a = json::array();
  for (const auto& c : cs)
    if (!only_failing || !c.passed()) a.push_back(to_json(c));
  return a;
}

// Upper bound of a nonnegative real, refined until the enclosure is
// relatively tight or the precision cap is hit.
Interval tight(const Real& x) {
  Interval iv = x.enclose(128);
  for (mpfr_prec_t p = 256; p <= kDefaultMaxPrec; p *= 2) {
    if (mpfr_zero_p(iv.hi().get())) break;
    Mpfr w(64);
    mpfr_sub(w.get(), iv.hi().get(), iv.lo().get(), MPFR_RNDU);
    mpfr_div(w.get(), w.get(), iv.hi().get(), MPFR_RNDU);
    if (mpfr_cmp_d(w.get(), 1e-6) < 0) break;
    iv = x.enclose(p);
  }
  return iv;
}

std::string sci_up(mpfr_srcptr v) {
  char* buf = nullptr;
  mpfr_asprintf(&buf, "%.6RUe", v);
  std::string s(buf);
  mpfr_free_str(buf);
  return s;
}

double log10_of(mpfr_srcptr v) {
  if (mpfr_sgn(v) <= 0) return -std::numeric_limits<double>::infinity();
  Mpfr t(64);
  mpfr_log10(t.get(), v, MPFR_RNDN);
  return mpfr_get_d(t.get(), MPFR_RNDN);
}

struct Upper {
  std::string text;
  double log10 = 0;
};

Upper upper_of(const Real& x) {
  const Interval iv = tight(x);
  return {sci_up(iv.hi().get()), log10_of(iv.hi().get())};
}

Upper upper_of(const Rat& q) {
  Mpfr v(64);
  mpfr_set_q(v.get(), q.get_mpq_t(), MPFR_RNDU);
  return {sci_up(v.get()), log10_of(v.get())};
}

json num_or_null(double d) {
  if (!std::isfinite(d)) return nullptr;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", d);
  return json::parse(buf);
}

std::string fmt6(double d) {
  if (!std::isfinite(d)) return d < 0 ? "-inf" : "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", d);
  return buf;
}

std::string md_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += "\\|";
    else if (c == '\n') out += ' ';
    else out += c;
  }
  return out;
}

std::string scalar_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void md_checks(std::ostringstream& o, const json& checks) {
  if (!checks.is_array() || checks.empty()) return;
  o << "\n| id | clause | status | lhs | rhs | prec |\n|---|---|---|---|---|---|\n";
  for (const auto& c : checks) {
    std::string id = c.value("id", "");
    if (c.contains("index")) id += "[" + std::to_string(c["index"].get<int>()) + "]";
    o << "| " << md_escape(id) << " | " << md_escape(c["clause"].get<std::string>()) << " | "
      << c["status"].get<std::string>() << " | " << md_escape(c["lhs"].get<std::string>()) << " | "
      << md_escape(c["rhs"].get<std::string>()) << " | " << c["prec"].get<long>() << " |\n";
  }
}

void md_points(std::ostringstream& o, const std::string& title, const json& items) {
  if (!items.is_array() || items.empty()) return;
  o << "\n" << title << ":\n\n| x | status | lhs | rhs | prec |\n|---|---|---|---|---|\n";
  for (const auto& it : items) {
    const json& c = it["check"];
    o << "| (" << it["x"][0].get<std::string>() << ", " << it["x"][1].get<std::string>() << ", "
      << it["x"][2].get<std::string>() << ") | " << c["status"].get<std::string>() << " | "
      << md_escape(c["lhs"].get<std::string>()) << " | " << md_escape(c["rhs"].get<std::string>()) << " | "
      << c["prec"].get<long>() << " |\n";
  }
}

}  // namespace

std::string status_word(Status s) { return to_string(s); }

json ledger_json(const StarredLedger& L, bool toy) {
  json j;
  j["clauses"] = L.clauses.size();
  j["failing"] = L.failing();
  j["checks"] = checks_json(L.clauses, false);
  j["toy"] = toy;
  j["status"] = status_word(combine(L.clauses));
  return j;
}

namespace {

json check_summary(const std::vector<Check>& all) {
  json j;
  j["checks"] = all.size();
  std::size_t passed = 0;
  for (const auto& c : all) passed += c.passed();
  j["passed"] = passed;
  j["not_passed"] = checks_json(all, true);
  j["status"] = status_word(combine(all));
  return j;
}

}  // namespace

json plan_checks_json(const Plan& plan, const Schedule& schedule) {
  std::vector<Check> all = plan.checks;
  all.insert(all.end(), schedule.checks.begin(), schedule.checks.end());
  json j = check_summary(all);
  j["toy"] = plan.toy;
  return j;
}

json build_checks_json(const ConstructionState& st) {
  std::vector<Check> all;
  for (const auto& r : st.steps) all.insert(all.end(), r.cert.checks.begin(), r.cert.checks.end());
  all.insert(all.end(), st.checks.begin(), st.checks.end());
  return check_summary(all);
}

json witness_json(const WitnessReport& r) {
  json j;
  j["C"] = r.C;
  j["samples"] = json::array();
  std::size_t failed = 0, undecided = 0;
  for (const auto& s : r.samples) {
    const Status st = combine(s.checks);
    failed += st == Status::Fail;
    undecided += st == Status::Undecided;
    j["samples"].push_back({{"k", s.k},
                            {"X", s.X},
                            {"i", s.i},
                            {"witness", to_json(s.witness)},
                            {"status", status_word(st)},
                            {"checks", checks_json(s.checks, st == Status::Pass)}});
  }
  j["failed"] = failed;
  j["undecided"] = undecided;
  j["status"] = status_word(r.status());
  return j;
}

json box_json(const BoxReport& r) {
  auto items = [](const std::vector<BoxItem>& v) {
    json a = json::array();
    for (const auto& it : v)
      a.push_back({{"q", it.q}, {"p", it.p}, {"r", it.r}, {"x", to_json(it.x)}, {"branch", to_string(it.branch)},
                   {"check", to_json(it.check)}});
    return a;
  };
  json j;
  j["i"] = r.i;
  j["K"] = r.K;
  j["enumerated"] = r.enumerated;
  j["in_range"] = r.in_range;
  j["passed"] = r.passed;
  j["identities"] = r.identities;
  j["branches"] = {{"OffPlane", r.branch_count[0]}, {"InPlane", r.branch_count[1]}, {"Multiple", r.branch_count[2]}};
  j["anchor_used"] = r.anchor_used;
  j["violations"] = items(r.violations);
  j["undecided"] = items(r.undecided);
  j["identity_failures"] = checks_json(r.identity_failures, false);
  j["status"] = status_word(r.status());
  return j;
}

json scan_json(const ScanReport& r) {
  auto items = [](const std::vector<ScanItem>& v) {
    json a = json::array();
    for (const auto& it : v) a.push_back({{"x", to_json(it.x)}, {"check", to_json(it.check)}});
    return a;
  };
  json j;
  j["C_prime"] = r.C_prime;
  j["B"] = r.B;
  j["n2_min"] = r.n2_min.get_str();
  j["n2_max"] = r.n2_max.get_str();
  j["below_threshold"] = r.below_threshold;
  j["guard"] = to_json(r.guard);
  j["u_anchor"] = r.u_anchor;
  j["k_axis"] = r.k_axis;
  j["lines"] = r.lines;
  j["candidates"] = r.candidates;
  j["fast_passed"] = r.fast_passed;
  j["exact_passed"] = r.exact_passed;
  j["violations"] = items(r.violations);
  j["undecided"] = items(r.undecided);
  j["undecided_fraction"] = r.candidates ? static_cast<double>(r.undecided.size()) / r.candidates : 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", r.min_lower);
  j["min_lower"] = buf;
  j["min_lower_at"] = to_json(r.min_lower_at);
  j["all_lower_positive"] = r.all_lower_positive;
  j["skipped_clauses"] = r.skipped_clauses;
  j["isa"] = r.isa;
  j["status"] = status_word(r.status());
  return j;
}

json properties_json(const PropertyReport& r) {
  json j;
  j["seed"] = r.seed;
  j["suites"] = json::array();
  for (const auto& s : r.suites)
    j["suites"].push_back(
        {{"name", s.name}, {"cases", s.cases}, {"failures", s.failures}, {"first_failure", s.first_failure}});
  j["status"] = r.ok() ? "Pass" : "Fail";
  return j;
}

json alpha_beta_json(const AlphaBeta& ab) {
  return {{"anchor", ab.anchor},
          {"alpha", ab.alpha.to_string(30)},
          {"beta", ab.beta.to_string(30)},
          {"status", "Pass"}};
}

std::string verify_markdown(const json& v) {
  std::ostringstream o;
  o << "# Verification report\n\n";
  o << "- certificate: " << v.value("certificate", "(none)") << "\n";
  o << "- mode: " << v.value("mode", "") << "\n";
  o << "- verdict: **" << v.value("verdict", "") << "**\n";
  if (v.contains("skipped") && !v["skipped"].empty()) {
    o << "- skipped clauses (toy run):";
    for (const auto& s : v["skipped"]) o << " `" << s.get<std::string>() << "`";
    o << "\n";
  }
  for (const std::string name : {"plan", "build", "ledger", "witness", "box", "slab", "frame", "properties"}) {
    if (!v["sections"].contains(name)) continue;
    const json& sec = v["sections"][name];
    o << "\n## " << name << "\n\n";
    if (sec.is_array()) {
      for (const auto& part : sec) {
        o << "### i = " << part.value("i", 0) << "\n\n";
        for (const auto& [k, x] : part.items())
          if (!x.is_array() && !x.is_object()) o << "- " << k << ": " << scalar_text(x) << "\n";
        if (part.contains("branches"))
          o << "- branches: " << part["branches"].dump() << "\n- anchor_used: " << part["anchor_used"].dump() << "\n";
        md_points(o, "Violations", part["violations"]);
        md_points(o, "Undecided", part["undecided"]);
        md_checks(o, part["identity_failures"]);
        o << "\n";
      }
      continue;
    }
    for (const auto& [k, x] : sec.items())
      if (!x.is_array() && !x.is_object()) o << "- " << k << ": " << scalar_text(x) << "\n";
    if (name == "ledger") {
      if (!sec["failing"].empty()) {
        o << "- failing:";
        for (const auto& s : sec["failing"]) o << " `" << s.get<std::string>() << "`";
        o << "\n";
      }
      md_checks(o, sec["checks"]);
    } else if (name == "build" || name == "plan") {
      md_checks(o, sec["not_passed"]);
    } else if (name == "witness") {
      o << "\n| k | X | i | witness | status |\n|---|---|---|---|---|\n";
      for (const auto& s : sec["samples"])
        o << "| " << s["k"].get<std::size_t>() << " | " << s["X"].get<std::string>() << " | "
          << s["i"].get<std::size_t>() << " | x_" << s["i"].get<std::size_t>() - 1 << " | "
          << s["status"].get<std::string>() << " |\n";
    } else if (name == "slab" && sec.contains("guard")) {
      o << "- guard: " << sec["guard"]["status"].get<std::string>() << " (" << sec["guard"]["lhs"].get<std::string>()
        << " > " << sec["guard"]["rhs"].get<std::string>() << ")\n";
      if (!sec["skipped_clauses"].empty()) {
        o << "- skipped clauses:";
        for (const auto& s : sec["skipped_clauses"]) o << " `" << s.get<std::string>() << "`";
        o << "\n";
      }
      md_points(o, "Violations", sec["violations"]);
      md_points(o, "Undecided", sec["undecided"]);
    } else if (name == "properties") {
      o << "\n| suite | cases | failures | first failure |\n|---|---|---|---|\n";
      for (const auto& s : sec["suites"])
        o << "| " << s["name"].get<std::string>() << " | " << s["cases"].get<std::uint64_t>() << " | "
          << s["failures"].get<std::uint64_t>() << " | " << md_escape(s["first_failure"].get<std::string>()) << " |\n";
    }
  }
  return o.str();
}

std::vector<SeriesRow> report_series(const ConstructionState& st) {
  const DirectionEnclosure U = enclose_u(st, st.N());
  const DirectionEnclosure V = enclose_vw(st, DirectionKind::V);
  const DirectionEnclosure W = enclose_vw(st, DirectionKind::W);
  std::vector<SeriesRow> rows;
  for (std::size_t i = 0; i <= st.N(); ++i) {
    const IVec3& x = st.x[i];
    SeriesRow r;
    r.i = i;
    r.parity = i % 2 ? "V" : "W";
    const Upper n = upper_of(Real::sqrt_of(norm_sq(x)));
    const Upper dv = upper_of(dist_upper(x, V)), dw = upper_of(dist_upper(x, W));
    const Upper xu = upper_of(x_dot_u_upper(x, U));
    const Upper d = upper_of(st.delta_ub.at(i));
    r.norm = n.text;
    r.dist_v = dv.text;
    r.dist_w = dw.text;
    r.x_dot_u = xu.text;
    r.delta_ub = d.text;
    r.log10_norm = n.log10;
    r.log10_dist_v = dv.log10;
    r.log10_dist_w = dw.log10;
    r.log10_x_dot_u = xu.log10;
    r.log10_delta = d.log10;
    rows.push_back(r);
  }
  return rows;
}

std::string series_csv(const std::vector<SeriesRow>& rows) {
  std::ostringstream o;
  o << "i,parity,norm,dist_v,dist_w,abs_x_dot_u,delta_ub,log10_norm,log10_dist_v,log10_dist_w,log10_abs_x_dot_u,"
       "log10_delta_ub\n";
  for (const auto& r : rows)
    o << r.i << "," << r.parity << "," << r.norm << "," << r.dist_v << "," << r.dist_w << "," << r.x_dot_u << ","
      << r.delta_ub << "," << fmt6(r.log10_norm) << "," << fmt6(r.log10_dist_v) << "," << fmt6(r.log10_dist_w) << ","
      << fmt6(r.log10_x_dot_u) << "," << fmt6(r.log10_delta) << "\n";
  return o.str();
}

json series_json(const std::vector<SeriesRow>& rows) {
  json j;
  j["note"] = "upper bounds; u from the anchor N enclosure, v and w from the last odd and even points";
  j["rows"] = json::array();
  for (const auto& r : rows)
    j["rows"].push_back({{"i", r.i},
                         {"parity", r.parity},
                         {"norm", r.norm},
                         {"dist_v", r.dist_v},
                         {"dist_w", r.dist_w},
                         {"abs_x_dot_u", r.x_dot_u},
                         {"delta_ub", r.delta_ub},
                         {"log10_norm", num_or_null(r.log10_norm)},
                         {"log10_dist_v", num_or_null(r.log10_dist_v)},
                         {"log10_dist_w", num_or_null(r.log10_dist_w)},
                         {"log10_abs_x_dot_u", num_or_null(r.log10_x_dot_u)},
                         {"log10_delta_ub", num_or_null(r.log10_delta)}});
  return j;
}

std::string report_markdown(const ConstructionState& st, const std::vector<SeriesRow>& rows) {
  const Plan& p = st.plan;
  std::ostringstream o;
  o << "# Construction report\n\n";
  o << "- alpha: " << p.alpha.to_string() << ", C1 = " << p.C1.get_str() << "\n";
  o << "- delta = " << p.delta.get_str() << ", delta0^2 = " << p.delta0_sq.get_str() << "\n";
  o << "- x0 = " << p.x0.to_string() << ", x1 = " << p.x1.to_string() << " (multiplier " << p.multiplier.get_str()
    << ", rule " << p.multiplier_rule << ")\n";
  o << "- psi(t) = " << p.psi.to_string() << ", theta = " << p.theta.get_str() << "\n";
  o << "- N = " << st.N() << (p.toy ? " (toy run)" : "") << "\n";
  o << "- log2 X_i:";
  for (std::size_t i = 2; i < st.schedule.size(); ++i) o << " " << st.schedule.log2X[i];
  o << "\n\n## Steps\n\n| i | n | q_n digits | a | m | ell | det(x*,x,y) | det(x*,x,x') | det(y,x,x') | checks |\n"
       "|---|---|---|---|---|---|---|---|---|---|\n";
  for (const auto& r : st.steps) {
    const Int& qn = r.cert.det_x_prime;
    o << "| " << r.i << " | " << r.out.conv_index << " | " << qn.get_str().size() << " | " << r.out.a.get_str()
      << " | " << (r.out.m.get_str().size() > 24 ? std::to_string(r.out.m.get_str().size()) + " digits" : r.out.m.get_str())
      << " | " << r.out.ell.get_str() << " | " << r.cert.det_y.get_str() << " | "
      << (qn.get_str().size() > 24 ? std::to_string(qn.get_str().size()) + " digits" : qn.get_str()) << " | "
      << (r.cert.det_y_x_prime.get_str().size() > 24
              ? std::to_string(r.cert.det_y_x_prime.get_str().size()) + " digits"
              : r.cert.det_y_x_prime.get_str())
      << " | " << status_word(r.cert.ok() ? Status::Pass : combine(r.cert.checks)) << " |\n";
  }
  o << "\n## Series (upper bounds)\n\n| i | parity | log10 |x_i| | log10 dist(x_i, v) | log10 dist(x_i, w) | "
       "log10 |x_i . u| | log10 delta_i |\n|---|---|---|---|---|---|---|\n";
  for (const auto& r : rows)
    o << "| " << r.i << " | " << r.parity << " | " << fmt6(r.log10_norm) << " | " << fmt6(r.log10_dist_v) << " | "
      << fmt6(r.log10_dist_w) << " | " << fmt6(r.log10_x_dot_u) << " | " << fmt6(r.log10_delta) << " |\n";
  o << "\nOdd-index points approach v and even-index points approach w; delta_i at least halves per step.\n";
  return o.str();
}

}  // namespace signcert
