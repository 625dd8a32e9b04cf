#include <gtest/gtest.h>

#include "signcert/io/certificate.hpp"
#include "signcert/io/config.hpp"
#include "signcert/io/reports.hpp"
#include "signcert/verifier/ledger.hpp"

using namespace signcert;
using nlohmann::json;

namespace {

RunConfig guarded_config() {
  RunConfig c;
  c.delta = Rat(3, 2);
  c.toy = true;
  c.multiplier = Int(5);
  return c;
}

const ConstructionState& guarded_toy() {
  static const ConstructionState st = [] {
    const PlanResult r = make_plan(to_plan_input(guarded_config()));
    return build(r.plan, r.schedule);
  }();
  return st;
}

}  // namespace

TEST(Config, ParsesRationalsAndVectors) {
  EXPECT_EQ(parse_rat("2/5", "d"), Rat(2, 5));
  EXPECT_EQ(parse_rat(" -6/4 ", "d"), Rat(-3, 2));
  EXPECT_EQ(parse_rat("7", "d"), Rat(7));
  EXPECT_THROW(parse_rat("1/0", "d"), ConfigError);
  EXPECT_THROW(parse_rat("1/-2", "d"), ConfigError);
  EXPECT_THROW(parse_rat("0.4", "d"), ConfigError);
  EXPECT_THROW(parse_rat("", "d"), ConfigError);
  EXPECT_EQ(parse_ivec3("0,0,1", "x0"), IVec3(0, 0, 1));
  EXPECT_EQ(parse_ivec3("(3, -4, 12)", "x0"), IVec3(3, -4, 12));
  EXPECT_THROW(parse_ivec3("1,2", "x0"), ConfigError);
  EXPECT_THROW(parse_ivec3("1,2,3,4", "x0"), ConfigError);
}

TEST(Config, LongIntegersParse) {
  const std::string big(5000, '7');
  EXPECT_EQ(parse_rat(big + "/3", "B"), Rat(Int(big), Int(3)));
}

TEST(Config, JsonRoundTripAndUnknownKeys) {
  RunConfig c = guarded_config();
  c.theta = Rat(1000);
  c.B = Rat(4700);
  c.threads = 3;
  const RunConfig d = config_from_json(config_to_json(c));
  EXPECT_EQ(config_to_json(d), config_to_json(c));
  EXPECT_EQ(config_hash(d), config_hash(c));
  RunConfig e = c;
  e.threads = 1;
  e.seed = 99;
  EXPECT_EQ(config_hash(e), config_hash(c));
  e.delta = Rat(1, 2);
  EXPECT_NE(config_hash(e), config_hash(c));
  EXPECT_THROW(config_from_json(json{{"delta", "2/5"}, {"colour", "red"}}), ConfigError);
  EXPECT_THROW(config_from_json(json{{"K-near", 3}}), ConfigError);
  EXPECT_THROW(config_from_json(json::array()), ConfigError);
  const RunConfig f = config_from_json(json{{"x0", json::array({1, 2, 3})}, {"delta", 1}});
  EXPECT_EQ(f.x0, IVec3(1, 2, 3));
  EXPECT_EQ(f.delta, Rat(1));
}

TEST(Config, Fnv1aKnownValues) {
  EXPECT_EQ(fnv1a_hex(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a_hex("a"), "af63dc4c8601ec8c");
}

TEST(Certificate, PlanFileRoundTrip) {
  const RunConfig c = guarded_config();
  const PlanResult r = make_plan(to_plan_input(c));
  const json j = make_plan_file(c, r);
  const PlanFile pf = read_plan_file(json::parse(j.dump()));
  EXPECT_EQ(make_plan_file(pf.config, pf.result), j);
  EXPECT_EQ(pf.result.plan.x1, IVec3(-1, 5, 5));
}

TEST(Certificate, TamperingIsDetected) {
  const RunConfig c = guarded_config();
  json j = make_plan_file(c, make_plan(to_plan_input(c)));
  json bad = j;
  bad["plan"]["multiplier"] = "6";
  EXPECT_THROW(read_plan_file(bad), CertificateError);
  bad = j;
  bad["schema"] = 2;
  EXPECT_THROW(read_plan_file(bad), CertificateError);
  bad = j;
  bad["config"]["delta"] = "1/2";
  EXPECT_THROW(read_plan_file(bad), CertificateError);

  json cert = make_certificate(c, guarded_toy());
  cert["construction"]["x"][3][0] = "1";
  EXPECT_THROW(read_certificate(cert), CertificateError);
}

TEST(Certificate, StateRoundTripKeepsVerdicts) {
  const ConstructionState& st = guarded_toy();
  const json j = make_certificate(guarded_config(), st);
  const CertFile cf = read_certificate(json::parse(j.dump()));
  const ConstructionState& s2 = cf.state;
  EXPECT_EQ(s2.x, st.x);
  EXPECT_EQ(s2.y, st.y);
  EXPECT_EQ(s2.delta_ub, st.delta_ub);
  ASSERT_EQ(s2.steps.size(), st.steps.size());
  for (std::size_t k = 0; k < st.steps.size(); ++k) {
    EXPECT_EQ(s2.steps[k].out.conv_index, st.steps[k].out.conv_index);
    EXPECT_EQ(s2.table.q(s2.steps[k].out.conv_index), st.table.q(st.steps[k].out.conv_index));
  }
  EXPECT_EQ(make_certificate(cf.config, s2), j);
  EXPECT_EQ(starred_ledger_audit(s2).failing(), starred_ledger_audit(st).failing());
  EXPECT_EQ(witness_json(check_condition_iii(s2)), witness_json(check_condition_iii(st)));
  EXPECT_EQ(box_json(coeff_box(s2, 2, 4)), box_json(coeff_box(st, 2, 4)));
}

TEST(Report, SeriesShapes) {
  const ConstructionState& st = guarded_toy();
  const auto rows = report_series(st);
  ASSERT_EQ(rows.size(), st.N() + 1);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    // delta_i at least halves
    EXPECT_LE(rows[i].log10_delta, rows[i - 1].log10_delta - 0.30);
    // odd points cluster at v, even at w
    if (i >= 2) {
      const double near = i % 2 ? rows[i].log10_dist_v : rows[i].log10_dist_w;
      const double far = i % 2 ? rows[i].log10_dist_w : rows[i].log10_dist_v;
      EXPECT_LT(near, -10);
      EXPECT_GT(far, -1);
    }
  }
  EXPECT_EQ(series_csv(rows), series_csv(report_series(st)));
  EXPECT_EQ(report_markdown(st, rows).find("Odd-index") != std::string::npos, true);
}
