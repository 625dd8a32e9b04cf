#include <gtest/gtest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

Outcome run(const std::string& args) {
  const std::string cmd = std::string(SIGNCERT_CLI) + " " + args + " 2>&1";
  Outcome r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  std::array<char, 4096> buf;
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  static fs::path dir;

  static void SetUpTestSuite() {
    dir = fs::temp_directory_path() / ("signcert_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const Outcome p = run("plan --toy --delta 3/2 --multiplier 5 --out " + (dir / "plan.json").string());
    ASSERT_EQ(p.code, 0) << p.out;
    const Outcome b = run("build --plan " + (dir / "plan.json").string() + " --out " + (dir / "cert.json").string());
    ASSERT_EQ(b.code, 0) << b.out;
  }
  static void TearDownTestSuite() { fs::remove_all(dir); }

  static std::string path(const std::string& name) { return (dir / name).string(); }
};

fs::path Cli::dir;

}  // namespace

TEST_F(Cli, InvalidDeltaIsAnInputError) {
  EXPECT_EQ(run("plan --delta 0").code, 3);
  EXPECT_EQ(run("plan --delta -2/5").code, 3);
  EXPECT_EQ(run("plan --delta two").code, 3);
  EXPECT_EQ(run("plan --x0 1,2").code, 3);
  EXPECT_EQ(run("plan --no-such-flag").code, 3);
}

TEST_F(Cli, DefaultPlanCertifiesThreeDeltaZero) {
  const Outcome r = run("plan --out " + path("default_plan.json"));
  ASSERT_EQ(r.code, 0) << r.out;
  const json j = json::parse(slurp(path("default_plan.json")));
  EXPECT_EQ(j["schema"], 1);
  bool found = false;
  for (const auto& c : j["plan"]["checks"])
    if (c["clause"].get<std::string>().find("3 delta0") != std::string::npos) {
      found = true;
      EXPECT_EQ(c["status"], "Pass");
    }
  EXPECT_TRUE(found);
}

TEST_F(Cli, PlanIsByteDeterministic) {
  ASSERT_EQ(run("plan --toy --delta 3/2 --multiplier 5 --out " + path("plan2.json")).code, 0);
  EXPECT_EQ(slurp(path("plan.json")), slurp(path("plan2.json")));
}

TEST_F(Cli, ConfigFileMatchesFlags) {
  std::ofstream(path("cfg.json")) << R"({"delta": "3/2", "toy": true, "multiplier": 5})";
  ASSERT_EQ(run("plan --config " + path("cfg.json") + " --out " + path("plan3.json")).code, 0);
  EXPECT_EQ(slurp(path("plan.json")), slurp(path("plan3.json")));
  std::ofstream(path("bad_cfg.json")) << R"({"delta": "3/2", "colour": "red"})";
  EXPECT_EQ(run("plan --config " + path("bad_cfg.json")).code, 3);
}

TEST_F(Cli, ToyBuildWithFourPoints) {
  ASSERT_EQ(run("plan --toy --delta 3/2 --multiplier 5 --steps 4 --out " + path("plan4.json")).code, 0);
  const Outcome b = run("build --plan " + path("plan4.json") + " --out " + path("cert4.json"));
  ASSERT_EQ(b.code, 0) << b.out;
  const json j = json::parse(slurp(path("cert4.json")));
  ASSERT_EQ(j["construction"]["steps"].size(), 3u);
  for (const auto& s : j["construction"]["steps"])
    for (const auto& c : s["checks"]) EXPECT_EQ(c["status"], "Pass") << c.dump();
}

TEST_F(Cli, MinimumToyMultiplierFailsTheBuild) {
  ASSERT_EQ(run("plan --toy --out " + path("plan_min.json")).code, 0);
  const Outcome b = run("build --plan " + path("plan_min.json") + " --out " + path("cert_min.json"));
  EXPECT_EQ(b.code, 1) << b.out;
  EXPECT_NE(b.out.find("delta_i <= delta_{i-1}/2"), std::string::npos);
}

TEST_F(Cli, CorruptedPlanHashIsAnInputError) {
  json j = json::parse(slurp(path("plan.json")));
  std::string h = j["plan_hash"];
  h[0] = h[0] == '0' ? '1' : '0';
  j["plan_hash"] = h;
  std::ofstream(path("bad_plan.json")) << j.dump();
  EXPECT_EQ(run("build --plan " + path("bad_plan.json")).code, 3);
  std::ofstream(path("garbage.json")) << "{not json";
  EXPECT_EQ(run("build --plan " + path("garbage.json")).code, 3);
  EXPECT_EQ(run("verify --mode witness --cert " + path("missing.json")).code, 3);
}

TEST_F(Cli, AuditOnToyRunNamesFailingClauses) {
  const Outcome r = run("verify --mode audit --cert " + path("cert.json") + " --out " + path("audit"));
  EXPECT_EQ(r.code, 1) << r.out;
  const json v = json::parse(slurp(path("audit/verify.json")));
  const auto failing = v["sections"]["ledger"]["failing"];
  ASSERT_EQ(failing.size(), 11u);
  EXPECT_EQ(failing[0], "x1_ge_12c1_gamma");
  EXPECT_NE(slurp(path("audit/verify.md")).find("`in_plane.final`"), std::string::npos);
}

TEST_F(Cli, WitnessAndBoxPassOnToyRun) {
  EXPECT_EQ(run("verify --mode witness --cert " + path("cert.json")).code, 0);
  EXPECT_EQ(run("verify --mode box --K 4 --cert " + path("cert.json")).code, 0);
}

TEST_F(Cli, SlabBelowThresholdIsFlagged) {
  const Outcome r = run("verify --mode slab --B 100 --cert " + path("cert.json") + " --out " + path("below"));
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("below threshold"), std::string::npos);
  const json v = json::parse(slurp(path("below/verify.json")));
  EXPECT_EQ(v["sections"]["slab"]["below_threshold"], true);
  EXPECT_EQ(v["sections"]["slab"]["lines"], 0);
}

TEST_F(Cli, SlabShellIsThreadDeterministic) {
  const std::string base = "verify --mode slab --B 4700 --cert " + path("cert.json");
  ASSERT_EQ(run(base + " --threads 1 --out " + path("s1")).code, 0);
  ASSERT_EQ(run(base + " --threads 3 --out " + path("s3")).code, 0);
  EXPECT_EQ(slurp(path("s1/verify.json")), slurp(path("s3/verify.json")));
  const json v = json::parse(slurp(path("s1/verify.json")));
  EXPECT_GT(v["sections"]["slab"]["candidates"].get<long>(), 0);
  EXPECT_EQ(v["sections"]["slab"]["skipped_clauses"].size(), 11u);
}

TEST_F(Cli, PropertiesAreByteDeterministic) {
  ASSERT_EQ(run("verify --mode properties --seed 11 --threads 1 --out " + path("p1")).code, 0);
  ASSERT_EQ(run("verify --mode properties --seed 11 --threads 4 --out " + path("p4")).code, 0);
  EXPECT_EQ(slurp(path("p1/verify.json")), slurp(path("p4/verify.json")));
  EXPECT_EQ(slurp(path("p1/verify.md")), slurp(path("p4/verify.md")));
}

TEST_F(Cli, ReportIsReproducible) {
  ASSERT_EQ(run("report --cert " + path("cert.json") + " --out " + path("r1")).code, 0);
  ASSERT_EQ(run("report --cert " + path("cert.json") + " --out " + path("r2")).code, 0);
  for (const char* f : {"report.md", "series.csv", "series.json"})
    EXPECT_EQ(slurp(path(std::string("r1/") + f)), slurp(path(std::string("r2/") + f))) << f;
  const json s = json::parse(slurp(path("r1/series.json")));
  EXPECT_EQ(s["rows"].size(), 6u);
}

TEST_F(Cli, UnknownModeIsAnInputError) {
  EXPECT_EQ(run("verify --mode everything --cert " + path("cert.json")).code, 3);
  EXPECT_EQ(run("verify --mode slab").code, 3);
  EXPECT_EQ(run("verify --mode box --K-near 3 --cert " + path("cert.json")).code, 3);
}

TEST_F(Cli, HonestRunSlabIsUndecidedAtThisScale) {
  ASSERT_EQ(run("build --out " + path("honest.json")).code, 0);
  EXPECT_EQ(run("verify --mode audit --cert " + path("honest.json")).code, 0);
  const Outcome r = run("verify --mode slab --cert " + path("honest.json"));
  EXPECT_EQ(r.code, 2) << r.out;
  EXPECT_NE(r.out.find("infeasible"), std::string::npos);
}
