#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "cli.hpp"

using sconv::cli::run_cli;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream f(p);
  return {std::istreambuf_iterator<char>(f), {}};
}

const std::filesystem::path kTmp = SCONV_TEST_TMPDIR;

}  // namespace

TEST(CliEval, PointValues) {
  EXPECT_EQ(run({"eval", "1", "sigma", "12"}).out, "20\n");
  EXPECT_EQ(run({"eval", "N", "tau", "12"}).out, "6\n");
  EXPECT_EQ(run({"eval", "--sset", "L2", "--fn", "phi", "--n", "12"}).out, "6\n");
  EXPECT_EQ(run({"eval", "N", "mu_k", "16", "--k", "2"}).out, "0\n");
  EXPECT_EQ(run({"eval", "Q2", "mu_S", "4"}).out, "-1\n");
}

TEST(CliEval, RangeUsesTables) {
  const CliRun r = run({"eval", "L2", "mu", "--range", "1..12"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "1 1\n2 -1\n3 -1\n4 -1\n5 -1\n6 1\n7 -1\n8 -1\n9 -1\n10 1\n11 -1\n12 1\n");
  const CliRun k2 = run({"eval", "N", "mu_k", "1..12", "--k", "2"});
  EXPECT_EQ(k2.out, r.out);
}

TEST(CliEval, Artifacts) {
  const auto csv_path = kTmp / "cli_eval.csv";
  const auto json_path = kTmp / "cli_eval.json";
  ASSERT_EQ(run({"eval", "1", "tau", "1..4", "--out", csv_path.string()}).code, 0);
  EXPECT_EQ(slurp(csv_path), "n,value\n1,1\n2,2\n3,2\n4,2\n");
  ASSERT_EQ(run({"eval", "1", "tau", "1..4", "--out", json_path.string()}).code, 0);
  const auto j = nlohmann::json::parse(slurp(json_path));
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["command"], "eval");
  EXPECT_EQ(j["sset"], "1");
  EXPECT_EQ(j["params"]["function"], "tau");
  EXPECT_EQ(j["rows"][3]["value"], 2);
  // Identical invocations give byte-identical artifacts.
  const std::string first = slurp(json_path);
  ASSERT_EQ(run({"eval", "1", "tau", "1..4", "--out", json_path.string(), "--workers", "3"}).code, 0);
  EXPECT_EQ(slurp(json_path), first);
  const CliRun stdout_json = run({"eval", "N", "sigma", "6", "--format", "json"});
  EXPECT_EQ(nlohmann::json::parse(stdout_json.out)["rows"][0]["value"], 12);
}

TEST(CliEval, ExitCodes) {
  EXPECT_EQ(run({"eval", "Q0", "tau", "3"}).code, 2);
  EXPECT_EQ(run({"eval", "N", "zeta", "3"}).code, 2);
  EXPECT_EQ(run({"eval", "N", "tau", "x"}).code, 2);
  EXPECT_EQ(run({"eval", "N", "tau", "5..2"}).code, 2);
  EXPECT_EQ(run({"eval", "N", "tau"}).code, 2);
  EXPECT_EQ(run({"eval", "N", "tau", "20000000"}).code, 3);
  EXPECT_EQ(run({"eval", "Q2", "mu", "10"}).code, 2);
  EXPECT_EQ(run({"eval", "N", "mu_k", "1..2000", "--k", "40"}).code, 0);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
  EXPECT_EQ(run({"eval", "N", "tau", "3", "--out", "/nonexistent/dir/x.csv"}).code, 3);
}

TEST(CliClassify, Reports) {
  const CliRun q2 = run({"classify", "Q2"});
  EXPECT_EQ(q2.code, 0);
  EXPECT_NE(q2.out.find("not associative"), std::string::npos);
  EXPECT_NE(q2.out.find("witness (n,d,e)=(16,4,2)"), std::string::npos);
  const CliRun l3 = run({"classify", "L3"});
  EXPECT_NE(l3.out.find("\nassociative"), std::string::npos);
  EXPECT_NE(l3.out.find("(iii)"), std::string::npos);
  const CliRun n = run({"classify", "N"});
  EXPECT_NE(n.out.find("multiplicative: yes"), std::string::npos);
  EXPECT_NE(n.out.find("\nassociative"), std::string::npos);
  EXPECT_NE(n.out.find("all primes <= 50 case (i)"), std::string::npos);
  const CliRun f = run({"classify", "F{1,6}"});
  EXPECT_NE(f.out.find("multiplicative: no"), std::string::npos);
}

TEST(CliVerify, ExitStatusReflectsChecks) {
  EXPECT_EQ(run({"verify", "L2", "all", "10000"}).code, 0);
  const CliRun q2 = run({"verify", "Q2", "algebra", "200"});
  EXPECT_EQ(q2.code, 1);
  EXPECT_NE(q2.out.find("FAIL  associativity"), std::string::npos);
  EXPECT_EQ(run({"verify", "N", "identities", "10000"}).code, 0);
  EXPECT_EQ(run({"verify", "N", "everything", "100"}).code, 2);
  EXPECT_EQ(run({"verify", "N", "all", "100001"}).code, 3);
}

TEST(CliAsymp, FinalRatio) {
  const auto path = kTmp / "cli_asymp.json";
  const CliRun r = run({"asymp", "N", "sigma", "1000000", "--out", path.string()});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(slurp(path));
  const auto& last = j["rows"].back();
  EXPECT_EQ(last["x"], 1000000);
  EXPECT_NEAR(last["ratio"].get<double>(), 1.0, 1e-3);
  EXPECT_TRUE(last.contains("main_term_bound"));
  EXPECT_TRUE(j["summary"].contains("fitted_exponent"));
  EXPECT_EQ(run({"asymp", "N", "phi", "1000"}).code, 2);
}

TEST(CliMaxorder, Modes) {
  const auto path = kTmp / "cli_maxorder.json";
  ASSERT_EQ(run({"maxorder", "N", "tau", "--k", "100000", "--out", path.string()}).code, 0);
  const double tau_ratio = nlohmann::json::parse(slurp(path))["rows"][0]["ratio"].get<double>();
  EXPECT_GT(tau_ratio, 0.7);
  EXPECT_LT(tau_ratio, 0.8);
  ASSERT_EQ(run({"maxorder", "1", "sigma", "--k", "12", "--out", path.string()}).code, 0);
  const auto j = nlohmann::json::parse(slurp(path));
  EXPECT_NEAR(j["rows"][0]["ratio"].get<double>(), 1.0827621932609246, 0.02);
  EXPECT_NEAR(j["summary"]["constant"].get<double>(), 1.0827621932609246, 1e-8);
  EXPECT_EQ(run({"maxorder", "F{1,2}", "sigma"}).code, 2);
  EXPECT_EQ(run({"maxorder", "N", "gamma"}).code, 2);
}

TEST(CliMuKStats, ValueSet) {
  const CliRun r = run({"mu-k-stats", "3", "13"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("-4 13"), std::string::npos);
  EXPECT_NE(r.out.find("2 8"), std::string::npos);
  const CliRun deep = run({"mu-k-stats", "--k", "3", "--a-max", "1000"});
  EXPECT_NE(deep.out.find("leave the 128-bit range at a = 632"), std::string::npos);
  EXPECT_EQ(run({"mu-k-stats", "0", "10"}).code, 2);
}
