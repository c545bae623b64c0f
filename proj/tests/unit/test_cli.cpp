#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "towerlift/cli.hpp"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "towerlift_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

Outcome run_job(const std::string& command, const json& job, std::vector<std::string> extra = {}) {
  fs::path in = scratch(command + "_in.json");
  std::ofstream(in) << job.dump();
  std::vector<std::string> args{command, "--input", in.string()};
  args.insert(args.end(), extra.begin(), extra.end());
  std::ostringstream out, err;
  int code = towerlift::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

const json kLiftJob = {{"d", 0},
                       {"m", 1},
                       {"n", 0},
                       {"f", "t"},
                       {"generators", {"x1", "t-2"}},
                       {"gens", {"x1 + (t-2)^2", "t - 2 + x1^2"}}};

}  // namespace

TEST(Cli, Height) {
  Outcome o = run_job("height", {{"d", 0}, {"m", 1}, {"n", 0}, {"f", "t"}, {"generators", {"x1", "t-2"}}});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(json::parse(o.out), json({{"height", 2}}));
}

TEST(Cli, NormalizeExponents) {
  Outcome o = run_job("normalize", {{"d", 0}, {"m", 1}, {"n", 0}, {"f", "t"}, {"generators", {"x1"}}});
  ASSERT_EQ(o.code, 0) << o.err;
  json theta = json::parse(o.out)["payload"]["theta"];
  EXPECT_EQ(theta["ti"], json({1}));
  EXPECT_EQ(theta["si"], json({1}));
}

TEST(Cli, TamperedCertificateNamesFirstFailure) {
  Outcome o = run_job("lift", kLiftJob);
  ASSERT_EQ(o.code, 0) << o.err;
  json cert = json::parse(o.out);
  EXPECT_EQ(run_job("verify", cert).code, 0);

  std::string& c = cert["payload"]["membership_cofactors"][0][0].get_ref<std::string&>();
  c = "(" + c + ") + 2";
  Outcome v = run_job("verify", cert);
  EXPECT_EQ(v.code, 4);
  json r = json::parse(v.out);
  EXPECT_EQ(r["verdict"], "fail");
  EXPECT_EQ(r["failure"], "membership_cofactors[0]");
}

TEST(Cli, DeterministicBytes) {
  Outcome a = run_job("lift", kLiftJob, {"--seed", "5"});
  Outcome b = run_job("lift", kLiftJob, {"--seed", "5"});
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json::parse(a.out)["payload"]["seed"], 5);
}

TEST(Cli, ExitCodes) {
  json unknown = kLiftJob;
  unknown["colour"] = "blue";
  EXPECT_EQ(run_job("lift", unknown).code, 1);

  json bad_text = kLiftJob;
  bad_text["generators"][1] = "t-+";
  Outcome p = run_job("lift", bad_text);
  EXPECT_EQ(p.code, 1);
  EXPECT_NE(p.err.find("generators[1]"), std::string::npos);

  json pre = kLiftJob;
  pre["gens"] = {"x1 + t - 2"};
  Outcome q = run_job("lift", pre);
  EXPECT_EQ(q.code, 2);
  EXPECT_EQ(json::parse(q.out)["error"], "precondition");

  json unknown_cmd = kLiftJob;
  unknown_cmd["command"] = "factor";
  std::ostringstream out, err;
  fs::path in = scratch("cmd.json");
  std::ofstream(in) << unknown_cmd.dump();
  EXPECT_EQ(towerlift::cli::run({"--input", in.string()}, out, err), 1);

  std::ofstream(scratch("broken.json")) << "{\"d\": 0,";
  EXPECT_EQ(towerlift::cli::run({"height", "--input", scratch("broken.json").string()}, out, err), 1);
}

TEST(Cli, BudgetExhausted) {
  json job = {{"d", 1},
              {"m", 2},
              {"n", 1},
              {"f", "t^2 + z1"},
              {"generators", {"x1^3*x2*y1 - x2^2*t + z1", "x2^3*y1 - x1*z1 + t^2*x1", "z1^2*x1 - y1 + 3"}}};
  Outcome o = run_job("normalize", job, {"--budget-ms", "1"});
  EXPECT_EQ(o.code, 3) << o.out << o.err;
}

TEST(Cli, UnimodularAndOracle) {
  Outcome u = run_job("certify-unimodular", {{"d", 0}, {"m", 1}, {"n", 0}, {"f", "t"}, {"vector", {"x1", "1 - x1*t"}}});
  ASSERT_EQ(u.code, 0) << u.err;
  EXPECT_TRUE(json::parse(u.out)["payload"]["unimodular"].get<bool>());

  Outcome o = run_job("oracle-check", {{"d", 0},
                                       {"m", 2},
                                       {"n", 0},
                                       {"f", "1"},
                                       {"field", "Fp"},
                                       {"prime", 32003},
                                       {"generators", {"x1^2 - x2", "x2*t"}},
                                       {"query", "x1^2*t"},
                                       {"degree_bound", 2}});
  ASSERT_EQ(o.code, 0) << o.err;
  json r = json::parse(o.out);
  EXPECT_TRUE(r["groebner"].get<bool>());
  EXPECT_EQ(r["oracle"], "member");
}

TEST(Cli, SetTheoreticAndOutputFile) {
  json job = {{"d", 0}, {"m", 2}, {"n", 0}, {"f", "t"}, {"generators", {"x1", "x2", "t-2"}}, {"gens", {"x1", "x2", "t-2"}}};
  fs::path out = scratch("st.json");
  Outcome o = run_job("settheoretic", job, {"--output", out.string()});
  ASSERT_EQ(o.code, 0) << o.err;
  std::ostringstream a, b;
  EXPECT_EQ(towerlift::cli::run({"verify", "--input", out.string()}, a, b), 0);
  EXPECT_EQ(json::parse(a.str())["verdict"], "pass");
}
