#include <gtest/gtest.h>

#include <sstream>
#include <string>
#include <vector>

#include "twoslope/cli.hpp"
#include "twoslope/json_io.hpp"

using namespace twoslope;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "twoslope");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, EvalMatchesLibrary) {
  const CliRun r = run({"eval", "--s", "0.5", "--lambda", "1", "--delta", "0.5", "--tol", "1e-10"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  const EnergyResult e = energy(build_canonical(ProblemParams(0.5, 1, 0.5, 1)), 0.5, 1e-10);
  EXPECT_EQ(j["value"].get<double>(), e.value);
  EXPECT_EQ(j["periods_summed"].get<long>(), e.periods_summed);
  EXPECT_EQ(j["method"], "closed_form");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"eval", "--s", "1.5", "--lambda", "1", "--delta", "0.5"}).code, kExitInvalid);
  EXPECT_EQ(run({"eval", "--lambda", "1"}).code, kExitInvalid);
  EXPECT_EQ(run({"nonsense"}).code, kExitInvalid);
  EXPECT_EQ(run({}).code, kExitInvalid);
  const CliRun c = run({"eval", "--s", "0.5", "--lambda", "1", "--delta", "0.5", "--tail", "crude", "--tol", "1e-300"});
  EXPECT_EQ(c.code, kExitCertification);
  EXPECT_NE(c.err.find("certification"), std::string::npos);
}

TEST(Cli, Version) {
  const CliRun r = run({"--version"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_EQ(r.out.rfind("twoslope ", 0), 0u);
  EXPECT_NE(r.out.find("1e-06"), std::string::npos);
}

TEST(Cli, CsvOutputs) {
  const CliRun sw = run({"sweep", "--s", "0.5", "--deltas", "0.1,0.01"});
  ASSERT_EQ(sw.code, kExitOk) << sw.err;
  EXPECT_EQ(sw.out.rfind("delta,sigma,energy,ratio,tail_bound\n", 0), 0u);
  const CliRun ex = run({"extremal", "--format", "csv", "--deltas", "0.1"});
  ASSERT_EQ(ex.code, kExitOk) << ex.err;
  EXPECT_EQ(ex.out.rfind("delta,energy_s0,delta_energy_s1\n", 0), 0u);
}

TEST(Cli, IdenticalAcrossThreadCounts) {
  const std::vector<std::string> base{"minimize", "--s", "0.5", "--lambda", "5", "--delta", "0.1", "--L", "3",
                                      "--multistart", "4"};
  auto with = [&](const char* n) {
    std::vector<std::string> a{"--threads", n};
    a.insert(a.end(), base.begin(), base.end());
    return run(a);
  };
  const CliRun one = with("1"), four = with("4");
  ASSERT_EQ(one.code, kExitOk) << one.err;
  EXPECT_EQ(one.out, four.out);
}

TEST(Cli, SelftestPasses) {
  const CliRun r = run({"selftest"});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, Misfit) {
  const CliRun r = run({"misfit", "--g-plus", "30", "--g-minus", "10", "--nu-plus", "0.3", "--nu-minus", "0.25",
                     "--c-plus", "1", "--c-minus", "1.01"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j["burgers_sum"].get<double>(), j["c"].get<double>(), 1e-14);
}
