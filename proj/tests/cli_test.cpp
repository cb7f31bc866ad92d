#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "fracwave/error.hpp"

using namespace fracwave;
using fracwave::cli::json;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> v;
  std::stringstream ss(s);
  std::string line;
  while (std::getline(ss, line)) v.push_back(line);
  return v;
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fracwave_cli_test_" + name);
}

}  // namespace

TEST(Grid, Parse) {
  const auto g = cli::parse_grid("x:-5:5:101,t:0:1:11");
  EXPECT_EQ(g.x.count, 101u);
  EXPECT_DOUBLE_EQ(g.x.at(100), 5.0);
  EXPECT_DOUBLE_EQ(g.t.at(5), 0.5);
  EXPECT_THROW(cli::parse_grid("x:0:1:10"), InvalidArgument);
  EXPECT_THROW(cli::parse_grid("x:0:1:10,t:0:1"), InvalidArgument);
  EXPECT_THROW(cli::parse_grid("x:0:1:abc,t:0:1:2"), InvalidArgument);
  EXPECT_THROW(cli::parse_grid("x:0:1:0,t:0:1:2"), InvalidArgument);
  EXPECT_THROW(cli::parse_grid("x:0:1:3,y:0:1:2"), InvalidArgument);
}

TEST(Fracderiv, HalfDerivativeOfIdentity) {
  const Result r = run({"fracderiv", "--alpha", "0.5", "--power", "1", "--z", "1"});
  ASSERT_EQ(r.status, 0);
  EXPECT_NEAR(std::stod(r.out), 1.1283791671, 1e-6);
  const Result q = run({"fracderiv", "--alpha", "0.5", "--power", "1", "--z", "1", "--method", "quadrature"});
  ASSERT_EQ(q.status, 0);
  EXPECT_NEAR(std::stod(q.out), 1.1283791671, 1e-6);
}

TEST(Fracderiv, DomainErrorIsJson) {
  const Result r = run({"fracderiv", "--alpha", "0.5", "--power", "1", "--z", "-1"});
  EXPECT_EQ(r.status, 1);
  const json j = json::parse(r.err);
  EXPECT_TRUE(j["error"].contains("kind"));
  EXPECT_TRUE(j["error"].contains("message"));
}

TEST(Usage, ExitCodeTwo) {
  EXPECT_EQ(run({}).status, 2);
  EXPECT_EQ(run({"bogus"}).status, 2);
  EXPECT_EQ(run({"eval", "burgers"}).status, 2);
  EXPECT_EQ(run({"fracderiv", "--alpha", "x", "--power", "1", "--z", "1"}).status, 2);
  EXPECT_EQ(run({"fracderiv", "--alpha", "0.5", "--power", "1", "--z", "1", "--method", "euler"}).status, 2);
}

TEST(Eval, ShockCsv) {
  const Result r = run({"eval", "burgers", "--family", "T2tanh", "--alpha", "1", "--beta", "1", "--k", "1", "--A", "1",
                        "--p", "-1", "--q", "1", "--grid", "x:-5:5:101,t:0:1:11"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto rows = lines(r.out);
  ASSERT_EQ(rows.size(), 1112u);
  EXPECT_EQ(rows[0], "x,t,u");
  EXPECT_EQ(r.out.find('\r'), std::string::npos);
  EXPECT_EQ(r.out.find("nan"), std::string::npos);
  EXPECT_EQ(r.out.find("inf"), std::string::npos);
  for (std::size_t t = 0; t < 11; ++t) {
    double prev = -INFINITY;
    for (std::size_t i = 0; i < 101; ++i) {
      const std::string& row = rows[1 + t * 101 + i];
      const double u = std::stod(row.substr(row.rfind(',') + 1));
      EXPECT_GT(u, prev) << row;
      prev = u;
    }
  }
}

TEST(Eval, CoupledHasTwoColumns) {
  const Result r = run({"eval", "coupled-burgers", "--family", "T2tanh", "--L", "0.5", "--M", "-0.5", "--B0", "0.25",
                        "--p", "-1", "--q", "0.25", "--grid", "x:-1:1:3,t:0:1:2"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto rows = lines(r.out);
  EXPECT_EQ(rows[0], "x,t,u,v");
  EXPECT_EQ(rows.size(), 7u);
}

TEST(Eval, PoleGuardedPointsAreCounted) {
  const Result r = run({"eval", "burgers", "--family", "T3", "--k", "1", "--A", "1", "--p", "1", "--grid",
                        "x:-1:1:5,t:0:0:1"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto rows = lines(r.out);
  EXPECT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows.back(), "# omitted 1 points near poles");
}

TEST(Eval, ValidationErrors) {
  EXPECT_EQ(run({"eval", "burgers", "--family", "T2tanh", "--p", "1", "--q", "1"}).status, 1);
  EXPECT_EQ(run({"eval", "burgers", "--family", "T2tanh", "--p", "-1", "--q", "1", "--r", "1"}).status, 1);
  EXPECT_EQ(run({"eval", "burgers", "--family", "T2tanh", "--p", "-1", "--q", "1", "--c", "7"}).status, 1);
  EXPECT_EQ(run({"eval", "burgers", "--family", "T2tan", "--p", "1", "--q", "1"}).status, 1);
  EXPECT_EQ(run({"eval", "kdv", "--family", "T2tanh"}).status, 1);
  EXPECT_EQ(run({"eval", "burgers", "--family", "T2tanh", "--p", "-1", "--q", "1", "--alpha", "0.5", "--beta", "0.5",
                 "--grid", "x:-1:1:3,t:0:1:3"})
                .status,
            1);
  EXPECT_EQ(run({"eval", "burgers", "--family", "T2tanh", "--p", "-1", "--q", "1", "--grid", "x:0:1"}).status, 1);
}

TEST(Eval, FractionalOrders) {
  const Result r = run({"eval", "burgers", "--family", "T2tanh", "--p", "-1", "--q", "1", "--alpha", "0.5", "--beta",
                        "0.75", "--grid", "x:0:1:5,t:0:1:5"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(lines(r.out).size(), 26u);
}

TEST(List, FamiliesJson) {
  const Result r = run({"list", "burgers"});
  ASSERT_EQ(r.status, 0);
  const json j = json::parse(r.out);
  ASSERT_EQ(j.size(), 9u);
  for (const auto& f : j) {
    for (const char* key : {"equation", "family_id", "branch", "constraints", "u", "paper_eq"}) {
      EXPECT_TRUE(f.contains(key)) << key;
    }
  }
  const json all = json::parse(run({"list"}).out);
  EXPECT_GT(all.size(), 35u);
  EXPECT_TRUE(json::parse(run({"list", "coupled-burgers"}).out)[0].contains("v"));
}

TEST(Derive, BurgersReport) {
  const Result r = run({"derive", "burgers"});
  ASSERT_EQ(r.status, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["system"].size(), 3u);
  for (const auto& m : j["printed_system"]["comparison"]) EXPECT_TRUE(m["match"].get<bool>());
  ASSERT_FALSE(j["derived_sets"].empty());
  EXPECT_EQ(j["derived_sets"][0]["assignments"]["A1"], "A*k*p");
  EXPECT_EQ(j["derived_sets"][0]["verification"]["verdict"], "verified");
  EXPECT_EQ(j["printed_sets"][0]["verification"]["verdict"], "refuted");
  EXPECT_EQ(run({"derive", "burgers"}).out, r.out);
}

TEST(Verify, AuditJsonAndSeed) {
  const Result a = run({"verify", "foam-drainage", "--draws", "1", "--samples", "20"});
  ASSERT_EQ(a.status, 0) << a.err;
  const json j = json::parse(a.out);
  EXPECT_EQ(j["seed"], cli::kDefaultSeed);
  ASSERT_FALSE(j["reports"].empty());
  for (const auto& r : j["reports"]) {
    for (const char* key : {"subject", "kind", "params", "max_residual", "scaled", "samples", "skipped", "verdict"}) {
      EXPECT_TRUE(r.contains(key)) << key;
    }
  }
  EXPECT_EQ(run({"verify", "foam-drainage", "--draws", "1", "--samples", "20"}).out, a.out);
  const Result b = run({"verify", "foam-drainage", "--draws", "1", "--samples", "20", "--seed", "11"});
  EXPECT_EQ(json::parse(b.out)["seed"], 11u);
  EXPECT_NE(b.out, a.out);
  EXPECT_EQ(run({"verify", "kdv"}).status, 1);
  EXPECT_EQ(run({"verify", "--seed", "nope"}).status, 1);
}

TEST(Verify, SeedFromEnvironment) {
  ::setenv("FRACWAVE_SEED", "11", 1);
  const Result env = run({"verify", "foam-drainage", "--draws", "1", "--samples", "20"});
  ::unsetenv("FRACWAVE_SEED");
  const Result flag = run({"verify", "foam-drainage", "--draws", "1", "--samples", "20", "--seed", "11"});
  EXPECT_EQ(env.out, flag.out);
}

TEST(Output, FileAndConfig) {
  const auto out = temp_file("out.txt");
  ASSERT_EQ(run({"-o", out.string(), "fracderiv", "--alpha", "0.5", "--power", "2", "--z", "1"}).status, 0);
  std::ifstream in(out);
  double v = 0;
  in >> v;
  EXPECT_NEAR(v, 2.0 / std::tgamma(2.5), 1e-12);

  const auto cfg = temp_file("cfg.json");
  std::ofstream(cfg) << R"({"command": "fracderiv", "alpha": 0.5, "power": 2, "z": 1})";
  const Result c = run({"--config", cfg.string()});
  ASSERT_EQ(c.status, 0) << c.err;
  EXPECT_NEAR(std::stod(c.out), v, 1e-12);
  const Result o = run({"fracderiv", "--config", cfg.string(), "--z", "2"});
  ASSERT_EQ(o.status, 0) << o.err;
  EXPECT_NEAR(std::stod(o.out), v * std::pow(2.0, 1.5), 1e-12);
  EXPECT_EQ(run({"--config", temp_file("missing.json").string()}).status, 1);
  std::filesystem::remove(out);
  std::filesystem::remove(cfg);
}
