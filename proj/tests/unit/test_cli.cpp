#include <cmath>
#include <cstdio>
#include <string>

#include <gtest/gtest.h>
#include <sys/wait.h>

#include "serialize.hpp"

using namespace gmbif;
using cli::json;

TEST(Serialize, ShortestRoundTrip) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0075}) EXPECT_EQ(std::stod(cli::fmt(v)), v);
  EXPECT_EQ(cli::fmt(0.5), "0.5");
}

TEST(Serialize, NonFiniteBecomesNull) {
  UnfoldingReport r;
  const json j = cli::to_json(r);
  EXPECT_TRUE(j["jac_det"].is_null());
  EXPECT_TRUE(cli::to_json(Vec2{NAN, 1.0})[0].is_null());
}

TEST(Serialize, EquilibriaCsv) {
  const Params p{0.3, 0.5, 0.0075, 0.4};
  std::vector<cli::Row> rows;
  for (const auto& e : equilibria(p)) rows.push_back({e, "x"});
  const std::string csv = cli::equilibria_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "label,u,v,delta,kind");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  EXPECT_NE(csv.find("\nE2,"), std::string::npos);
}

TEST(Serialize, JsonRoundTrip) {
  const Params p{0.3, 0.5, 0.0075, 0.4};
  json j = {{"params", cli::to_json(p)}};
  for (const auto& c : classify_all(p)) j["eq"].push_back(cli::to_json(c));
  const std::string once = j.dump();
  EXPECT_EQ(json::parse(once).dump(), once);
  EXPECT_EQ(json::parse(once)["params"]["b"].get<double>(), 0.0075);
}

TEST(Serialize, SvgIsSelfContained) {
  const Params p{0.3, 0.5, 0.0075, 0.4};
  const auto tr = integrate(p, {0.1, 0.05}, 20.0, 1e-8);
  const std::string svg = cli::portrait_svg(p, {{&tr, false}, {&tr, true}}, equilibria(p));
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  EXPECT_NE(svg.find("stroke-dasharray"), std::string::npos);
  EXPECT_EQ(svg.find("href"), std::string::npos);
  EXPECT_EQ(svg.find("<style"), std::string::npos);
  std::size_t n = 0;
  for (auto k = svg.find("<circle"); k != std::string::npos; k = svg.find("<circle", k + 1)) ++n;
  EXPECT_EQ(n, 3u);
}

#ifdef GMBIF_EXE

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  Run r;
  const std::string cmd = std::string(GMBIF_EXE) + " " + args + " 2>/dev/null";
  FILE* f = popen(cmd.c_str(), "r");
  if (!f) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
  const int st = pclose(f);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

} // namespace

TEST(Cli, EquilibriaJson) {
  const auto r = run("equilibria --c 0.3 --beta 0.5 --b 0.0075 --d 0.4");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  ASSERT_EQ(j["equilibria"].size(), 3u);
  EXPECT_EQ(j["equilibria"][0]["label"], "E0");
  EXPECT_EQ(j["equilibria"][1]["label"], "E2");
  EXPECT_EQ(j["equilibria"][2]["kind"], "Saddle");
  EXPECT_NEAR(j["equilibria"][1]["u"].get<double>(), 0.15, 1e-15);
}

TEST(Cli, EquilibriaCsvHeader) {
  const auto r = run("equilibria --c 0.3 --beta 0.5 --b 0.0075 --d 0.4 --format csv");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "label,u,v,delta,kind");
}

TEST(Cli, InvalidInputExitsTwo) {
  EXPECT_EQ(run("equilibria --c 0.3 --beta 0.5 --b -1 --d 0.4").code, 2);
  EXPECT_EQ(run("equilibria --c 0.3 --beta 0.5 --b abc --d 0.4").code, 2);
  EXPECT_EQ(run("equilibria --c 0.3 --beta 0.5 --d 0.4").code, 2);
  EXPECT_EQ(run("equilibria --c 0.3 --beta 0.5 --b 0.01 --d 0.4 --bogus").code, 2);
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("portrait --c 0.3 --beta 0.5 --b 0.0075 --d 0.4 --seeds ring:0").code, 2);
  EXPECT_EQ(run("portrait --c 0.3 --beta 0.5 --b 0.0075 --d 0.4 --seeds \"\"").code, 2);
}

TEST(Cli, NormalFormDefaultsToLocus) {
  const auto r = run("normal-form --c 0.4 --beta 0.5477");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["params"]["d"].get<double>(), 0.4);
  EXPECT_NEAR(j["cusp"]["f20"].get<double>(), -0.4 / 0.5477, 1e-12);
  const auto r6 = json::parse(run("normal-form --c 0.4 --beta 0.5477 --jet-order 6").out);
  for (const char* k : {"f20", "f40", "f31"})
    EXPECT_NEAR(j["cusp"][k].get<double>(), r6["cusp"][k].get<double>(), 1e-8) << k;
}

TEST(Cli, NormalFormEpsilonZero) {
  const auto r = run("normal-form --c 0.4 --beta 0.5477 --epsilon 0,0,0");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out)["unfolding"];
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(j["l"][k].get<double>(), 0.0, 1e-8);
  EXPECT_NEAR(std::abs(j["l"][3].get<double>()), 1.0, 1e-12);
  EXPECT_EQ(run("normal-form --c 0.4 --beta 0.5477 --epsilon 0,0").code, 2);
}

TEST(Cli, PortraitSvgAndPartialFailure) {
  const auto r = run("portrait --c 0.3 --beta 0.5 --b 0.0075 --d 0.4 --seeds ring:4 --format svg");
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("<svg", 0), 0u);
  const auto mixed = run("portrait --c 0.3 --beta 0.5 --b 0.0075 --d 0.4 --seeds \"0.1,0.05;0.1,-1\" --t-max 20");
  ASSERT_EQ(mixed.code, 0);
  const json j = json::parse(mixed.out);
  EXPECT_TRUE(j["trajectories"][1].contains("error"));
}

TEST(Cli, Deterministic) {
  const std::string args = "scan --c 0.4 --beta 0.6 --b 0.005:0.03:4 --d 0.3:0.5:3";
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json::parse(a.out).dump(2) + "\n", a.out);
}

TEST(Cli, RangesOnlyForScan) {
  EXPECT_EQ(run("equilibria --c 0.3:0.4:2 --beta 0.5 --b 0.0075 --d 0.4").code, 2);
}

TEST(Cli, ShowConfig) {
  const auto r = run("--show-config hopf");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["command"], "hopf");
  EXPECT_DOUBLE_EQ(j["t_max"].get<double>(), 200.0);
  EXPECT_TRUE(j.contains("integrator"));
}

TEST(Cli, VerifySubsetAndJson) {
  const auto r = run("verify --only equilibria,4 --json");
  EXPECT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  ASSERT_EQ(j["criteria"].size(), 2u);
  EXPECT_EQ(j["criteria"][1]["key"], "saddle-node");
  EXPECT_EQ(run("verify --only nope").code, 2);
  EXPECT_EQ(run("verify --only cusp").code, 4);
}

#endif
