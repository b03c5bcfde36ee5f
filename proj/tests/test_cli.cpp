#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"
#include "qsep/errata.hpp"
#include "qsep/io.hpp"
#include "qsep/scan.hpp"

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(QSEP_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), p)) out += buf.data();
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  for (std::string line; std::getline(is, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

std::string tmp(const std::string& name) { return (std::filesystem::temp_directory_path() / name).string(); }

}  // namespace

TEST(Cli, AnalyzeWerner) {
  const auto path = tmp("qsep_cli_w.json");
  qsep::write_density_file(path, qsep::werner(0.6));
  const auto r = run("analyze --json " + path);
  ASSERT_EQ(r.code, 0) << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_NEAR(j["negativity"].get<double>(), 0.4, 1e-12);
  EXPECT_EQ(j["negativity"].get<double>(), qsep::analyze(qsep::werner(0.6)).negativity);
  const auto t = run("analyze " + path);
  EXPECT_NE(t.out.find("negativity"), std::string::npos);
  EXPECT_NE(t.out.find("0.4"), std::string::npos);
  std::filesystem::remove(path);
}

TEST(Cli, AnalyzeMaximallyMixed) {
  const auto path = tmp("qsep_cli_mixed.json");
  qsep::write_density_file(path, qsep::from_spectrum(qsep::Spectrum4::maximally_mixed()));
  const auto j = nlohmann::json::parse(run("analyze --json " + path).out);
  EXPECT_TRUE(j["separable"].get<bool>());
  EXPECT_EQ(j["negativity"].get<double>(), 0.0);
  EXPECT_NEAR(j["concurrence"].get<double>(), 0.0, 1e-15);
  std::filesystem::remove(path);
}

TEST(Cli, AnalyzeRejectsNonHermitian) {
  const auto path = tmp("qsep_cli_bad.json");
  auto j = qsep::to_json(qsep::werner(0.5));
  j["matrix"][0][1] = {0.2, 0.0};
  {
    std::ofstream os(path);
    os << j.dump();
  }
  const auto r = run("analyze " + path);
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("hermiticity"), std::string::npos);
  EXPECT_EQ(run("analyze /nonexistent.json").code, 2);
  std::filesystem::remove(path);
}

TEST(Cli, ScanFig1) {
  const auto r = run("scan --fig1");
  ASSERT_EQ(r.code, 0);
  const auto rows = csv_rows(r.out);
  ASSERT_EQ(rows.size(), 402u);
  double best = -1, arg = 0;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double n = std::stod(rows[i][1]);
    if (n > best) {
      best = n;
      arg = std::stod(rows[i][0]);
    }
  }
  EXPECT_NEAR(best, 1.0, 1e-12);
  EXPECT_NEAR(arg, 0.7854, 1e-4);
}

TEST(Cli, ScanFig2Endpoints) {
  const auto rows = csv_rows(run("scan --fig2 --d 0.6 --f 0.1").out);
  ASSERT_EQ(rows.size(), 102u);
  EXPECT_EQ(rows[0][0], "a");
  EXPECT_LT(std::stod(rows.back()[1]), 1e-9);
  const auto all = csv_rows(run("scan --fig2").out);
  ASSERT_EQ(all.size(), 304u);
  EXPECT_EQ(all[0][0], "d");
  EXPECT_EQ(all[0][1], "f");
}

TEST(Cli, ScanMaximallyMixed) {
  const auto rows = csv_rows(run("scan --family rotation14 --spectrum 0.25,0.25,0.25,0.25 --phi 0:3.14159:100").out);
  ASSERT_EQ(rows.size(), 102u);
  for (std::size_t i = 1; i < rows.size(); ++i) EXPECT_LT(std::abs(std::stod(rows[i][1])), 1e-12);
}

TEST(Cli, ScanPiLiteralAndAssignments) {
  const auto a = run("scan --family rotation14 --phi 0:pi:400");
  EXPECT_EQ(a.out, run("scan --fig1").out);
  const auto b = run("scan --family first-column d=0.6 f=0.1 a=0:1:100");
  EXPECT_EQ(b.out, run("scan --fig2 --d 0.6 --f 0.1").out);
}

TEST(Cli, ScanIsByteIdenticalAcrossThreads) {
  const std::string args = "scan --family xtype --spectrum 0.5,0.3,0.15,0.05 --theta1 0:1.5:20 --theta2 0:1.5:20";
  EXPECT_EQ(run(args + " --threads 1").out, run(args + " --threads 6").out);
  const std::string rnd = "scan --family cellular --theta1 0:1.5:2 --alpha2 0:3:2 --samples 30 --seed 9";
  EXPECT_EQ(run(rnd + " --threads 1").out, run(rnd + " --threads 4").out);
}

TEST(Cli, ScanErrors) {
  EXPECT_EQ(run("scan").code, 2);
  EXPECT_EQ(run("scan --family nope --phi 0:1:3").code, 2);
  EXPECT_EQ(run("scan --family rotation14").code, 2);
  EXPECT_EQ(run("scan --family rotation14 --phi 0:1").code, 2);
  EXPECT_EQ(run("scan --family rotation14 --phi 0:1:4 --spectrum 1,1,0,0").code, 2);
  EXPECT_EQ(run("scan --fig1 --fig2").code, 2);
  EXPECT_EQ(run("bogus").code, 2);
}

TEST(Cli, WernerBoundaries) {
  const auto r = run("werner --p 0.6 --boundaries");
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("paper (see errata)"), std::string::npos);
  const auto j = nlohmann::json::parse(run("werner --p 0.6 --boundaries --json").out);
  EXPECT_NEAR(j["boundaries"]["computed"][0].get<double>(), 0.61548, 1e-5);
  EXPECT_NEAR(j["boundaries"]["computed"][1].get<double>(), 0.95531, 1e-5);
  EXPECT_NEAR(j["boundaries"]["published"][0].get<double>(), 0.421, 1e-3);
  EXPECT_NEAR(j["boundaries"]["published"][1].get<double>(), 1.15, 1e-2);
  EXPECT_NEAR(j["report"]["negativity"].get<double>(), 0.4, 1e-12);
}

TEST(Cli, WernerLowP) {
  const auto r = run("werner --p 0.2 --boundaries");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("separable for all phi"), std::string::npos);
  EXPECT_EQ(run("werner --p 1.5").code, 2);
  EXPECT_EQ(run("werner").code, 2);
}

TEST(Cli, WernerCurve) {
  const auto j = nlohmann::json::parse(run("werner --p 0.6 --curve 0:pi/2:10 --json").out);
  ASSERT_EQ(j["curve"].size(), 11u);
}

TEST(Cli, PureCommand) {
  const auto j = nlohmann::json::parse(run("pure --a 1 --d 0.3 --f 0.2 --json").out);
  EXPECT_TRUE(j["report"]["separable"].get<bool>());
  const auto k = nlohmann::json::parse(run("pure a=0.7071067811865476 d=0.7071067811865476 f=0.7071067811865476 --json").out);
  EXPECT_FALSE(k["report"]["separable"].get<bool>());
  EXPECT_EQ(run("pure --a 0.5").code, 2);
  EXPECT_EQ(run("pure --a 1.5 --d 0 --f 0").code, 2);
}

TEST(Cli, SavedStateRoundTrip) {
  const auto path = tmp("qsep_cli_saved.json");
  const auto w = nlohmann::json::parse(run("werner --p 0.7 --phi 0.3 --json --save " + path).out);
  const auto a = nlohmann::json::parse(run("analyze --json " + path).out);
  EXPECT_EQ(w["report"], a);
  std::filesystem::remove(path);
}

TEST(Cli, ErrataReport) {
  const auto r = run("errata --samples 200");
  ASSERT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema_version"], 1);
  const auto* e = qsep::find_entry(j, "werner_generator_x_type");
  ASSERT_NE(e, nullptr);
  for (const auto& b : (*e)["branches"]) EXPECT_GT(b["unitarity_violation"].get<double>(), 1e-6);
  EXPECT_NEAR((*qsep::find_entry(j, "rotated_werner_ppt_matrix"))["printed_matrix_trace"].get<double>(), 2.0, 1e-12);
  EXPECT_EQ(r.out, run("errata --samples 200").out);
}
