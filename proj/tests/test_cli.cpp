#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

using Json = nlohmann::ordered_json;

namespace {

struct CliRun {
  int code = -1;
  std::string out;
};

CliRun run(const std::string& args) {
  const std::string cmd = std::string(POSLAB_CLI) + " " + args + " 2>/dev/null";
  CliRun r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return r;
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const char* name) { return std::string(POSLAB_TEST_DATA) + "/" + name; }

std::string temp(const char* name) { return ::testing::TempDir() + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST(CliSolve, MinimumOfXOnInterval) {
  const CliRun r = run("solve --input " + data("min_x_interval.json") + " --level 2");
  ASSERT_EQ(r.code, 0) << r.out;
  const Json j = Json::parse(r.out);
  EXPECT_EQ(j["result"]["kind"], "finite");
  EXPECT_NEAR(j["result"]["lower_bound"].get<double>(), -1.0, 1e-6);
  EXPECT_TRUE(j["result"]["verification"]["pass"].get<bool>());
}

TEST(CliSolve, InputErrorsAndLowLevel) {
  EXPECT_EQ(run("solve --input " + data("malformed_poly.json") + " --level 2").code, 1);
  EXPECT_EQ(run("solve --input " + data("malformed_json.json") + " --level 2").code, 1);
  EXPECT_EQ(run("solve --input " + data("does_not_exist.json") + " --level 2").code, 1);
  EXPECT_EQ(run("solve --input " + data("min_x_interval.json")).code, 1);
  EXPECT_EQ(run("nonsense").code, 1);
  const CliRun low = run("solve --input " + data("min_x_interval.json") + " --level 0");
  EXPECT_EQ(low.code, 2);
  EXPECT_NE(Json::parse(low.out)["result"]["reason"].get<std::string>().find("below"), std::string::npos);
}

TEST(CliCertifyVerify, ExitCodes) {
  const std::string cert = temp("poslab_cli_cert.json");
  const CliRun c = run("certify --input " + data("two_plus_x.json") + " --level 2 --certificate " + cert);
  ASSERT_EQ(c.code, 0) << c.out;
  EXPECT_EQ(run("verify --input " + data("two_plus_x.json") + " --certificate " + cert).code, 0);

  Json j = Json::parse(slurp(cert));
  j["entries"][0]["gram"][0][0] = j["entries"][0]["gram"][0][0].get<double>() + 0.1;
  const std::string bad = temp("poslab_cli_cert_bad.json");
  std::ofstream(bad) << j.dump(2);
  const CliRun v = run("verify --input " + data("two_plus_x.json") + " --certificate " + bad);
  EXPECT_EQ(v.code, 3);
  EXPECT_FALSE(Json::parse(v.out)["report"]["pass"].get<bool>());

  EXPECT_EQ(run("verify --input " + data("two_plus_x.json") + " --certificate " + temp("missing.json")).code, 1);
  EXPECT_EQ(run("verify --input " + data("min_x_interval.json") + " --certificate " + cert).code, 3);
  EXPECT_EQ(run("verify --input " + data("box_linear.json") + " --certificate " + cert).code, 1);
}

TEST(CliConverge, CsvColumns) {
  const CliRun r = run("converge --input " + data("min_x_interval.json") + " --levels 2,4,6");
  ASSERT_EQ(r.code, 0);
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "k,f_k_star,grid_f_star,gap,gap_bound");
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    std::istringstream cells(line);
    std::string k, fk, gf, gap, bound;
    std::getline(cells, k, ',');
    std::getline(cells, fk, ',');
    std::getline(cells, gf, ',');
    std::getline(cells, gap, ',');
    std::getline(cells, bound, ',');
    EXPECT_LE(std::abs(std::stod(gap)), 1e-6) << line;
    EXPECT_EQ(bound, "NA");
  }
  EXPECT_EQ(rows, 3);

  const CliRun box = run("converge --input " + data("box_linear.json") + " --levels 2:4 --format json");
  ASSERT_EQ(box.code, 0);
  const Json j = Json::parse(box.out);
  ASSERT_EQ(j["rows"].size(), 2u);
  EXPECT_LE(j["rows"][0]["f_k_star"].get<double>(), j["rows"][1]["f_k_star"].get<double>() + 1e-6);

  EXPECT_EQ(run("converge --input " + data("min_x_interval.json") + " --levels 6:2").code, 1);
  EXPECT_EQ(run("converge --input " + data("min_x_interval.json") + " --levels ''").code, 1);
}

TEST(CliBounds, Values) {
  const CliRun r = run("bounds --c 1 --d 1 --n 1 --norm 1 --fstar 1 --level 8");
  ASSERT_EQ(r.code, 0);
  const Json j = Json::parse(r.out);
  EXPECT_DOUBLE_EQ(j["bounds"]["schmuedgen"].get<double>(), 2.0);
  EXPECT_NEAR(j["bounds"]["putinar"].get<double>(), 2.718281828, 1e-8);
  EXPECT_NEAR(j["bounds"]["gap"]["value"].get<double>(), 2.8854, 1e-4);
  const Json low = Json::parse(run("bounds --c 1 --d 1 --n 1 --norm 1 --fstar 1 --level 7").out);
  EXPECT_TRUE(low["bounds"]["gap"]["value"].is_null());
  EXPECT_EQ(run("bounds --c 1 --d 1 --n 1 --norm 1 --fstar -1").code, 1);
}

TEST(CliLiftEstimateRound, Reports) {
  const CliRun lift = run("lift --input " + data("lift_x_plus_2.json"));
  ASSERT_EQ(lift.code, 0) << lift.out;
  const Json l = Json::parse(lift.out);
  EXPECT_DOUBLE_EQ(l["parameters"]["L"].get<double>(), 2.0);
  EXPECT_DOUBLE_EQ(l["parameters"]["lambda"].get<double>(), 4.0);
  EXPECT_EQ(l["parameters"]["k"], 1);

  const CliRun est = run("estimate --input " + data("loj_cubic.json") + " --seed 42");
  ASSERT_EQ(est.code, 0);
  EXPECT_NEAR(Json::parse(est.out)["fit"]["c2_exponent"].get<double>(), 3.0, 0.1);
  EXPECT_EQ(run("estimate --input " + data("two_plus_x.json")).code, 2);

  const CliRun rd = run("round --input " + data("round_half.json"));
  ASSERT_EQ(rd.code, 0);
  EXPECT_EQ(Json::parse(rd.out)["result"]["degree"], 2);
}

TEST(CliArchimedean, FoundAndInconclusive) {
  EXPECT_EQ(run("archimedean --input " + data("disk.json") + " --N 1 --level 2").code, 0);
  const CliRun r = run("archimedean --input " + data("half_line.json") + " --N 1 --levels 2,4,6,8");
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(Json::parse(r.out)["inconclusive"].get<bool>());
}

TEST(CliOutput, WritesFileAndIsDeterministic) {
  const std::string a = temp("poslab_out_a.json"), b = temp("poslab_out_b.json");
  ASSERT_EQ(run("solve --input " + data("box_linear.json") + " --level 2 --output " + a).code, 0);
  ASSERT_EQ(run("solve --input " + data("box_linear.json") + " --level 2 --output " + b).code, 0);
  EXPECT_FALSE(slurp(a).empty());
  EXPECT_EQ(slurp(a), slurp(b));
}
