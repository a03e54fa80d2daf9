#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

using namespace wigner_abcd;
using nlohmann::json;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

Result run_cli(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = cli::run(args, {in, out, err});
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

}  // namespace

TEST(Cli, DecomposeExample) {
  const Result r = run_cli({"decompose", "--matrix", "[[2,1],[1,1]]"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["equidiag"]["alpha"].get<double>(), -0.46364760900080609, 1e-12);
  EXPECT_EQ(j["branch"], "Hyperbolic");
  EXPECT_NEAR(j["wigner"]["param"].get<double>(), 0.96242365011920694, 1e-12);
  EXPECT_EQ(j["wigner"]["eta"].get<double>(), 0.0);
  EXPECT_TRUE(r.err.empty());
}

TEST(Cli, ReDecompositionIsIdempotent) {
  for (const char* input : {"[[2,1],[1,1]]", "[[0.8,-0.6],[0.6,0.8]]", "[[-1.5,0.3],[2,-1.0666666666666667]]"}) {
    const Result first = run_cli({"decompose", "--matrix", input});
    ASSERT_EQ(first.code, 0) << input << first.err;
    const json j1 = json::parse(first.out);
    const Result second = run_cli({"decompose", "--file", "-"}, json{{"m", j1["m"]}}.dump());
    ASSERT_EQ(second.code, 0) << second.err;
    const json j2 = json::parse(second.out);
    for (const char* key : {"param", "eta", "alpha"}) {
      EXPECT_NEAR(j1["wigner"][key].get<double>(), j2["wigner"][key].get<double>(), 1e-12) << key;
    }
    // Reconstructing from the emitted numbers reproduces the input.
    const WignerDecomp wd = j1["wigner"].get<WignerDecomp>();
    EXPECT_LE(max_abs_diff(reconstruct(wd), j1.get<Mat2>()), 1e-12);
  }
}

TEST(Cli, StdinAcceptsBareRows) {
  const Result r = run_cli({"classify"}, "[[1, 0], [0.7, 1]]");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(json::parse(r.out)["branch"], "ParabolicLower");
}

TEST(Cli, DeterminantBoundary) {
  const Result warn = run_cli({"classify", "--matrix", "[[1.0000004,0],[0,1]]"});
  EXPECT_EQ(warn.code, 0);
  EXPECT_NE(warn.err.find("renormalized"), std::string::npos);
  const Result bad = run_cli({"classify", "--matrix", "[[2,0],[0,1]]"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("determinant"), std::string::npos);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
  EXPECT_EQ(run_cli({"decompose", "--bogus"}).code, 2);
  EXPECT_EQ(run_cli({"decompose", "--matrix", "[[1,2"}).code, 2);
  EXPECT_EQ(run_cli({"cavity", "--f", "-1"}).code, 2);
  EXPECT_EQ(run_cli({"multilayer", "--t12", "0"}).code, 2);
  EXPECT_EQ(run_cli({"decompose", "--matrix", "[[1,0],[0,1]]", "--format", "xml"}).code, 2);
  // Scalar matrices have no exponent: a numeric-domain error.
  EXPECT_EQ(run_cli({"expform", "--matrix", "[[1,0],[0,1]]"}).code, 1);
  EXPECT_EQ(run_cli({"expform", "--matrix", "[[2,1],[1,1]]"}).code, 0);
  EXPECT_EQ(run_cli({"decompose", "--help"}).code, 0);
}

TEST(Cli, CsvHeaders) {
  EXPECT_EQ(first_line(run_cli({"cavity", "--f", "0.1", "--n", "3", "--format", "csv"}).out), "n,A,B,C,D,trace");
  EXPECT_EQ(first_line(run_cli({"activity", "--gamma", "0.3", "--format", "csv"}).out), "z,ex,ey,envelope");
  EXPECT_EQ(first_line(run_cli({"multilayer", "--t12", "0.8", "--format", "csv"}).out),
            "beta1,beta2,branch,trace_half");
  EXPECT_EQ(first_line(run_cli({"regions", "--format", "csv"}).out), "theta,branch");
}

TEST(Cli, CsvIsStableAcrossRuns) {
  const std::vector<std::string> args{"multilayer", "--t12", "0.6", "--steps", "5", "--format", "csv"};
  const Result a = run_cli(args);
  const Result b = run_cli(args);
  EXPECT_EQ(a.out, b.out);
  int lines = 0;
  for (char c : a.out) lines += c == '\n';
  EXPECT_EQ(lines, 26);
}

TEST(Cli, CavityTable) {
  const Result r = run_cli({"cavity", "--f", "0.1", "--x", "0.5", "--n", "2", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  std::getline(lines, line);
  EXPECT_EQ(line, "0,1.0,0.0,0.0,1.0,2.0");
}

TEST(Cli, RegionsMapTheFigure) {
  const json j = json::parse(run_cli({"regions", "--theta-steps", "8"}).out);
  const auto& rows = j["regions"];
  ASSERT_EQ(rows.size(), 8u);
  const std::vector<std::string> expected{"hyperbolic", "parabolic", "circular", "circular",
                                          "circular",   "parabolic", "hyperbolic", "hyperbolic"};
  for (std::size_t k = 0; k < rows.size(); ++k) EXPECT_EQ(rows[k]["branch"], expected[k]) << k;
  EXPECT_NEAR(rows[0]["theta"].get<double>(), -3 * std::numbers::pi / 8, 1e-15);
  EXPECT_NEAR(rows[7]["theta"].get<double>(), std::numbers::pi / 2, 1e-15);
}

TEST(Cli, CavityExample) {
  const Result r = run_cli({"cavity", "--f", "0.1", "--x", "0.5", "--n", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["stability"], "Circular/stable");
  EXPECT_EQ(j["round_trip"].get<Mat2>(), Mat2::identity());
  EXPECT_NEAR(j["mid_cavity"]["exp_2eta"].get<double>(), 4.75, 1e-12);
}

TEST(Cli, ParametersFromFile) {
  const Result r = run_cli({"multilayer", "--file", "-"}, R"({"t12": 0.9, "beta1": 0.3, "beta2": 0.2, "n": 100})");
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["branch"], "Circular");
  const UniMat2 cycle = j["cycle"].get<UniMat2>();
  EXPECT_LE(max_abs_diff(j["stack"].get<Mat2>(), power_by_multiplication(cycle, 100)), 1e-8);
}

TEST(Cli, EnvironmentTolerance) {
  // bc = 1e-20 sits inside tol^2 at the default tolerance but outside it at 1e-12.
  const std::string m = "[[1.000000000000000,1e-10],[1e-10,1]]";
  ASSERT_EQ(setenv(cli::kTolEnvVar, "1e-12", 1), 0);
  const Result narrow = run_cli({"classify", "--matrix", m});
  ASSERT_EQ(unsetenv(cli::kTolEnvVar), 0);
  const Result wide = run_cli({"classify", "--matrix", m});
  ASSERT_EQ(narrow.code, 0) << narrow.err;
  EXPECT_EQ(json::parse(wide.out)["branch"], "Scalar");
  EXPECT_EQ(json::parse(narrow.out)["branch"], "Hyperbolic");

  ASSERT_EQ(setenv(cli::kTolEnvVar, "zero", 1), 0);
  EXPECT_EQ(run_cli({"classify", "--matrix", m}).code, 2);
  ASSERT_EQ(unsetenv(cli::kTolEnvVar), 0);
}

TEST(Cli, MidCavityOutsideStableRangeIsOmitted) {
  const Result r = run_cli({"cavity", "--f", "2.5", "--n", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["stability"], "Hyperbolic/unstable");
  EXPECT_FALSE(j.contains("mid_cavity"));
}
