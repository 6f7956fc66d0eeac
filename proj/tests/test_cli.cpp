#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "eiszeta/cli.hpp"
#include "reference_tables.inc"

using nlohmann::json;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Invocation run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = eiszeta::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, DocumentShape) {
  const Invocation r = run({"eval", "--function", "zeta-star", "--s", "2,0"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json d = r.doc();
  EXPECT_EQ(d["schema_version"], "1");
  EXPECT_EQ(d["command"], "eval");
  EXPECT_EQ(d["inputs"]["s"]["re"], 2.0);
  EXPECT_DOUBLE_EQ(d["diagnostics"]["rel_tol_used"].get<double>(), 1e-12);
  EXPECT_GE(d["diagnostics"]["runtime_ms"].get<double>(), 0.0);
  EXPECT_NEAR(d["results"][0]["value"]["re"].get<double>(), 0.523598775598, 1e-12);
  EXPECT_NEAR(d["results"][0]["value"]["im"].get<double>(), 0.0, 1e-15);
}

TEST(Cli, EvalTruncationAtTableZero) {
  const Invocation r = run({"eval", "--function", "I", "--T", "1", "--s", "0.5,7.769080112"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_LT(r.doc()["results"][0]["abs"].get<double>(), 1e-6);
}

TEST(Cli, WengZetaIsMinusTruncation) {
  const json z = run({"eval", "--function", "z2q", "--s", "0.4,3"}).doc()["results"][0]["value"];
  const json i = run({"eval", "--function", "I", "--T", "1", "--s", "0.4,3"}).doc()["results"][0]["value"];
  EXPECT_NEAR(z["re"].get<double>(), -i["re"].get<double>(), 1e-12);
  EXPECT_NEAR(z["im"].get<double>(), -i["im"].get<double>(), 1e-12);
}

TEST(Cli, EvalSeries) {
  const Invocation r = run({"eval", "--function", "E", "--z", "0.1,1.3", "--s", "0.7,2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_GT(r.doc()["results"][0]["n_max"].get<long long>(), 0);
}

TEST(Cli, ZerosTable) {
  const Invocation r = run({"zeros", "--family", "I", "--param", "1", "--tmax", "33"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json rows = r.doc()["results"];
  ASSERT_EQ(rows.size(), 15u);
  for (std::size_t i = 0; i < 15; ++i) EXPECT_NEAR(rows[i]["ordinate"].get<double>(), kTruncationAtOne[i], 1e-6);

  const json ystar = run({"zeros", "--family", "a0", "--param", "7.0555075278", "--tmax", "17"}).doc()["results"];
  ASSERT_EQ(ystar.size(), 15u);
  for (std::size_t i = 0; i < 15; ++i) EXPECT_NEAR(ystar[i]["ordinate"].get<double>(), kConstantAtYStar[i], 1e-6);

  EXPECT_TRUE(run({"zeros", "--family", "a0", "--param", "1", "--tmax", "5"}).doc()["results"].empty());
}

TEST(Cli, CsvMatchesJson) {
  const Invocation csv = run({"zeros", "--family", "I", "--param", "1", "--tmax", "16", "--format", "csv"});
  ASSERT_EQ(csv.code, 0);
  const json rows = run({"zeros", "--family", "I", "--param", "1", "--tmax", "16"}).doc()["results"];
  std::istringstream lines(csv.out);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "index,ordinate,residual");
  std::size_t k = 0;
  while (std::getline(lines, line)) {
    ASSERT_LT(k, rows.size());
    std::istringstream fields(line);
    std::string index, ordinate;
    std::getline(fields, index, ',');
    std::getline(fields, ordinate, ',');
    EXPECT_EQ(std::stoi(index), rows[k]["index"].get<int>());
    const double v = std::stod(ordinate);
    EXPECT_LE(std::abs(v - rows[k]["ordinate"].get<double>()), 1e-12 * v);
    ++k;
  }
  EXPECT_EQ(k, rows.size());
}

TEST(Cli, OutFile) {
  const auto path = std::filesystem::temp_directory_path() / "eiszeta_cli_out.json";
  const Invocation r = run({"--out", path.string(), "eval", "--function", "xi", "--s", "0.5,0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const json d = json::parse(in);
  EXPECT_NEAR(d["results"][0]["value"]["re"].get<double>(), 0.4971207782, 1e-10);
  std::filesystem::remove(path);
}

TEST(Cli, Count) {
  const json one = run({"count", "--family", "I", "--param", "1", "--umax", "8"}).doc()["results"][0];
  EXPECT_EQ(one["actual"], 2);
  EXPECT_TRUE(one.contains("predicted"));

  const json xi2s = run({"count", "--family", "xi2s", "--umax", "25"}).doc()["results"][0];
  EXPECT_EQ(xi2s["actual"], 20);

  const json low = run({"count", "--family", "I", "--param", "0.5", "--rect", "-1,2,-10,10"}).doc()["results"][0];
  EXPECT_GT(low["off_line_zeros"].get<long long>(), 0);
  EXPECT_GT(low["actual"].get<long long>(), low["critical_line_zeros"].get<long long>());
}

TEST(Cli, Crossover) {
  const json c = run({"crossover"}).doc()["results"][0];
  EXPECT_NEAR(c["y_star_closed_form"].get<double>(), 7.055507, 1e-5);
  EXPECT_NEAR(c["y_star_from_f_derivative"].get<double>(), 7.055507, 1e-5);
  EXPECT_LT(c["gap"].get<double>(), 1e-8);

  EXPECT_TRUE(run({"crossover", "--y", "5"}).doc()["results"][0]["real_zeros"].empty());
  const json eight = run({"crossover", "--y", "8"}).doc()["results"][0]["real_zeros"];
  ASSERT_EQ(eight.size(), 1u);
  EXPECT_NEAR(eight[0]["sigma"].get<double>() + eight[0]["mirror"].get<double>(), 1.0, 1e-15);
}

TEST(Cli, MaassSelberg) {
  const json r = run({"ms-check", "--s", "0.6,2", "--T", "1.5"}).doc()["results"][0];
  const double scale = std::hypot(r["lhs"]["re"].get<double>(), r["lhs"]["im"].get<double>());
  EXPECT_LE(r["abs_gap"].get<double>(), 1e-4 * scale);
  for (const auto& args : {std::vector<std::string>{"ms-check", "--s", "0.5,3", "--T", "2"},
                           std::vector<std::string>{"ms-check", "--s", "0.7,0", "--T", "1"}}) {
    const json t = run(args).doc()["results"][0];
    EXPECT_LT(std::hypot(t["lhs"]["re"].get<double>(), t["lhs"]["im"].get<double>()), 1e-8);
    EXPECT_LT(std::hypot(t["rhs"]["re"].get<double>(), t["rhs"]["im"].get<double>()), 1e-8);
  }
  EXPECT_EQ(run({"ms-check", "--s", "0.6,2", "--T", "1.5", "--grid", "36"}).code, 2);
}

TEST(Cli, Lattice) {
  const auto z2 = temp_file("eiszeta_z2.txt", "1 0\n0 1\n");
  const json c = run({"lattice", "classify", "--basis", z2.string()}).doc()["results"][0];
  EXPECT_EQ(c["classification"], "Semistable");
  EXPECT_TRUE(c["semistable"].get<bool>());
  EXPECT_FALSE(c["stable"].get<bool>());

  EXPECT_EQ(run({"lattice", "point", "--z", "0,2"}).doc()["results"][0]["classification"], "Unstable");

  const json s = run({"lattice", "submult", "--n", "3", "--trials", "100"}).doc()["results"][0];
  EXPECT_EQ(s["violations"], 0);
  EXPECT_EQ(s["trials"], 100);

  const auto dependent = temp_file("eiszeta_dep.txt", "1 2\n2 4\n");
  EXPECT_EQ(run({"lattice", "classify", "--basis", dependent.string()}).code, 7);
  const auto big = temp_file("eiszeta_z5.txt", "1 0 0 0 0\n0 1 0 0 0\n0 0 1 0 0\n0 0 0 1 0\n0 0 0 0 1\n");
  EXPECT_EQ(run({"lattice", "classify", "--basis", big.string()}).code, 8);
  std::filesystem::remove(z2);
  std::filesystem::remove(dependent);
  std::filesystem::remove(big);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"eval", "--function", "nope", "--s", "1,0"}).code, 2);
  EXPECT_EQ(run({"eval", "--function", "zeta", "--s", "abc"}).code, 2);
  EXPECT_EQ(run({"--rel-tol", "2", "eval", "--function", "zeta", "--s", "2,0"}).code, 2);
  EXPECT_EQ(run({"eval", "--function", "zeta-star", "--s", "1,0"}).code, 3);
  EXPECT_EQ(run({"eval", "--function", "gamma", "--s", "-2,0"}).code, 3);
  EXPECT_EQ(run({"--max-terms", "16", "eval", "--function", "zeta", "--s", "0.5,200"}).code, 4);
  // The left edge runs through s = 1/2 and is pushed outward instead of failing.
  const Invocation nudged = run({"count", "--family", "I", "--param", "1", "--rect", "0.5,1,-1,1"});
  ASSERT_EQ(nudged.code, 0) << nudged.err;
  EXPECT_LT(nudged.doc()["results"][0]["rectangle"][0].get<double>(), 0.5);
  EXPECT_EQ(nudged.doc()["results"][0]["winding"], 1);
  EXPECT_EQ(run({"count", "--family", "I", "--param", "1"}).code, 2);
  const Invocation help = run({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("ms-check"), std::string::npos);
}

TEST(Cli, Deterministic) {
  const std::vector<std::string> args{"count", "--family", "a0", "--param", "2", "--umax", "12"};
  json a = run(args).doc();
  json b = run(args).doc();
  a["diagnostics"].erase("runtime_ms");
  b["diagnostics"].erase("runtime_ms");
  EXPECT_EQ(a.dump(), b.dump());
  json t1 = run({"--threads", "1", "zeros", "--family", "I", "--param", "2", "--tmax", "20"}).doc();
  json t4 = run({"--threads", "4", "zeros", "--family", "I", "--param", "2", "--tmax", "20"}).doc();
  EXPECT_EQ(t1["results"].dump(), t4["results"].dump());
}
