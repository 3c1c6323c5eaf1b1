#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "agc/cli.hpp"

namespace agc::cli {
namespace {

const std::string corpus = AGC_CORPUS_DIR;
const std::string corpus_file = corpus + "/paper.agc";

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run agc(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

Json agc_json(std::vector<std::string> args) {
  args.push_back("--json");
  const auto r = agc(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return Json::parse(r.out);
}

std::string last_line(const std::string& s) {
  auto end = s.find_last_not_of('\n');
  auto begin = s.rfind('\n', end);
  return s.substr(begin == std::string::npos ? 0 : begin + 1, end - (begin == std::string::npos ? 0 : begin + 1) + 1);
}

std::filesystem::path temp_file(const std::string& name, const std::string& text) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << text;
  return p;
}

TEST(Formatting, FifteenSignificantDigits) {
  EXPECT_EQ(format_real(-0.8660254037844386L), "-0.866025403784439");
  EXPECT_EQ(format_real(-0.0L), "0");
  EXPECT_EQ(format_complex(Complex(-2, 1e-19L)), "-2");
  EXPECT_EQ(format_complex(Complex(0, -1)), "0 - 1i");
  EXPECT_EQ(format_complex(Complex(0.5L, 0.8660254037844386L)), "0.5 + 0.866025403784439i");
  EXPECT_EQ(complex_json(Complex(1e-20L, -1)).dump(), R"({"re":0.0,"im":-1.0})");
}

TEST(Formatting, Fnv1a) {
  EXPECT_EQ(fnv1a64(""), "cbf29ce484222325");
  EXPECT_EQ(fnv1a64("a"), "af63dc4c8601ec8c");
}

TEST(Chia, BinaryTreeJson) {
  const auto j = agc_json({"chia", corpus_file, "--species", "B"});
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"species", "coefficients", "structural_polynomial", "chi_a", "residual",
                                            "fixed_point_residual", "tameness", "unique", "conjugate_value", "p1_value"}));
  EXPECT_EQ(j["chi_a"]["re"], 0.5);
  EXPECT_EQ(j["chi_a"]["im"], -0.866025403784439);
  EXPECT_EQ(j["conjugate_value"]["im"], 0.866025403784439);
  EXPECT_EQ(j["tameness"], "analytically_tame");
  EXPECT_EQ(j["unique"], false);
  EXPECT_EQ(j["p1_value"], "finite");
  EXPECT_EQ(j["structural_polynomial"], Json::parse("[1, 0, 1]"));
  EXPECT_EQ(j["coefficients"].size(), 21u);
  EXPECT_EQ(j["coefficients"][9], "4862");
  EXPECT_LT(j["residual"].get<double>(), 1e-10);
}

TEST(Chia, AllSpeciesIsAnArrayInFileOrder) {
  const auto j = agc_json({"chia", corpus_file, "--order", "6"});
  ASSERT_EQ(j.size(), 5u);
  std::string names;
  for (const auto& s : j) names += s["species"].get<std::string>();
  EXPECT_EQ(names, "BMGOS");
  EXPECT_EQ(j[2]["chi_a"]["re"], -2.0);
  EXPECT_EQ(j[2]["chi_a"]["im"], 0.0);
  EXPECT_EQ(j[2]["unique"], true);
  EXPECT_TRUE(j[2]["conjugate_value"].is_null());
  EXPECT_EQ(j[1]["chi_a"]["im"], -1.0);
  EXPECT_EQ(j[3]["tameness"], "not_analytically_tame");
  EXPECT_EQ(j[3]["p1_value"], "infinite");
  EXPECT_TRUE(j[3]["chi_a"].is_null());
  EXPECT_TRUE(j[3]["residual"].is_null());
  EXPECT_EQ(j[4]["tameness"], "tame");
  EXPECT_EQ(j[4]["coefficients"][3], "1/6");
  EXPECT_EQ(j[4]["structural_polynomial"], Json::array());
  EXPECT_NEAR(j[4]["chi_a"]["re"].get<double>(), 2.718281828459045, 1e-14);
}

TEST(Chia, OrientationFlag) {
  const auto upper = agc_json({"chia", corpus_file, "--species", "B", "--orientation", "upper"});
  EXPECT_EQ(upper["chi_a"]["im"], 0.866025403784439);
  EXPECT_TRUE(upper["conjugate_value"].is_null());
  const auto lower = agc_json({"chia", corpus_file, "--species", "M", "--orientation", "lower"});
  EXPECT_EQ(lower["chi_a"]["im"], -1.0);
}

TEST(Chia, TextReportHeaderAndDeterminism) {
  const auto a = agc({"chia", corpus_file});
  const auto b = agc({"chia", corpus_file});
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out.rfind("# agc chia " + corpus_file + "\n# input " + corpus_file + " fnv1a64=", 0), 0u);
  EXPECT_NE(a.out.find("  chi_a: 0.5 - 0.866025403784439i\n"), std::string::npos);
  EXPECT_NE(a.out.find("  tameness: not_analytically_tame (pole at z=1)\n"), std::string::npos);
  EXPECT_EQ(agc({"chia", corpus_file, "--json"}).out, agc({"chia", corpus_file, "--json"}).out);
}

TEST(Series, Coefficients) {
  const auto j = agc_json({"series", corpus_file, "--species", "M", "--order", "7"});
  EXPECT_EQ(j["coefficients"], Json::parse(R"(["0","1","1","2","4","9","21","51"])"));
  const auto all = agc({"series", corpus_file, "--order", "4"});
  EXPECT_NE(all.out.find("G: 1 2 3 5 8\n"), std::string::npos);
  EXPECT_NE(all.out.find("S: 1 1 1/2 1/6 1/24\n"), std::string::npos);
}

TEST(Classify, Corpus) {
  const auto r = agc({"classify", corpus_file});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("O not_analytically_tame (pole at z=1)\n"), std::string::npos);
  EXPECT_NE(r.out.find("S tame\n"), std::string::npos);
  EXPECT_EQ(agc_json({"classify", corpus_file, "--species", "M"})["tameness"], "analytically_tame");
}

TEST(Enumerate, Counts) {
  const auto j = agc_json({"enumerate", "--builtin", "btree", "--max-size", "4"});
  EXPECT_EQ(j["unlabeled"], Json::parse(R"(["1","1","2","5","14"])"));
  EXPECT_EQ(j["labeled"], Json::parse(R"(["1","1","4","30","336"])"));
}

TEST(Groupoid, Chi) {
  EXPECT_EQ(last_line(agc({"groupoid", "chi", corpus + "/groupoids/bz3.json"}).out), "1/3");
  EXPECT_EQ(last_line(agc({"groupoid", "chi", corpus + "/groupoids/es3.json"}).out), "1");
  EXPECT_EQ(last_line(agc({"groupoid", "chi", corpus + "/groupoids/z2_double_swap.json"}).out), "2");
  EXPECT_EQ(last_line(agc({"groupoid", "chi", corpus + "/groupoids/z3_rotate_fix.json"}).out), "4/3");
  EXPECT_EQ(agc_json({"groupoid", "chi", corpus + "/groupoids/bs3.json"})["chi"], "1/6");
}

TEST(Groupoid, InvalidInputIsExitTwo) {
  const auto p = temp_file("agc_cli_bad_groupoid.json",
                           R"({"objects": ["x"], "morphisms": [{"id": "f", "src": "x", "tgt": "x"}], "identity": {}, "compose": []})");
  const auto r = agc({"groupoid", "chi", p.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("invalid groupoid"), std::string::npos);
  EXPECT_EQ(agc({"groupoid", "chi", "/nonexistent.json"}).code, 2);
}

TEST(Groupoid, Covering) {
  const auto j = agc_json({"groupoid", "check-covering", corpus + "/groupoids/es3_to_bs3.json"});
  EXPECT_EQ(j["pass"], true);
  EXPECT_EQ(j["sheets"], 6);
  EXPECT_EQ(j["chi_domain"], "1");
  EXPECT_EQ(j["chi_codomain"], "1/6");
}

TEST(Groupoid, NonCoveringIsExitOne) {
  // Collapse B Z2 onto a point category that has only the identity: two lifts of the identity.
  const auto dir = std::filesystem::temp_directory_path();
  std::filesystem::copy_file(corpus + "/groupoids/bz2.json", dir / "agc_cli_bz2.json",
                             std::filesystem::copy_options::overwrite_existing);
  std::filesystem::copy_file(corpus + "/groupoids/bz1.json", dir / "agc_cli_bz1.json",
                             std::filesystem::copy_options::overwrite_existing);
  const auto p = temp_file("agc_cli_collapse.json", R"({"domain": "agc_cli_bz2.json", "codomain": "agc_cli_bz1.json",
    "object_map": {"*": "*"}, "morphism_map": {"e@*": "e@*", "r1@*": "e@*"}})");
  const auto r = agc({"groupoid", "check-covering", p.string()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("not a covering: lifting fails"), std::string::npos);
}

TEST(Verify, FixedPoint) {
  const auto o = agc({"verify", "fixed-point", corpus_file, "--species", "O"});
  EXPECT_EQ(o.code, 1);
  EXPECT_EQ(last_line(o.out), "P_F(z)=1+z has no fixed points");

  for (const char* s : {"B", "M", "G"}) {
    const auto r = agc({"verify", "fixed-point", corpus_file, "--species", s});
    EXPECT_EQ(r.code, 0) << s;
    EXPECT_EQ(last_line(r.out), "fixed point check: pass") << s;
  }
  const auto j = agc_json({"verify", "fixed-point", corpus_file, "--species", "B"});
  EXPECT_EQ(j["fixed_points"].size(), 2u);
  EXPECT_LT(j["distance"].get<double>(), 1e-8);
  EXPECT_EQ(agc({"verify", "fixed-point", corpus_file, "--species", "S"}).code, 2);
}

TEST(Verify, CountsAndEgf) {
  for (const char* b : {"btree", "no00string", "ordered", "motzkin"})
    EXPECT_EQ(agc({"verify", "counts", "--builtin", b, "--max-size", "10"}).code, 0) << b;
  for (const char* b : {"btree", "no00string", "ordered", "motzkin", "sets"})
    EXPECT_EQ(agc({"verify", "egf", "--builtin", b}).code, 0) << b;

  EXPECT_EQ(agc({"verify", "counts", corpus_file, "--species", "G", "--builtin", "no00string", "--max-size", "10"}).code, 0);
  const auto bad = agc({"verify", "egf", corpus_file, "--species", "B", "--builtin", "motzkin", "--json"});
  EXPECT_EQ(bad.code, 1);
  const auto j = Json::parse(bad.out);
  EXPECT_EQ(j["pass"], false);
  EXPECT_EQ(j["mismatches"][0]["n"], 0);
  EXPECT_EQ(j["mismatches"][0]["expected"], "0");
  EXPECT_EQ(j["mismatches"][0]["got"], "1");
}

TEST(Usage, ErrorsNameTheFlag) {
  struct Case {
    std::vector<std::string> args;
    std::string flag;
  };
  const std::vector<Case> cases = {
      {{"chia", corpus_file, "--order", "abc"}, "--order"},
      {{"chia", corpus_file, "--orientation", "sideways"}, "--orientation"},
      {{"chia", corpus_file, "--tol", "-1"}, "--tol"},
      {{"chia", corpus_file, "--tol", "abc"}, "--tol"},
      {{"chia", corpus_file, "--species", "X"}, "--species"},
      {{"enumerate", "--builtin", "trees"}, "--builtin"},
      {{"enumerate", "--builtin", "btree", "--max-size", "9"}, "--max-size"},
      {{"verify", "fixed-point", corpus_file}, "--species"},
      {{"chia", corpus_file, "--bogus"}, "--bogus"},
  };
  for (const auto& c : cases) {
    const auto r = agc(c.args);
    EXPECT_EQ(r.code, 2) << c.flag;
    EXPECT_NE(r.err.find(c.flag), std::string::npos) << r.err;
    EXPECT_TRUE(r.out.empty());
  }
  EXPECT_EQ(agc({}).code, 2);
  EXPECT_EQ(agc({"groupoid"}).code, 2);
  EXPECT_EQ(agc({"--help"}).code, 0);
}

TEST(Usage, BadInputFiles) {
  EXPECT_EQ(agc({"chia", "/nonexistent.agc"}).code, 2);
  const auto syntax = temp_file("agc_cli_syntax.agc", "B = 1 + * B\n");
  const auto r = agc({"series", syntax.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(syntax.string()), std::string::npos);
  const auto mutual = temp_file("agc_cli_mutual.agc", "A = 1 + Z*B\nB = Z*A^2\n");
  EXPECT_EQ(agc({"series", mutual.string()}).code, 0);
  EXPECT_EQ(agc({"chia", mutual.string(), "--species", "A"}).code, 2);
}

}  // namespace
}  // namespace agc::cli
