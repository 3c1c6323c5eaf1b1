#pragma once

// The `agc` command line. run() parses the arguments, writes the report to
// `out` and diagnostics to `err`, and returns the exit code:
// 0 success, 1 failed check or computation, 2 usage or input error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "agc/continuation.hpp"
#include "agc/enumerate.hpp"
#include "agc/errors.hpp"
#include "agc/groupoid.hpp"
#include "agc/groupoid_io.hpp"
#include "agc/solve.hpp"
#include "agc/species.hpp"

namespace agc::cli {

enum ExitCode : int { exit_ok = 0, exit_check_failed = 1, exit_input_error = 2 };

using Json = nlohmann::ordered_json;

inline constexpr Real fixed_point_tol = 1e-8L;

// Input problems; the message names the offending flag or file.
class UsageError : public Error {
 public:
  using Error::Error;
};

// A computation that ran but did not produce a trustworthy result.
class ComputationFailed : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Formatting

inline std::string fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << h;
  return ss.str();
}

// Nearest double with 15 significant digits; -0 becomes 0.
inline double round15(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15Lg", x);
  const double v = std::strtod(buf, nullptr);
  return v == 0 ? 0.0 : v;
}

inline std::string format_real(long double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", round15(x));
  return buf;
}

// Components below 1e-13 relative to the modulus are rounding noise.
inline Complex snapped(Complex v) {
  const Real cut = 1e-13L * std::max(Real(1), std::abs(v));
  return {std::abs(v.real()) < cut ? Real(0) : v.real(), std::abs(v.imag()) < cut ? Real(0) : v.imag()};
}

inline std::string format_complex(Complex v) {
  v = snapped(v);
  if (v.imag() == 0) return format_real(v.real());
  const std::string im = format_real(std::abs(v.imag()));
  return format_real(v.real()) + (v.imag() < 0 ? " - " : " + ") + im + "i";
}

inline Json complex_json(Complex v) {
  v = snapped(v);
  return Json{{"re", round15(v.real())}, {"im", round15(v.imag())}};
}

inline Json optional_real(const std::optional<Real>& v) { return v ? Json(round15(*v)) : Json(nullptr); }

inline Json strings_json(const std::vector<std::string>& v) {
  Json a = Json::array();
  for (const auto& s : v) a.push_back(s);
  return a;
}

inline Json integers_json(const std::vector<Integer>& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(c.convert_to<long long>());
  return a;
}

inline std::string join(const std::vector<std::string>& v, const std::string& sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? sep : "") + v[i];
  return out;
}

inline std::string command_echo(const std::vector<std::string>& args) {
  std::string out = "agc";
  for (const auto& a : args) {
    const bool quote = a.empty() || a.find_first_of(" \t'\"") != std::string::npos;
    out += " " + (quote ? "'" + a + "'" : a);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Inputs

struct Options {
  std::string file;
  std::string species;
  std::size_t order = 20;
  double tol = 1e-10;
  std::string orientation = "both";
  std::size_t max_size = 6;
  bool json = false;
  std::string builtin;
};

struct Input {
  std::string path;
  std::string text;
  std::string digest;
};

inline Input read_input(const std::string& path) {
  Input in{path, {}, {}};
  try {
    in.text = detail::read_text(path);
  } catch (const InputError& e) {
    throw UsageError(e.what());
  }
  in.digest = fnv1a64(in.text);
  return in;
}

inline NestedSystem parse_input(const Input& in) {
  try {
    return parse(in.text);
  } catch (const Error& e) {
    throw UsageError(in.path + ": " + e.what());
  }
}

inline std::vector<std::string> selected_species(const NestedSystem& sys, const Options& o) {
  if (!o.species.empty()) {
    if (!sys.contains(o.species)) throw UsageError("--species: unknown species '" + o.species + "'");
    return {o.species};
  }
  std::vector<std::string> out;
  for (const auto& eq : sys.equations()) out.push_back(eq.name);
  return out;
}

inline Builtin selected_builtin(const Options& o) {
  if (o.builtin.empty()) throw UsageError("--builtin: required (one of btree, motzkin, no00string, ordered, sets)");
  const auto b = builtin_from_name(o.builtin);
  if (!b) throw UsageError("--builtin: unknown builtin '" + o.builtin + "'");
  return *b;
}

inline ContinuationOptions continuation_options(const Options& o) {
  ContinuationOptions c;
  c.tol = static_cast<Real>(o.tol);
  c.lower = o.orientation != "upper";
  c.upper = o.orientation != "lower";
  return c;
}

inline std::map<std::string, PowerSeries> solve_or_fail(const NestedSystem& sys, std::size_t order, const std::string& path) {
  try {
    return solve_nested_system(sys, order);
  } catch (const NonWellFounded& e) {
    throw UsageError(path + ": " + e.what());
  }
}

inline ContinuationResult continue_or_fail(const NestedSystem& sys, const std::string& name, const ContinuationOptions& opt) {
  try {
    return analytic_cardinality(sys, name, opt);
  } catch (const NotSelfRecursive& e) {
    throw UsageError("--species " + name + ": " + e.what());
  } catch (const NonWellFounded& e) {
    throw UsageError("--species " + name + ": " + e.what());
  } catch (const StepUnderflow& e) {
    throw ComputationFailed("species " + name + ": continuation failed: " + e.what());
  } catch (const CorrectorDiverged& e) {
    throw ComputationFailed("species " + name + ": continuation failed: " + e.what());
  } catch (const RootFindingDiverged& e) {
    throw ComputationFailed("species " + name + ": singular point search failed: " + e.what());
  }
}

// ---------------------------------------------------------------------------
// Reports

class Report {
 public:
  Report(std::ostream& out, const Options& o, std::string echo) : out_(out), json_(o.json), echo_(std::move(echo)) {}

  void input(const Input& in) { inputs_.push_back(in.path + " fnv1a64=" + in.digest); }

  void line(const std::string& s) { lines_.push_back(s); }

  void item(Json j) { items_.push_back(std::move(j)); }

  // One JSON value: the sole item, or an array when several were produced.
  void flush(bool force_array = false) {
    if (json_) {
      if (items_.size() == 1 && !force_array) out_ << items_.front().dump(2) << "\n";
      else out_ << Json(items_).dump(2) << "\n";
      return;
    }
    out_ << "# " << echo_ << "\n";
    for (const auto& s : inputs_) out_ << "# input " << s << "\n";
    for (const auto& s : lines_) out_ << s << "\n";
  }

 private:
  std::ostream& out_;
  bool json_;
  std::string echo_;
  std::vector<std::string> inputs_;
  std::vector<std::string> lines_;
  std::vector<Json> items_;
};

// ---------------------------------------------------------------------------
// Subcommands

inline int cmd_series(const Options& o, Report& r) {
  const auto in = read_input(o.file);
  const auto sys = parse_input(in);
  const auto names = selected_species(sys, o);
  const auto solved = solve_or_fail(sys, o.order, in.path);
  r.input(in);
  for (const auto& name : names) {
    const auto coeffs = solved.at(name).coefficient_strings();
    r.line(name + ": " + join(coeffs));
    r.item(Json{{"species", name}, {"coefficients", strings_json(coeffs)}});
  }
  r.flush(o.species.empty());
  return exit_ok;
}

inline Json species_json(const std::string& name, const std::vector<std::string>& coeffs, const ContinuationResult& c) {
  Json j;
  j["species"] = name;
  j["coefficients"] = strings_json(coeffs);
  j["structural_polynomial"] = c.structural ? integers_json(c.structural->coefficients) : Json::array();
  j["chi_a"] = c.value ? complex_json(*c.value) : Json(nullptr);
  j["residual"] = optional_real(c.residual);
  j["fixed_point_residual"] = optional_real(c.fixed_point_residual);
  j["tameness"] = to_string(c.tameness);
  j["unique"] = c.unique;
  j["conjugate_value"] = c.conjugate_value ? complex_json(*c.conjugate_value) : Json(nullptr);
  j["p1_value"] = c.p1_infinite ? "infinite" : "finite";
  return j;
}

inline std::vector<std::string> species_lines(const std::string& name, const std::vector<std::string>& coeffs,
                                              const ContinuationResult& c) {
  auto real_or_none = [](const std::optional<Real>& v) { return v ? format_real(*v) : std::string("none"); };
  std::vector<std::string> out;
  out.push_back("species " + name);
  out.push_back("  coefficients: " + join(coeffs));
  out.push_back("  structural polynomial: " + (c.structural ? "P_F(z)=" + c.structural->to_string('z') : std::string("none")));
  out.push_back("  chi_a: " + (c.value ? format_complex(*c.value) : std::string("undefined")));
  out.push_back("  residual: " + real_or_none(c.residual));
  out.push_back("  fixed point residual: " + real_or_none(c.fixed_point_residual));
  std::string tame = to_string(c.tameness);
  if (!c.singular_kind.empty()) tame += " (" + c.singular_kind + " at z=1)";
  out.push_back("  tameness: " + tame);
  out.push_back(std::string("  unique: ") + (c.unique ? "true" : "false"));
  out.push_back("  conjugate value: " + (c.conjugate_value ? format_complex(*c.conjugate_value) : std::string("none")));
  out.push_back(std::string("  p1 value: ") + (c.p1_infinite ? "infinite" : "finite"));
  return out;
}

inline int cmd_chia(const Options& o, Report& r) {
  const auto in = read_input(o.file);
  const auto sys = parse_input(in);
  const auto names = selected_species(sys, o);
  const auto solved = solve_or_fail(sys, o.order, in.path);
  const auto copt = continuation_options(o);
  r.input(in);
  for (const auto& name : names) {
    const auto c = continue_or_fail(sys, name, copt);
    const auto coeffs = solved.at(name).coefficient_strings();
    for (const auto& s : species_lines(name, coeffs, c)) r.line(s);
    r.item(species_json(name, coeffs, c));
  }
  r.flush(o.species.empty());
  return exit_ok;
}

inline int cmd_classify(const Options& o, Report& r) {
  const auto in = read_input(o.file);
  const auto sys = parse_input(in);
  const auto names = selected_species(sys, o);
  const auto copt = continuation_options(o);
  r.input(in);
  for (const auto& name : names) {
    const auto c = continue_or_fail(sys, name, copt);
    r.line(name + " " + to_string(c.tameness) + (c.singular_kind.empty() ? "" : " (" + c.singular_kind + " at z=1)"));
    r.item(Json{{"species", name}, {"tameness", to_string(c.tameness)}});
  }
  r.flush(o.species.empty());
  return exit_ok;
}

inline int cmd_enumerate(const Options& o, Report& r) {
  const Builtin b = selected_builtin(o);
  std::vector<std::string> unlabeled, labeled;
  try {
    for (std::size_t n = 0; n <= o.max_size; ++n) {
      unlabeled.push_back(to_string(enumerate_unlabeled(b, n)));
      labeled.push_back(to_string(enumerate_labeled(b, n)));
    }
  } catch (const CapExceeded& e) {
    throw UsageError(std::string("--max-size: ") + e.what());
  }
  r.line("builtin " + builtin_name(b) + ": " + builtin_equation(b));
  r.line("n unlabeled labeled");
  for (std::size_t n = 0; n <= o.max_size; ++n) r.line(std::to_string(n) + " " + unlabeled[n] + " " + labeled[n]);
  r.item(Json{{"builtin", builtin_name(b)}, {"unlabeled", strings_json(unlabeled)}, {"labeled", strings_json(labeled)}});
  r.flush();
  return exit_ok;
}

inline FiniteGroupoid valid_groupoid(FiniteGroupoid g, const std::string& what) {
  const auto v = validate(g);
  if (!v) throw UsageError(what + ": invalid groupoid: " + v.axiom + (v.detail.empty() ? "" : " (" + v.detail + ")"));
  return g;
}

inline int cmd_groupoid_chi(const Options& o, Report& r) {
  const auto in = read_input(o.file);
  FiniteGroupoid g;
  try {
    g = valid_groupoid(load_groupoid(in.path), in.path);
  } catch (const InputError& e) {
    throw UsageError(e.what());
  }
  const Rational chi = cardinality(g);
  r.input(in);
  r.line(to_string(chi));
  r.item(Json{{"chi", to_string(chi)},
              {"objects", g.object_count()},
              {"morphisms", g.morphism_count()},
              {"iso_classes", iso_classes(g).representative.size()}});
  r.flush();
  return exit_ok;
}

inline int cmd_check_covering(const Options& o, Report& r) {
  const auto in = read_input(o.file);
  GroupoidFunctor f;
  try {
    f = load_functor(in.path);
  } catch (const InputError& e) {
    throw UsageError(e.what());
  }
  valid_groupoid(f.domain, in.path + " domain");
  valid_groupoid(f.codomain, in.path + " codomain");
  if (const auto v = validate_functor(f); !v)
    throw UsageError(in.path + ": invalid functor: " + v.axiom + (v.detail.empty() ? "" : " (" + v.detail + ")"));
  r.input(in);

  const Rational chi_d = cardinality(f.domain);
  const Rational chi_c = cardinality(f.codomain);
  Json j{{"check", "covering"}, {"pass", false}, {"sheets", nullptr}, {"chi_domain", to_string(chi_d)},
         {"chi_codomain", to_string(chi_c)}, {"failure", nullptr}};
  int code = exit_ok;
  try {
    const auto w = covering_check(f);
    const bool scaled = chi_d == chi_c * static_cast<long long>(w.sheets);
    j["sheets"] = w.sheets;
    j["pass"] = scaled;
    r.line("covering: " + std::to_string(w.sheets) + " sheets");
    r.line("chi(domain) = " + to_string(chi_d) + ", chi(codomain) = " + to_string(chi_c));
    r.line(std::string("chi(domain) = ") + std::to_string(w.sheets) + " * chi(codomain): " + (scaled ? "pass" : "FAIL"));
    if (!scaled) code = exit_check_failed;
  } catch (const CoveringError& e) {
    static const char* kinds[] = {"not_surjective", "lifting_fails", "uneven_fibers"};
    Json fail{{"kind", kinds[static_cast<int>(e.kind())]}, {"message", e.what()}};
    std::vector<std::string> sizes;
    for (auto s : e.fiber_sizes()) sizes.push_back(std::to_string(s));
    if (!sizes.empty()) fail["fiber_sizes"] = e.fiber_sizes();
    j["failure"] = fail;
    r.line(std::string("not a covering: ") + e.what() + (sizes.empty() ? "" : " [" + join(sizes, ", ") + "]"));
    code = exit_check_failed;
  }
  r.item(j);
  r.flush();
  return code;
}

inline int cmd_verify_fixed_point(const Options& o, Report& r) {
  const auto in = read_input(o.file);
  const auto sys = parse_input(in);
  if (o.species.empty()) throw UsageError("--species: required");
  const auto name = selected_species(sys, o).front();
  if (sys.exponential_form(name)) throw UsageError("--species " + name + ": no structural polynomial (closed form in E)");
  StructuralPolynomial p;
  try {
    p = structural_polynomial(sys.extraction(name));
  } catch (const NotPolynomialInSelf& e) {
    throw UsageError("--species " + name + ": " + e.what());
  }
  r.input(in);
  const std::string pf = "P_F(z)=" + p.to_string('z');
  Json j{{"check", "fixed-point"}, {"species", name}, {"pass", false}, {"structural_polynomial", integers_json(p.coefficients)},
         {"fixed_points", Json::array()}, {"chi_a", nullptr}, {"residual", nullptr}, {"distance", nullptr}, {"message", ""}};

  const auto probe = fixed_point_check(p, Complex(0));
  for (const auto& fp : probe.fixed_points) j["fixed_points"].push_back(complex_json(fp));
  auto finish = [&](bool pass, const std::string& message) {
    j["pass"] = pass;
    j["message"] = message;
    r.line(message);
    r.item(j);
    r.flush();
    return pass ? exit_ok : exit_check_failed;
  };
  if (probe.fixed_points.empty()) return finish(false, pf + " has no fixed points");

  std::vector<std::string> fps;
  for (const auto& fp : probe.fixed_points) fps.push_back(format_complex(fp));
  r.line(pf + " fixed points: " + join(fps, ", "));
  const auto c = continue_or_fail(sys, name, continuation_options(o));
  if (!c.value) return finish(false, "chi_a(" + name + ") undefined: " + to_string(c.tameness));
  const auto check = fixed_point_check(p, *c.value);
  j["chi_a"] = complex_json(*c.value);
  j["residual"] = round15(check.residual);
  j["distance"] = round15(check.distance);
  r.line("chi_a(" + name + ") = " + format_complex(*c.value));
  r.line("|chi_a - P_F(chi_a)| = " + format_real(check.residual) + ", distance to nearest fixed point = " +
         format_real(check.distance));
  const bool pass = check.residual < fixed_point_tol && check.distance < fixed_point_tol;
  return finish(pass, std::string("fixed point check: ") + (pass ? "pass" : "FAIL"));
}

// System and species for verify counts / verify egf: the file when given, else the builtin's own equation.
inline std::pair<NestedSystem, std::string> verify_target(const Options& o, Builtin b, Report& r) {
  if (o.file.empty()) {
    if (!o.species.empty() && o.species != builtin_species(b))
      throw UsageError("--species: '" + o.species + "' is not defined by builtin " + builtin_name(b));
    return {builtin_system(b), builtin_species(b)};
  }
  const auto in = read_input(o.file);
  auto sys = parse_input(in);
  if (o.species.empty()) throw UsageError("--species: required when a file is given");
  const auto name = selected_species(sys, o).front();
  r.input(in);
  return {std::move(sys), name};
}

inline int report_check(const std::string& check, const std::string& label, const CheckReport& rep, Report& r) {
  Json mism = Json::array();
  for (const auto& m : rep.mismatches) mism.push_back(Json{{"n", m.n}, {"expected", m.expected}, {"got", m.got}});
  r.line(check + " " + label + ": " + (rep.ok() ? "pass" : "FAIL"));
  for (const auto& m : rep.mismatches) r.line("  n=" + std::to_string(m.n) + " expected " + m.expected + " got " + m.got);
  r.item(Json{{"check", check}, {"target", label}, {"pass", rep.ok()}, {"mismatches", mism}});
  r.flush();
  return rep.ok() ? exit_ok : exit_check_failed;
}

inline int cmd_verify_counts(const Options& o, Report& r) {
  const Builtin b = selected_builtin(o);
  const auto [sys, name] = verify_target(o, b, r);
  std::vector<Integer> counts;
  for (std::size_t n = 0; n <= o.max_size; ++n) counts.push_back(enumerate_unlabeled(b, n, std::max(o.max_size, default_enumeration_cap)));
  CheckReport rep;
  try {
    rep = bijection_count_check(sys, name, counts);
  } catch (const NotPolynomialInSelf& e) {
    throw UsageError("--species " + name + ": " + e.what());
  }
  return report_check("counts", builtin_name(b) + "/" + name + " n<=" + std::to_string(o.max_size), rep, r);
}

inline int cmd_verify_egf(const Options& o, Report& r) {
  const Builtin b = selected_builtin(o);
  const auto [sys, name] = verify_target(o, b, r);
  CheckReport rep;
  try {
    rep = egf_check(b, sys, name, o.max_size);
  } catch (const CapExceeded& e) {
    throw UsageError(std::string("--max-size: ") + e.what());
  } catch (const NonWellFounded& e) {
    throw UsageError("--species " + name + ": " + e.what());
  }
  return report_check("egf", builtin_name(b) + "/" + name + " n<=" + std::to_string(o.max_size), rep, r);
}

// ---------------------------------------------------------------------------
// Entry point

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Groupoid cardinality and analytic groupoid cardinality", "agc"};
  app.require_subcommand(1);
  Options o;

  auto add_file = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("file", o.file, "input file");
    if (required) opt->required();
  };
  auto add_species = [&](CLI::App* sub) { sub->add_option("--species", o.species, "species name"); };
  auto add_order = [&](CLI::App* sub) { sub->add_option("--order", o.order, "truncation order")->capture_default_str(); };
  auto add_tol = [&](CLI::App* sub) {
    sub->add_option("--tol", o.tol, "tracking tolerance")
        ->check(CLI::Validator(
            [](std::string& v) {
              double x = 0;
              if (!CLI::detail::lexical_cast(v, x)) return "not a number: " + v;
              return x > 0 ? std::string() : "must be positive";
            },
            "POSITIVE"))
        ->capture_default_str();
  };
  auto add_orientation = [&](CLI::App* sub) {
    sub->add_option("--orientation", o.orientation, "detour orientation")
        ->check(CLI::IsMember({"lower", "upper", "both"}))
        ->capture_default_str();
  };
  auto add_max_size = [&](CLI::App* sub) { sub->add_option("--max-size", o.max_size, "largest structure size")->capture_default_str(); };
  auto add_builtin = [&](CLI::App* sub) {
    sub->add_option("--builtin", o.builtin, "btree, motzkin, no00string, ordered or sets");
  };
  auto add_json = [&](CLI::App* sub) { sub->add_flag("--json", o.json, "JSON report"); };

  auto* series = app.add_subcommand("series", "solve the series coefficients");
  add_file(series), add_species(series), add_order(series), add_json(series);
  auto* chia = app.add_subcommand("chia", "analytic groupoid cardinality");
  add_file(chia), add_species(chia), add_order(chia), add_tol(chia), add_orientation(chia), add_json(chia);
  auto* classify = app.add_subcommand("classify", "tame / analytically_tame / not_analytically_tame");
  add_file(classify), add_species(classify), add_tol(classify), add_orientation(classify), add_json(classify);
  auto* enumerate = app.add_subcommand("enumerate", "brute-force structure counts of a builtin");
  add_builtin(enumerate), add_max_size(enumerate), add_json(enumerate);

  auto* groupoid = app.add_subcommand("groupoid", "explicit finite groupoids");
  groupoid->require_subcommand(1);
  auto* gchi = groupoid->add_subcommand("chi", "groupoid cardinality");
  add_file(gchi), add_json(gchi);
  auto* gcov = groupoid->add_subcommand("check-covering", "check that a functor is a k-sheeted covering");
  add_file(gcov), add_json(gcov);

  auto* verify = app.add_subcommand("verify", "checks against independent oracles");
  verify->require_subcommand(1);
  auto* vfp = verify->add_subcommand("fixed-point", "chi_a is a fixed point of the structural polynomial");
  add_file(vfp), add_species(vfp), add_tol(vfp), add_orientation(vfp), add_json(vfp);
  auto* vcounts = verify->add_subcommand("counts", "unlabeled counts against the structural bijection");
  add_file(vcounts, false), add_species(vcounts), add_builtin(vcounts), add_max_size(vcounts), add_json(vcounts);
  auto* vegf = verify->add_subcommand("egf", "labeled counts / n! against the solved series");
  add_file(vegf, false), add_species(vegf), add_builtin(vegf), add_max_size(vegf), add_json(vegf);

  std::vector<const char*> argv{"agc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "agc: " << e.what() << "\n";
    return exit_input_error;
  }

  Report report(out, o, command_echo(args));
  try {
    if (series->parsed()) return cmd_series(o, report);
    if (chia->parsed()) return cmd_chia(o, report);
    if (classify->parsed()) return cmd_classify(o, report);
    if (enumerate->parsed()) return cmd_enumerate(o, report);
    if (gchi->parsed()) return cmd_groupoid_chi(o, report);
    if (gcov->parsed()) return cmd_check_covering(o, report);
    if (vfp->parsed()) return cmd_verify_fixed_point(o, report);
    if (vcounts->parsed()) return cmd_verify_counts(o, report);
    if (vegf->parsed()) return cmd_verify_egf(o, report);
  } catch (const UsageError& e) {
    err << "agc: " << e.what() << "\n";
    return exit_input_error;
  } catch (const ComputationFailed& e) {
    err << "agc: " << e.what() << "\n";
    return exit_check_failed;
  }
  return exit_input_error;
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
  return run(std::vector<std::string>(argv + 1, argv + argc), out, err);
}

}  // namespace agc::cli
