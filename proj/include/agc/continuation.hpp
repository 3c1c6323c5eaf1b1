#pragma once

// Analytic continuation of the formal branch of Q(z, y) = 0 from near z = 0 to
// z = 1: path planning around singular points, predictor-corrector tracking,
// closed forms for y-degree <= 2, fixed points of the structural polynomial,
// and the tameness classification.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "agc/curve.hpp"
#include "agc/errors.hpp"
#include "agc/polynomial.hpp"
#include "agc/solve.hpp"
#include "agc/species.hpp"

namespace agc {

enum class Orientation { Lower, Upper };

inline std::string to_string(Orientation o) { return o == Orientation::Lower ? "lower" : "upper"; }

// ---------------------------------------------------------------------------
// Paths

struct Segment {
  enum class Kind { Line, Arc };
  Kind kind = Kind::Line;
  Complex from, to;           // line endpoints
  Complex center;             // arc
  Real radius = 0, theta0 = 0, theta1 = 0;

  Real length() const { return kind == Kind::Line ? std::abs(to - from) : radius * std::abs(theta1 - theta0); }

  // t in [0, 1].
  Complex point(Real t) const {
    if (kind == Kind::Line) return from + (to - from) * t;
    return center + std::polar(radius, theta0 + (theta1 - theta0) * t);
  }

  Segment reversed() const {
    Segment s = *this;
    std::swap(s.from, s.to);
    std::swap(s.theta0, s.theta1);
    return s;
  }
};

struct ContinuationPath {
  std::vector<Segment> segments;
  Orientation orientation = Orientation::Lower;
  std::vector<Complex> detoured;  // singular points the path steps around
  Real clearance = 0;             // min distance to any singular point

  Complex start() const { return segments.front().point(0); }
  Complex end() const { return segments.back().point(1); }

  Real length() const {
    Real l = 0;
    for (const auto& s : segments) l += s.length();
    return l;
  }

  // Point at arclength position s in [0, length()].
  Complex at(Real s) const {
    for (const auto& seg : segments) {
      const Real l = seg.length();
      if (s <= l) return seg.point(l > 0 ? s / l : 0);
      s -= l;
    }
    return end();
  }

  ContinuationPath reversed() const {
    ContinuationPath p = *this;
    std::reverse(p.segments.begin(), p.segments.end());
    for (auto& s : p.segments) s = s.reversed();
    return p;
  }
};

inline constexpr Real singular_at_one_tol = 1e-9L;
inline constexpr Real max_detour_radius = 0.1L;

// z0 = min(0.1, half the modulus of the nearest nonzero singular point).
inline Real start_point(const SingularitySet& s) {
  Real z0 = 0.1L;
  for (const auto& p : s.nonzero()) z0 = std::min(z0, std::abs(p) / 2);
  return z0;
}

inline ContinuationPath plan_path(const SingularitySet& sing, Orientation orientation) {
  for (const auto& s : sing.points)
    if (std::abs(s.point - Complex(1)) < singular_at_one_tol) throw SingularAtOne(to_string(s.kind));

  const auto pts = sing.nonzero();
  const Real z0 = start_point(sing);
  // Detour centers (projections onto the real segment) with radii.
  std::vector<std::pair<Real, Real>> detours;
  ContinuationPath path;
  path.orientation = orientation;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    Real nearest = std::numeric_limits<Real>::infinity();
    for (std::size_t j = 0; j < pts.size(); ++j)
      if (j != i) nearest = std::min(nearest, std::abs(pts[i] - pts[j]));
    const Real r = std::min(nearest / 2, max_detour_radius);
    const Real x = pts[i].real();
    const Real h = std::abs(pts[i].imag());
    if (x <= z0 || x >= 1 || h >= r) continue;
    // The semicircle passes at distance >= r from the point.
    Real radius = std::min(r + h, (1 - x) / 2);
    radius = std::min(radius, (x - z0) / 2);
    detours.emplace_back(x, radius);
    path.detoured.push_back(pts[i]);
  }
  std::sort(detours.begin(), detours.end());
  // Merge overlapping detours into one semicircle.
  std::vector<std::pair<Real, Real>> merged;
  for (const auto& [x, r] : detours) {
    if (!merged.empty() && merged.back().first + merged.back().second >= x - r) {
      const Real lo = merged.back().first - merged.back().second;
      const Real hi = std::max(merged.back().first + merged.back().second, x + r);
      merged.back() = {(lo + hi) / 2, (hi - lo) / 2};
    } else {
      merged.emplace_back(x, r);
    }
  }

  const Real pi = std::numbers::pi_v<Real>;
  Real cursor = z0;
  for (const auto& [x, r] : merged) {
    if (x - r > cursor) path.segments.push_back({Segment::Kind::Line, Complex(cursor), Complex(x - r), {}, 0, 0, 0});
    Segment arc{Segment::Kind::Arc, {}, {}, Complex(x), r, pi, orientation == Orientation::Lower ? 2 * pi : 0};
    arc.from = arc.point(0);
    arc.to = arc.point(1);
    path.segments.push_back(arc);
    cursor = x + r;
  }
  path.segments.push_back({Segment::Kind::Line, Complex(cursor), Complex(1), {}, 0, 0, 0});

  // Clearance: sample the path densely.
  path.clearance = std::numeric_limits<Real>::infinity();
  const Real len = path.length();
  constexpr int samples = 4000;
  for (int k = 0; k <= samples; ++k) {
    const Complex z = path.at(len * k / samples);
    for (const auto& p : pts) path.clearance = std::min(path.clearance, std::abs(z - p));
  }
  return path;
}

// ---------------------------------------------------------------------------
// Tracking

struct TrackOptions {
  Real tol = 1e-10L;            // final |Q(1, y)|
  Real step_floor = 1e-12L;
  Real initial_fraction = 0.05L;
  int newton_iterations = 12;
  Real jump_guard = 10;          // other roots must be this many corrections away
};

struct TrackResult {
  Complex value;
  Real residual = 0;
  std::size_t steps = 0;
  std::size_t rejected = 0;
};

namespace detail {

// Newton in y at fixed z; nullopt if it does not converge.
inline std::optional<Complex> newton(const AlgebraicCurve& c, Complex z, Complex y, int iterations) {
  for (int it = 0; it < iterations; ++it) {
    const Complex dq = c.d_dy(z, y);
    if (dq == Complex(0)) return std::nullopt;
    const Complex delta = c(z, y) / dq;
    y -= delta;
    if (!std::isfinite(y.real()) || !std::isfinite(y.imag())) return std::nullopt;
    if (std::abs(delta) <= 64 * std::numeric_limits<Real>::epsilon() * std::max(Real(1), std::abs(y))) return y;
  }
  return std::nullopt;
}

// Distance from y to the nearest other root of Q(z, .).
inline Real separation(const AlgebraicCurve& c, Complex z, Complex y) {
  if (c.degree_y() < 2) return std::numeric_limits<Real>::infinity();
  std::vector<Complex> roots;
  try {
    roots = find_roots(c.at(z), RootOptions{1000, 1e-9L});
  } catch (const RootFindingDiverged&) {
    return 0;
  }
  std::sort(roots.begin(), roots.end(), [&](Complex a, Complex b) { return std::abs(a - y) < std::abs(b - y); });
  return roots.size() < 2 ? std::numeric_limits<Real>::infinity() : std::abs(roots[1] - y);
}

}  // namespace detail

// Follows the root y of Q(z, y) = 0 starting at (path.start(), y_start) to path.end().
inline TrackResult track(const AlgebraicCurve& c, Complex y_start, const ContinuationPath& path, const TrackOptions& opt = {}) {
  const Real length = path.length();
  const Real max_step = opt.initial_fraction * length;
  Real h = max_step;
  Real s = 0;
  TrackResult out;
  auto start = detail::newton(c, path.start(), y_start, opt.newton_iterations);
  if (!start) throw CorrectorDiverged("at the start point");
  Complex y = *start;
  int streak = 0;
  while (s < length) {
    const Real step = std::min(h, length - s);
    const Complex z = path.at(s);
    const Complex z_next = path.at(s + step);
    const Complex slope = -c.d_dz(z, y) / c.d_dy(z, y);
    const Complex predicted = y + slope * (z_next - z);
    auto corrected = detail::newton(c, z_next, predicted, opt.newton_iterations);
    bool ok = corrected.has_value();
    if (ok) {
      const Real correction = std::abs(*corrected - predicted);
      ok = detail::separation(c, z_next, *corrected) > opt.jump_guard * correction;
    }
    if (!ok) {
      ++out.rejected;
      streak = 0;
      h = step / 2;
      if (h < opt.step_floor) throw StepUnderflow(static_cast<double>(s));
      continue;
    }
    y = *corrected;
    s += step;
    ++out.steps;
    if (++streak >= 4) {
      h = std::min(2 * h, max_step);
      streak = 0;
    }
  }
  // Polish at the end point.
  const Complex z_end = path.end();
  for (int it = 0; it < opt.newton_iterations && !(std::abs(c(z_end, y)) < opt.tol / 100); ++it) {
    const Complex dq = c.d_dy(z_end, y);
    if (dq == Complex(0)) break;
    y -= c(z_end, y) / dq;
  }
  out.value = y;
  out.residual = std::abs(c(z_end, y));
  if (!(out.residual < opt.tol)) throw CorrectorDiverged("at the end point (|Q| = " + std::to_string(static_cast<double>(out.residual)) + ")");
  return out;
}

// Value at z of the exact series truncated at its order.
inline Complex evaluate_series(const PowerSeries& s, Complex z) {
  Complex acc = 0;
  for (std::size_t n = s.order() + 1; n > 0; --n) acc = acc * z + to_long_double(s[n - 1]);
  return acc;
}

inline TrackResult track(const AlgebraicCurve& c, const PowerSeries& germ, const ContinuationPath& path,
                         const TrackOptions& opt = {}) {
  return track(c, evaluate_series(germ, path.start()), path, opt);
}

// ---------------------------------------------------------------------------
// Closed forms

// Exact for y-degree 1; principal square root matched to the germ for y-degree 2;
// nullopt for higher degree.
inline std::optional<std::variant<Rational, Complex>> closed_form_oracle(const AlgebraicCurve& c, Complex z0, Complex germ_value) {
  auto at_one = [](const IntPoly& p) {
    Integer s = 0;
    for (const auto& v : p) s += v;
    return s;
  };
  if (c.degree_y() == 1) {
    const Integer a1 = at_one(c.y_coefficient(1));
    if (a1 == 0) throw PoleAtOne();
    return std::variant<Rational, Complex>(Rational(-at_one(c.y_coefficient(0))) / Rational(a1));
  }
  if (c.degree_y() != 2) return std::nullopt;
  auto branch = [&](Complex z, int sign) {
    const Complex a2 = evaluate(c.y_coefficient(2), z);
    const Complex a1 = evaluate(c.y_coefficient(1), z);
    const Complex a0 = evaluate(c.y_coefficient(0), z);
    return (-a1 + static_cast<Real>(sign) * std::sqrt(a1 * a1 - Real(4) * a2 * a0)) / (Real(2) * a2);
  };
  if (at_one(c.y_coefficient(2)) == 0) throw PoleAtOne();
  const int sign = std::abs(branch(z0, 1) - germ_value) <= std::abs(branch(z0, -1) - germ_value) ? 1 : -1;
  return std::variant<Rational, Complex>(branch(Complex(1), sign));
}

inline Complex as_complex(const std::variant<Rational, Complex>& v) {
  if (const auto* q = std::get_if<Rational>(&v)) return Complex(to_long_double(*q));
  return std::get<Complex>(v);
}

// ---------------------------------------------------------------------------
// Fixed points of the structural polynomial

struct FixedPointReport {
  Real residual = 0;                   // |v - P(v)|
  std::vector<Complex> fixed_points;   // roots of P(y) - y
  std::optional<std::size_t> nearest;  // index into fixed_points
  Real distance = std::numeric_limits<Real>::infinity();
};

inline FixedPointReport fixed_point_check(const StructuralPolynomial& p, Complex v) {
  FixedPointReport r;
  r.residual = std::abs(v - p(v));
  IntPoly q = p.coefficients;
  if (q.size() < 2) q.resize(2);
  q[1] -= 1;
  q = trimmed(std::move(q));
  if (q.size() >= 2) r.fixed_points = find_roots(q);
  std::sort(r.fixed_points.begin(), r.fixed_points.end(), [](Complex a, Complex b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  for (std::size_t i = 0; i < r.fixed_points.size(); ++i) {
    const Real d = std::abs(r.fixed_points[i] - v);
    if (d < r.distance) {
      r.distance = d;
      r.nearest = i;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Analytic cardinality

enum class Tameness { Tame, AnalyticallyTame, NotAnalyticallyTame };

inline std::string to_string(Tameness t) {
  switch (t) {
    case Tameness::Tame: return "tame";
    case Tameness::AnalyticallyTame: return "analytically_tame";
    case Tameness::NotAnalyticallyTame: return "not_analytically_tame";
  }
  return "";
}

struct ContinuationOptions {
  Real tol = 1e-10L;
  bool lower = true;
  bool upper = true;
  std::size_t germ_order = 40;
  Real oracle_tol = 1e-9L;
};

struct ContinuationResult {
  std::optional<Complex> value;             // canonical value; lower orientation when computed
  std::optional<Complex> lower, upper;
  std::optional<Real> residual;             // |Q(1, value)|
  std::optional<Real> fixed_point_residual; // |value - P_F(value)|
  Tameness tameness = Tameness::AnalyticallyTame;
  bool unique = false;
  std::optional<Complex> conjugate_value;
  bool p1_infinite = false;                 // value at 1 on the projective line
  std::string singular_kind;                // "pole" or "branch" when z = 1 is singular
  std::optional<StructuralPolynomial> structural;
  std::optional<Complex> oracle;
  std::size_t steps = 0;
  Real start = 0;                           // z0
};

namespace detail {

inline bool is_tame(const SingularitySet& s) {
  for (const auto& p : s.nonzero())
    if (std::abs(p) <= 1 + singular_at_one_tol) return false;
  return true;
}

}  // namespace detail

inline ContinuationResult analytic_cardinality(const NestedSystem& system, const std::string& name,
                                               const ContinuationOptions& opt = {}) {
  ContinuationResult r;
  if (const auto& e = system.exponential_form(name)) {
    // Entire in z: the series converges everywhere.
    const auto v = e->at_one();
    r.value = Complex(v.real(), v.imag());
    r.tameness = Tameness::Tame;
    r.unique = true;
    r.residual = 0;
    return r;
  }
  const AlgebraicCurve curve = curve_from(system, name);
  r.structural = structural_polynomial(system.extraction(name));
  const SingularitySet sing = singularities(curve);
  for (const auto& s : sing.points)
    if (std::abs(s.point - Complex(1)) < singular_at_one_tol) {
      r.tameness = Tameness::NotAnalyticallyTame;
      if (r.singular_kind.empty() || s.kind == Singularity::Kind::Pole) r.singular_kind = to_string(s.kind);
      if (s.kind == Singularity::Kind::Pole) r.p1_infinite = true;
    }
  if (r.tameness == Tameness::NotAnalyticallyTame) return r;

  r.start = start_point(sing);
  const auto germ = solve_nested_system(system, opt.germ_order).at(name);
  const Complex y0 = evaluate_series(germ, Complex(r.start));
  TrackOptions topt;
  topt.tol = opt.tol;
  bool detours = false;
  if (opt.lower) {
    const auto path = plan_path(sing, Orientation::Lower);
    detours = detours || !path.detoured.empty();
    const auto t = track(curve, y0, path, topt);
    r.lower = t.value;
    r.steps += t.steps;
  }
  if (opt.upper) {
    const auto path = plan_path(sing, Orientation::Upper);
    detours = detours || !path.detoured.empty();
    const auto t = track(curve, y0, path, topt);
    r.upper = t.value;
    r.steps += t.steps;
  }
  r.value = r.lower ? r.lower : r.upper;
  if (r.lower && r.upper) {
    r.unique = std::abs(*r.lower - *r.upper) < opt.tol;
    if (!r.unique) r.conjugate_value = r.upper;
  } else {
    r.unique = !detours;
  }
  r.residual = std::abs(curve(Complex(1), *r.value));
  r.fixed_point_residual = std::abs(*r.value - (*r.structural)(*r.value));
  r.tameness = detail::is_tame(sing) ? Tameness::Tame : Tameness::AnalyticallyTame;
  if (auto o = closed_form_oracle(curve, Complex(r.start), y0)) r.oracle = as_complex(*o);
  return r;
}

inline ContinuationResult analytic_cardinality(const NestedSystem& system, const std::string& name, Orientation only) {
  ContinuationOptions opt;
  opt.lower = only == Orientation::Lower;
  opt.upper = only == Orientation::Upper;
  return analytic_cardinality(system, name, opt);
}

inline Tameness classify(const NestedSystem& system, const std::string& name) {
  return analytic_cardinality(system, name).tameness;
}

}  // namespace agc
