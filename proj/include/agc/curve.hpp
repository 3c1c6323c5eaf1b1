#pragma once

// The algebraic curve Q(z, y) = y - sum_i p_i(z) y^i of a polynomial
// self-recursion, its discriminant, and its singular points.

#include <algorithm>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "agc/errors.hpp"
#include "agc/polynomial.hpp"
#include "agc/solve.hpp"
#include "agc/species.hpp"

namespace agc {

class AlgebraicCurve {
 public:
  AlgebraicCurve() = default;

  // coeffs[k][i] multiplies z^k y^i.
  explicit AlgebraicCurve(std::vector<std::vector<Integer>> coeffs) : coeffs_(std::move(coeffs)) {
    std::size_t width = 0;
    for (const auto& row : coeffs_)
      for (std::size_t i = 0; i < row.size(); ++i)
        if (row[i] != 0) width = std::max(width, i + 1);
    for (auto& row : coeffs_) row.resize(width);
    while (!coeffs_.empty() && std::all_of(coeffs_.back().begin(), coeffs_.back().end(), [](const Integer& c) { return c == 0; }))
      coeffs_.pop_back();
  }

  const std::vector<std::vector<Integer>>& coefficients() const { return coeffs_; }

  Integer coefficient(std::size_t zpow, std::size_t ypow) const {
    if (zpow >= coeffs_.size() || ypow >= coeffs_[zpow].size()) return 0;
    return coeffs_[zpow][ypow];
  }

  std::size_t degree_y() const { return coeffs_.empty() || coeffs_[0].empty() ? 0 : coeffs_[0].size() - 1; }
  std::size_t degree_z() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

  // Coefficient of y^i as a polynomial in z.
  IntPoly y_coefficient(std::size_t i) const {
    IntPoly p;
    for (std::size_t k = 0; k < coeffs_.size(); ++k) p.push_back(coefficient(k, i));
    return trimmed(std::move(p));
  }

  IntPoly leading_coefficient() const { return y_coefficient(degree_y()); }

  // Q(z, .) as a polynomial in y.
  std::vector<Complex> at(Complex z) const {
    std::vector<Complex> out;
    for (std::size_t i = 0; i <= degree_y(); ++i) out.push_back(evaluate(y_coefficient(i), z));
    return out;
  }

  Complex operator()(Complex z, Complex y) const {
    Complex acc = 0;
    for (std::size_t i = degree_y() + 1; i > 0; --i) acc = acc * y + evaluate(y_coefficient(i - 1), z);
    return acc;
  }

  Complex d_dy(Complex z, Complex y) const {
    Complex acc = 0;
    for (std::size_t i = degree_y(); i > 0; --i) acc = acc * y + evaluate(y_coefficient(i), z) * static_cast<Real>(i);
    return acc;
  }

  Complex d_dz(Complex z, Complex y) const {
    Complex acc = 0;
    for (std::size_t i = degree_y() + 1; i > 0; --i) acc = acc * y + evaluate(derivative(y_coefficient(i - 1)), z);
    return acc;
  }

  friend bool operator==(const AlgebraicCurve&, const AlgebraicCurve&) = default;

 private:
  std::vector<std::vector<Integer>> coeffs_;
};

// Terms in increasing y power, then z power, e.g. "-1 + y - z*y^2".
inline std::string to_string(const AlgebraicCurve& c) {
  std::string out;
  for (std::size_t i = 0; i <= c.degree_y(); ++i)
    for (std::size_t k = 0; k <= c.degree_z(); ++k) {
      const Integer v = c.coefficient(k, i);
      if (v == 0) continue;
      const Integer mag = abs(v);
      out += v < 0 ? (out.empty() ? "-" : " - ") : (out.empty() ? "" : " + ");
      std::string mono;
      if (k >= 1) mono += k == 1 ? "z" : "z^" + std::to_string(k);
      if (i >= 1) mono += (mono.empty() ? "" : "*") + std::string(i == 1 ? "y" : "y^" + std::to_string(i));
      if (mono.empty()) out += mag.str();
      else out += (mag == 1 ? "" : mag.str() + "*") + mono;
    }
  return out.empty() ? "0" : out;
}

// Q = y - sum p_i(z) y^i for the extracted equation of `name`.
inline AlgebraicCurve curve_from(const NestedSystem& system, const std::string& name) {
  const Extraction* ex = nullptr;
  try {
    ex = &system.extraction(name);
  } catch (const NotPolynomialInSelf& e) {
    throw NotSelfRecursive(name, e.what());
  }
  const std::size_t m = ex->degree();
  std::size_t dz = 0;
  for (std::size_t i = 0; i <= m; ++i) dz = std::max(dz, ex->p(i).degree());
  std::vector<std::vector<Integer>> q(dz + 1, std::vector<Integer>(std::max<std::size_t>(m, 1) + 1, 0));
  q[0][1] = 1;
  for (std::size_t i = 0; i <= m; ++i)
    for (std::size_t k = 0; k <= ex->p(i).degree(); ++k) q[k][i] -= ex->p(i)[k];
  AlgebraicCurve curve(std::move(q));
  if (curve.leading_coefficient().empty() || curve.degree_y() == 0)
    throw NotSelfRecursive(name, "equation is degenerate in the species (Q does not depend on y)");

  // Q(z, G(z)) must vanish as a formal series.
  constexpr std::size_t check_order = 12;
  const auto g = solve_nested_system(system, check_order).at(name);
  PowerSeries acc = PowerSeries::zero(check_order);
  PowerSeries gp = PowerSeries::one(check_order);
  for (std::size_t i = 0; i <= curve.degree_y(); ++i) {
    if (i > 0) gp = gp * g;
    std::vector<Rational> ci(check_order + 1);
    const auto yi = curve.y_coefficient(i);
    for (std::size_t k = 0; k < yi.size() && k <= check_order; ++k) ci[k] = Rational(yi[k]);
    acc = acc + PowerSeries(std::move(ci)) * gp;
  }
  if (!acc.is_zero()) throw std::logic_error("curve_from: Q(z, G(z)) does not vanish");
  return curve;
}

// Disc_y(Q) = Res_y(Q, dQ/dy) / a_d(z), as a primitive integer polynomial in z.
// Constant for curves of y-degree 1.
inline IntPoly discriminant(const AlgebraicCurve& c) {
  const std::size_t d = c.degree_y();
  if (d <= 1) return {1};
  const std::size_t bound = (2 * d - 1) * c.degree_z();
  std::vector<Rational> values;
  for (std::size_t x = 0; x <= bound; ++x) {
    IntPoly f;
    for (std::size_t i = 0; i <= d; ++i) {
      Integer v = 0;
      const auto yi = c.y_coefficient(i);
      for (std::size_t k = yi.size(); k > 0; --k) v = v * x + yi[k - 1];
      f.push_back(v);
    }
    IntPoly df;
    for (std::size_t i = 1; i <= d; ++i) df.push_back(f[i] * static_cast<long long>(i));
    values.emplace_back(resultant(f, d, df, d - 1));
  }
  const RatPoly res = interpolate(values);
  if (res.empty()) return {};
  const auto [q, r] = divmod(res, to_rational(c.leading_coefficient()));
  if (!r.empty()) throw std::logic_error("discriminant: resultant not divisible by leading coefficient");
  return primitive_part(q);
}

struct Singularity {
  enum class Kind { Branch, Pole };
  Kind kind = Kind::Branch;
  Complex point;
  Real residual = 0;  // |defining polynomial| at point, relative
};

inline std::string to_string(Singularity::Kind k) { return k == Singularity::Kind::Branch ? "branch" : "pole"; }

struct SingularitySet {
  std::vector<Singularity> points;

  // Nonzero singular points; z = 0 is never singular for the formal branch.
  std::vector<Complex> nonzero() const {
    std::vector<Complex> out;
    for (const auto& s : points)
      if (std::abs(s.point) > 1e-14L) out.push_back(s.point);
    return out;
  }
};

inline SingularitySet singularities(const AlgebraicCurve& c, const RootOptions& opt = {}) {
  if (c.degree_y() < 1) throw std::invalid_argument("singularities: curve has y-degree 0");
  SingularitySet out;
  auto add = [&](const IntPoly& p, Singularity::Kind kind) {
    const IntPoly sf = squarefree_part(p);
    if (sf.size() <= 1) return;
    for (const auto& root : find_roots(sf, opt)) {
      Real scale = 0;
      for (std::size_t i = sf.size(); i > 0; --i) scale = scale * std::abs(root) + std::abs(sf[i - 1].convert_to<Real>());
      out.points.push_back({kind, root, scale > 0 ? std::abs(evaluate(sf, root)) / scale : Real(0)});
    }
  };
  add(discriminant(c), Singularity::Kind::Branch);
  add(c.leading_coefficient(), Singularity::Kind::Pole);
  std::stable_sort(out.points.begin(), out.points.end(), [](const Singularity& a, const Singularity& b) {
    if (a.point.real() != b.point.real()) return a.point.real() < b.point.real();
    return a.point.imag() < b.point.imag();
  });
  return out;
}

}  // namespace agc
