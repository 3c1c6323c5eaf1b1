#pragma once

// Univariate polynomials with exact integer/rational coefficients, and an
// all-roots solver (Aberth-Ehrlich simultaneous iteration) in extended precision.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <vector>

#include "agc/errors.hpp"
#include "agc/rational.hpp"

namespace agc {

using Real = long double;
using Complex = std::complex<Real>;

// Coefficient i multiplies x^i. Trimmed: no trailing zeros; the zero polynomial is empty.
using IntPoly = std::vector<Integer>;
using RatPoly = std::vector<Rational>;

template <class P>
P trimmed(P p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

template <class P>
P derivative(const P& p) {
  P d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long long>(i));
  return trimmed(std::move(d));
}

inline RatPoly to_rational(const IntPoly& p) { return RatPoly(p.begin(), p.end()); }

// Clears denominators and common content; positive leading coefficient.
inline IntPoly primitive_part(const RatPoly& p) {
  const RatPoly q = trimmed(p);
  if (q.empty()) return {};
  Integer lcm = 1;
  for (const auto& c : q) {
    const Integer d = boost::multiprecision::denominator(c);
    lcm = lcm / boost::multiprecision::gcd(lcm, d) * d;
  }
  IntPoly out;
  Integer g = 0;
  for (const auto& c : q) {
    out.push_back(boost::multiprecision::numerator(c) * (lcm / boost::multiprecision::denominator(c)));
    g = boost::multiprecision::gcd(g, out.back());
  }
  if (out.back() < 0) g = -g;
  for (auto& c : out) c /= g;
  return out;
}

// Quotient and remainder over Q; divisor must be nonzero.
inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& a, const RatPoly& b) {
  RatPoly r = trimmed(a);
  const RatPoly d = trimmed(b);
  if (d.empty()) throw std::invalid_argument("divmod: division by zero polynomial");
  if (r.size() < d.size()) return {{}, r};
  RatPoly q(r.size() - d.size() + 1);
  while (r.size() >= d.size() && !r.empty()) {
    const std::size_t shift = r.size() - d.size();
    const Rational c = r.back() / d.back();
    q[shift] = c;
    for (std::size_t i = 0; i < d.size(); ++i) r[shift + i] -= c * d[i];
    r = trimmed(std::move(r));
  }
  return {trimmed(std::move(q)), r};
}

inline RatPoly poly_gcd(RatPoly a, RatPoly b) {
  a = trimmed(std::move(a));
  b = trimmed(std::move(b));
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Product of the distinct irreducible factors.
inline IntPoly squarefree_part(const IntPoly& p) {
  const RatPoly q = to_rational(trimmed(p));
  if (q.size() <= 2) return primitive_part(q);
  const RatPoly g = poly_gcd(q, derivative(q));
  return primitive_part(divmod(q, g).first);
}

template <class T>
std::complex<T> evaluate(const IntPoly& p, std::complex<T> x) {
  std::complex<T> acc = 0;
  for (std::size_t i = p.size(); i > 0; --i) acc = acc * x + p[i - 1].template convert_to<T>();
  return acc;
}

inline std::string to_string(const IntPoly& p, char var = 'z') {
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    const Integer mag = abs(p[i]);
    out += p[i] < 0 ? (out.empty() ? "-" : " - ") : (out.empty() ? "" : " + ");
    if (i == 0 || mag != 1) out += mag.str() + (i ? "*" : "");
    if (i >= 1) out += var;
    if (i >= 2) out += "^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

struct RootOptions {
  int max_iterations = 1000;
  Real residual_tol = 1e-12L;  // relative: |p(x)| / sum |a_i| |x|^i
};

// All complex roots with multiplicity of sum a[i] x^i, a.back() != 0.
// Exact zero coefficients at the low end give exact zero roots.
inline std::vector<Complex> find_roots(std::vector<Complex> a, const RootOptions& opt = {}) {
  while (!a.empty() && a.back() == Complex(0)) a.pop_back();
  if (a.empty()) throw std::invalid_argument("find_roots: zero polynomial");
  std::vector<Complex> roots;
  std::size_t low = 0;
  while (a[low] == Complex(0)) ++low;
  roots.assign(low, Complex(0));
  a.erase(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(low));
  const std::size_t n = a.size() - 1;
  if (n == 0) return roots;
  if (n == 1) {
    roots.push_back(-a[0] / a[1]);
    return roots;
  }

  auto horner = [&](Complex x, Complex& dp) {
    Complex p = a[n];
    dp = 0;
    for (std::size_t i = n; i > 0; --i) {
      dp = dp * x + p;
      p = p * x + a[i - 1];
    }
    return p;
  };
  auto scale = [&](Complex x) {
    Real s = 0, r = std::abs(x);
    for (std::size_t i = n + 1; i > 0; --i) s = s * r + std::abs(a[i - 1]);
    return s;
  };

  // Start on a circle whose radius is the geometric mean of the root moduli.
  const Real radius = std::pow(std::abs(a[0] / a[n]), Real(1) / static_cast<Real>(n));
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Real theta = 2 * std::numbers::pi_v<Real> * static_cast<Real>(k) / static_cast<Real>(n) + 0.4L;
    z[k] = std::polar(radius, theta);
  }
  const Real eps = 8 * std::numeric_limits<Real>::epsilon();
  bool converged = false;
  for (int it = 0; it < opt.max_iterations && !converged; ++it) {
    converged = true;
    for (std::size_t k = 0; k < n; ++k) {
      Complex dp;
      const Complex p = horner(z[k], dp);
      if (std::abs(p) <= eps * scale(z[k])) continue;
      const Complex ratio = p / dp;
      Complex sum = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != k) sum += Real(1) / (z[k] - z[j]);
      const Complex w = ratio / (Real(1) - ratio * sum);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) continue;
      z[k] -= w;
      if (std::abs(w) > eps * std::max(std::abs(z[k]), Real(1e-30))) converged = false;
    }
  }
  for (const auto& x : z) {
    Complex dp;
    const Real res = std::abs(horner(x, dp)) / scale(x);
    if (!(res <= opt.residual_tol))
      throw RootFindingDiverged("relative residual " + std::to_string(static_cast<double>(res)) + " at degree " +
                                std::to_string(n));
    roots.push_back(x);
  }
  return roots;
}

inline std::vector<Complex> find_roots(const IntPoly& p, const RootOptions& opt = {}) {
  std::vector<Complex> a;
  for (const auto& c : trimmed(p)) a.push_back(c.convert_to<Real>());
  return find_roots(std::move(a), opt);
}

// Exact determinant by fraction-free (Bareiss) elimination.
inline Integer determinant(std::vector<std::vector<Integer>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  Integer sign = 1;
  Integer prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && m[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

// Sylvester resultant of f (formal degree df) and g (formal degree dg); coefficients low to high.
inline Integer resultant(const IntPoly& f, std::size_t df, const IntPoly& g, std::size_t dg) {
  const std::size_t n = df + dg;
  if (n == 0) return 1;
  auto coeff = [](const IntPoly& p, std::size_t i) { return i < p.size() ? p[i] : Integer(0); };
  std::vector<std::vector<Integer>> m(n, std::vector<Integer>(n, 0));
  for (std::size_t r = 0; r < dg; ++r)
    for (std::size_t i = 0; i <= df; ++i) m[r][r + i] = coeff(f, df - i);
  for (std::size_t r = 0; r < df; ++r)
    for (std::size_t i = 0; i <= dg; ++i) m[dg + r][r + i] = coeff(g, dg - i);
  return determinant(std::move(m));
}

// Exact interpolation through (x_k, y_k) for x_k = 0, 1, ..., n-1.
inline RatPoly interpolate(const std::vector<Rational>& ys) {
  const std::size_t n = ys.size();
  std::vector<Rational> dd(ys);
  for (std::size_t level = 1; level < n; ++level)
    for (std::size_t k = n - 1; k >= level; --k) dd[k] = (dd[k] - dd[k - 1]) / static_cast<long long>(level);
  // Newton form sum dd[k] prod_{j<k} (x - j), expanded by Horner.
  RatPoly out;
  for (std::size_t k = n; k > 0; --k) {
    RatPoly next(out.size() + 1);
    for (std::size_t i = 0; i < out.size(); ++i) {
      next[i + 1] += out[i];
      next[i] -= out[i] * static_cast<long long>(k - 1);
    }
    next[0] += dd[k - 1];
    out = std::move(next);
  }
  return trimmed(std::move(out));
}

}  // namespace agc
