#pragma once

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "agc/rational.hpp"

namespace agc {

/// Truncated formal power series with exact rational coefficients.
///
/// A series of order N stores the N+1 coefficients a_0..a_N; nothing beyond
/// the truncation order is ever read or produced. Truncating a generating
/// series at N is the numerical image of the canonical filtration up to
/// degree N.
class PowerSeries {
 public:
  explicit PowerSeries(std::size_t order = 0) : coeffs_(order + 1) {}

  explicit PowerSeries(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) throw std::invalid_argument("PowerSeries: empty coefficient list");
  }

  PowerSeries(std::initializer_list<Rational> coeffs) : PowerSeries(std::vector<Rational>(coeffs)) {}

  static PowerSeries zero(std::size_t order) { return PowerSeries(order); }

  static PowerSeries one(std::size_t order) { return monomial(0, order); }

  // c * z^k truncated at `order` (the zero series when k > order).
  static PowerSeries monomial(std::size_t k, std::size_t order, Rational c = 1) {
    PowerSeries s(order);
    if (k <= order) s.coeffs_[k] = std::move(c);
    return s;
  }

  // sum_n z^n / n!
  static PowerSeries exponential(std::size_t order) {
    PowerSeries s(order);
    Integer f = 1;
    for (std::size_t n = 0; n <= order; ++n) {
      if (n > 0) f *= n;
      s.coeffs_[n] = Rational(Integer(1), f);
    }
    return s;
  }

  std::size_t order() const { return coeffs_.size() - 1; }

  const Rational& operator[](std::size_t n) const { return coeffs_.at(n); }

  std::span<const Rational> coefficients() const { return coeffs_; }

  PowerSeries truncated(std::size_t order) const {
    if (order > this->order()) throw std::invalid_argument("PowerSeries::truncated: order exceeds truncation");
    return PowerSeries(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + order + 1));
  }

  bool is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& c) { return c == 0; });
  }

  friend bool operator==(const PowerSeries&, const PowerSeries&) = default;

  std::vector<std::string> coefficient_strings() const {
    std::vector<std::string> out;
    out.reserve(coeffs_.size());
    for (const auto& c : coeffs_) out.push_back(to_string(c));
    return out;
  }

 private:
  friend PowerSeries add(const PowerSeries&, const PowerSeries&);
  friend PowerSeries cauchy_product(const PowerSeries&, const PowerSeries&);
  friend PowerSeries scale(const PowerSeries&, const Rational&);

  std::vector<Rational> coeffs_;
};

namespace detail {
inline void require_same_order(const PowerSeries& a, const PowerSeries& b, const char* op) {
  if (a.order() != b.order())
    throw std::invalid_argument(std::string(op) + ": truncation orders differ (" + std::to_string(a.order()) +
                                " vs " + std::to_string(b.order()) + ")");
}
}  // namespace detail

inline PowerSeries add(const PowerSeries& a, const PowerSeries& b) {
  detail::require_same_order(a, b, "add");
  PowerSeries c = a;
  for (std::size_t n = 0; n < c.coeffs_.size(); ++n) c.coeffs_[n] += b.coeffs_[n];
  return c;
}

inline PowerSeries cauchy_product(const PowerSeries& a, const PowerSeries& b) {
  detail::require_same_order(a, b, "cauchy_product");
  const std::size_t order = a.order();
  PowerSeries c(order);
  for (std::size_t i = 0; i <= order; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j <= order; ++j) {
      if (b.coeffs_[j] == 0) continue;
      c.coeffs_[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  return c;
}

inline PowerSeries scale(const PowerSeries& a, const Rational& k) {
  PowerSeries c = a;
  for (auto& x : c.coeffs_) x *= k;
  return c;
}

inline PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) { return add(a, b); }
inline PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) { return cauchy_product(a, b); }

inline PowerSeries power(const PowerSeries& a, unsigned k) {
  PowerSeries r = PowerSeries::one(a.order());
  for (unsigned i = 0; i < k; ++i) r = cauchy_product(r, a);
  return r;
}

// Entry k is sum_{n<=k} a_n z0^n.
inline std::vector<Rational> evaluate_partial_sums(const PowerSeries& a, const Rational& z0) {
  std::vector<Rational> sums;
  sums.reserve(a.order() + 1);
  Rational acc = 0;
  Rational zn = 1;
  for (std::size_t n = 0; n <= a.order(); ++n) {
    acc += a[n] * zn;
    sums.push_back(acc);
    zn *= z0;
  }
  return sums;
}

/// Polynomial with natural-number coefficients; coefficient k multiplies z^k.
class NatPolynomial {
 public:
  NatPolynomial() = default;

  explicit NatPolynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_)
      if (c < 0) throw std::invalid_argument("NatPolynomial: negative coefficient");
    trim();
  }

  NatPolynomial(std::initializer_list<int> coeffs) : NatPolynomial(std::vector<Integer>(coeffs.begin(), coeffs.end())) {}

  bool is_zero() const { return coeffs_.empty(); }

  // Degree of the zero polynomial is reported as 0.
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }

  Integer operator[](std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Integer(0); }

  std::span<const Integer> coefficients() const { return coeffs_; }

  Integer at_one() const {
    Integer s = 0;
    for (const auto& c : coeffs_) s += c;
    return s;
  }

  PowerSeries as_series(std::size_t order) const {
    std::vector<Rational> c(order + 1);
    for (std::size_t k = 0; k < coeffs_.size() && k <= order; ++k) c[k] = Rational(coeffs_[k]);
    return PowerSeries(std::move(c));
  }

  friend bool operator==(const NatPolynomial&, const NatPolynomial&) = default;

 private:
  void trim() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }

  std::vector<Integer> coeffs_;
};

}  // namespace agc
