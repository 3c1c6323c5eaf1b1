#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

#include "agc/errors.hpp"
#include "agc/series.hpp"
#include "agc/species.hpp"

namespace agc {

namespace detail {

inline PowerSeries evaluate_series(const Expr& e, const NestedSystem& sys, const std::vector<PowerSeries>& current,
                                   std::size_t order) {
  switch (e.kind) {
    case Expr::Kind::Constant:
      return PowerSeries::monomial(0, order, Rational(e.value));
    case Expr::Kind::Z:
      return PowerSeries::monomial(1, order);
    case Expr::Kind::E:
      return PowerSeries::exponential(order);
    case Expr::Kind::Name:
      return current[sys.index(e.name)];
    case Expr::Kind::Sum: {
      PowerSeries acc = PowerSeries::zero(order);
      for (const auto& c : e.children) acc = add(acc, evaluate_series(c, sys, current, order));
      return acc;
    }
    case Expr::Kind::Product: {
      PowerSeries acc = PowerSeries::one(order);
      for (const auto& c : e.children) acc = cauchy_product(acc, evaluate_series(c, sys, current, order));
      return acc;
    }
    case Expr::Kind::Power:
      return power(evaluate_series(e.children.front(), sys, current, order), e.exponent);
  }
  return PowerSeries::zero(order);
}

// Constant term of the right side and of its partial derivative in species `wrt`.
struct Dual {
  Rational value;
  Rational derivative;
};

inline Dual constant_term_dual(const Expr& e, const NestedSystem& sys, const std::vector<Rational>& at, std::size_t wrt) {
  switch (e.kind) {
    case Expr::Kind::Constant:
      return {Rational(e.value), 0};
    case Expr::Kind::Z:
      return {0, 0};
    case Expr::Kind::E:
      return {1, 0};
    case Expr::Kind::Name: {
      const std::size_t i = sys.index(e.name);
      return {at[i], i == wrt ? Rational(1) : Rational(0)};
    }
    case Expr::Kind::Sum: {
      Dual acc{0, 0};
      for (const auto& c : e.children) {
        Dual d = constant_term_dual(c, sys, at, wrt);
        acc.value += d.value;
        acc.derivative += d.derivative;
      }
      return acc;
    }
    case Expr::Kind::Product: {
      Dual acc{1, 0};
      for (const auto& c : e.children) {
        Dual d = constant_term_dual(c, sys, at, wrt);
        acc = {acc.value * d.value, acc.derivative * d.value + acc.value * d.derivative};
      }
      return acc;
    }
    case Expr::Kind::Power: {
      Dual b = constant_term_dual(e.children.front(), sys, at, wrt);
      Rational pk1 = 1;
      for (unsigned k = 1; k < e.exponent; ++k) pk1 *= b.value;
      return {pk1 * b.value, Rational(e.exponent) * pk1 * b.derivative};
    }
  }
  return {0, 0};
}

}  // namespace detail

/// Solves every equation of the system as a formal power series through `order`.
///
/// Jacobi iteration from the zero series. For a single equation each round
/// fixes at least one more coefficient; with k equations the bound is
/// (order+1)*k rounds. The result must be an exact fixed point and the
/// Jacobian of the right sides at z = 0 must be nilpotent, which is the
/// z-adic contraction that makes the formal solution unique.
inline std::map<std::string, PowerSeries> solve_nested_system(const NestedSystem& sys, std::size_t order) {
  const auto& eqs = sys.equations();
  const std::size_t k = eqs.size();
  std::vector<PowerSeries> current(k, PowerSeries::zero(order));

  auto step = [&](const std::vector<PowerSeries>& x) {
    std::vector<PowerSeries> next;
    next.reserve(k);
    for (const auto& eq : eqs) next.push_back(detail::evaluate_series(eq.rhs, sys, x, order));
    return next;
  };

  const std::size_t rounds = (order + 1) * k + 1;
  for (std::size_t r = 0; r < rounds; ++r) {
    auto next = step(current);
    if (next == current) break;
    current = std::move(next);
  }

  const auto check = step(current);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t n = 0; n <= order; ++n)
      if (check[i][n] != current[i][n]) throw NonWellFounded(eqs[i].name, n);
  }

  if (k > 0) {
    std::vector<Rational> at(k);
    for (std::size_t i = 0; i < k; ++i) at[i] = current[i][0];
    std::vector<std::vector<Rational>> jac(k, std::vector<Rational>(k));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) jac[i][j] = detail::constant_term_dual(eqs[i].rhs, sys, at, j).derivative;

    auto pow = jac;
    for (std::size_t p = 1; p < k; ++p) {
      std::vector<std::vector<Rational>> next(k, std::vector<Rational>(k));
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t m = 0; m < k; ++m) {
          if (pow[i][m] == 0) continue;
          for (std::size_t j = 0; j < k; ++j) next[i][j] += pow[i][m] * jac[m][j];
        }
      pow = std::move(next);
    }
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j)
        if (pow[i][j] != 0) throw NonWellFounded(eqs[i].name, 0);
  }

  std::map<std::string, PowerSeries> out;
  for (std::size_t i = 0; i < k; ++i) out.emplace(eqs[i].name, std::move(current[i]));
  return out;
}

/// Right sides evaluated at the given series, re-truncated; used for self-consistency checks.
inline std::map<std::string, PowerSeries> substitute(const NestedSystem& sys, const std::map<std::string, PowerSeries>& x) {
  const auto& eqs = sys.equations();
  std::vector<PowerSeries> cur;
  for (const auto& eq : eqs) cur.push_back(x.at(eq.name));
  const std::size_t order = cur.empty() ? 0 : cur.front().order();
  std::map<std::string, PowerSeries> out;
  for (const auto& eq : eqs) out.emplace(eq.name, detail::evaluate_series(eq.rhs, sys, cur, order));
  return out;
}

}  // namespace agc
