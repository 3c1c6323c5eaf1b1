#pragma once

// Enumeration oracles for the built-in species.
//
// Unlabeled shapes are encoded as strings:
//   btree       preorder, "n" + left + right for an internal node, "." for the empty tree
//   motzkin     "l" leaf, "u" + child, "b" + left + right
//   no00string  the string itself over {0,1}
//   ordered     one "o" per element
//   sets        "{n}"
// Size counts Z atoms: internal nodes, nodes, characters, elements.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "agc/errors.hpp"
#include "agc/rational.hpp"
#include "agc/series.hpp"
#include "agc/solve.hpp"
#include "agc/species.hpp"

namespace agc {

enum class Builtin { BinaryTree, Motzkin, No00String, Ordered, Sets };

inline constexpr std::size_t default_enumeration_cap = 8;

inline const std::vector<Builtin>& all_builtins() {
  static const std::vector<Builtin> all = {Builtin::BinaryTree, Builtin::Motzkin, Builtin::No00String, Builtin::Ordered,
                                           Builtin::Sets};
  return all;
}

inline std::string builtin_name(Builtin b) {
  switch (b) {
    case Builtin::BinaryTree: return "btree";
    case Builtin::Motzkin: return "motzkin";
    case Builtin::No00String: return "no00string";
    case Builtin::Ordered: return "ordered";
    case Builtin::Sets: return "sets";
  }
  return "";
}

inline std::optional<Builtin> builtin_from_name(std::string_view name) {
  for (auto b : all_builtins())
    if (builtin_name(b) == name) return b;
  return std::nullopt;
}

// Defining equation, as DSL text.
inline std::string builtin_equation(Builtin b) {
  switch (b) {
    case Builtin::BinaryTree: return "B = 1 + Z*B^2";
    case Builtin::Motzkin: return "M = Z + Z*M + Z*M^2";
    case Builtin::No00String: return "G = 1 + Z + (Z + Z^2)*G";
    case Builtin::Ordered: return "O = 1 + Z*O";
    case Builtin::Sets: return "S = E";
  }
  return "";
}

inline std::string builtin_species(Builtin b) { return builtin_equation(b).substr(0, 1); }

inline NestedSystem builtin_system(Builtin b) { return parse(builtin_equation(b)); }

struct EnumeratedStructure {
  Builtin kind = Builtin::BinaryTree;
  std::string shape;

  friend bool operator==(const EnumeratedStructure&, const EnumeratedStructure&) = default;
  friend auto operator<=>(const EnumeratedStructure&, const EnumeratedStructure&) = default;
};

namespace detail {

// Parses one tree starting at pos; returns its size, or nullopt when malformed.
inline std::optional<std::size_t> read_tree(Builtin kind, std::string_view s, std::size_t& pos) {
  if (pos >= s.size()) return std::nullopt;
  const char c = s[pos++];
  if (kind == Builtin::BinaryTree) {
    if (c == '.') return 0;
    if (c != 'n') return std::nullopt;
    auto l = read_tree(kind, s, pos);
    if (!l) return std::nullopt;
    auto r = read_tree(kind, s, pos);
    if (!r) return std::nullopt;
    return 1 + *l + *r;
  }
  if (c == 'l') return 1;
  if (c == 'u') {
    auto t = read_tree(kind, s, pos);
    return t ? std::optional<std::size_t>(1 + *t) : std::nullopt;
  }
  if (c == 'b') {
    auto l = read_tree(kind, s, pos);
    if (!l) return std::nullopt;
    auto r = read_tree(kind, s, pos);
    if (!r) return std::nullopt;
    return 1 + *l + *r;
  }
  return std::nullopt;
}

}  // namespace detail

// Size of a valid structure; nullopt when the shape is not valid for its builtin.
inline std::optional<std::size_t> structure_size(const EnumeratedStructure& s) {
  switch (s.kind) {
    case Builtin::BinaryTree:
    case Builtin::Motzkin: {
      std::size_t pos = 0;
      auto n = detail::read_tree(s.kind, s.shape, pos);
      if (!n || pos != s.shape.size()) return std::nullopt;
      return n;
    }
    case Builtin::No00String:
      if (s.shape.find_first_not_of("01") != std::string::npos || s.shape.find("00") != std::string::npos)
        return std::nullopt;
      return s.shape.size();
    case Builtin::Ordered:
      if (s.shape.find_first_not_of('o') != std::string::npos) return std::nullopt;
      return s.shape.size();
    case Builtin::Sets:
      if (s.shape.size() < 3 || s.shape.front() != '{' || s.shape.back() != '}') return std::nullopt;
      if (s.shape.find_first_not_of("0123456789", 1) != s.shape.size() - 1) return std::nullopt;
      return std::stoul(s.shape.substr(1, s.shape.size() - 2));
  }
  return std::nullopt;
}

inline bool is_valid(const EnumeratedStructure& s) { return structure_size(s).has_value(); }

// All unlabeled shapes of size n, in a fixed order. No cap.
inline std::vector<std::string> shapes(Builtin b, std::size_t n) {
  std::vector<std::string> out;
  switch (b) {
    case Builtin::BinaryTree:
    case Builtin::Motzkin: {
      std::vector<std::vector<std::string>> memo;
      for (std::size_t k = 0; k <= n; ++k) {
        std::vector<std::string> level;
        if (b == Builtin::BinaryTree) {
          if (k == 0) level.push_back(".");
          for (std::size_t l = 0; k > 0 && l < k; ++l)
            for (const auto& left : memo[l])
              for (const auto& right : memo[k - 1 - l]) level.push_back("n" + left + right);
        } else {
          if (k == 1) level.push_back("l");
          if (k >= 2) {
            for (const auto& t : memo[k - 1]) level.push_back("u" + t);
            for (std::size_t l = 1; l + 1 < k; ++l)
              for (const auto& left : memo[l])
                for (const auto& right : memo[k - 1 - l]) level.push_back("b" + left + right);
          }
        }
        memo.push_back(std::move(level));
      }
      out = std::move(memo[n]);
      break;
    }
    case Builtin::No00String:
      for (unsigned long bits = 0; bits < (1ul << n); ++bits) {
        std::string s(n, '0');
        for (std::size_t i = 0; i < n; ++i)
          if ((bits >> (n - 1 - i)) & 1ul) s[i] = '1';
        if (s.find("00") == std::string::npos) out.push_back(std::move(s));
      }
      break;
    case Builtin::Ordered:
      out.push_back(std::string(n, 'o'));
      break;
    case Builtin::Sets:
      out.push_back("{" + std::to_string(n) + "}");
      break;
  }
  return out;
}

namespace detail {

inline void check_cap(std::size_t n, std::size_t cap) {
  if (n > cap) throw CapExceeded(n, cap);
}

// Z positions of a shape with their unary tags and binary relations; structure is
// determined up to relabeling by these.
struct PositionGraph {
  std::vector<char> tag;
  std::set<std::tuple<char, std::size_t, std::size_t>> relations;
};

inline std::size_t build_tree_graph(Builtin kind, std::string_view s, std::size_t& pos, PositionGraph& g) {
  const char c = s[pos++];
  if (c == '.') return static_cast<std::size_t>(-1);
  const std::size_t me = g.tag.size();
  g.tag.push_back(c);
  if (c == 'u') {
    g.relations.insert({'u', me, build_tree_graph(kind, s, pos, g)});
  } else if (c == 'n' || c == 'b') {
    const auto l = build_tree_graph(kind, s, pos, g);
    if (l != static_cast<std::size_t>(-1)) g.relations.insert({'L', me, l});
    const auto r = build_tree_graph(kind, s, pos, g);
    if (r != static_cast<std::size_t>(-1)) g.relations.insert({'R', me, r});
  }
  return me;
}

inline PositionGraph position_graph(const EnumeratedStructure& s) {
  PositionGraph g;
  switch (s.kind) {
    case Builtin::BinaryTree:
    case Builtin::Motzkin: {
      std::size_t pos = 0;
      build_tree_graph(s.kind, s.shape, pos, g);
      break;
    }
    case Builtin::No00String:
    case Builtin::Ordered:
      for (std::size_t i = 0; i < s.shape.size(); ++i) {
        g.tag.push_back(s.shape[i]);
        if (i + 1 < s.shape.size()) g.relations.insert({'>', i, i + 1});
      }
      break;
    case Builtin::Sets:
      g.tag.assign(*structure_size(s), '*');
      break;
  }
  return g;
}

}  // namespace detail

// Number of relabelings of the Z positions that preserve the structure, by backtracking.
inline Integer automorphism_count(const EnumeratedStructure& s) {
  const auto g = detail::position_graph(s);
  const std::size_t n = g.tag.size();
  std::vector<std::size_t> image(n);
  std::vector<bool> used(n, false);
  Integer count = 0;
  std::function<void(std::size_t)> extend = [&](std::size_t k) {
    if (k == n) {
      ++count;
      return;
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v] || g.tag[v] != g.tag[k]) continue;
      image[k] = v;
      bool ok = true;
      for (const auto& [t, a, b] : g.relations) {
        if (a > k || b > k || (a != k && b != k)) continue;
        if (!g.relations.count({t, image[a], image[b]})) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      used[v] = true;
      extend(k + 1);
      used[v] = false;
    }
  };
  extend(0);
  return count;
}

inline bool is_rigid(Builtin b) { return b != Builtin::Sets; }

inline Integer enumerate_unlabeled(Builtin b, std::size_t n, std::size_t cap = default_enumeration_cap) {
  detail::check_cap(n, cap);
  return Integer(shapes(b, n).size());
}

// Labeled structures on {1..n}: each shape contributes n!/|Aut(shape)| distinct labelings.
inline Integer enumerate_labeled(Builtin b, std::size_t n, std::size_t cap = default_enumeration_cap) {
  detail::check_cap(n, cap);
  Integer total = 0;
  const Integer nf = factorial(static_cast<unsigned>(n));
  for (const auto& s : shapes(b, n)) total += nf / automorphism_count({b, s});
  return total;
}

// Explicit labeled structures: the shape with labels written at its Z positions in
// position order, deduplicated up to automorphism. Intended for small n.
inline std::vector<std::string> labeled_structures(Builtin b, std::size_t n, std::size_t cap = 5) {
  detail::check_cap(n, cap);
  std::set<std::string> out;
  for (const auto& shape : shapes(b, n)) {
    std::vector<std::size_t> labels(n);
    for (std::size_t i = 0; i < n; ++i) labels[i] = i + 1;
    do {
      std::string text = shape + ":";
      if (b == Builtin::Sets) {
        // Unordered: only the label set matters.
        std::vector<std::size_t> sorted = labels;
        std::sort(sorted.begin(), sorted.end());
        for (auto l : sorted) text += std::to_string(l) + ",";
      } else {
        for (auto l : labels) text += std::to_string(l) + ",";
      }
      out.insert(text);
    } while (std::next_permutation(labels.begin(), labels.end()));
  }
  return {out.begin(), out.end()};
}

// ---------------------------------------------------------------------------
// Checks

struct Mismatch {
  std::size_t n = 0;
  std::string expected;
  std::string got;
};

struct CheckReport {
  std::vector<Mismatch> mismatches;
  bool ok() const { return mismatches.empty(); }
  explicit operator bool() const { return ok(); }
};

// enumerate_labeled(n)/n! (expected) against coefficient n of the solved series (got).
inline CheckReport egf_check(Builtin b, const NestedSystem& system, const std::string& name, std::size_t n_max,
                             std::size_t cap = default_enumeration_cap) {
  const auto series = solve_nested_system(system, n_max).at(name);
  CheckReport report;
  for (std::size_t n = 0; n <= n_max; ++n) {
    const Rational expected(enumerate_labeled(b, n, cap), factorial(static_cast<unsigned>(n)));
    if (expected != series[n]) report.mismatches.push_back({n, to_string(expected), to_string(series[n])});
  }
  return report;
}

inline CheckReport egf_check(Builtin b, std::size_t n_max, std::size_t cap = default_enumeration_cap) {
  return egf_check(b, builtin_system(b), builtin_species(b), n_max, cap);
}

// u_n (expected) against coefficient n of p_0(z) + p_1(z) u(z) + ... + p_m(z) u(z)^m (got).
inline CheckReport bijection_count_check(const NestedSystem& system, const std::string& name,
                                         const std::vector<Integer>& counts) {
  if (counts.empty()) return {};
  const std::size_t order = counts.size() - 1;
  const auto& ex = system.extraction(name);
  PowerSeries u(std::vector<Rational>(counts.begin(), counts.end()));
  PowerSeries rhs = PowerSeries::zero(order);
  PowerSeries upow = PowerSeries::one(order);
  for (std::size_t i = 0; i <= ex.degree(); ++i) {
    if (i > 0) upow = upow * u;
    rhs = rhs + ex.p(i).as_series(order) * upow;
  }
  CheckReport report;
  for (std::size_t n = 0; n <= order; ++n)
    if (rhs[n] != Rational(counts[n])) report.mismatches.push_back({n, to_string(counts[n]), to_string(rhs[n])});
  return report;
}

inline CheckReport bijection_count_check(Builtin b, std::size_t n_max) {
  std::vector<Integer> counts;
  for (std::size_t n = 0; n <= n_max; ++n) counts.push_back(enumerate_unlabeled(b, n, n_max));
  return bijection_count_check(builtin_system(b), builtin_species(b), counts);
}

// ---------------------------------------------------------------------------
// Structural bijections

// Summands of p_0(Z) + p_1(Z) G + ... + p_m(Z) G^m, numbered from 1 in order of
// increasing G power, then increasing Z power, with a coefficient c giving c copies.
struct Summand {
  std::size_t g_power = 0;
  std::size_t z_power = 0;
  std::size_t copy = 0;

  friend bool operator==(const Summand&, const Summand&) = default;
};

inline std::vector<Summand> summands(const Extraction& ex) {
  std::vector<Summand> out;
  for (std::size_t i = 0; i <= ex.degree(); ++i)
    for (std::size_t k = 0; k <= ex.p(i).degree() && !ex.p(i).is_zero(); ++k)
      for (Integer c = 0; c < ex.p(i)[k]; ++c) out.push_back({i, k, static_cast<std::size_t>(c)});
  return out;
}

struct BijectionImage {
  std::size_t summand = 0;  // 1-based
  std::vector<EnumeratedStructure> components;

  friend bool operator==(const BijectionImage&, const BijectionImage&) = default;
  friend auto operator<=>(const BijectionImage&, const BijectionImage&) = default;
};

inline std::string to_string(const BijectionImage& im) {
  std::string out = "summand " + std::to_string(im.summand) + ": (";
  for (std::size_t i = 0; i < im.components.size(); ++i) out += (i ? ", " : "") + im.components[i].shape;
  return out + ")";
}

// Decomposes a structure along its defining equation.
inline BijectionImage structural_bijection(const EnumeratedStructure& s) {
  if (s.kind == Builtin::Sets) throw std::invalid_argument("structural_bijection: sets have no polynomial equation");
  if (!is_valid(s)) throw std::invalid_argument("structural_bijection: invalid " + builtin_name(s.kind) + " '" + s.shape + "'");
  const auto ex = builtin_system(s.kind).extraction(builtin_species(s.kind));
  const auto all = summands(ex);
  auto number = [&](std::size_t i, std::size_t k) {
    for (std::size_t j = 0; j < all.size(); ++j)
      if (all[j] == Summand{i, k, 0}) return j + 1;
    throw std::logic_error("structural_bijection: summand missing");
  };
  auto part = [&](std::string shape) { return EnumeratedStructure{s.kind, std::move(shape)}; };
  // Splits a concatenation of two trees.
  auto split = [&](std::string_view body) {
    std::size_t pos = 0;
    detail::read_tree(s.kind, body, pos);
    return std::vector<EnumeratedStructure>{part(std::string(body.substr(0, pos))), part(std::string(body.substr(pos)))};
  };
  const std::string& t = s.shape;
  switch (s.kind) {
    case Builtin::BinaryTree:
      if (t == ".") return {number(0, 0), {}};
      return {number(2, 1), split(std::string_view(t).substr(1))};
    case Builtin::Motzkin:
      if (t == "l") return {number(0, 1), {}};
      if (t[0] == 'u') return {number(1, 1), {part(t.substr(1))}};
      return {number(2, 1), split(std::string_view(t).substr(1))};
    case Builtin::No00String:
      if (t.empty()) return {number(0, 0), {}};
      if (t == "0") return {number(0, 1), {}};
      if (t[0] == '1') return {number(1, 1), {part(t.substr(1))}};
      return {number(1, 2), {part(t.substr(2))}};
    case Builtin::Ordered:
      if (t.empty()) return {number(0, 0), {}};
      return {number(1, 1), {part(t.substr(1))}};
    case Builtin::Sets:
      break;
  }
  throw std::logic_error("structural_bijection: unreachable");
}

// All images of size n: summand i*z^k with i components whose sizes sum to n - k.
inline std::set<BijectionImage> bijection_codomain(Builtin b, std::size_t n) {
  const auto ex = builtin_system(b).extraction(builtin_species(b));
  const auto all = summands(ex);
  std::set<BijectionImage> out;
  for (std::size_t j = 0; j < all.size(); ++j) {
    const auto [i, k, copy] = all[j];
    if (k > n) continue;
    std::vector<EnumeratedStructure> current;
    std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t slot, std::size_t left) {
      if (slot == i) {
        if (left == 0) out.insert({j + 1, current});
        return;
      }
      for (std::size_t size = 0; size <= left; ++size)
        for (const auto& sh : shapes(b, size)) {
          current.push_back({b, sh});
          fill(slot + 1, left - size);
          current.pop_back();
        }
    };
    fill(0, n - k);
  }
  return out;
}

// Exhaustive bijectivity of structural_bijection on all structures of size <= n_max.
inline CheckReport structural_bijection_check(Builtin b, std::size_t n_max) {
  CheckReport report;
  for (std::size_t n = 0; n <= n_max; ++n) {
    std::set<BijectionImage> images;
    std::size_t count = 0;
    for (const auto& sh : shapes(b, n)) {
      images.insert(structural_bijection({b, sh}));
      ++count;
    }
    const auto codomain = bijection_codomain(b, n);
    if (images.size() != count || images != codomain)
      report.mismatches.push_back({n, std::to_string(codomain.size()) + " images",
                                   std::to_string(images.size()) + " distinct of " + std::to_string(count)});
  }
  return report;
}

}  // namespace agc
