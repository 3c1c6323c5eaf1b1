#pragma once

// Explicit finite groupoids: validation, isomorphism classes, exact
// cardinality, standard constructions (B G, E G, X//G, sums, products,
// skeletons), functors and k-sheeted coverings, and degree gradings.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "agc/errors.hpp"
#include "agc/rational.hpp"
#include "agc/series.hpp"

namespace agc {

// ---------------------------------------------------------------------------
// Finite groups given by multiplication table

class GroupTable {
 public:
  // product[a][b] = a*b. Throws std::invalid_argument unless the table is a group.
  GroupTable(std::vector<std::string> names, std::vector<std::vector<std::size_t>> product)
      : names_(std::move(names)), product_(std::move(product)) {
    const std::size_t n = names_.size();
    if (n == 0) throw std::invalid_argument("group: empty element list");
    if (product_.size() != n) throw std::invalid_argument("group: table has wrong size");
    for (const auto& row : product_) {
      if (row.size() != n) throw std::invalid_argument("group: table has wrong size");
      for (auto v : row)
        if (v >= n) throw std::invalid_argument("group: product not closed");
    }
    std::optional<std::size_t> e;
    for (std::size_t a = 0; a < n && !e; ++a) {
      bool unit = true;
      for (std::size_t b = 0; b < n && unit; ++b) unit = product_[a][b] == b && product_[b][a] == b;
      if (unit) e = a;
    }
    if (!e) throw std::invalid_argument("group: no identity element");
    identity_ = *e;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (product_[product_[a][b]][c] != product_[a][product_[b][c]])
            throw std::invalid_argument("group: product not associative");
    inverse_.assign(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b)
        if (product_[a][b] == identity_ && product_[b][a] == identity_) inverse_[a] = b;
      if (inverse_[a] == n) throw std::invalid_argument("group: element " + names_[a] + " has no inverse");
    }
  }

  static GroupTable trivial() { return cyclic(1); }

  static GroupTable cyclic(std::size_t n) {
    std::vector<std::string> names;
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
      names.push_back(std::to_string(a));
      for (std::size_t b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    }
    return GroupTable(std::move(names), std::move(table));
  }

  // Permutations of {0..n-1} in one-line notation; (s*t)(i) = s(t(i)).
  static GroupTable symmetric(std::size_t n) {
    std::vector<std::vector<std::size_t>> perms;
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), 0);
    do perms.push_back(p);
    while (std::next_permutation(p.begin(), p.end()));
    std::map<std::vector<std::size_t>, std::size_t> index;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < perms.size(); ++i) {
      index[perms[i]] = i;
      std::string s;
      for (auto v : perms[i]) s += std::to_string(v);
      names.push_back(s.empty() ? "id" : s);
    }
    std::vector<std::vector<std::size_t>> table(perms.size(), std::vector<std::size_t>(perms.size()));
    for (std::size_t a = 0; a < perms.size(); ++a)
      for (std::size_t b = 0; b < perms.size(); ++b) {
        std::vector<std::size_t> c(n);
        for (std::size_t i = 0; i < n; ++i) c[i] = perms[a][perms[b][i]];
        table[a][b] = index.at(c);
      }
    return GroupTable(std::move(names), std::move(table));
  }

  static GroupTable direct_product(const GroupTable& g, const GroupTable& h) {
    const std::size_t n = g.size() * h.size();
    std::vector<std::string> names(n);
    std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a) {
      names[a] = "(" + g.name(a / h.size()) + "," + h.name(a % h.size()) + ")";
      for (std::size_t b = 0; b < n; ++b)
        table[a][b] = g.mul(a / h.size(), b / h.size()) * h.size() + h.mul(a % h.size(), b % h.size());
    }
    return GroupTable(std::move(names), std::move(table));
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t a) const { return names_.at(a); }
  std::size_t mul(std::size_t a, std::size_t b) const { return product_[a][b]; }
  std::size_t inverse(std::size_t a) const { return inverse_[a]; }
  std::size_t identity() const { return identity_; }

  std::size_t order_of(std::size_t a) const {
    std::size_t k = 1;
    for (std::size_t x = a; x != identity_; x = mul(x, a)) ++k;
    return k;
  }

  // Greedy generating set.
  std::vector<std::size_t> generators() const {
    std::vector<std::size_t> gens;
    std::vector<bool> in(size(), false);
    in[identity_] = true;
    for (std::size_t g = 0; g < size(); ++g) {
      if (in[g]) continue;
      gens.push_back(g);
      std::vector<std::size_t> frontier;
      for (std::size_t x = 0; x < size(); ++x)
        if (in[x]) frontier.push_back(x);
      while (!frontier.empty()) {
        const std::size_t x = frontier.back();
        frontier.pop_back();
        for (auto s : gens) {
          const std::size_t y = mul(x, s);
          if (!in[y]) {
            in[y] = true;
            frontier.push_back(y);
          }
        }
      }
    }
    return gens;
  }

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::size_t>> product_;
  std::vector<std::size_t> inverse_;
  std::size_t identity_ = 0;
};

// Brute-force isomorphism test through generator images. Both groups must have order <= 24.
inline bool groups_isomorphic(const GroupTable& g, const GroupTable& h) {
  if (g.size() != h.size()) return false;
  if (g.size() > 24) throw std::invalid_argument("groups_isomorphic: order above 24");
  const std::size_t n = g.size();
  const auto gens = g.generators();
  std::vector<std::size_t> images(gens.size());

  std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
    if (k == gens.size()) {
      std::vector<std::size_t> phi(n, n);
      phi[g.identity()] = h.identity();
      std::vector<std::size_t> stack{g.identity()};
      while (!stack.empty()) {
        const std::size_t x = stack.back();
        stack.pop_back();
        for (std::size_t i = 0; i < gens.size(); ++i) {
          const std::size_t y = g.mul(x, gens[i]);
          const std::size_t hy = h.mul(phi[x], images[i]);
          if (phi[y] == n) {
            phi[y] = hy;
            stack.push_back(y);
          } else if (phi[y] != hy) {
            return false;
          }
        }
      }
      std::vector<bool> hit(n, false);
      for (auto v : phi) {
        if (v == n || hit[v]) return false;
        hit[v] = true;
      }
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (phi[g.mul(a, b)] != h.mul(phi[a], phi[b])) return false;
      return true;
    }
    const std::size_t order = g.order_of(gens[k]);
    for (std::size_t c = 0; c < n; ++c) {
      if (h.order_of(c) != order) continue;
      images[k] = c;
      if (search(k + 1)) return true;
    }
    return false;
  };
  return search(0);
}

// ---------------------------------------------------------------------------
// FiniteGroupoid

struct Morphism {
  std::string id;
  std::size_t source = 0;
  std::size_t target = 0;
};

class FiniteGroupoid {
 public:
  std::size_t add_object(std::string name) {
    objects_.push_back(std::move(name));
    identity_.push_back(std::nullopt);
    if (grading_) grading_->push_back(std::nullopt);
    return objects_.size() - 1;
  }

  std::size_t add_morphism(std::string id, std::size_t source, std::size_t target) {
    if (source >= objects_.size() || target >= objects_.size())
      throw std::out_of_range("add_morphism: unknown endpoint for " + id);
    morphisms_.push_back({std::move(id), source, target});
    return morphisms_.size() - 1;
  }

  void set_identity(std::size_t object, std::size_t morphism) { identity_.at(object) = morphism; }

  // Records g o f = gf.
  void set_composite(std::size_t g, std::size_t f, std::size_t gf) {
    if (compose_.insert_or_assign(key(g, f), gf).second) compose_order_.emplace_back(g, f);
  }

  void set_degree(std::size_t object, std::size_t degree) {
    if (!grading_) grading_.emplace(objects_.size());
    grading_->at(object) = degree;
  }

  void clear_grading() { grading_.reset(); }

  std::size_t object_count() const { return objects_.size(); }
  std::size_t morphism_count() const { return morphisms_.size(); }
  std::size_t composite_count() const { return compose_.size(); }
  const std::string& object(std::size_t i) const { return objects_.at(i); }
  const Morphism& morphism(std::size_t i) const { return morphisms_.at(i); }
  std::optional<std::size_t> identity(std::size_t object) const { return identity_.at(object); }

  std::optional<std::size_t> compose(std::size_t g, std::size_t f) const {
    auto it = compose_.find(key(g, f));
    if (it == compose_.end()) return std::nullopt;
    return it->second;
  }

  // Composites in insertion order, for serialization.
  const std::vector<std::pair<std::size_t, std::size_t>>& composite_pairs() const { return compose_order_; }

  bool is_graded() const { return grading_.has_value(); }
  std::optional<std::size_t> degree(std::size_t object) const {
    if (!grading_) return std::nullopt;
    return grading_->at(object);
  }

  std::optional<std::size_t> find_object(const std::string& name) const {
    for (std::size_t i = 0; i < objects_.size(); ++i)
      if (objects_[i] == name) return i;
    return std::nullopt;
  }

  std::optional<std::size_t> find_morphism(const std::string& id) const {
    for (std::size_t i = 0; i < morphisms_.size(); ++i)
      if (morphisms_[i].id == id) return i;
    return std::nullopt;
  }

  std::size_t hom_size(std::size_t x, std::size_t y) const {
    return static_cast<std::size_t>(std::count_if(morphisms_.begin(), morphisms_.end(),
                                                  [&](const Morphism& m) { return m.source == x && m.target == y; }));
  }

  std::size_t automorphism_count(std::size_t x) const { return hom_size(x, x); }

  std::vector<std::vector<std::size_t>> outgoing() const {
    std::vector<std::vector<std::size_t>> out(objects_.size());
    for (std::size_t i = 0; i < morphisms_.size(); ++i) out[morphisms_[i].source].push_back(i);
    return out;
  }

 private:
  static std::uint64_t key(std::size_t g, std::size_t f) {
    return (static_cast<std::uint64_t>(g) << 32) | static_cast<std::uint64_t>(f);
  }

  std::vector<std::string> objects_;
  std::vector<Morphism> morphisms_;
  std::vector<std::optional<std::size_t>> identity_;
  std::unordered_map<std::uint64_t, std::size_t> compose_;
  std::vector<std::pair<std::size_t, std::size_t>> compose_order_;
  std::optional<std::vector<std::optional<std::size_t>>> grading_;
};

struct ValidationReport {
  bool ok = true;
  std::string axiom;   // first violated axiom, empty when ok
  std::string detail;  // witnesses

  explicit operator bool() const { return ok; }

  static ValidationReport violation(std::string axiom, std::string detail) { return {false, std::move(axiom), std::move(detail)}; }
};

inline ValidationReport validate(const FiniteGroupoid& g) {
  const std::size_t nobj = g.object_count();
  const std::size_t nmor = g.morphism_count();

  {
    std::map<std::string, std::size_t> seen;
    for (std::size_t i = 0; i < nobj; ++i)
      if (!seen.emplace(g.object(i), i).second) return ValidationReport::violation("duplicate id", "object " + g.object(i));
    seen.clear();
    for (std::size_t i = 0; i < nmor; ++i)
      if (!seen.emplace(g.morphism(i).id, i).second)
        return ValidationReport::violation("duplicate id", "morphism " + g.morphism(i).id);
  }

  for (std::size_t x = 0; x < nobj; ++x) {
    auto id = g.identity(x);
    if (!id || *id >= nmor) return ValidationReport::violation("missing identity", "object " + g.object(x));
    const auto& m = g.morphism(*id);
    if (m.source != x || m.target != x)
      return ValidationReport::violation("identity not an endomorphism", m.id + " at " + g.object(x));
  }

  for (const auto& [gm, fm] : g.composite_pairs()) {
    if (gm >= nmor || fm >= nmor || *g.compose(gm, fm) >= nmor)
      return ValidationReport::violation("composition of unknown morphism", "");
    if (g.morphism(fm).target != g.morphism(gm).source)
      return ValidationReport::violation("composition of non-composable pair",
                                         g.morphism(gm).id + " o " + g.morphism(fm).id);
  }

  const auto out = g.outgoing();
  for (std::size_t f = 0; f < nmor; ++f) {
    const auto& mf = g.morphism(f);
    for (std::size_t gm : out[mf.target]) {
      auto gf = g.compose(gm, f);
      if (!gf) return ValidationReport::violation("composition undefined", g.morphism(gm).id + " o " + mf.id);
      const auto& r = g.morphism(*gf);
      if (r.source != mf.source || r.target != g.morphism(gm).target)
        return ValidationReport::violation("composite has wrong endpoints", g.morphism(gm).id + " o " + mf.id + " = " + r.id);
    }
  }

  for (std::size_t f = 0; f < nmor; ++f) {
    const auto& mf = g.morphism(f);
    if (g.compose(*g.identity(mf.target), f) != f || g.compose(f, *g.identity(mf.source)) != f)
      return ValidationReport::violation("identity not a unit", mf.id);
  }

  for (std::size_t f = 0; f < nmor; ++f)
    for (std::size_t gm : out[g.morphism(f).target])
      for (std::size_t h : out[g.morphism(gm).target]) {
        const auto left = g.compose(h, *g.compose(gm, f));
        const auto right = g.compose(*g.compose(h, gm), f);
        if (left != right)
          return ValidationReport::violation("not associative", g.morphism(h).id + ", " + g.morphism(gm).id + ", " +
                                                                   g.morphism(f).id);
      }

  for (std::size_t f = 0; f < nmor; ++f) {
    const auto& mf = g.morphism(f);
    bool found = false;
    for (std::size_t inv : out[mf.target]) {
      if (g.morphism(inv).target != mf.source) continue;
      if (g.compose(inv, f) == g.identity(mf.source) && g.compose(f, inv) == g.identity(mf.target)) {
        found = true;
        break;
      }
    }
    if (!found) return ValidationReport::violation("no inverse", mf.id);
  }

  if (g.is_graded()) {
    for (std::size_t x = 0; x < nobj; ++x)
      if (!g.degree(x)) return ValidationReport::violation("grading incomplete", "object " + g.object(x));
    for (std::size_t f = 0; f < nmor; ++f) {
      const auto& mf = g.morphism(f);
      if (g.degree(mf.source) != g.degree(mf.target)) return ValidationReport::violation("degree mismatch", mf.id);
    }
  }
  return {};
}

// ---------------------------------------------------------------------------
// Isomorphism classes and cardinality

struct IsoClassPartition {
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> representative;  // per block
  std::vector<std::size_t> block_of;        // per object
};

inline IsoClassPartition iso_classes(const FiniteGroupoid& g) {
  const std::size_t n = g.object_count();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t f = 0; f < g.morphism_count(); ++f) {
    const auto a = find(g.morphism(f).source);
    const auto b = find(g.morphism(f).target);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  IsoClassPartition p;
  p.block_of.assign(n, 0);
  std::map<std::size_t, std::size_t> root_block;
  for (std::size_t x = 0; x < n; ++x) {
    const auto r = find(x);
    auto [it, inserted] = root_block.emplace(r, p.blocks.size());
    if (inserted) {
      p.blocks.emplace_back();
      p.representative.push_back(x);
    }
    p.blocks[it->second].push_back(x);
    p.block_of[x] = it->second;
  }
  return p;
}

inline Rational cardinality(const FiniteGroupoid& g) {
  std::vector<std::size_t> aut(g.object_count(), 0);
  for (std::size_t f = 0; f < g.morphism_count(); ++f)
    if (g.morphism(f).source == g.morphism(f).target) ++aut[g.morphism(f).source];
  Rational chi = 0;
  for (auto rep : iso_classes(g).representative) chi += Rational(1, static_cast<long long>(aut[rep]));
  return chi;
}

// Sorted automorphism-group orders, one per isomorphism class.
inline std::vector<std::size_t> automorphism_orders(const FiniteGroupoid& g) {
  std::vector<std::size_t> orders;
  for (auto rep : iso_classes(g).representative) orders.push_back(g.automorphism_count(rep));
  std::sort(orders.begin(), orders.end());
  return orders;
}

// Equal multisets of automorphism-group orders over isomorphism classes.
inline bool numerically_equivalent(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  return automorphism_orders(a) == automorphism_orders(b);
}

inline GroupTable automorphism_group(const FiniteGroupoid& g, std::size_t x) {
  std::vector<std::size_t> autos;
  for (std::size_t f = 0; f < g.morphism_count(); ++f)
    if (g.morphism(f).source == x && g.morphism(f).target == x) autos.push_back(f);
  std::map<std::size_t, std::size_t> local;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < autos.size(); ++i) {
    local[autos[i]] = i;
    names.push_back(g.morphism(autos[i]).id);
  }
  std::vector<std::vector<std::size_t>> table(autos.size(), std::vector<std::size_t>(autos.size()));
  for (std::size_t i = 0; i < autos.size(); ++i)
    for (std::size_t j = 0; j < autos.size(); ++j) table[i][j] = local.at(*g.compose(autos[i], autos[j]));
  return GroupTable(std::move(names), std::move(table));
}

// Full equivalence: classes can be matched with isomorphic automorphism groups.
// Brute force, automorphism groups of order <= 24 only.
inline bool equivalent(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  if (!numerically_equivalent(a, b)) return false;
  std::vector<GroupTable> ga, gb;
  for (auto rep : iso_classes(a).representative) ga.push_back(automorphism_group(a, rep));
  for (auto rep : iso_classes(b).representative) gb.push_back(automorphism_group(b, rep));
  // Isomorphism is an equivalence relation, so greedy matching is exact.
  std::vector<bool> used(gb.size(), false);
  for (const auto& x : ga) {
    bool matched = false;
    for (std::size_t j = 0; j < gb.size() && !matched; ++j) {
      if (used[j] || !groups_isomorphic(x, gb[j])) continue;
      used[j] = matched = true;
    }
    if (!matched) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Constructions

inline FiniteGroupoid disjoint_union(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  FiniteGroupoid out;
  const FiniteGroupoid* parts[2] = {&a, &b};
  const char* tags[2] = {"0.", "1."};
  for (int p = 0; p < 2; ++p) {
    const auto& g = *parts[p];
    const std::size_t obj0 = out.object_count();
    const std::size_t mor0 = out.morphism_count();
    for (std::size_t x = 0; x < g.object_count(); ++x) out.add_object(tags[p] + g.object(x));
    for (std::size_t f = 0; f < g.morphism_count(); ++f)
      out.add_morphism(tags[p] + g.morphism(f).id, obj0 + g.morphism(f).source, obj0 + g.morphism(f).target);
    for (std::size_t x = 0; x < g.object_count(); ++x)
      if (auto id = g.identity(x)) out.set_identity(obj0 + x, mor0 + *id);
    for (const auto& [gm, fm] : g.composite_pairs()) out.set_composite(mor0 + gm, mor0 + fm, mor0 + *g.compose(gm, fm));
  }
  if (a.is_graded() && b.is_graded()) {
    for (std::size_t x = 0; x < a.object_count(); ++x) out.set_degree(x, a.degree(x).value_or(0));
    for (std::size_t x = 0; x < b.object_count(); ++x) out.set_degree(a.object_count() + x, b.degree(x).value_or(0));
  }
  return out;
}

inline FiniteGroupoid product(const FiniteGroupoid& a, const FiniteGroupoid& b) {
  FiniteGroupoid out;
  const std::size_t nb = b.object_count();
  const std::size_t mb = b.morphism_count();
  for (std::size_t x = 0; x < a.object_count(); ++x)
    for (std::size_t y = 0; y < nb; ++y) out.add_object("(" + a.object(x) + "," + b.object(y) + ")");
  for (std::size_t f = 0; f < a.morphism_count(); ++f)
    for (std::size_t h = 0; h < mb; ++h) {
      const auto& mf = a.morphism(f);
      const auto& mh = b.morphism(h);
      out.add_morphism("(" + mf.id + "," + mh.id + ")", mf.source * nb + mh.source, mf.target * nb + mh.target);
    }
  for (std::size_t x = 0; x < a.object_count(); ++x)
    for (std::size_t y = 0; y < nb; ++y)
      if (a.identity(x) && b.identity(y)) out.set_identity(x * nb + y, *a.identity(x) * mb + *b.identity(y));
  for (const auto& [g1, f1] : a.composite_pairs())
    for (const auto& [g2, f2] : b.composite_pairs())
      out.set_composite(g1 * mb + g2, f1 * mb + f2, *a.compose(g1, f1) * mb + *b.compose(g2, f2));
  if (a.is_graded() && b.is_graded())
    for (std::size_t x = 0; x < a.object_count(); ++x)
      for (std::size_t y = 0; y < nb; ++y) out.set_degree(x * nb + y, a.degree(x).value_or(0) + b.degree(y).value_or(0));
  return out;
}

// One object, one morphism.
inline FiniteGroupoid point() {
  FiniteGroupoid g;
  g.add_object("*");
  g.add_morphism("1", 0, 0);
  g.set_identity(0, 0);
  g.set_composite(0, 0, 0);
  return g;
}

inline FiniteGroupoid discrete(std::size_t n) {
  FiniteGroupoid g;
  for (std::size_t x = 0; x < n; ++x) {
    g.add_object(std::to_string(x));
    g.add_morphism("id" + std::to_string(x), x, x);
    g.set_identity(x, x);
    g.set_composite(x, x, x);
  }
  return g;
}

inline FiniteGroupoid delooping(const GroupTable& group) {
  FiniteGroupoid g;
  g.add_object("*");
  for (std::size_t a = 0; a < group.size(); ++a) g.add_morphism(group.name(a), 0, 0);
  g.set_identity(0, group.identity());
  for (std::size_t a = 0; a < group.size(); ++a)
    for (std::size_t b = 0; b < group.size(); ++b) g.set_composite(a, b, group.mul(a, b));
  return g;
}

// action[g][x] = g.x. Objects are X; morphism (g, x): x -> g.x, composed as (h, g.x) o (g, x) = (hg, x).
inline FiniteGroupoid action_groupoid(const GroupTable& group, const std::vector<std::string>& set,
                                      const std::vector<std::vector<std::size_t>>& action) {
  const std::size_t ng = group.size();
  const std::size_t nx = set.size();
  if (action.size() != ng) throw std::invalid_argument("action_groupoid: action table has wrong size");
  for (const auto& row : action) {
    if (row.size() != nx) throw std::invalid_argument("action_groupoid: action table has wrong size");
    for (auto v : row)
      if (v >= nx) throw std::invalid_argument("action_groupoid: action leaves the set");
  }
  const std::size_t e = group.identity();
  for (std::size_t x = 0; x < nx; ++x)
    if (action[e][x] != x) throw InvalidAction(group.name(e), group.name(e), set[x]);
  for (std::size_t g = 0; g < ng; ++g)
    for (std::size_t h = 0; h < ng; ++h)
      for (std::size_t x = 0; x < nx; ++x)
        if (action[group.mul(g, h)][x] != action[g][action[h][x]]) throw InvalidAction(group.name(g), group.name(h), set[x]);

  FiniteGroupoid out;
  for (const auto& x : set) out.add_object(x);
  auto mor = [&](std::size_t g, std::size_t x) { return g * nx + x; };
  for (std::size_t g = 0; g < ng; ++g)
    for (std::size_t x = 0; x < nx; ++x) out.add_morphism(group.name(g) + "@" + set[x], x, action[g][x]);
  for (std::size_t x = 0; x < nx; ++x) out.set_identity(x, mor(e, x));
  for (std::size_t g = 0; g < ng; ++g)
    for (std::size_t x = 0; x < nx; ++x)
      for (std::size_t h = 0; h < ng; ++h) out.set_composite(mor(h, action[g][x]), mor(g, x), mor(group.mul(h, g), x));
  return out;
}

struct GroupoidFunctor {
  FiniteGroupoid domain;
  FiniteGroupoid codomain;
  std::vector<std::size_t> object_map;
  std::vector<std::size_t> morphism_map;
};

inline ValidationReport validate_functor(const GroupoidFunctor& f) {
  const auto& d = f.domain;
  const auto& c = f.codomain;
  if (f.object_map.size() != d.object_count() || f.morphism_map.size() != d.morphism_count())
    return ValidationReport::violation("incomplete map", "object or morphism map does not cover the domain");
  for (auto v : f.object_map)
    if (v >= c.object_count()) return ValidationReport::violation("incomplete map", "object image out of range");
  for (auto v : f.morphism_map)
    if (v >= c.morphism_count()) return ValidationReport::violation("incomplete map", "morphism image out of range");
  for (std::size_t m = 0; m < d.morphism_count(); ++m) {
    const auto& dm = d.morphism(m);
    const auto& cm = c.morphism(f.morphism_map[m]);
    if (cm.source != f.object_map[dm.source] || cm.target != f.object_map[dm.target])
      return ValidationReport::violation("endpoints not preserved", dm.id);
  }
  for (std::size_t x = 0; x < d.object_count(); ++x)
    if (f.morphism_map[*d.identity(x)] != *c.identity(f.object_map[x]))
      return ValidationReport::violation("identity not preserved", d.object(x));
  for (const auto& [gm, fm] : d.composite_pairs())
    if (f.morphism_map[*d.compose(gm, fm)] != c.compose(f.morphism_map[gm], f.morphism_map[fm]))
      return ValidationReport::violation("composition not preserved", d.morphism(gm).id + " o " + d.morphism(fm).id);
  return {};
}

inline GroupoidFunctor identity_functor(const FiniteGroupoid& g) {
  GroupoidFunctor f{g, g, {}, {}};
  f.object_map.resize(g.object_count());
  f.morphism_map.resize(g.morphism_count());
  std::iota(f.object_map.begin(), f.object_map.end(), 0);
  std::iota(f.morphism_map.begin(), f.morphism_map.end(), 0);
  return f;
}

// E G together with the canonical functor E G -> B G sending g -> h to h g^{-1}.
inline std::pair<FiniteGroupoid, GroupoidFunctor> translation(const GroupTable& group) {
  const std::size_t n = group.size();
  std::vector<std::string> elements;
  std::vector<std::vector<std::size_t>> left(n, std::vector<std::size_t>(n));
  for (std::size_t g = 0; g < n; ++g) {
    elements.push_back(group.name(g));
    for (std::size_t x = 0; x < n; ++x) left[g][x] = group.mul(g, x);
  }
  FiniteGroupoid eg = action_groupoid(group, elements, left);
  GroupoidFunctor f{eg, delooping(group), std::vector<std::size_t>(n, 0), {}};
  for (std::size_t m = 0; m < eg.morphism_count(); ++m) {
    const auto& mm = eg.morphism(m);
    f.morphism_map.push_back(group.mul(mm.target, group.inverse(mm.source)));
  }
  return {std::move(eg), std::move(f)};
}

// ---------------------------------------------------------------------------
// Coverings

class CoveringError : public Error {
 public:
  enum class Kind { NotSurjective, LiftingFails, UnevenFibers };

  CoveringError(Kind kind, std::string message, std::vector<std::size_t> fiber_sizes = {})
      : Error(std::move(message)), kind_(kind), fiber_sizes_(std::move(fiber_sizes)) {}

  Kind kind() const { return kind_; }
  const std::vector<std::size_t>& fiber_sizes() const { return fiber_sizes_; }

 private:
  Kind kind_;
  std::vector<std::size_t> fiber_sizes_;
};

struct CoveringWitness {
  std::size_t sheets = 0;
  std::vector<std::vector<std::size_t>> fibers;  // per codomain object
};

inline CoveringWitness covering_check(const GroupoidFunctor& f) {
  const auto& d = f.domain;
  const auto& c = f.codomain;
  CoveringWitness w;
  w.fibers.resize(c.object_count());
  for (std::size_t x = 0; x < d.object_count(); ++x) w.fibers[f.object_map[x]].push_back(x);
  for (std::size_t y = 0; y < c.object_count(); ++y)
    if (w.fibers[y].empty()) throw CoveringError(CoveringError::Kind::NotSurjective, "not surjective on objects: " + c.object(y) + " has no preimage");

  const auto out = d.outgoing();
  for (std::size_t h = 0; h < c.morphism_count(); ++h) {
    for (std::size_t x : w.fibers[c.morphism(h).source]) {
      const auto lifts = std::count_if(out[x].begin(), out[x].end(), [&](std::size_t m) { return f.morphism_map[m] == h; });
      if (lifts != 1)
        throw CoveringError(CoveringError::Kind::LiftingFails, "lifting fails for morphism " + c.morphism(h).id + " at object " +
                                                                   d.object(x) + " (" + std::to_string(lifts) + " lifts)");
    }
  }

  std::vector<std::size_t> sizes;
  for (const auto& fib : w.fibers) sizes.push_back(fib.size());
  if (std::adjacent_find(sizes.begin(), sizes.end(), std::not_equal_to<>()) != sizes.end())
    throw CoveringError(CoveringError::Kind::UnevenFibers, "fibers have different sizes", sizes);
  w.sheets = sizes.empty() ? 0 : sizes.front();
  return w;
}

// ---------------------------------------------------------------------------
// Skeleton and gradings

inline FiniteGroupoid skeleton(const FiniteGroupoid& g) {
  const auto classes = iso_classes(g);
  FiniteGroupoid out;
  std::map<std::size_t, std::size_t> mor_index;
  for (std::size_t b = 0; b < classes.blocks.size(); ++b) {
    const std::size_t rep = classes.representative[b];
    const std::size_t obj = out.add_object(g.object(rep));
    for (std::size_t f = 0; f < g.morphism_count(); ++f) {
      const auto& m = g.morphism(f);
      if (m.source == rep && m.target == rep) mor_index[f] = out.add_morphism(m.id, obj, obj);
    }
    if (auto id = g.identity(rep)) out.set_identity(obj, mor_index.at(*id));
    if (auto deg = g.degree(rep)) out.set_degree(obj, *deg);
  }
  for (const auto& [gm, fm] : g.composite_pairs()) {
    auto a = mor_index.find(gm);
    auto b = mor_index.find(fm);
    if (a == mor_index.end() || b == mor_index.end()) continue;
    if (g.morphism(gm).source != g.morphism(fm).target) continue;
    out.set_composite(a->second, b->second, mor_index.at(*g.compose(gm, fm)));
  }
  return out;
}

// Coefficient n is the cardinality of the degree-n full subgroupoid.
inline PowerSeries graded_series(const FiniteGroupoid& g) {
  if (g.object_count() == 0) return PowerSeries::zero(0);
  if (!g.is_graded()) throw std::invalid_argument("graded_series: groupoid has no grading");
  const auto classes = iso_classes(g);
  std::size_t max_degree = 0;
  for (std::size_t x = 0; x < g.object_count(); ++x) max_degree = std::max(max_degree, g.degree(x).value_or(0));
  std::vector<Rational> coeffs(max_degree + 1);
  for (auto rep : classes.representative)
    coeffs[g.degree(rep).value_or(0)] += Rational(1, static_cast<long long>(g.automorphism_count(rep)));
  return PowerSeries(std::move(coeffs));
}

inline FiniteGroupoid aut_grading(const FiniteGroupoid& g) {
  FiniteGroupoid out = g;
  for (std::size_t x = 0; x < g.object_count(); ++x) out.set_degree(x, g.automorphism_count(x));
  return out;
}

}  // namespace agc
