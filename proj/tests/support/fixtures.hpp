#pragma once

// Test-only generators: small group zoo, exhaustive enumeration of group
// actions, and random finite groupoids.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "agc/groupoid.hpp"

namespace agc::testing {

using Perm = std::vector<std::size_t>;

inline Perm compose_perm(const Perm& a, const Perm& b) {
  Perm c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c[i] = a[b[i]];
  return c;
}

// Closure of a set of permutations as a GroupTable.
inline GroupTable group_from_permutations(const std::vector<Perm>& gens) {
  const std::size_t n = gens.front().size();
  Perm id(n);
  std::iota(id.begin(), id.end(), 0);
  std::vector<Perm> elems{id};
  std::map<Perm, std::size_t> index{{id, 0}};
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (const auto& g : gens) {
      Perm p = compose_perm(elems[i], g);
      if (index.emplace(p, elems.size()).second) elems.push_back(p);
    }
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> table(elems.size(), std::vector<std::size_t>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a) {
    std::string s;
    for (auto v : elems[a]) s += std::to_string(v);
    names.push_back(s);
    for (std::size_t b = 0; b < elems.size(); ++b) table[a][b] = index.at(compose_perm(elems[a], elems[b]));
  }
  return GroupTable(std::move(names), std::move(table));
}

inline GroupTable dihedral4() { return group_from_permutations({{1, 2, 3, 0}, {0, 3, 2, 1}}); }

inline GroupTable quaternion() {
  // Elements s*u with s in {+1,-1} and u in {1,i,j,k}; index = 4*(s<0) + u.
  static const int unit_mul[4][4][2] = {
      // {sign, unit}
      {{1, 0}, {1, 1}, {1, 2}, {1, 3}},
      {{1, 1}, {-1, 0}, {1, 3}, {-1, 2}},
      {{1, 2}, {-1, 3}, {-1, 0}, {1, 1}},
      {{1, 3}, {1, 2}, {-1, 1}, {-1, 0}},
  };
  const char* unit_names[4] = {"1", "i", "j", "k"};
  std::vector<std::string> names;
  std::vector<std::vector<std::size_t>> table(8, std::vector<std::size_t>(8));
  for (std::size_t a = 0; a < 8; ++a) {
    names.push_back(std::string(a >= 4 ? "-" : "") + unit_names[a % 4]);
    for (std::size_t b = 0; b < 8; ++b) {
      const auto& r = unit_mul[a % 4][b % 4];
      int sign = r[0] * (a >= 4 ? -1 : 1) * (b >= 4 ? -1 : 1);
      table[a][b] = (sign < 0 ? 4 : 0) + static_cast<std::size_t>(r[1]);
    }
  }
  return GroupTable(std::move(names), std::move(table));
}

// Every group of order <= max_order up to isomorphism (max_order <= 8).
inline std::vector<std::pair<std::string, GroupTable>> small_groups(std::size_t max_order) {
  std::vector<std::pair<std::string, GroupTable>> out;
  auto add = [&](std::string name, GroupTable g) {
    if (g.size() <= max_order) out.emplace_back(std::move(name), std::move(g));
  };
  add("1", GroupTable::trivial());
  add("Z2", GroupTable::cyclic(2));
  add("Z3", GroupTable::cyclic(3));
  add("Z4", GroupTable::cyclic(4));
  add("Z2xZ2", GroupTable::direct_product(GroupTable::cyclic(2), GroupTable::cyclic(2)));
  add("Z5", GroupTable::cyclic(5));
  add("Z6", GroupTable::cyclic(6));
  add("S3", GroupTable::symmetric(3));
  add("Z7", GroupTable::cyclic(7));
  add("Z8", GroupTable::cyclic(8));
  add("Z4xZ2", GroupTable::direct_product(GroupTable::cyclic(4), GroupTable::cyclic(2)));
  add("Z2^3", GroupTable::direct_product(GroupTable::cyclic(2), GroupTable::direct_product(GroupTable::cyclic(2), GroupTable::cyclic(2))));
  add("D4", dihedral4());
  add("Q8", quaternion());
  return out;
}

// Calls visit(action) for every homomorphism G -> Sym(n), as an action table action[g][x].
inline void for_each_action(const GroupTable& group, std::size_t n,
                            const std::function<void(const std::vector<std::vector<std::size_t>>&)>& visit) {
  std::vector<Perm> sym;
  Perm p(n);
  std::iota(p.begin(), p.end(), 0);
  do sym.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const Perm id = sym.front();

  const auto gens = group.generators();
  std::vector<std::vector<std::size_t>> candidates(gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::size_t order = group.order_of(gens[i]);
    for (std::size_t s = 0; s < sym.size(); ++s) {
      Perm q = id;
      for (std::size_t k = 0; k < order; ++k) q = compose_perm(sym[s], q);
      if (q == id) candidates[i].push_back(s);
    }
  }

  std::vector<std::size_t> images(gens.size());
  std::vector<Perm> phi(group.size());
  // Extends the map over the subgroup generated by the first k generators; false on conflict.
  auto extend = [&](std::size_t k) {
    std::vector<bool> set(group.size(), false);
    phi[group.identity()] = id;
    set[group.identity()] = true;
    std::vector<std::size_t> stack{group.identity()};
    while (!stack.empty()) {
      const std::size_t x = stack.back();
      stack.pop_back();
      for (std::size_t i = 0; i < k; ++i) {
        const std::size_t y = group.mul(x, gens[i]);
        Perm py = compose_perm(phi[x], sym[images[i]]);
        if (!set[y]) {
          set[y] = true;
          phi[y] = std::move(py);
          stack.push_back(y);
        } else if (phi[y] != py) {
          return false;
        }
      }
    }
    return true;
  };

  std::function<void(std::size_t)> search = [&](std::size_t k) {
    if (!extend(k)) return;
    if (k == gens.size()) {
      std::vector<std::vector<std::size_t>> action(group.size(), std::vector<std::size_t>(n));
      for (std::size_t g = 0; g < group.size(); ++g)
        for (std::size_t x = 0; x < n; ++x) action[g][x] = phi[g][x];
      visit(action);
      return;
    }
    for (auto c : candidates[k]) {
      images[k] = c;
      search(k + 1);
    }
  };
  search(0);
}

inline std::vector<std::string> point_names(std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

// Connected groupoid on `names` with vertex group `group`: morphisms (i, j, g): x_i -> x_j.
inline FiniteGroupoid connected_groupoid(const std::vector<std::string>& names, const GroupTable& group) {
  FiniteGroupoid out;
  const std::size_t c = names.size();
  const std::size_t k = group.size();
  for (const auto& n : names) out.add_object(n);
  auto mor = [&](std::size_t i, std::size_t j, std::size_t g) { return (i * c + j) * k + g; };
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t g = 0; g < k; ++g)
        out.add_morphism(names[i] + ">" + names[j] + ":" + group.name(g), i, j);
  for (std::size_t i = 0; i < c; ++i) out.set_identity(i, mor(i, i, group.identity()));
  for (std::size_t i = 0; i < c; ++i)
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t l = 0; l < c; ++l)
        for (std::size_t g = 0; g < k; ++g)
          for (std::size_t h = 0; h < k; ++h) out.set_composite(mor(j, l, h), mor(i, j, g), mor(i, l, group.mul(h, g)));
  return out;
}

// Random groupoid with at most `max_objects` objects: a disjoint union of
// connected pieces (at most 3 objects each) with small vertex groups.
inline FiniteGroupoid random_groupoid(std::mt19937& rng, std::size_t max_objects = 8, bool graded = false) {
  static const std::vector<GroupTable> groups = {GroupTable::trivial(), GroupTable::cyclic(2), GroupTable::cyclic(3)};
  std::uniform_int_distribution<std::size_t> count(0, max_objects);
  std::size_t remaining = count(rng);
  FiniteGroupoid out;
  int piece = 0;
  while (remaining > 0) {
    const std::size_t size = std::uniform_int_distribution<std::size_t>(1, std::min<std::size_t>(3, remaining))(rng);
    remaining -= size;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < size; ++i) names.push_back("p" + std::to_string(piece) + "_" + std::to_string(i));
    FiniteGroupoid c = connected_groupoid(names, groups[std::uniform_int_distribution<std::size_t>(0, groups.size() - 1)(rng)]);
    if (graded) {
      const std::size_t d = std::uniform_int_distribution<std::size_t>(0, 4)(rng);
      for (std::size_t x = 0; x < c.object_count(); ++x) c.set_degree(x, d);
    }
    if (piece == 0) {
      out = std::move(c);
    } else {
      out = disjoint_union(out, c);
    }
    ++piece;
  }
  return out;
}

}  // namespace agc::testing
