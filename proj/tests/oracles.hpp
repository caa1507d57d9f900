// Test-only oracles, independent of the library's matrix representation:
// Coxeter groups realized as permutation groups (Cayley BFS gives word
// lengths by definition), and exhaustive minimal-gallery search in small
// chamber systems.

#pragma once

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <vector>

#include "twinbld/building.hpp"

namespace oracles {

// A finitely generated permutation group; length = Cayley BFS level.
struct PermOracle {
  // generators act on {0..n-1}
  std::vector<std::vector<int>> gens;
  std::vector<std::vector<int>> elements;  // BFS order from identity
  std::vector<int> lengths;

  static std::vector<int> compose(const std::vector<int>& a,
                                  const std::vector<int>& b) {
    std::vector<int> r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
    return r;
  }

  void enumerate() {
    const size_t n = gens[0].size();
    std::vector<int> id(n);
    for (size_t i = 0; i < n; ++i) id[i] = static_cast<int>(i);
    std::map<std::vector<int>, int> seen{{id, 0}};
    elements = {id};
    lengths = {0};
    for (size_t i = 0; i < elements.size(); ++i)
      for (const auto& g : gens) {
        auto next = compose(elements[i], g);
        if (seen.emplace(next, 1).second) {
          elements.push_back(next);
          lengths.push_back(lengths[i] + 1);
        }
      }
  }

  size_t order() const { return elements.size(); }
  int longest() const { return *std::max_element(lengths.begin(), lengths.end()); }
};

// Dihedral group of order 2m as the symmetries of an m-gon (faithful for
// m >= 3); generators are a vertex reflection and an adjacent edge
// reflection, whose product is a one-step rotation of order m.
inline PermOracle dihedral(int m) {
  PermOracle o;
  std::vector<int> s(m), t(m);
  for (int i = 0; i < m; ++i) {
    s[i] = ((m - i) % m + m) % m;      // reflection fixing vertex 0
    t[i] = ((m + 1 - i) % m + m) % m;  // reflection through edge {0,1}
  }
  o.gens = {s, t};
  o.enumerate();
  return o;
}

// Symmetric group S_{n} with adjacent transpositions (type A_{n-1}).
inline PermOracle symmetric(int n) {
  PermOracle o;
  for (int k = 0; k + 1 < n; ++k) {
    std::vector<int> g(n);
    for (int i = 0; i < n; ++i) g[i] = i;
    std::swap(g[k], g[k + 1]);
    o.gens.push_back(g);
  }
  o.enumerate();
  return o;
}

// Hyperoctahedral group of rank n (type C_n) on 2n signed points
// {+1..+n, -1..-n} encoded as 0..n-1 and n..2n-1.
inline PermOracle hyperoctahedral(int n) {
  PermOracle o;
  auto id = [&] {
    std::vector<int> g(2 * n);
    for (int i = 0; i < 2 * n; ++i) g[i] = i;
    return g;
  };
  for (int k = 0; k + 1 < n; ++k) {
    auto g = id();
    std::swap(g[k], g[k + 1]);
    std::swap(g[n + k], g[n + k + 1]);
    o.gens.push_back(g);
  }
  auto g = id();  // sign flip on the last coordinate
  std::swap(g[n - 1], g[2 * n - 1]);
  o.gens.push_back(g);
  o.enumerate();
  return o;
}

// All minimal galleries between two chambers by exhaustive DFS; returns the
// common label-product as a word, or nullopt if the products disagree.
inline std::optional<std::vector<int>> exhaustive_gallery_delta(
    const twinbld::Building& b, int x, int y) {
  int target = b.gallery_distance(x, y);
  std::vector<std::vector<int>> words;
  std::vector<int> cur;
  auto dfs = [&](auto&& self, int at, int depth) -> void {
    if (at == y && depth == target) {
      words.push_back(cur);
      return;
    }
    if (depth >= target) return;
    for (int s = 0; s < b.rank(); ++s)
      for (int z : b.panel_chambers(b.panel_of(at, s))) {
        if (z == at) continue;
        if (b.gallery_distance(z, y) != target - depth - 1) continue;
        cur.push_back(s);
        self(self, z, depth + 1);
        cur.pop_back();
      }
  };
  dfs(dfs, x, 0);
  if (words.empty()) return std::nullopt;
  twinbld::WeylElement ref =
      twinbld::WeylElement::from_word(b.coxeter(), words[0]);
  for (const auto& w : words)
    if (!(twinbld::WeylElement::from_word(b.coxeter(), w) == ref))
      return std::nullopt;
  return words[0];
}

}  // namespace oracles
