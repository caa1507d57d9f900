#include "twinbld/paths.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "twinbld/parallel.hpp"

namespace twinbld {

namespace {

bool panel_equals_set(const Building& b, int panel, const std::vector<int>& set) {
  auto m = b.panel_chambers(panel);
  return std::equal(m.begin(), m.end(), set.begin(), set.end());
}

std::uint64_t pair_key(int p, int q) {
  if (p > q) std::swap(p, q);
  return (static_cast<std::uint64_t>(p) << 32) | static_cast<std::uint32_t>(q);
}

}  // namespace

PanelGraph PanelGraph::build(BuildingPtr bp) {
  PanelGraph g;
  g.b_ = std::move(bp);
  const Building& b = *g.b_;
  std::unordered_map<std::uint64_t, int> edgeOf;

  for (int rid = 0; rid < b.num_rank2(); ++rid) {
    const int pairIdx = b.rank2_pair(rid);
    GenSet J = b.pair_types(pairIdx);
    const int lr = b.pair_longest(pairIdx).length();
    auto members = b.rank2_chambers(rid);
    // panels inside the residue, per type
    std::vector<int> panels;
    for (int s : J.members()) {
      std::unordered_set<int> seen;
      for (int x : members)
        if (seen.insert(b.panel_of(x, s)).second)
          panels.push_back(b.panel_of(x, s));
    }
    std::sort(panels.begin(), panels.end());
    for (size_t i = 0; i < panels.size(); ++i)
      for (size_t j = i + 1; j < panels.size(); ++j) {
        int P = panels[i], Q = panels[j];
        if (b.pair_opposite_type(pairIdx, b.panel_type(P)) != b.panel_type(Q))
          continue;
        // opposite in R iff some pair of chambers realizes r_J
        bool opp = false;
        for (int x : b.panel_chambers(P)) {
          const auto* row = b.is_thin() ? nullptr : b.dist_row(x);
          for (int y : b.panel_chambers(Q)) {
            int d = row ? row[y] : b.gallery_distance(x, y);
            if (d == lr) {
              opp = true;
              break;
            }
          }
          if (opp) break;
        }
        if (!opp) continue;
        auto [it, fresh] = edgeOf.emplace(pair_key(P, Q),
                                          static_cast<int>(g.edges_.size()));
        if (!fresh)
          throw structural_error("panel pair opposite in two rank-2 residues");
        g.edges_.push_back({P, Q, rid});
      }
  }

  g.adj_.resize(b.num_panels());
  for (size_t e = 0; e < g.edges_.size(); ++e) {
    g.adj_[g.edges_[e].p].push_back(static_cast<int>(e));
    g.adj_[g.edges_[e].q].push_back(static_cast<int>(e));
  }
  for (int p = 0; p < b.num_panels(); ++p)
    std::sort(g.adj_[p].begin(), g.adj_[p].end(), [&](int a, int c) {
      return g.other_end(a, p) < g.other_end(c, p);
    });
  return g;
}

std::optional<CompatiblePath> find_compatible_path(const PanelGraph& g, int P,
                                                   int Q) {
  const Building& b = g.building();
  if (P == Q) return CompatiblePath{{P}, {}};
  std::unordered_map<int, std::pair<int, int>> from;  // panel -> (prev, edge)
  std::deque<int> queue{P};
  from.emplace(P, std::make_pair(-1, -1));
  while (!queue.empty()) {
    int x = queue.front();
    queue.pop_front();
    for (int ei : g.edges_at(x)) {
      const auto& e = g.edges()[ei];
      int y = g.other_end(ei, x);
      // admissible step: proj_{R(x,y)} P = x
      if (!panel_equals_set(b, x, b.project_panel_to_rank2(P, e.resId)))
        continue;
      if (from.count(y)) continue;
      from.emplace(y, std::make_pair(x, ei));
      if (y == Q) {
        CompatiblePath path;
        for (int c = Q; c != -1; c = from[c].first) {
          path.panels.push_back(c);
          if (from[c].second >= 0)
            path.residues.push_back(g.edges()[from[c].second].resId);
        }
        std::reverse(path.panels.begin(), path.panels.end());
        std::reverse(path.residues.begin(), path.residues.end());
        return path;
      }
      queue.push_back(y);
    }
  }
  return std::nullopt;
}

std::vector<CompatiblePath> enumerate_compatible_paths(const PanelGraph& g,
                                                       int P, int maxEdges) {
  const Building& b = g.building();
  std::vector<CompatiblePath> out;
  CompatiblePath cur{{P}, {}};
  // compatible paths never revisit a panel (length additivity), so a plain
  // DFS with the admissibility filter terminates
  auto dfs = [&](auto&& self, int x) -> void {
    out.push_back(cur);
    if (cur.length() >= maxEdges) return;
    for (int ei : g.edges_at(x)) {
      const auto& e = g.edges()[ei];
      if (!panel_equals_set(b, x, b.project_panel_to_rank2(P, e.resId)))
        continue;
      int y = g.other_end(ei, x);
      if (std::find(cur.panels.begin(), cur.panels.end(), y) != cur.panels.end())
        continue;
      cur.panels.push_back(y);
      cur.residues.push_back(e.resId);
      self(self, y);
      cur.panels.pop_back();
      cur.residues.pop_back();
    }
  };
  dfs(dfs, P);
  return out;
}

// --- anchored paths ---------------------------------------------------------

namespace {

// Children of a node in the anchored-path tree: from panel X, one candidate
// step per rank-2 pair containing type(X); the anchor forces the target panel.
struct AnchoredStep {
  int pairIdx, resId, next;
};

std::vector<AnchoredStep> anchored_steps(const TwinBuilding& t,
                                         const PanelGraph& g, int panelP,
                                         int q0, int x) {
  const Building& b = t.half();
  std::vector<AnchoredStep> out;
  const int tx = b.panel_type(x);
  const int rep = b.panel_chambers(x)[0];
  for (int p = 0; p < b.num_pairs(); ++p) {
    if (!b.pair_types(p).contains(tx)) continue;
    const int rid = b.rank2_of(rep, p);
    // start compatibility: proj_R Q0 = X
    if (!panel_equals_set(b, x, b.project_panel_to_rank2(q0, rid))) continue;
    // anchor: proj_R P = next panel
    const auto& img = t.coproj_panel_set(panelP, rid);
    const int oppType = b.pair_opposite_type(p, tx);
    if (img.size() != b.panel_chambers(x).size()) continue;
    int y = b.panel_of(img[0], oppType);
    if (!panel_equals_set(b, y, img)) continue;
    if (y == x) continue;
    // the step must be a panel-graph edge (opposite in R)
    bool isEdge = false;
    for (int ei : g.edges_at(x))
      if (g.other_end(ei, x) == y && g.edges()[ei].resId == rid) isEdge = true;
    if (!isEdge) continue;
    out.push_back({p, rid, y});
  }
  return out;
}

}  // namespace

std::vector<CompatiblePath> enumerate_anchored_paths(const TwinBuilding& t,
                                                     const PanelGraph& g,
                                                     int sideP, int panelP,
                                                     int q0, int maxEdges) {
  if (!cross_opposite_panels(t, sideP, panelP, q0))
    throw domain_error("anchored path start must be opposite the anchor panel");
  std::vector<CompatiblePath> out;
  CompatiblePath cur{{q0}, {}};
  auto dfs = [&](auto&& self, int x) -> void {
    out.push_back(cur);
    if (cur.length() >= maxEdges) return;
    for (const auto& st : anchored_steps(t, g, panelP, q0, x)) {
      cur.panels.push_back(st.next);
      cur.residues.push_back(st.resId);
      self(self, st.next);
      cur.panels.pop_back();
      cur.residues.pop_back();
    }
  };
  dfs(dfs, q0);
  return out;
}

std::optional<CompatiblePath> find_anchored_path(const TwinBuilding& t,
                                                 const PanelGraph& g, int sideP,
                                                 int panelP, int q0, int q,
                                                 int maxEdges) {
  if (maxEdges < 0) maxEdges = t.max_length() * t.half().rank();
  if (!cross_opposite_panels(t, sideP, panelP, q0))
    throw domain_error("anchored path start must be opposite the anchor panel");
  // BFS for the shortest anchored path from q0 to q
  struct Node {
    CompatiblePath path;
  };
  std::deque<CompatiblePath> queue{CompatiblePath{{q0}, {}}};
  std::unordered_set<int> seen{q0};
  while (!queue.empty()) {
    CompatiblePath cur = std::move(queue.front());
    queue.pop_front();
    int x = cur.panels.back();
    if (x == q) {
      auto rep = verify_anchored_path(t, sideP, panelP, cur);
      if (!rep.ok())
        throw structural_error("anchored path failed its own verification");
      return cur;
    }
    if (cur.length() >= maxEdges) continue;
    for (const auto& st : anchored_steps(t, g, panelP, q0, x)) {
      if (!seen.insert(st.next).second) continue;
      CompatiblePath nxt = cur;
      nxt.panels.push_back(st.next);
      nxt.residues.push_back(st.resId);
      queue.push_back(std::move(nxt));
    }
  }
  return std::nullopt;
}

// --- wall graphs ------------------------------------------------------------

WallGraph wall_graph(const TwinBuilding& t, const PanelGraph& g, int side,
                     int c, int s, int bound, bool fullEdges) {
  const Building& b = t.half();
  WallGraph w;
  w.side = side;
  w.center = c;
  w.gen = s;
  w.bound = bound < 0 ? t.max_length() * b.rank() : bound;
  // each anchored step adds at least 1 to l(delta(P_0, .)) <= l(r_S)
  w.exhaustive = w.bound >= t.max_length();

  // the anchor panel and the vertex panels carry the twin label s; their raw
  // colors differ by sigma across the halves
  const int anchor = t.half_panel(side, c, s);
  const int vertexRawType = t.raw_type(1 - side, s);
  {
    std::unordered_set<int> vset;
    for (int x : b.panel_chambers(anchor))
      for (int y : t.opposite_chambers(x))
        vset.insert(b.panel_of(y, vertexRawType));
    w.vertices.assign(vset.begin(), vset.end());
    std::sort(w.vertices.begin(), w.vertices.end());
  }
  std::unordered_map<int, int> vidx;
  for (size_t i = 0; i < w.vertices.size(); ++i)
    vidx.emplace(w.vertices[i], static_cast<int>(i));

  UnionFind uf(static_cast<int>(w.vertices.size()));
  struct Owner {
    int vertex;
    CompatiblePath path;
  };
  std::unordered_map<std::string, Owner> keyOwner;
  std::vector<std::vector<std::string>> keysPerVertex(
      fullEdges ? w.vertices.size() : 0);

  for (size_t vi = 0; vi < w.vertices.size(); ++vi) {
    const int q0 = w.vertices[vi];
    for (auto& path : enumerate_anchored_paths(t, g, side, anchor, q0, w.bound)) {
      if (path.length() == 0) continue;
      // key: target panel + type sequence
      std::string key;
      key.reserve(8 + path.residues.size() * 4);
      int target = path.panels.back();
      key.append(reinterpret_cast<const char*>(&target), 4);
      for (int rid : path.residues) {
        int pairIdx = b.rank2_pair(rid);
        key.append(reinterpret_cast<const char*>(&pairIdx), 4);
      }
      if (fullEdges) keysPerVertex[vi].push_back(key);
      auto [it, fresh] = keyOwner.try_emplace(key, Owner{static_cast<int>(vi), path});
      if (!fresh && it->second.vertex != static_cast<int>(vi)) {
        if (uf.unite(it->second.vertex, static_cast<int>(vi)))
          w.certificates.push_back({w.vertices[it->second.vertex],
                                    w.vertices[vi], target, it->second.path,
                                    path});
      }
    }
  }

  std::vector<std::vector<int>> comps(w.vertices.size());
  for (size_t i = 0; i < w.vertices.size(); ++i)
    comps[uf.find(static_cast<int>(i))].push_back(w.vertices[i]);
  for (auto& cc : comps)
    if (!cc.empty()) w.components.push_back(std::move(cc));
  std::sort(w.components.begin(), w.components.end());

  if (fullEdges) {
    for (auto& ks : keysPerVertex) std::sort(ks.begin(), ks.end());
    for (size_t i = 0; i < w.vertices.size(); ++i)
      for (size_t j = i + 1; j < w.vertices.size(); ++j) {
        const auto& a = keysPerVertex[i];
        const auto& bk = keysPerVertex[j];
        size_t ia = 0, ib = 0;
        bool hit = false;
        while (ia < a.size() && ib < bk.size() && !hit) {
          if (a[ia] < bk[ib])
            ++ia;
          else if (bk[ib] < a[ia])
            ++ib;
          else
            hit = true;
        }
        if (hit) w.edges.push_back({w.vertices[i], w.vertices[j]});
      }
  }
  return w;
}

WallSweepReport wall_sweep(const TwinBuilding& t, const PanelGraph& g,
                           const WallSweepOptions& opt) {
  const Building& b = t.half();
  WallSweepReport rep;
  rep.bound = opt.bound < 0 ? t.max_length() * b.rank() : opt.bound;
  rep.exhaustive = rep.bound >= t.max_length();

  std::vector<int> centers = opt.centers;
  if (centers.empty()) {
    centers.resize(b.num_chambers());
    for (int i = 0; i < b.num_chambers(); ++i) centers[i] = i;
  }
  std::vector<int> gens = opt.gens;
  if (gens.empty()) {
    gens.resize(b.rank());
    for (int i = 0; i < b.rank(); ++i) gens[i] = i;
  }

  const size_t total = 2 * centers.size() * gens.size();
  std::vector<WallSweepEntry> entries(total);
  std::vector<std::string> errors(total);
  parallel_for(total, opt.parallel, [&](size_t i) {
    size_t rest = i;
    const int side = static_cast<int>(rest % 2);
    rest /= 2;
    const int c = centers[rest % centers.size()];
    const int s = gens[rest / centers.size()];
    WallGraph wg = wall_graph(t, g, side, c, s, rep.bound, false);
    if (opt.verifyCertificates)
      for (const auto& cert : wg.certificates) {
        std::string why;
        if (!verify_wall_certificate(t, side, c, s, cert, &why))
          errors[i] = "certificate failed: " + why;
      }
    entries[i] = {side,
                  c,
                  s,
                  static_cast<int>(wg.vertices.size()),
                  static_cast<int>(wg.components.size()),
                  static_cast<int>(wg.certificates.size()),
                  wg.connected()};
  });
  for (const auto& e : errors)
    if (!e.empty()) throw structural_error(e);

  rep.graphs = total;
  for (auto& e : entries) {
    if (!e.connected) {
      rep.allConnected = false;
      rep.failures.push_back(e);
    }
  }
  if (opt.keepEntries) {
    rep.entries = std::move(entries);
    rep.keptEntries = true;
  }
  return rep;
}

}  // namespace twinbld
