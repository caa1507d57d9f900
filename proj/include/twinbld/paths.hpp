#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twinbld/twin.hpp"

namespace twinbld {

/// Graph on the panels of one half: an edge joins two panels that are
/// opposite in a (unique) common rank-2 residue.
class PanelGraph {
 public:
  struct Edge {
    int p, q;    // panel ids, p < q
    int resId;   // the rank-2 residue R(P,Q)
  };

  static PanelGraph build(BuildingPtr b);

  const Building& building() const { return *b_; }
  const BuildingPtr& building_ptr() const { return b_; }
  const std::vector<Edge>& edges() const { return edges_; }
  /// Edge indices at a panel, sorted by the neighbor panel id.
  const std::vector<int>& edges_at(int panel) const { return adj_[panel]; }
  int other_end(int edgeIdx, int panel) const {
    const Edge& e = edges_[edgeIdx];
    return e.p == panel ? e.q : e.p;
  }

 private:
  BuildingPtr b_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
};

/// A path (P_0,...,P_k) in the panel graph together with its edge residues.
/// The type of the path is the sequence of rank-2 pair indices.
struct CompatiblePath {
  std::vector<int> panels;    // k+1 panels
  std::vector<int> residues;  // k residue ids
  int length() const { return static_cast<int>(residues.size()); }
  std::vector<int> type_pairs(const Building& b) const {
    std::vector<int> t;
    for (int r : residues) t.push_back(b.rank2_pair(r));
    return t;
  }
};

/// Shortest compatible path from P to Q (BFS; ties by smallest panel id), or
/// nullopt when none exists — by the parallelism criterion this happens
/// exactly when P and Q are not parallel.
std::optional<CompatiblePath> find_compatible_path(const PanelGraph& g, int P,
                                                   int Q);

/// Every compatible path starting at P with at most maxEdges edges.
std::vector<CompatiblePath> enumerate_compatible_paths(const PanelGraph& g,
                                                       int P, int maxEdges);

struct PathCheck {
  std::string property;
  bool ok;
  std::string detail;
};
struct PathReport {
  std::vector<PathCheck> checks;
  bool ok() const {
    for (auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
};

/// Projection factorization, delta multiplicativity, length additivity and
/// reversal-compatibility of a compatible path.
PathReport verify_path_properties(const Building& b, const CompatiblePath& path);

/// Anchored (P-compatible) path search: P is a panel of the opposite half,
/// Q0 a panel opposite P, and the path runs from Q0 to Q. The returned path
/// satisfies the codistance identity l*(x, proj_{P_i} x) = l(d(P_0,P_i)) + 1,
/// re-checked before returning.
std::optional<CompatiblePath> find_anchored_path(const TwinBuilding& t,
                                                 const PanelGraph& g, int sideP,
                                                 int panelP, int q0, int q,
                                                 int maxEdges = -1);

/// All anchored paths from q0 (anchor panelP) with at most maxEdges edges.
std::vector<CompatiblePath> enumerate_anchored_paths(const TwinBuilding& t,
                                                     const PanelGraph& g,
                                                     int sideP, int panelP,
                                                     int q0, int maxEdges);

/// Checks that a path is P-compatible for the given anchor.
PathReport verify_anchored_path(const TwinBuilding& t, int sideP, int panelP,
                                const CompatiblePath& path);

// --- wall graphs ------------------------------------------------------------

struct WallEdgeCertificate {
  int q1, q2;     // wall-adjacent vertex panels
  int target;     // common panel T
  CompatiblePath path1, path2;  // anchored paths of equal length and type
};

struct WallGraph {
  int side = 0, center = 0, gen = 0;
  int bound = 0;
  bool exhaustive = false;  // bound >= l(r_S), the max possible path length
  std::vector<int> vertices;  // panels opposite P_s(c), sorted
  std::vector<WallEdgeCertificate> certificates;  // spanning union events
  std::vector<std::pair<int, int>> edges;         // full list if requested
  std::vector<std::vector<int>> components;
  bool connected() const { return components.size() <= 1; }
};

/// Gamma_s(c). Edges are found through anchored-path enumeration and key
/// matching on (target panel, type sequence); every union event carries a
/// re-verifiable certificate. With fullEdges the complete edge list is
/// materialized (quadratic; meant for single-graph reports and DOT export).
WallGraph wall_graph(const TwinBuilding& t, const PanelGraph& g, int side,
                     int c, int s, int bound = -1, bool fullEdges = false);

/// Independent re-check of a wall edge certificate (projections and
/// codistances recomputed from the building, not from search state).
bool verify_wall_certificate(const TwinBuilding& t, int side, int c, int s,
                             const WallEdgeCertificate& cert,
                             std::string* why = nullptr);

struct WallSweepEntry {
  int side, center, gen;
  int vertices, components, certificates;
  bool connected;
};
struct WallSweepReport {
  int bound = 0;
  bool exhaustive = false;
  bool allConnected = true;
  size_t graphs = 0;
  std::vector<WallSweepEntry> failures;   // disconnected graphs
  std::vector<WallSweepEntry> entries;    // full per-(c,s) list if kept
  bool keptEntries = false;
};

struct WallSweepOptions {
  int bound = -1;           // default l(r_S) * |S|
  bool parallel = true;
  bool keepEntries = false;
  bool verifyCertificates = false;  // re-verify every certificate on the fly
  std::vector<int> centers;         // restrict centers (both sides); empty = all
  std::vector<int> gens;            // restrict generators; empty = all
};

/// is_wall_connected: iterates wall_graph over all (c, s) in both halves.
WallSweepReport wall_sweep(const TwinBuilding& t, const PanelGraph& g,
                           const WallSweepOptions& opt = {});

}  // namespace twinbld
