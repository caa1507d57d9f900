#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "twinbld/building.hpp"

namespace twinbld {

/// A chamber of a twin building: side 0 = plus half, 1 = minus half.
struct TwinChamber {
  int side = 0;
  int id = 0;
  auto operator<=>(const TwinChamber&) const = default;
};

/// The self-twin of a finite thick spherical building. Both halves share the
/// chamber set of one building; the minus half carries the colors twisted by
/// the opposition involution sigma (conjugation by r_S), and
///
///   delta*(x, y) = delta(x, y) r_S   for x in the plus half,
///   delta*(y, x) = r_S delta(y, x)   for y in the minus half.
///
/// With a nontrivial sigma (types A2, A3) the untwisted one-sided convention
/// cannot satisfy (Tw2)/(Tw3); the twist is forced by the axioms, which are
/// property-checked at construction. A failure there aborts loudly instead of
/// silently swapping conventions.
class TwinBuilding {
 public:
  static std::shared_ptr<const TwinBuilding> self_twin(BuildingPtr b,
                                                       size_t axiomSamples = 4000,
                                                       std::uint64_t seed = 0xC0FFEE);

  /// The shared underlying building; all panel/residue ids are raw ids in it.
  const Building& half() const { return *b_; }
  const BuildingPtr& half_ptr() const { return b_; }
  const WeylElement& w0() const { return b_->longest(); }
  int max_length() const { return b_->diameter_length(); }

  /// Opposition involution on generator indices (r_S s r_S).
  int sigma(int s) const { return sigma_[s]; }
  /// Raw color of the twin-label color s seen from `side`.
  int raw_type(int side, int s) const { return side == 1 ? sigma_[s] : s; }

  /// delta_eps inside a half, in that half's own labeling.
  WeylElement half_delta(int side, int x, int y) const {
    WeylElement d = b_->delta(x, y);
    return side == 1 ? w0() * d * w0() : d;
  }
  /// The s-panel of c inside a half (raw panel id).
  int half_panel(int side, int c, int s) const {
    return b_->panel_of(c, raw_type(side, s));
  }

  /// delta*(x,y) for x in `side`, y in the opposite half.
  WeylElement codistance(int side, int x, int y) const {
    WeylElement d = b_->delta(x, y);
    return side == 0 ? d * w0() : w0() * d;
  }
  /// Grand distance: half distance on a side, codistance across.
  WeylElement grand(TwinChamber a, TwinChamber b) const {
    if (a.side == b.side) return half_delta(a.side, a.id, b.id);
    return codistance(a.side, a.id, b.id);
  }

  /// l*(x,y); side-independent for the self-twin.
  int codist_length(int x, int y) const {
    return max_length() - b_->gallery_distance(x, y);
  }
  bool opposite(int x, int y) const {
    return b_->gallery_distance(x, y) == max_length();
  }
  /// Sorted ids of chambers opposite x (in the other half).
  std::vector<int> opposite_chambers(int x) const;

  /// Coprojection gate of x (in the other half) onto a residue given by a
  /// raw-typed handle; for the self-twin it coincides with the
  /// distance-minimizing projection (checked by the construction suite).
  int coprojection(int x, const ResidueRef& r) const;
  int coproj_panel(int x, int panel) const { return b_->project_to_panel(x, panel); }
  /// proj_R P for a panel P across signs (memoized via the underlying half).
  const std::vector<int>& coproj_panel_set(int panel, int resId) const {
    return b_->project_panel_to_rank2(panel, resId);
  }

 private:
  TwinBuilding() = default;
  BuildingPtr b_;
  std::vector<int> sigma_;
};

using TwinPtr = std::shared_ptr<const TwinBuilding>;

// --- twin-core operations --------------------------------------------------

TwinPtr self_twin(BuildingPtr b);

/// |proj_P Q| >= 2 test; asserts the mutual-bijection property when true.
bool cross_parallel(const TwinBuilding& t, int panelP, int panelQ);

/// Cross-sign opposite panels: equal twin-label type (raw types related by
/// sigma) and some opposite chamber pair. sideP is the half of panelP.
bool cross_opposite_panels(const TwinBuilding& t, int sideP, int panelP,
                           int panelQ);

/// delta(P,Q) for cross-sign parallel panels P (in sideP), Q (other side).
WeylElement cross_panel_distance(const TwinBuilding& t, int sideP, int panelP,
                                 int panelQ);

/// A(x,y) for opposite (x in side, y in other half); both halves.
std::vector<TwinChamber> twin_apartment(const TwinBuilding& t, int side, int x,
                                        int y);

struct OppositionGraph {
  int side = 0, center = 0, k = 0;
  std::vector<int> vertices;  // chamber ids in the opposite half, sorted
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> components;  // sorted by least member
  bool connected() const { return components.size() <= 1; }
};

OppositionGraph opposition_graph(const TwinBuilding& t, int side, int c, int k);

struct CoSweepEntry {
  int side, center, vertices, components;
};
struct CoSweepReport {
  int k = 0;
  std::vector<CoSweepEntry> entries;  // one per (side, center)
  bool allConnected = true;
};

/// Condition (co_k) over every center in both halves. `parallel` selects the
/// OpenMP kernel; the serial path is the reference.
CoSweepReport condition_co_sweep(const TwinBuilding& t, int k,
                                 bool parallel = true);

}  // namespace twinbld
