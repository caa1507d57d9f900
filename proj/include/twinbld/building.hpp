#pragma once

#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "twinbld/coxeter.hpp"

namespace twinbld {

/// BFS tree from one source chamber: distances for projections, parent
/// pointers for reconstructing a minimal gallery.
struct BfsPathRow {
  std::vector<std::int32_t> parent;
  std::vector<std::int8_t> label;
};

struct ResidueRef {
  GenSet type;
  int rep = 0;
  bool operator==(const ResidueRef&) const = default;
};

/// A finite W-metric chamber system. Immutable after construction; the
/// distance caches tolerate concurrent idempotent fills.
class Building {
 public:
  /// panelIndexPerGen[s][chamber] = local panel index of the s-panel.
  static std::shared_ptr<const Building> from_panels(
      CoxPtr cox, int numChambers,
      const std::vector<std::vector<int>>& panelIndexPerGen, std::string name,
      bool complete = true,
      std::vector<WeylElement> thinElements = {});

  /// The Coxeter complex as a building. For finite W the whole group; for
  /// infinite W a ball of the given radius around 1_W, flagged partial.
  static std::shared_ptr<const Building> thin(CoxPtr cox, int radius);

  const CoxPtr& coxeter() const { return cox_; }
  int rank() const { return cox_->rank(); }
  int num_chambers() const { return numChambers_; }
  const std::string& name() const { return name_; }
  bool is_complete() const { return complete_; }
  bool is_thick() const { return thick_; }
  bool is_thin() const { return thin_; }

  // --- panels ---------------------------------------------------------
  int num_panels() const { return static_cast<int>(panelMembers_.size()); }
  int panel_of(int chamber, int s) const {
    return panelIdOf_[static_cast<size_t>(s) * numChambers_ + chamber];
  }
  std::span<const int> panel_chambers(int panel) const {
    return panelMembers_[panel];
  }
  int panel_type(int panel) const { return panelType_[panel]; }
  const std::vector<int>& panels_of_type(int s) const {
    return panelsByType_[s];
  }

  // --- rank-2 residues --------------------------------------------------
  int num_pairs() const { return static_cast<int>(pairs_.size()); }
  GenSet pair_types(int pairIdx) const { return pairs_[pairIdx]; }
  int pair_index(int s, int t) const;
  int num_rank2() const { return static_cast<int>(rank2Members_.size()); }
  int rank2_of(int chamber, int pairIdx) const {
    return rank2IdOf_[static_cast<size_t>(pairIdx) * numChambers_ + chamber];
  }
  std::span<const int> rank2_chambers(int resId) const {
    return rank2Members_[resId];
  }
  int rank2_pair(int resId) const { return rank2Pair_[resId]; }
  GenSet rank2_type(int resId) const { return pairs_[rank2Pair_[resId]]; }
  const WeylElement& pair_longest(int pairIdx) const {
    return pairLongest_[pairIdx];
  }
  /// r_J s r_J for s in the pair (the type swap of opposite panels).
  int pair_opposite_type(int pairIdx, int s) const;

  // --- residues, generic -------------------------------------------------
  std::vector<int> residue_chambers(GenSet J, int rep) const;
  bool residue_contains(GenSet J, int rep, int y) const;
  std::vector<int> e_k_neighborhood(int x, int k) const;

  // --- metric -----------------------------------------------------------
  /// Gallery distance = l(delta(x,y)).
  int gallery_distance(int x, int y) const;
  const std::uint8_t* dist_row(int source) const;
  WeylElement delta(int x, int y) const;
  const WeylElement& longest() const;  // r_S; complete spherical only
  int diameter_length() const { return longestLen_; }

  // --- projections --------------------------------------------------------
  int project_to_panel(int x, int panel) const;
  int project_to_rank2(int x, int resId) const;
  int project_to_residue(int x, const ResidueRef& r) const;
  /// proj_R P as a sorted chamber set, memoized (hot path of wall sweeps).
  const std::vector<int>& project_panel_to_rank2(int panel, int resId) const;

  std::span<const WeylElement> thin_elements() const { return thinElements_; }

 private:
  Building() = default;
  std::shared_ptr<const BfsPathRow> path_row(int source) const;

  CoxPtr cox_;
  std::string name_;
  int numChambers_ = 0;
  bool complete_ = true, thick_ = false, thin_ = false;

  std::vector<int> panelIdOf_;                 // [s * n + chamber]
  std::vector<std::vector<int>> panelMembers_; // sorted
  std::vector<int> panelType_;
  std::vector<std::vector<int>> panelsByType_;

  std::vector<GenSet> pairs_;
  std::vector<WeylElement> pairLongest_;
  std::vector<int> rank2IdOf_;                 // [pairIdx * n + chamber]
  std::vector<std::vector<int>> rank2Members_;
  std::vector<int> rank2Pair_;

  std::vector<WeylElement> thinElements_;
  std::optional<WeylElement> longestElt_;
  int longestLen_ = -1;

  mutable std::shared_mutex distMutex_;
  mutable std::vector<std::shared_ptr<const std::vector<std::uint8_t>>> distRows_;

  // Minimal-gallery parent trees are only needed for delta words; bounded
  // LRU keeps them from ballooning on the larger zoo members.
  mutable std::mutex pathMutex_;
  mutable std::unordered_map<int, std::shared_ptr<const BfsPathRow>> pathRows_;
  mutable std::deque<int> pathOrder_;
  static constexpr size_t kPathRowCap = 512;

  mutable std::shared_mutex projMutex_;
  mutable std::unordered_map<std::uint64_t, std::vector<int>> panelProj_;
};

using BuildingPtr = std::shared_ptr<const Building>;

// --- building-core operations (free functions) ---------------------------

inline WeylElement weyl_distance(const Building& b, int x, int y) {
  return b.delta(x, y);
}

int projection(const Building& b, int x, const ResidueRef& r);

/// proj_Q R as a sorted set of chambers.
std::vector<int> project_residue_set(const Building& b, const ResidueRef& from,
                                     const ResidueRef& to);

/// Mutually inverse projection bijections, checked elementwise.
bool are_parallel(const Building& b, const ResidueRef& r, const ResidueRef& q);

/// delta(P,Q) for parallel panels; checks base-chamber independence and the
/// type conjugation identity. domain_error when not parallel.
WeylElement panel_distance(const Building& b, int panelP, int panelQ);

bool panels_parallel(const Building& b, int panelP, int panelQ);

// --- axiom suite -----------------------------------------------------------

struct AxiomViolation {
  std::string axiom;
  int x = -1, y = -1, z = -1, s = -1;
  std::string detail;
};

struct AxiomReport {
  std::string building;
  bool exhaustive = false;
  size_t casesChecked = 0;
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// (Bu1)-(Bu3). Exhaustive when sampleTriples == 0, else that many seeded
/// random triples per axiom. Parallelizes over sources; `parallel` toggles the
/// OpenMP kernel vs the serial reference.
AxiomReport check_building_axioms(const Building& b, size_t sampleTriples = 0,
                                  std::uint64_t seed = 0xC0FFEE,
                                  bool parallel = true);

void write_chamber_dump(const Building& b, std::ostream& out);
void write_chamber_dot(const Building& b, std::ostream& out);

}  // namespace twinbld
