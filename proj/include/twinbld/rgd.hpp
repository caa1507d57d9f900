#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "twinbld/coxeter.hpp"
#include "twinbld/gf.hpp"
#include "twinbld/twin.hpp"
#include "twinbld/zoo.hpp"

namespace twinbld {

/// Root subgroups of a rank-2 matrix group, indexed along the root circle
/// U_1..U_{2n} (angular order, U_1 = U_{alpha_s1}, positives first).
struct RootSubgroupFamily {
  std::string name;
  CoxPtr cox;
  int q = 2, dim = 3, gonality = 3;  // n = m_{s1 s2}
  std::vector<Root> circle;          // 2n roots in cyclic order
  std::vector<GfMatrix> gens;        // one generator per circle slot

  int size() const { return static_cast<int>(circle.size()); }
  /// 1-based cyclic index -> 0-based slot.
  int slot(int i) const { return ((i - 1) % size() + size()) % size(); }
  int index_of_root(const Root& r) const;
  /// All elements of U_i (1-based cyclic), identity included.
  std::vector<GfMatrix> group(int i) const;
};

/// Built-in families: SL3F2, SL3F3, Sp4F2.
RootSubgroupFamily rgd_family(const std::string& name);
std::vector<std::string> rgd_family_names();

/// Plain-text fixture format round-trip.
RootSubgroupFamily parse_family(std::istream& in);
void write_family(const RootSubgroupFamily& f, std::ostream& out);

struct RgdCheck {
  std::string axiom;
  bool ok = true;
  std::string detail;
};
struct RgdReport {
  std::string family;
  std::vector<RgdCheck> checks;
  size_t groupOrder = 0, torusOrder = 0, uPlusOrder = 0;
  bool ok() const {
    for (auto& c : checks)
      if (!c.ok) return false;
    return true;
  }
};

/// (RGD0)-(RGD4) by exhaustive enumeration of the small groups involved.
RgdReport validate_rgd_axioms(const RootSubgroupFamily& f);

/// [U_i, U_{i+n-1}]_k via the unique interval normal form; the returned set
/// is checked against nothing — callers compare with U_k.
std::vector<GfMatrix> commutator_projection(const RootSubgroupFamily& f, int i,
                                            int k);

struct WcGenReport {
  bool equal = false;
  bool allOrdersFinite = false;
  size_t orderFull = 0, orderRestricted = 0;
};
/// (wc) generation check for generator s on the given sign (+1/-1 as 0/1).
WcGenReport check_wc_generation(const RootSubgroupFamily& f, int s, int side);

struct TransitivityReport {
  bool simplyTransitive = false;
  size_t groupOrder = 0, oppositeCount = 0;
  std::string detail;
};
/// |U_eps| = |c_eps^op| with a free transitive flag action.
TransitivityReport simply_transitive_check(const RootSubgroupFamily& f,
                                           const ZooEntry& zoo,
                                           const TwinBuilding& t, int side);

/// The zoo building a family acts on.
std::string rgd_zoo_name(const std::string& family);

/// Standard opposite chamber pair (c_+, c_-) of a zoo entry: the flags of the
/// first and of the reversed basis.
std::pair<int, int> standard_chamber_pair(const ZooEntry& zoo);

/// Group closure of a generator set (BFS over products).
std::vector<GfMatrix> group_closure(const std::vector<GfMatrix>& gens,
                                    size_t cap = 2000000);

}  // namespace twinbld
