#pragma once

#include <optional>
#include <string>
#include <vector>

#include "twinbld/twin.hpp"

namespace twinbld {

/// A partial isometry between two (self-)twin buildings of the same type:
/// an explicit list of (chamber, image) pairs, sign-preserving by sides.
struct PartialIsometry {
  TwinPtr src, dst;
  std::vector<std::pair<TwinChamber, TwinChamber>> pairs;

  void add(TwinChamber a, TwinChamber b) { pairs.push_back({a, b}); }
};

/// Grand distance inside one twin: building distance on a side, codistance
/// across sides.
WeylElement grand_distance(const TwinBuilding& t, TwinChamber a, TwinChamber b);

/// (Iso1)-(Iso3) for the stored pairs.
bool is_isometry(const PartialIsometry& phi, std::string* why = nullptr);

/// Does adjoining (y, y2) keep phi an isometry? Sign mismatch is `false`,
/// not an error. If y is already in the domain this degenerates to the
/// identical-extension test.
bool is_admissible(const PartialIsometry& phi, TwinChamber y, TwinChamber y2);

/// A plus-half isometry as a bijection on chamber ids (side 0 -> side 0).
struct HalfIsometry {
  TwinPtr src, dst;
  std::vector<int> image;  // size = |C_+|
};

/// Colored-adjacency check; by the standard criterion this makes the
/// bijection an isometry of the halves.
bool validate_half_isometry(const HalfIsometry& phi, std::string* why = nullptr);

/// phi_+-admissibility of a cross-sign pair (x in minus of src, x2 in minus
/// of dst) via the opposite-set criterion phi(x^op) subset (x2)^op.
bool admissible_minus_pair(const HalfIsometry& phi, int x, int x2);

/// The transport map phi_s^x : P_s(cMinus) -> P_s(cMinus2) through the panel
/// of an opposite chamber x; returns the image chamber per panel chamber.
std::vector<std::pair<int, int>> phi_s_transport(const HalfIsometry& phiPlus,
                                                 int cMinus, int cMinus2, int x,
                                                 int s);

struct ExtensionResult {
  std::vector<int> minusImage;
  size_t anchorAgreements = 0;  // double-anchor recomputations that matched
};

/// Extends phi_+ with the admissible pair (cMinus, cMinus2) to the whole
/// minus half by gallery-distance propagation with phi_s transports. Each
/// step is recomputed from a second opposite anchor; disagreement or a
/// propagation dead-end raises structural_error with a counterexample.
ExtensionResult extend_to_minus(const HalfIsometry& phiPlus, int cMinus,
                                int cMinus2);

struct RigidityResult {
  bool forced = false;       // every chamber pinned to itself
  int undetermined = 0;      // chambers left ambiguous (0 when forced)
  int rounds = 0;
};

/// Fixing E_1(cPlus) in the plus half and cMinus pointwise, propagate
/// distance constraints: rigidity holds when every chamber's candidate set
/// collapses to itself.
RigidityResult rigidity_check(const TwinBuilding& t, int cPlus, int cMinus);

// serialization for the CLI (`isom extend --map`)
struct IsometryMapFile {
  int cMinus = -1, cMinus2 = -1;
  std::vector<std::pair<int, int>> plusPairs;
};
IsometryMapFile parse_isometry_map(std::istream& in);

}  // namespace twinbld
