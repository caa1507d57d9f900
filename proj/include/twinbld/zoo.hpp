#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "twinbld/building.hpp"
#include "twinbld/gf.hpp"

namespace twinbld {

/// Flag data behind a zoo building, kept for matrix-group actions: chambers
/// are flags of subspaces, each subspace stored as a bitmask over point ids.
class FlagGeometry {
 public:
  int q = 2, dim = 0, levels = 0;
  bool symplectic = false;  // alternating form antidiag(1,...,1)

  std::vector<std::vector<std::uint8_t>> pointVecs;
  std::unordered_map<std::string, int> pointIndex;
  std::vector<std::array<std::uint64_t, 3>> chamberMasks;
  std::unordered_map<std::string, int> chamberIndex;

  int num_points() const { return static_cast<int>(pointVecs.size()); }
  int point_of_vector(const std::vector<std::uint8_t>& v) const;
  /// Point permutation induced by g (g must permute the point set).
  std::vector<int> point_permutation(const GfMatrix& g) const;
  /// Image chamber under g; structural_error if g does not act on the flags.
  int chamber_image(const GfMatrix& g, int chamber) const;
  int chamber_image(const std::vector<int>& pointPerm, int chamber) const;
  /// Symplectic check for g against the stored form (when symplectic).
  bool preserves_form(const GfMatrix& g) const;
};

struct ZooEntry {
  BuildingPtr building;
  std::shared_ptr<const FlagGeometry> geometry;  // null for ingested input
};

/// Names: A2q2, A2q3, A3q2, C2q2, C3q2.
ZooEntry zoo_build(const std::string& name);
bool zoo_knows(const std::string& name);
std::vector<std::string> zoo_names();

BuildingPtr build_projective_flag_building(int dim, int q);
BuildingPtr build_symplectic_building(int n, int q);

ZooEntry zoo_projective(int dim, int q);
ZooEntry zoo_symplectic(int n, int q);

/// External rank-2 incidence data: header "gonality m", flag lines "P<i> L<j>",
/// '#' comments.
struct IncidenceGeometry {
  int gonality = 0;
  int numPoints = 0, numLines = 0;
  std::vector<std::pair<int, int>> flags;  // (point, line)
};

IncidenceGeometry parse_incidence(std::istream& in);
/// Constant orders plus the generalized polygon test (incidence graph has
/// diameter m and girth 2m); validation_error carries a witness.
void validate_incidence(const IncidenceGeometry& g);
BuildingPtr ingest_rank2_geometry(std::istream& in);

/// Generators of a chamber-transitive matrix group for a zoo geometry
/// (elementary transvections); used to justify transversal sweeps.
std::vector<GfMatrix> transitive_generators(const FlagGeometry& g);
/// Verifies that the generated group is transitive on chambers (orbit BFS).
bool verify_chamber_transitivity(const ZooEntry& z);

}  // namespace twinbld
