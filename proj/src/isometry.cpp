#include "twinbld/isometry.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <map>
#include <sstream>

namespace twinbld {

WeylElement grand_distance(const TwinBuilding& t, TwinChamber a, TwinChamber b) {
  return t.grand(a, b);
}

bool is_isometry(const PartialIsometry& phi, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  std::map<TwinChamber, TwinChamber> fwd, bwd;
  for (auto& [a, b] : phi.pairs) {
    if (a.side != b.side) return fail("sign not preserved");
    if (!fwd.emplace(a, b).second) return fail("domain repeats a chamber");
    if (!bwd.emplace(b, a).second) return fail("image repeats a chamber");
  }
  for (auto& [a, b] : phi.pairs)
    for (auto& [c, d] : phi.pairs)
      if (!(grand_distance(*phi.src, a, c) == grand_distance(*phi.dst, b, d)))
        return fail("distance not preserved");
  return true;
}

bool is_admissible(const PartialIsometry& phi, TwinChamber y, TwinChamber y2) {
  if (y.side != y2.side) return false;
  for (auto& [a, b] : phi.pairs) {
    if (a == y) return b == y2;
    if (b == y2) return a == y;
  }
  for (auto& [a, b] : phi.pairs)
    if (!(grand_distance(*phi.src, y, a) == grand_distance(*phi.dst, y2, b)))
      return false;
  return true;
}

bool validate_half_isometry(const HalfIsometry& phi, std::string* why) {
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  const Building& a = phi.src->half();
  const Building& b = phi.dst->half();
  if (a.num_chambers() != b.num_chambers() ||
      static_cast<int>(phi.image.size()) != a.num_chambers())
    return fail("size mismatch");
  std::vector<char> hit(b.num_chambers(), 0);
  for (int x = 0; x < a.num_chambers(); ++x) {
    int ix = phi.image[x];
    if (ix < 0 || ix >= b.num_chambers() || hit[ix]) return fail("not a bijection");
    hit[ix] = 1;
  }
  // s-adjacency preservation in both directions suffices (thick buildings)
  for (int x = 0; x < a.num_chambers(); ++x)
    for (int s = 0; s < a.rank(); ++s)
      for (int y : a.panel_chambers(a.panel_of(x, s))) {
        if (y == x) continue;
        if (b.panel_of(phi.image[x], s) != b.panel_of(phi.image[y], s))
          return fail("s-adjacency not preserved at chamber " + std::to_string(x));
      }
  return true;
}

bool admissible_minus_pair(const HalfIsometry& phi, int x, int x2) {
  // phi_+(x^op) subset (x2)^op  (Ro00-style criterion)
  for (int z : phi.src->opposite_chambers(x))
    if (!phi.dst->opposite(phi.image[z], x2)) return false;
  return true;
}

std::vector<std::pair<int, int>> phi_s_transport(const HalfIsometry& phiPlus,
                                                 int cMinus, int cMinus2, int x,
                                                 int s) {
  const TwinBuilding& t = *phiPlus.src;
  const TwinBuilding& t2 = *phiPlus.dst;
  const Building& b = t.half();
  const Building& b2 = t2.half();
  if (!t.opposite(x, cMinus))
    throw domain_error("phi_s transport anchor must be opposite cMinus");

  // s is the twin label: the minus-half panels have raw color sigma(s)
  const int panelCm = t.half_panel(1, cMinus, s);
  const int panelX = t.half_panel(0, x, s);
  const int panelCm2 = t2.half_panel(1, cMinus2, s);

  std::vector<std::pair<int, int>> out;
  for (int d : b.panel_chambers(panelCm)) {
    int viaPlus = t.coproj_panel(d, panelX);
    int mapped = phiPlus.image[viaPlus];
    int image = t2.coproj_panel(mapped, panelCm2);
    out.push_back({d, image});
  }
  // must be a bijection onto the target panel, sending cMinus to cMinus2
  std::vector<int> images;
  for (auto& [d, im] : out) {
    images.push_back(im);
    if (d == cMinus && im != cMinus2)
      throw structural_error("phi_s transport does not map cMinus to cMinus2");
  }
  std::sort(images.begin(), images.end());
  auto pm2 = b2.panel_chambers(panelCm2);
  if (!std::equal(images.begin(), images.end(), pm2.begin(), pm2.end()))
    throw structural_error("phi_s transport is not onto the target panel");
  return out;
}

ExtensionResult extend_to_minus(const HalfIsometry& phiPlus, int cMinus,
                                int cMinus2) {
  const TwinBuilding& t = *phiPlus.src;
  const TwinBuilding& t2 = *phiPlus.dst;
  const Building& b = t.half();
  std::string why;
  if (!validate_half_isometry(phiPlus, &why))
    throw domain_error("plus-half map is not an isometry: " + why);
  if (!admissible_minus_pair(phiPlus, cMinus, cMinus2))
    throw domain_error("(cMinus, cMinus2) is not an admissible pair");

  ExtensionResult res;
  res.minusImage.assign(b.num_chambers(), -1);
  res.minusImage[cMinus] = cMinus2;

  // Propagate by gallery distance from cMinus, ties by chamber id: each new
  // chamber x lies in the s-panel of an already-extended y; the image comes
  // from a phi_s transport based at (y, y'), recomputed from two different
  // opposite anchors.
  struct Item {
    int dist, chamber;
  };
  std::vector<int> order(b.num_chambers());
  const auto* row = b.dist_row(cMinus);
  for (int i = 0; i < b.num_chambers(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a2, int c2) {
    return std::pair(row[a2], a2) < std::pair(row[c2], c2);
  });

  for (int x : order) {
    if (res.minusImage[x] >= 0) continue;
    // closest extended neighbor, smallest id first; g is the raw color of
    // the shared panel, whose twin label is sigma(g)
    int y = -1, s = -1;
    for (int g = 0; g < b.rank() && y < 0; ++g)
      for (int cand : b.panel_chambers(b.panel_of(x, g)))
        if (cand != x && res.minusImage[cand] >= 0 && row[cand] < row[x]) {
          y = cand;
          s = t.sigma(g);
          break;
        }
    if (y < 0)
      throw structural_error("propagation dead-end: no extended neighbor of " +
                             std::to_string(x));
    const int y2 = res.minusImage[y];
    auto anchors = t.opposite_chambers(y);
    if (anchors.size() < 2)
      throw structural_error("fewer than two opposite anchors at chamber " +
                             std::to_string(y));
    std::optional<int> image;
    for (size_t ai = 0; ai < 2; ++ai) {
      auto panelMap = phi_s_transport(phiPlus, y, y2, anchors[ai], s);
      int thisImage = -1;
      for (auto& [d, im] : panelMap)
        if (d == x) thisImage = im;
      if (thisImage < 0)
        throw structural_error("transport image missing for chamber " +
                               std::to_string(x));
      if (!image)
        image = thisImage;
      else if (*image != thisImage)
        throw structural_error(
            "transport image depends on the anchor at chamber " +
            std::to_string(x) + " (non-wall-connected input or bug)");
      else
        ++res.anchorAgreements;
    }
    res.minusImage[x] = *image;
  }

  // final verification: minus half is a colored-adjacency bijection and
  // every (x, x') pair is admissible via the opposite-set criterion
  HalfIsometry minus{phiPlus.src, phiPlus.dst, res.minusImage};
  if (!validate_half_isometry(minus, &why))
    throw structural_error("extension is not an isometry of the minus half: " + why);
  for (int x = 0; x < b.num_chambers(); ++x) {
    for (int z : t.opposite_chambers(x))
      if (!t2.opposite(phiPlus.image[z], res.minusImage[x]))
        throw structural_error("extension breaks opposition at chamber " +
                               std::to_string(x));
  }
  return res;
}

RigidityResult rigidity_check(const TwinBuilding& t, int cPlus, int cMinus) {
  if (!t.opposite(cPlus, cMinus))
    throw domain_error("rigidity check needs opposite chambers");
  const Building& b = t.half();
  const int n = b.num_chambers();

  // fixed set: E_1(cPlus) in the plus half, cMinus in the minus half
  std::vector<TwinChamber> fixed;
  for (int z : b.e_k_neighborhood(cPlus, 1)) fixed.push_back({0, z});
  fixed.push_back({1, cMinus});

  // grouping by distance profile against the currently determined set;
  // singleton groups are pinned and become new constraints
  RigidityResult res;
  std::vector<char> pinned[2];
  pinned[0].assign(n, 0);
  pinned[1].assign(n, 0);
  std::deque<TwinChamber> queue;
  for (auto f : fixed) {
    pinned[f.side][f.id] = 1;
    queue.push_back(f);
  }

  // profiles keyed by words of grand distances to pinned chambers
  std::vector<std::string> profile[2];
  profile[0].assign(n, "");
  profile[1].assign(n, "");
  int pinnedCount = static_cast<int>(fixed.size());

  while (!queue.empty()) {
    ++res.rounds;
    TwinChamber f = queue.front();
    queue.pop_front();
    for (int side = 0; side < 2; ++side) {
      std::map<std::string, std::vector<int>> groups;
      for (int x = 0; x < n; ++x) {
        if (pinned[side][x]) continue;
        // delta(f,x) determines delta(x,f); computing from f reuses one
        // cached gallery tree per constraint instead of one per chamber
        WeylElement d = grand_distance(t, f, {side, x});
        auto& pr = profile[side][x];
        pr += d.key();
        groups[pr].push_back(x);
      }
      for (auto& [key, members] : groups)
        if (members.size() == 1) {
          int x = members[0];
          pinned[side][x] = 1;
          ++pinnedCount;
          queue.push_back({side, x});
        }
    }
  }
  res.undetermined = 2 * n - pinnedCount;
  res.forced = res.undetermined == 0;
  return res;
}

IsometryMapFile parse_isometry_map(std::istream& in) {
  IsometryMapFile f;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (tok == "anchor") {
      if (!(ls >> f.cMinus >> f.cMinus2))
        throw validation_error("bad anchor line " + std::to_string(lineno));
    } else {
      int x = std::stoi(tok), y;
      if (!(ls >> y))
        throw validation_error("bad map line " + std::to_string(lineno));
      f.plusPairs.push_back({x, y});
    }
  }
  if (f.cMinus < 0) throw validation_error("missing anchor line");
  return f;
}

}  // namespace twinbld
