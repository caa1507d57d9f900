#include "twinbld/twin.hpp"

#include <algorithm>
#include <deque>

#include "twinbld/parallel.hpp"

namespace twinbld {

std::shared_ptr<const TwinBuilding> TwinBuilding::self_twin(
    BuildingPtr b, size_t axiomSamples, std::uint64_t seed) {
  if (!b->is_complete() || !b->coxeter()->is_spherical(GenSet::full(b->rank())))
    throw domain_error("self twin needs a spherical building");
  if (!b->is_thick()) throw domain_error("self twin needs a thick building");
  auto tp = std::shared_ptr<TwinBuilding>(new TwinBuilding());
  tp->b_ = std::move(b);

  // opposition involution sigma(s) = r_S s r_S
  const Building& bb = *tp->b_;
  CoxPtr cox = bb.coxeter();
  const WeylElement& w0 = bb.longest();
  tp->sigma_.resize(bb.rank(), -1);
  for (int s = 0; s < bb.rank(); ++s) {
    WeylElement g = w0 * WeylElement::generator(cox, s) * w0;
    for (int u = 0; u < bb.rank(); ++u)
      if (g == WeylElement::generator(cox, u)) tp->sigma_[s] = u;
    if (tp->sigma_[s] < 0)
      throw structural_error("r_S does not normalize the generator set");
  }

  // (Tw1)-(Tw3) on seeded samples; a failure here means the codistance
  // convention is wrong for this input and construction must not proceed.
  const TwinBuilding& t = *tp;
  const int n = bb.num_chambers();
  SplitMix64 rng(seed);
  for (size_t it = 0; it < axiomSamples; ++it) {
    int side = static_cast<int>(rng.below(2));
    int x = static_cast<int>(rng.below(n));
    int y = static_cast<int>(rng.below(n));
    WeylElement w = t.codistance(side, x, y);
    // Tw1
    if (!(t.codistance(1 - side, y, x) == w.inverse()))
      throw structural_error("(Tw1) failed for the self-twin codistance");
    int s = static_cast<int>(rng.below(bb.rank()));
    WeylElement ws = w * WeylElement::generator(cox, s);
    // z ranges over the s-panel of y in the OPPOSITE half's labeling
    const int panel = t.half_panel(1 - side, y, s);
    // Tw2: every z != y there must land on ws when l(ws) = l(w)-1
    if (ws.length() == w.length() - 1) {
      for (int z : bb.panel_chambers(panel))
        if (z != y && !(t.codistance(side, x, z) == ws))
          throw structural_error("(Tw2) failed for the self-twin codistance");
    }
    // Tw3: existence
    bool found = false;
    for (int z : bb.panel_chambers(panel))
      if (z != y && t.codistance(side, x, z) == ws) found = true;
    if (!found) throw structural_error("(Tw3) failed for the self-twin codistance");
  }
  return tp;
}

std::vector<int> TwinBuilding::opposite_chambers(int x) const {
  std::vector<int> out;
  const auto* row = b_->is_thin() ? nullptr : b_->dist_row(x);
  for (int y = 0; y < b_->num_chambers(); ++y) {
    int d = row ? row[y] : b_->gallery_distance(x, y);
    if (d == max_length()) out.push_back(y);
  }
  return out;
}

int TwinBuilding::coprojection(int x, const ResidueRef& r) const {
  // For the self-twin the codistance-maximizing gate coincides with the
  // distance-minimizing one; the construction checks back this up.
  return b_->project_to_residue(x, r);
}

TwinPtr self_twin(BuildingPtr b) { return TwinBuilding::self_twin(std::move(b)); }

bool cross_opposite_panels(const TwinBuilding& t, int sideP, int panelP,
                           int panelQ) {
  const Building& b = t.half();
  // equal twin-label types: raw types are related by sigma across the sides
  int wantRawQ = t.sigma(b.panel_type(panelP));
  (void)sideP;  // sigma is an involution, so the relation is side-symmetric
  if (b.panel_type(panelQ) != wantRawQ) return false;
  for (int x : b.panel_chambers(panelP))
    for (int y : b.panel_chambers(panelQ))
      if (t.opposite(x, y)) return true;
  return false;
}

bool cross_parallel(const TwinBuilding& t, int panelP, int panelQ) {
  const Building& b = t.half();
  std::vector<int> img;
  for (int y : b.panel_chambers(panelQ)) img.push_back(t.coproj_panel(y, panelP));
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  if (img.size() < 2) return false;
  // when parallel, the projection restrictions are mutually inverse bijections
  for (int y : b.panel_chambers(panelQ)) {
    int im = t.coproj_panel(y, panelP);
    if (t.coproj_panel(im, panelQ) != y)
      throw structural_error("cross parallel panels without inverse bijections");
  }
  return true;
}

WeylElement cross_panel_distance(const TwinBuilding& t, int sideP, int panelP,
                                 int panelQ) {
  if (!cross_parallel(t, panelP, panelQ))
    throw domain_error("cross panel distance needs parallel panels");
  const Building& b = t.half();
  auto pm = b.panel_chambers(panelP);
  WeylElement w = t.codistance(sideP, pm[0], t.coproj_panel(pm[0], panelQ));
  for (size_t i = 1; i < pm.size(); ++i)
    if (!(t.codistance(sideP, pm[i], t.coproj_panel(pm[i], panelQ)) == w))
      throw structural_error("cross panel distance depends on base chamber");
  return w;
}

std::vector<TwinChamber> twin_apartment(const TwinBuilding& t, int side, int x,
                                        int y) {
  if (!t.opposite(x, y)) throw domain_error("twin apartment needs opposite chambers");
  const Building& b = t.half();
  const TwinChamber cx{side, x}, cy{1 - side, y};
  std::vector<TwinChamber> out;
  for (int z = 0; z < b.num_chambers(); ++z)
    for (int zs = 0; zs < 2; ++zs) {
      TwinChamber cz{zs, z};
      if (t.grand(cx, cz) == t.grand(cy, cz)) out.push_back(cz);
    }
  std::sort(out.begin(), out.end());
  return out;
}

OppositionGraph opposition_graph(const TwinBuilding& t, int side, int c, int k) {
  if (k < 0 || k > t.max_length())
    throw domain_error("opposition graph needs 0 <= k <= l(r_S)");
  const Building& b = t.half();
  OppositionGraph g;
  g.side = side;
  g.center = c;
  g.k = k;
  const auto* row = b.is_thin() ? nullptr : b.dist_row(c);
  std::vector<int> pos(b.num_chambers(), -1);
  for (int y = 0; y < b.num_chambers(); ++y) {
    int d = row ? row[y] : b.gallery_distance(c, y);
    if (t.max_length() - d <= k) {
      pos[y] = static_cast<int>(g.vertices.size());
      g.vertices.push_back(y);
    }
  }
  UnionFind uf(static_cast<int>(g.vertices.size()));
  for (size_t i = 0; i < g.vertices.size(); ++i) {
    int y = g.vertices[i];
    for (int s = 0; s < b.rank(); ++s)
      for (int z : b.panel_chambers(b.panel_of(y, s)))
        if (z > y && pos[z] >= 0) {
          g.edges.push_back({y, z});
          uf.unite(static_cast<int>(i), pos[z]);
        }
  }
  std::vector<std::vector<int>> comps(g.vertices.size());
  for (size_t i = 0; i < g.vertices.size(); ++i)
    comps[uf.find(static_cast<int>(i))].push_back(g.vertices[i]);
  for (auto& c2 : comps)
    if (!c2.empty()) g.components.push_back(std::move(c2));
  std::sort(g.components.begin(), g.components.end());
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

CoSweepReport condition_co_sweep(const TwinBuilding& t, int k, bool parallel) {
  CoSweepReport rep;
  rep.k = k;
  const int n = t.half().num_chambers();
  rep.entries.resize(2 * static_cast<size_t>(n));
  parallel_for(rep.entries.size(), parallel, [&](size_t i) {
    int side = static_cast<int>(i / n);
    int c = static_cast<int>(i % n);
    OppositionGraph g = opposition_graph(t, side, c, k);
    rep.entries[i] = {side, c, static_cast<int>(g.vertices.size()),
                      static_cast<int>(g.components.size())};
  });
  for (const auto& e : rep.entries)
    if (e.components != 1) rep.allConnected = false;
  return rep;
}

}  // namespace twinbld
