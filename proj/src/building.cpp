#include "twinbld/building.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <set>

#include "twinbld/parallel.hpp"

namespace twinbld {

std::shared_ptr<const Building> Building::from_panels(
    CoxPtr cox, int numChambers,
    const std::vector<std::vector<int>>& panelIndexPerGen, std::string name,
    bool complete, std::vector<WeylElement> thinElements) {
  auto bp = std::shared_ptr<Building>(new Building());
  Building& b = *bp;
  b.cox_ = cox;
  b.name_ = std::move(name);
  b.numChambers_ = numChambers;
  b.complete_ = complete;
  b.thinElements_ = std::move(thinElements);
  const int rank = cox->rank();
  if (static_cast<int>(panelIndexPerGen.size()) != rank)
    throw structural_error("panel partition per generator required");

  b.panelIdOf_.assign(static_cast<size_t>(rank) * numChambers, -1);
  b.panelsByType_.resize(rank);
  for (int s = 0; s < rank; ++s) {
    const auto& part = panelIndexPerGen[s];
    if (static_cast<int>(part.size()) != numChambers)
      throw structural_error("panel partition size mismatch");
    int localMax = -1;
    for (int c = 0; c < numChambers; ++c) localMax = std::max(localMax, part[c]);
    int base = static_cast<int>(b.panelMembers_.size());
    b.panelMembers_.resize(base + localMax + 1);
    b.panelType_.resize(base + localMax + 1, s);
    for (int c = 0; c < numChambers; ++c) {
      if (part[c] < 0) throw structural_error("negative panel index");
      int pid = base + part[c];
      b.panelIdOf_[static_cast<size_t>(s) * numChambers + c] = pid;
      b.panelMembers_[pid].push_back(c);
    }
    for (int p = base; p <= base + localMax; ++p) {
      if (b.panelMembers_[p].empty()) throw structural_error("empty panel");
      b.panelsByType_[s].push_back(p);
    }
  }

  size_t minPanel = SIZE_MAX, maxPanel = 0;
  for (auto& m : b.panelMembers_) {
    std::sort(m.begin(), m.end());
    minPanel = std::min(minPanel, m.size());
    maxPanel = std::max(maxPanel, m.size());
  }
  b.thick_ = minPanel >= 3;
  b.thin_ = minPanel == 2 && maxPanel == 2;
  if (complete && minPanel < 2)
    throw structural_error("panel with fewer than two chambers");

  // connectivity
  {
    std::vector<char> seen(numChambers, 0);
    std::deque<int> q{0};
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
      int c = q.front();
      q.pop_front();
      for (int s = 0; s < rank; ++s)
        for (int d : b.panelMembers_[b.panel_of(c, s)])
          if (!seen[d]) {
            seen[d] = 1;
            ++reached;
            q.push_back(d);
          }
    }
    if (reached != numChambers)
      throw structural_error("disconnected chamber system");
  }

  // rank-2 residues for every unordered generator pair
  for (int s = 0; s < rank; ++s)
    for (int t = s + 1; t < rank; ++t) b.pairs_.push_back(GenSet::pair(s, t));
  b.rank2IdOf_.assign(b.pairs_.size() * static_cast<size_t>(numChambers), -1);
  for (size_t p = 0; p < b.pairs_.size(); ++p) {
    auto gens = b.pairs_[p].members();
    for (int c = 0; c < numChambers; ++c) {
      if (b.rank2IdOf_[p * numChambers + c] != -1) continue;
      int rid = static_cast<int>(b.rank2Members_.size());
      b.rank2Members_.emplace_back();
      b.rank2Pair_.push_back(static_cast<int>(p));
      std::deque<int> q{c};
      b.rank2IdOf_[p * numChambers + c] = rid;
      while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        b.rank2Members_[rid].push_back(u);
        for (int s : gens)
          for (int v : b.panelMembers_[b.panel_of(u, s)])
            if (b.rank2IdOf_[p * numChambers + v] == -1) {
              b.rank2IdOf_[p * numChambers + v] = rid;
              q.push_back(v);
            }
      }
      std::sort(b.rank2Members_[rid].begin(), b.rank2Members_[rid].end());
    }
    if (complete && cox->is_spherical(b.pairs_[p]))
      b.pairLongest_.push_back(longest_element(cox, b.pairs_[p]));
    else
      b.pairLongest_.push_back(WeylElement::identity(cox));
  }

  if (complete && cox->is_spherical(GenSet::full(rank))) {
    b.longestElt_ = longest_element(cox, GenSet::full(rank));
    b.longestLen_ = b.longestElt_->length();
  }
  b.distRows_.assign(numChambers, nullptr);
  return bp;
}

std::shared_ptr<const Building> Building::thin(CoxPtr cox, int radius) {
  if (radius < 1) throw domain_error("thin building radius must be >= 1");
  const int rank = cox->rank();
  const bool finite = cox->is_spherical(GenSet::full(rank));

  std::vector<WeylElement> els{WeylElement::identity(cox)};
  std::unordered_map<std::string, int> index{{els[0].key(), 0}};
  std::vector<int> level{0};
  for (size_t i = 0; i < els.size(); ++i) {
    if (!finite && level[i] >= radius) continue;
    for (int s = 0; s < rank; ++s) {
      WeylElement next = els[i] * WeylElement::generator(cox, s);
      if (index.emplace(next.key(), static_cast<int>(els.size())).second) {
        level.push_back(level[i] + 1);
        els.push_back(std::move(next));
      }
    }
  }

  const int n = static_cast<int>(els.size());
  std::vector<std::vector<int>> panels(rank, std::vector<int>(n, -1));
  for (int s = 0; s < rank; ++s) {
    int next = 0;
    for (int c = 0; c < n; ++c) {
      if (panels[s][c] != -1) continue;
      panels[s][c] = next;
      WeylElement w = els[c] * WeylElement::generator(cox, s);
      auto it = index.find(w.key());
      if (it != index.end()) panels[s][it->second] = next;
      ++next;
    }
  }
  std::string nm = "thin(" + (cox->name().empty() ? "custom" : cox->name()) +
                   (finite ? "" : ",r=" + std::to_string(radius)) + ")";
  return from_panels(cox, n, panels, nm, finite, std::move(els));
}

int Building::pair_index(int s, int t) const {
  if (s == t) throw domain_error("pair_index needs distinct generators");
  if (s > t) std::swap(s, t);
  int idx = 0;
  for (int a = 0; a < rank(); ++a)
    for (int b2 = a + 1; b2 < rank(); ++b2, ++idx)
      if (a == s && b2 == t) return idx;
  throw domain_error("generator out of range");
}

int Building::pair_opposite_type(int pairIdx, int s) const {
  const WeylElement& rj = pairLongest_[pairIdx];
  WeylElement g = rj * WeylElement::generator(cox_, s) * rj;
  for (int t : pairs_[pairIdx].members())
    if (g == WeylElement::generator(cox_, t)) return t;
  throw structural_error("r_J conjugate of a pair generator left the pair");
}

std::vector<int> Building::residue_chambers(GenSet J, int rep) const {
  std::vector<int> out;
  std::vector<char> seen(numChambers_, 0);
  std::deque<int> q{rep};
  seen[rep] = 1;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    out.push_back(u);
    for (int s : J.members())
      for (int v : panelMembers_[panel_of(u, s)])
        if (!seen[v]) {
          seen[v] = 1;
          q.push_back(v);
        }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Building::residue_contains(GenSet J, int rep, int y) const {
  // delta(rep,y) in <J> iff its reduced word only uses letters of J
  for (int s : delta(rep, y).word())
    if (!J.contains(s)) return false;
  return true;
}

std::vector<int> Building::e_k_neighborhood(int x, int k) const {
  if (k < 0 || k > rank()) throw domain_error("E_k needs 0 <= k <= rank");
  std::set<int> acc{x};
  const std::uint32_t full = GenSet::full(rank()).bits();
  for (std::uint32_t bits = 0; bits <= full; ++bits) {
    GenSet J(bits & full);
    if (!J.subset_of(GenSet::full(rank()))) continue;
    if (J.count() == 0 || J.count() > k) continue;
    for (int c : residue_chambers(J, x)) acc.insert(c);
    if (bits == full) break;
  }
  return std::vector<int>(acc.begin(), acc.end());
}

const std::uint8_t* Building::dist_row(int source) const {
  {
    std::shared_lock lk(distMutex_);
    if (distRows_[source]) return distRows_[source]->data();
  }
  auto row = std::make_shared<std::vector<std::uint8_t>>(numChambers_, 0xFF);
  auto& d = *row;
  std::deque<int> q{source};
  d[source] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int s = 0; s < rank(); ++s)
      for (int v : panelMembers_[panel_of(u, s)])
        if (d[v] == 0xFF) {
          d[v] = d[u] + 1;
          q.push_back(v);
        }
  }
  std::unique_lock lk(distMutex_);
  if (!distRows_[source]) distRows_[source] = std::move(row);
  return distRows_[source]->data();
}

std::shared_ptr<const BfsPathRow> Building::path_row(int source) const {
  {
    std::unique_lock lk(pathMutex_);
    auto it = pathRows_.find(source);
    if (it != pathRows_.end()) return it->second;
  }
  auto row = std::make_shared<BfsPathRow>();
  row->parent.assign(numChambers_, -1);
  row->label.assign(numChambers_, -1);
  std::vector<char> seen(numChambers_, 0);
  std::deque<int> q{source};
  seen[source] = 1;
  // ties broken by lowest generator, then lowest chamber id (BFS order)
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int s = 0; s < rank(); ++s)
      for (int v : panelMembers_[panel_of(u, s)])
        if (!seen[v]) {
          seen[v] = 1;
          row->parent[v] = u;
          row->label[v] = static_cast<std::int8_t>(s);
          q.push_back(v);
        }
  }
  std::unique_lock lk(pathMutex_);
  auto [it, fresh] = pathRows_.emplace(source, row);
  if (fresh) {
    pathOrder_.push_back(source);
    if (pathOrder_.size() > kPathRowCap) {
      pathRows_.erase(pathOrder_.front());
      pathOrder_.pop_front();
    }
  }
  return it->second;
}

int Building::gallery_distance(int x, int y) const {
  if (!thinElements_.empty())
    return (thinElements_[x].inverse() * thinElements_[y]).length();
  return dist_row(x)[y];
}

WeylElement Building::delta(int x, int y) const {
  if (!thinElements_.empty())
    return thinElements_[x].inverse() * thinElements_[y];
  auto row = path_row(x);
  std::vector<int> word;
  for (int c = y; c != x; c = row->parent[c]) {
    if (c < 0) throw structural_error("delta on unreachable chamber");
    word.push_back(row->label[c]);
  }
  std::reverse(word.begin(), word.end());
  return WeylElement::from_word(cox_, word);
}

const WeylElement& Building::longest() const {
  if (!longestElt_)
    throw unsupported_error("longest element needs a complete spherical type");
  return *longestElt_;
}

int Building::project_to_panel(int x, int panel) const {
  const auto* d = thinElements_.empty() ? dist_row(x) : nullptr;
  int best = -1, bestDist = INT32_MAX, hits = 0;
  for (int c : panelMembers_[panel]) {
    int dist = d ? d[c] : gallery_distance(x, c);
    if (dist < bestDist) {
      bestDist = dist;
      best = c;
      hits = 1;
    } else if (dist == bestDist) {
      ++hits;
    }
  }
  if (hits != 1) throw structural_error("panel gate is not unique");
  return best;
}

int Building::project_to_rank2(int x, int resId) const {
  const auto* d = thinElements_.empty() ? dist_row(x) : nullptr;
  int best = -1, bestDist = INT32_MAX, hits = 0;
  for (int c : rank2Members_[resId]) {
    int dist = d ? d[c] : gallery_distance(x, c);
    if (dist < bestDist) {
      bestDist = dist;
      best = c;
      hits = 1;
    } else if (dist == bestDist) {
      ++hits;
    }
  }
  if (hits != 1) throw structural_error("residue gate is not unique");
  return best;
}

int Building::project_to_residue(int x, const ResidueRef& r) const {
  if (r.type.count() == 1)
    return project_to_panel(x, panel_of(r.rep, r.type.members()[0]));
  if (r.type.count() == 2) {
    int p = pair_index(r.type.members()[0], r.type.members()[1]);
    return project_to_rank2(x, rank2_of(r.rep, p));
  }
  auto members = residue_chambers(r.type, r.rep);
  int best = -1, bestDist = INT32_MAX, hits = 0;
  for (int c : members) {
    int dist = gallery_distance(x, c);
    if (dist < bestDist) {
      bestDist = dist;
      best = c;
      hits = 1;
    } else if (dist == bestDist) {
      ++hits;
    }
  }
  if (hits != 1) throw structural_error("residue gate is not unique");
  return best;
}

const std::vector<int>& Building::project_panel_to_rank2(int panel,
                                                         int resId) const {
  const std::uint64_t key =
      static_cast<std::uint64_t>(panel) * num_rank2() + resId;
  {
    std::shared_lock lk(projMutex_);
    auto it = panelProj_.find(key);
    if (it != panelProj_.end()) return it->second;
  }
  std::vector<int> img;
  for (int c : panelMembers_[panel]) img.push_back(project_to_rank2(c, resId));
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  std::unique_lock lk(projMutex_);
  auto [it, fresh] = panelProj_.try_emplace(key, std::move(img));
  return it->second;
}

// --------------------------------------------------------------------------

int projection(const Building& b, int x, const ResidueRef& r) {
  return b.project_to_residue(x, r);
}

std::vector<int> project_residue_set(const Building& b, const ResidueRef& from,
                                     const ResidueRef& to) {
  std::vector<int> img;
  for (int c : b.residue_chambers(from.type, from.rep))
    img.push_back(b.project_to_residue(c, to));
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  return img;
}

bool are_parallel(const Building& b, const ResidueRef& r, const ResidueRef& q) {
  auto rm = b.residue_chambers(r.type, r.rep);
  auto qm = b.residue_chambers(q.type, q.rep);
  // mutually inverse bijections, elementwise
  for (int c : rm) {
    int im = b.project_to_residue(c, q);
    if (b.project_to_residue(im, r) != c) return false;
  }
  for (int c : qm) {
    int im = b.project_to_residue(c, r);
    if (b.project_to_residue(im, q) != c) return false;
  }
  // image coverage
  std::vector<int> img;
  for (int c : rm) img.push_back(b.project_to_residue(c, q));
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  return img == qm;
}

bool panels_parallel(const Building& b, int panelP, int panelQ) {
  auto pm = b.panel_chambers(panelP);
  auto qm = b.panel_chambers(panelQ);
  if (pm.size() != qm.size()) return false;
  std::vector<int> img;
  for (int c : pm) {
    int im = b.project_to_panel(c, panelQ);
    if (b.project_to_panel(im, panelP) != c) return false;
    img.push_back(im);
  }
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  return std::equal(img.begin(), img.end(), qm.begin(), qm.end());
}

WeylElement panel_distance(const Building& b, int panelP, int panelQ) {
  if (!panels_parallel(b, panelP, panelQ))
    throw domain_error("panel distance needs parallel panels");
  auto pm = b.panel_chambers(panelP);
  WeylElement w = b.delta(pm[0], b.project_to_panel(pm[0], panelQ));
  for (size_t i = 1; i < pm.size(); ++i) {
    WeylElement wi = b.delta(pm[i], b.project_to_panel(pm[i], panelQ));
    if (!(wi == w))
      throw structural_error("panel distance depends on the base chamber");
  }
  // type conjugation: type(Q) = w^-1 type(P) w
  int s = b.panel_type(panelP), t = b.panel_type(panelQ);
  WeylElement lhs = w.inverse() * WeylElement::generator(b.coxeter(), s) * w;
  if (!(lhs == WeylElement::generator(b.coxeter(), t)))
    throw structural_error("panel distance type conjugation failed");
  return w;
}

// --------------------------------------------------------------------------

AxiomReport check_building_axioms(const Building& b, size_t sampleTriples,
                                  std::uint64_t seed, bool parallel) {
  AxiomReport rep;
  rep.building = b.name();
  rep.exhaustive = sampleTriples == 0;
  const int n = b.num_chambers();
  const int rank = b.rank();

  if (!b.is_complete())
    throw unsupported_error("axiom suite needs a complete building");

  struct Work {
    std::vector<AxiomViolation> viol;
    size_t cases = 0;
  };

  auto checkTriple = [&](int x, int y, Work& w) {
    WeylElement dxy = b.delta(x, y);
    // Bu1
    ++w.cases;
    if (dxy.is_identity() != (x == y))
      w.viol.push_back({"Bu1", x, y, -1, -1, "delta = 1 iff equal failed"});
    // Bu2 over all neighbors z of y; Bu3 existence per generator
    for (int s = 0; s < rank; ++s) {
      WeylElement ws = dxy * WeylElement::generator(b.coxeter(), s);
      const bool up = ws.length() > dxy.length();
      bool found = false;
      for (int z : b.panel_chambers(b.panel_of(y, s))) {
        if (z == y) continue;
        ++w.cases;
        WeylElement dxz = b.delta(x, z);
        if (!(dxz == dxy) && !(dxz == ws))
          w.viol.push_back({"Bu2", x, y, z, s, "delta(x,z) not in {w, ws}"});
        if (up && !(dxz == ws))
          w.viol.push_back({"Bu2", x, y, z, s, "l(ws) = l(w)+1 but != ws"});
        if (dxz == ws) found = true;
      }
      ++w.cases;
      if (!found)
        w.viol.push_back({"Bu3", x, y, -1, s, "no z with delta(y,z)=s, delta(x,z)=ws"});
    }
  };

  if (rep.exhaustive) {
    std::vector<Work> per(n);
    parallel_for(static_cast<size_t>(n), parallel, [&](size_t x) {
      for (int y = 0; y < n; ++y) checkTriple(static_cast<int>(x), y, per[x]);
    });
    for (auto& w : per) {
      rep.casesChecked += w.cases;
      rep.violations.insert(rep.violations.end(), w.viol.begin(), w.viol.end());
    }
  } else {
    std::vector<Work> per(sampleTriples);
    parallel_for(sampleTriples, parallel, [&](size_t i) {
      SplitMix64 rng(seed + 0x9e37 * static_cast<std::uint64_t>(i) + i);
      int x = static_cast<int>(rng.below(n));
      int y = static_cast<int>(rng.below(n));
      checkTriple(x, y, per[i]);
    });
    for (auto& w : per) {
      rep.casesChecked += w.cases;
      rep.violations.insert(rep.violations.end(), w.viol.begin(), w.viol.end());
    }
  }
  return rep;
}

void write_chamber_dump(const Building& b, std::ostream& out) {
  for (int c = 0; c < b.num_chambers(); ++c) {
    out << c;
    for (int s = 0; s < b.rank(); ++s) out << ' ' << b.panel_of(c, s);
    out << '\n';
  }
}

void write_chamber_dot(const Building& b, std::ostream& out) {
  static const char* colors[] = {"red",    "blue",   "darkgreen",
                                 "orange", "purple", "brown"};
  out << "graph \"" << b.name() << "\" {\n";
  for (int p = 0; p < b.num_panels(); ++p) {
    auto m = b.panel_chambers(p);
    int s = b.panel_type(p);
    for (size_t i = 0; i < m.size(); ++i)
      for (size_t j = i + 1; j < m.size(); ++j)
        out << "  " << m[i] << " -- " << m[j] << " [color=" << colors[s % 6]
            << ", label=\"" << b.coxeter()->label(s) << "\"];\n";
  }
  out << "}\n";
}

}  // namespace twinbld
