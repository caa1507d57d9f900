#include "twinbld/zoo.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace twinbld {

namespace {

std::vector<std::uint8_t> normalize_point(std::vector<std::uint8_t> v, int q) {
  for (auto x : v)
    if (x) {
      if (x != 1) {  // q = 3, leading 2: scale by 2 (= inverse of 2)
        for (auto& y : v) y = static_cast<std::uint8_t>(y * 2 % q);
      }
      return v;
    }
  throw structural_error("zero vector is not a point");
}

std::string vec_key(const std::vector<std::uint8_t>& v) {
  return std::string(reinterpret_cast<const char*>(v.data()), v.size());
}

// All points of F_q^n (1-dim subspaces), canonical representatives.
void enumerate_points(FlagGeometry& g) {
  const int q = g.q, n = g.dim;
  std::vector<std::uint8_t> v(n, 0);
  size_t total = 1;
  for (int i = 0; i < n; ++i) total *= q;
  for (size_t code = 1; code < total; ++code) {
    size_t c = code;
    for (int i = 0; i < n; ++i) {
      v[i] = static_cast<std::uint8_t>(c % q);
      c /= q;
    }
    auto p = normalize_point(v, q);
    auto key = vec_key(p);
    if (!g.pointIndex.count(key)) {
      g.pointIndex.emplace(key, g.num_points());
      g.pointVecs.push_back(p);
    }
  }
}

// Mask of all points in the span of the given vectors.
std::uint64_t span_mask(const FlagGeometry& g,
                        const std::vector<std::vector<std::uint8_t>>& basis) {
  const int q = g.q, n = g.dim;
  const int k = static_cast<int>(basis.size());
  std::uint64_t mask = 0;
  size_t total = 1;
  for (int i = 0; i < k; ++i) total *= q;
  for (size_t code = 1; code < total; ++code) {
    size_t c = code;
    std::vector<std::uint8_t> v(n, 0);
    for (int i = 0; i < k; ++i) {
      int coef = static_cast<int>(c % q);
      c /= q;
      if (!coef) continue;
      for (int j = 0; j < n; ++j)
        v[j] = static_cast<std::uint8_t>((v[j] + coef * basis[i][j]) % q);
    }
    bool zero = std::all_of(v.begin(), v.end(), [](auto x) { return !x; });
    if (zero) continue;  // dependent combination
    auto it = g.pointIndex.find(vec_key(normalize_point(v, q)));
    mask |= 1ull << it->second;
  }
  return mask;
}

int form_pairing(const FlagGeometry& g, const std::vector<std::uint8_t>& a,
                 const std::vector<std::uint8_t>& b) {
  // alternating form antidiag(1,..,1,-1,..,-1)
  const int q = g.q, n = g.dim;
  int acc = 0;
  for (int i = 0; i < n / 2; ++i) acc += a[i] * b[n - 1 - i];
  for (int i = n / 2; i < n; ++i) acc += (q - 1) * a[i] * b[n - 1 - i] % q;
  return acc % q;
}

std::string masks_key(const std::array<std::uint64_t, 3>& m) {
  return std::string(reinterpret_cast<const char*>(m.data()), 24);
}

struct FlagTuple {
  std::array<std::uint64_t, 3> masks;
  bool operator<(const FlagTuple& o) const { return masks < o.masks; }
};

ZooEntry assemble_flag_building(std::shared_ptr<FlagGeometry> geom,
                                std::vector<FlagTuple> flags, CoxPtr cox,
                                const std::string& name) {
  std::sort(flags.begin(), flags.end());
  const int levels = geom->levels;
  geom->chamberMasks.reserve(flags.size());
  for (size_t i = 0; i < flags.size(); ++i) {
    geom->chamberMasks.push_back(flags[i].masks);
    geom->chamberIndex.emplace(masks_key(flags[i].masks),
                               static_cast<int>(i));
  }
  // generator s varies flag component s: panel key = the other components
  const int n = static_cast<int>(flags.size());
  std::vector<std::vector<int>> panels(levels, std::vector<int>(n, -1));
  for (int s = 0; s < levels; ++s) {
    std::map<std::array<std::uint64_t, 3>, int> keyed;
    for (int c = 0; c < n; ++c) {
      auto key = flags[c].masks;
      key[s] = 0;
      auto [it, fresh] = keyed.emplace(key, static_cast<int>(keyed.size()));
      panels[s][c] = it->second;
    }
  }
  ZooEntry e;
  e.geometry = geom;
  e.building = Building::from_panels(cox, n, panels, name);
  return e;
}

}  // namespace

int FlagGeometry::point_of_vector(const std::vector<std::uint8_t>& v) const {
  auto it = pointIndex.find(vec_key(normalize_point(v, q)));
  if (it == pointIndex.end()) throw structural_error("unknown point");
  return it->second;
}

std::vector<int> FlagGeometry::point_permutation(const GfMatrix& g) const {
  std::vector<int> perm(num_points());
  for (int p = 0; p < num_points(); ++p) perm[p] = point_of_vector(g.apply(pointVecs[p]));
  return perm;
}

int FlagGeometry::chamber_image(const std::vector<int>& perm,
                                int chamber) const {
  std::array<std::uint64_t, 3> img{0, 0, 0};
  for (int lvl = 0; lvl < 3; ++lvl) {
    std::uint64_t m = chamberMasks[chamber][lvl];
    while (m) {
      int p = __builtin_ctzll(m);
      m &= m - 1;
      img[lvl] |= 1ull << perm[p];
    }
  }
  auto it = chamberIndex.find(masks_key(img));
  if (it == chamberIndex.end())
    throw structural_error("matrix action does not preserve the flag complex");
  return it->second;
}

int FlagGeometry::chamber_image(const GfMatrix& g, int chamber) const {
  return chamber_image(point_permutation(g), chamber);
}

bool FlagGeometry::preserves_form(const GfMatrix& g) const {
  if (!symplectic) return true;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      std::vector<std::uint8_t> ei(dim, 0), ej(dim, 0);
      ei[i] = 1;
      ej[j] = 1;
      if (form_pairing(*this, g.apply(ei), g.apply(ej)) !=
          form_pairing(*this, ei, ej))
        return false;
    }
  return true;
}

ZooEntry zoo_projective(int dim, int q) {
  if ((dim != 2 && dim != 3) || (q != 2 && q != 3))
    throw domain_error("projective flag building supports dim 2,3 and q 2,3");
  auto geom = std::make_shared<FlagGeometry>();
  geom->q = q;
  geom->dim = dim + 1;
  geom->levels = dim;
  enumerate_points(*geom);

  // lines: spans of point pairs
  std::set<std::uint64_t> lines;
  for (int a = 0; a < geom->num_points(); ++a)
    for (int b = a + 1; b < geom->num_points(); ++b)
      lines.insert(span_mask(*geom, {geom->pointVecs[a], geom->pointVecs[b]}));

  std::vector<FlagTuple> flags;
  if (dim == 2) {
    for (std::uint64_t L : lines)
      for (int p = 0; p < geom->num_points(); ++p)
        if (L >> p & 1) flags.push_back({{1ull << p, L, 0}});
  } else {
    std::set<std::uint64_t> planes;
    for (std::uint64_t L : lines)
      for (int r = 0; r < geom->num_points(); ++r) {
        if (L >> r & 1) continue;
        std::vector<std::vector<std::uint8_t>> basis;
        std::uint64_t m = L;
        int take = 0;
        while (m && take < 2) {  // two independent points span the line
          int p = __builtin_ctzll(m);
          m &= m - 1;
          basis.push_back(geom->pointVecs[p]);
          ++take;
        }
        basis.push_back(geom->pointVecs[r]);
        planes.insert(span_mask(*geom, basis));
      }
    for (std::uint64_t H : planes)
      for (std::uint64_t L : lines) {
        if ((L & H) != L) continue;
        for (int p = 0; p < geom->num_points(); ++p)
          if (L >> p & 1) flags.push_back({{1ull << p, L, H}});
      }
  }
  std::string cname = dim == 2 ? "A2" : "A3";
  std::string name = "A" + std::to_string(dim) + "q" + std::to_string(q);
  return assemble_flag_building(geom, std::move(flags), CoxeterMatrix::named(cname),
                                name);
}

ZooEntry zoo_symplectic(int n, int q) {
  if (!((n == 4 && (q == 2 || q == 3)) || (n == 6 && q == 2)))
    throw domain_error("symplectic building supports (4,2), (4,3), (6,2)");
  auto geom = std::make_shared<FlagGeometry>();
  geom->q = q;
  geom->dim = n;
  geom->levels = n / 2;
  geom->symplectic = true;
  enumerate_points(*geom);

  auto orthogonal = [&](int a, int b) {
    return form_pairing(*geom, geom->pointVecs[a], geom->pointVecs[b]) == 0;
  };

  std::set<std::uint64_t> lines;
  for (int a = 0; a < geom->num_points(); ++a)
    for (int b = a + 1; b < geom->num_points(); ++b)
      if (orthogonal(a, b))
        lines.insert(span_mask(*geom, {geom->pointVecs[a], geom->pointVecs[b]}));

  std::vector<FlagTuple> flags;
  if (n == 4) {
    for (std::uint64_t L : lines)
      for (int p = 0; p < geom->num_points(); ++p)
        if (L >> p & 1) flags.push_back({{1ull << p, L, 0}});
  } else {
    std::set<std::uint64_t> lagrangian;
    for (std::uint64_t L : lines)
      for (int r = 0; r < geom->num_points(); ++r) {
        if (L >> r & 1) continue;
        bool perp = true;
        std::uint64_t m = L;
        while (m && perp) {
          int p = __builtin_ctzll(m);
          m &= m - 1;
          perp = orthogonal(p, r);
        }
        if (!perp) continue;
        std::vector<std::vector<std::uint8_t>> basis;
        std::uint64_t mm = L;
        int take = 0;
        while (mm && take < 2) {
          int p = __builtin_ctzll(mm);
          mm &= mm - 1;
          basis.push_back(geom->pointVecs[p]);
          ++take;
        }
        basis.push_back(geom->pointVecs[r]);
        lagrangian.insert(span_mask(*geom, basis));
      }
    for (std::uint64_t H : lagrangian)
      for (std::uint64_t L : lines) {
        if ((L & H) != L) continue;
        for (int p = 0; p < geom->num_points(); ++p)
          if (L >> p & 1) flags.push_back({{1ull << p, L, H}});
      }
  }
  std::string cname = n == 4 ? "C2" : "C3";
  std::string name = "C" + std::to_string(n / 2) + "q" + std::to_string(q);
  return assemble_flag_building(geom, std::move(flags), CoxeterMatrix::named(cname),
                                name);
}

BuildingPtr build_projective_flag_building(int dim, int q) {
  return zoo_projective(dim, q).building;
}
BuildingPtr build_symplectic_building(int n, int q) {
  return zoo_symplectic(n, q).building;
}

ZooEntry zoo_build(const std::string& name) {
  if (name == "A2q2") return zoo_projective(2, 2);
  if (name == "A2q3") return zoo_projective(2, 3);
  if (name == "A3q2") return zoo_projective(3, 2);
  if (name == "C2q2") return zoo_symplectic(4, 2);
  if (name == "C3q2") return zoo_symplectic(6, 2);
  throw domain_error("unknown zoo building: " + name);
}

bool zoo_knows(const std::string& name) {
  for (const auto& n : zoo_names())
    if (n == name) return true;
  return false;
}

std::vector<std::string> zoo_names() {
  return {"A2q2", "A2q3", "A3q2", "C2q2", "C3q2"};
}

std::vector<GfMatrix> transitive_generators(const FlagGeometry& g) {
  std::vector<GfMatrix> out;
  if (g.symplectic) {
    // symplectic transvections x -> x + <x,v> v (q = 2 here)
    for (const auto& v : g.pointVecs) {
      GfMatrix m = GfMatrix::identity(g.q, g.dim);
      for (int j = 0; j < g.dim; ++j) {
        std::vector<std::uint8_t> ej(g.dim, 0);
        ej[j] = 1;
        int c = form_pairing(g, ej, v);
        for (int i = 0; i < g.dim; ++i)
          m(i, j) = static_cast<std::uint8_t>((m(i, j) + c * v[i]) % g.q);
      }
      out.push_back(m);
    }
  } else {
    for (int i = 0; i < g.dim; ++i)
      for (int j = 0; j < g.dim; ++j) {
        if (i == j) continue;
        for (int lam = 1; lam < g.q; ++lam) {
          GfMatrix m = GfMatrix::identity(g.q, g.dim);
          m(i, j) = static_cast<std::uint8_t>(lam);
          out.push_back(m);
        }
      }
  }
  return out;
}

bool verify_chamber_transitivity(const ZooEntry& z) {
  const FlagGeometry& g = *z.geometry;
  std::vector<std::vector<int>> perms;
  for (const auto& m : transitive_generators(g)) {
    if (!g.preserves_form(m)) throw structural_error("generator breaks the form");
    perms.push_back(g.point_permutation(m));
  }
  std::vector<char> seen(g.chamberMasks.size(), 0);
  std::deque<int> q{0};
  seen[0] = 1;
  size_t reached = 1;
  while (!q.empty()) {
    int c = q.front();
    q.pop_front();
    for (const auto& p : perms) {
      int img = g.chamber_image(p, c);
      if (!seen[img]) {
        seen[img] = 1;
        ++reached;
        q.push_back(img);
      }
    }
  }
  return reached == g.chamberMasks.size();
}

// --------------------------------------------------------------------------

IncidenceGeometry parse_incidence(std::istream& in) {
  IncidenceGeometry g;
  std::string line;
  bool headerSeen = false;
  std::set<std::pair<int, int>> seen;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (!headerSeen) {
      int m;
      if (tok != "gonality" || !(ls >> m))
        throw validation_error("expected 'gonality m' header");
      g.gonality = m;
      headerSeen = true;
      continue;
    }
    std::string tok2;
    if (!(ls >> tok2) || tok.size() < 2 || tok2.size() < 2 || tok[0] != 'P' ||
        tok2[0] != 'L')
      throw validation_error("expected 'P<i> L<j>' at line " +
                             std::to_string(lineno));
    int p = std::stoi(tok.substr(1)), l = std::stoi(tok2.substr(1));
    if (p < 0 || l < 0) throw validation_error("negative incidence index");
    if (!seen.insert({p, l}).second)
      throw validation_error("duplicate flag at line " + std::to_string(lineno));
    g.flags.push_back({p, l});
    g.numPoints = std::max(g.numPoints, p + 1);
    g.numLines = std::max(g.numLines, l + 1);
  }
  if (!headerSeen) throw validation_error("missing 'gonality m' header");
  return g;
}

void validate_incidence(const IncidenceGeometry& g) {
  const int m = g.gonality;
  if (m < 2) throw validation_error("gonality must be >= 2");
  const int nP = g.numPoints, nL = g.numLines;
  const int V = nP + nL;
  std::vector<std::vector<int>> adj(V);
  for (auto [p, l] : g.flags) {
    adj[p].push_back(nP + l);
    adj[nP + l].push_back(p);
  }
  // constant orders
  size_t pointDeg = adj.empty() ? 0 : adj[0].size();
  for (int p = 0; p < nP; ++p)
    if (adj[p].size() != pointDeg)
      throw validation_error("non-constant point order: P" + std::to_string(p) +
                             " lies on " + std::to_string(adj[p].size()) +
                             " lines, P0 on " + std::to_string(pointDeg));
  size_t lineDeg = nL ? adj[nP].size() : 0;
  for (int l = 0; l < nL; ++l)
    if (adj[nP + l].size() != lineDeg)
      throw validation_error("non-constant line order: L" + std::to_string(l));
  if (pointDeg < 2 || lineDeg < 2)
    throw validation_error("every point/line needs at least two flags");

  // diameter m and girth 2m of the incidence graph
  int diameter = 0, girth = INT32_MAX;
  std::pair<int, int> farPair{-1, -1};
  int girthAt = -1;
  for (int src = 0; src < V; ++src) {
    std::vector<int> dist(V, -1), parent(V, -1);
    std::deque<int> q{src};
    dist[src] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int v : adj[u]) {
        if (dist[v] == -1) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          q.push_back(v);
        } else if (v != parent[u] && dist[v] >= dist[u]) {
          int cyc = dist[u] + dist[v] + 1;
          if (cyc < girth) {
            girth = cyc;
            girthAt = src;
          }
        }
      }
    }
    for (int v = 0; v < V; ++v) {
      if (dist[v] == -1) throw validation_error("incidence graph disconnected");
      if (dist[v] > diameter) {
        diameter = dist[v];
        farPair = {src, v};
      }
    }
  }
  auto vname = [&](int v) {
    return v < nP ? "P" + std::to_string(v) : "L" + std::to_string(v - nP);
  };
  if (diameter != m)
    throw validation_error(
        "incidence graph diameter is " + std::to_string(diameter) + ", not " +
        std::to_string(m) + " (witness " + vname(farPair.first) + " .. " +
        vname(farPair.second) + ")");
  if (girth != 2 * m)
    throw validation_error("incidence graph girth is " + std::to_string(girth) +
                           ", not " + std::to_string(2 * m) +
                           " (short cycle near " + vname(girthAt) + ")");
}

BuildingPtr ingest_rank2_geometry(std::istream& in) {
  IncidenceGeometry g = parse_incidence(in);
  validate_incidence(g);
  // chambers = flags, sorted; generator 0 varies the point, 1 the line
  auto flags = g.flags;
  std::sort(flags.begin(), flags.end(),
            [](auto a, auto b) { return std::pair(a.second, a.first) < std::pair(b.second, b.first); });
  const int n = static_cast<int>(flags.size());
  std::vector<std::vector<int>> panels(2, std::vector<int>(n, -1));
  std::map<int, int> byLine, byPoint;
  for (int c = 0; c < n; ++c) {
    auto [p, l] = flags[c];
    panels[0][c] = byLine.emplace(l, static_cast<int>(byLine.size())).first->second;
    panels[1][c] = byPoint.emplace(p, static_cast<int>(byPoint.size())).first->second;
  }
  CoxPtr cox = CoxeterMatrix::from_orders(2, {g.gonality}, "I2(" + std::to_string(g.gonality) + ")");
  return Building::from_panels(cox, n, panels,
                               "ingested-m" + std::to_string(g.gonality));
}

}  // namespace twinbld
