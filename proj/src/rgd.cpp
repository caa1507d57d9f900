#include "twinbld/rgd.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace twinbld {

namespace {

GfMatrix elem(int q, int n, std::initializer_list<std::pair<int, int>> ones) {
  GfMatrix m = GfMatrix::identity(q, n);
  for (auto [i, j] : ones) m(i, j) = 1;
  return m;
}

Root mk(CoxPtr cox, std::initializer_list<i64> c) {
  return Root(cox, std::vector<i64>(c));
}

}  // namespace

int RootSubgroupFamily::index_of_root(const Root& r) const {
  for (int i = 0; i < size(); ++i)
    if (circle[i] == r) return i + 1;
  throw domain_error("root is not on the family circle");
}

std::vector<GfMatrix> RootSubgroupFamily::group(int i) const {
  const GfMatrix& g = gens[slot(i)];
  std::vector<GfMatrix> out{GfMatrix::identity(q, dim)};
  GfMatrix p = g;
  while (!p.is_identity()) {
    out.push_back(p);
    p = p.mul(g);
    if (out.size() > 16) throw structural_error("root group generator order too large");
  }
  return out;
}

std::vector<std::string> rgd_family_names() { return {"SL3F2", "SL3F3", "Sp4F2"}; }

RootSubgroupFamily rgd_family(const std::string& name) {
  RootSubgroupFamily f;
  f.name = name;
  if (name == "SL3F2" || name == "SL3F3") {
    f.q = name == "SL3F2" ? 2 : 3;
    f.dim = 3;
    f.gonality = 3;
    f.cox = CoxeterMatrix::named("A2");
    // circle in angular order: a1, a1+a2, a2, then the negatives
    f.circle = {mk(f.cox, {1, 0}),  mk(f.cox, {1, 1}),  mk(f.cox, {0, 1}),
                mk(f.cox, {-1, 0}), mk(f.cox, {-1, -1}), mk(f.cox, {0, -1})};
    f.gens = {elem(f.q, 3, {{0, 1}}), elem(f.q, 3, {{0, 2}}),
              elem(f.q, 3, {{1, 2}}), elem(f.q, 3, {{1, 0}}),
              elem(f.q, 3, {{2, 0}}), elem(f.q, 3, {{2, 1}})};
    return f;
  }
  if (name == "Sp4F2") {
    // alternating form antidiag(1,1,1,1) over F2; short simple a1 = (1,0)
    f.q = 2;
    f.dim = 4;
    f.gonality = 4;
    f.cox = CoxeterMatrix::named("C2");
    f.circle = {mk(f.cox, {1, 0}),   mk(f.cox, {2, 1}),   mk(f.cox, {1, 1}),
                mk(f.cox, {0, 1}),   mk(f.cox, {-1, 0}),  mk(f.cox, {-2, -1}),
                mk(f.cox, {-1, -1}), mk(f.cox, {0, -1})};
    GfMatrix x1 = elem(2, 4, {{0, 1}, {2, 3}});   // a1 (short)
    GfMatrix x4 = elem(2, 4, {{0, 3}});           // 2a1+a2 (long)
    GfMatrix x3 = elem(2, 4, {{0, 2}, {1, 3}});   // a1+a2 (short)
    GfMatrix x2 = elem(2, 4, {{1, 2}});           // a2 (long)
    f.gens = {x1, x4, x3, x2, x1.transpose(), x4.transpose(), x3.transpose(),
              x2.transpose()};
    return f;
  }
  throw domain_error("unknown RGD family: " + name);
}

std::string rgd_zoo_name(const std::string& family) {
  if (family == "SL3F2") return "A2q2";
  if (family == "SL3F3") return "A2q3";
  if (family == "Sp4F2") return "C2q2";
  throw domain_error("unknown RGD family: " + family);
}

RootSubgroupFamily parse_family(std::istream& in) {
  RootSubgroupFamily f;
  std::string tok;
  int rank = 2;
  std::vector<i64> coords;
  while (in >> tok) {
    if (tok == "family") {
      in >> f.name;
    } else if (tok == "field") {
      in >> f.q;
    } else if (tok == "dim") {
      in >> f.dim;
    } else if (tok == "gonality") {
      in >> f.gonality;
      f.cox = CoxeterMatrix::from_orders(rank, {f.gonality}, "I2");
    } else if (tok == "root") {
      if (!f.cox) throw validation_error("gonality must precede roots");
      coords.assign(rank, 0);
      for (auto& c : coords)
        if (!(in >> c)) throw validation_error("bad root coordinates");
      GfMatrix m(f.q, f.dim);
      for (int i = 0; i < f.dim; ++i)
        for (int j = 0; j < f.dim; ++j) {
          int v;
          if (!(in >> v)) throw validation_error("bad generator matrix");
          m(i, j) = static_cast<std::uint8_t>(v % f.q);
        }
      f.circle.push_back(Root(f.cox, coords));
      f.gens.push_back(m);
    } else {
      throw validation_error("unknown fixture token: " + tok);
    }
  }
  if (f.circle.size() != 4u * static_cast<unsigned>(f.gonality) / 2u)
    throw validation_error("fixture must list 2n root groups");
  return f;
}

void write_family(const RootSubgroupFamily& f, std::ostream& out) {
  out << "family " << f.name << "\nfield " << f.q << "\ndim " << f.dim
      << "\ngonality " << f.gonality << "\n";
  for (int i = 0; i < f.size(); ++i) {
    out << "root";
    for (i64 c : f.circle[i].coords()) out << ' ' << c;
    out << '\n';
    for (int r = 0; r < f.dim; ++r) {
      for (int c = 0; c < f.dim; ++c) out << (c ? " " : "") << int(f.gens[i](r, c));
      out << '\n';
    }
  }
}

std::vector<GfMatrix> group_closure(const std::vector<GfMatrix>& gens,
                                    size_t cap) {
  if (gens.empty()) return {};
  std::vector<GfMatrix> els{GfMatrix::identity(gens[0].q(), gens[0].size())};
  std::unordered_set<std::string> seen{els[0].key()};
  for (size_t i = 0; i < els.size(); ++i)
    for (const auto& g : gens) {
      GfMatrix next = els[i].mul(g);
      if (seen.insert(next.key()).second) {
        els.push_back(std::move(next));
        if (els.size() > cap) throw structural_error("group closure exceeded cap");
      }
    }
  return els;
}

RgdReport validate_rgd_axioms(const RootSubgroupFamily& f) {
  RgdReport rep;
  rep.family = f.name;
  const int N = f.size();
  FiniteWeylGroup W = FiniteWeylGroup::enumerate(f.cox);

  // RGD0 + closure: each U_alpha nontrivial and of order q
  {
    RgdCheck c{"RGD0"};
    for (int i = 1; i <= N; ++i) {
      auto u = f.group(i);
      if (u.size() < 2) {
        c.ok = false;
        c.detail = "trivial root group U_" + std::to_string(i);
      }
      if (u.size() != static_cast<size_t>(f.q)) {
        c.ok = false;
        c.detail = "U_" + std::to_string(i) + " has order " +
                   std::to_string(u.size());
      }
    }
    rep.checks.push_back(c);
  }

  // RGD1: [U_a, U_b] <= U_(a,b) for each prenilpotent pair
  {
    RgdCheck c{"RGD1"};
    for (int i = 0; i < N && c.ok; ++i)
      for (int j = 0; j < N && c.ok; ++j) {
        if (i == j) continue;
        const Root &a = f.circle[i], &b = f.circle[j];
        if (a == b.negated()) continue;
        if (!is_prenilpotent(W, a, b)) continue;
        auto open = root_interval(W, a, b);
        std::vector<GfMatrix> intervalGens;
        for (const Root& g : open) {
          if (g == a || g == b) continue;
          intervalGens.push_back(f.gens[f.slot(f.index_of_root(g))]);
        }
        auto span = group_closure(
            intervalGens.empty()
                ? std::vector<GfMatrix>{GfMatrix::identity(f.q, f.dim)}
                : intervalGens);
        std::unordered_set<std::string> inSpan;
        for (auto& m : span) inSpan.insert(m.key());
        for (auto& ua : f.group(i + 1))
          for (auto& ub : f.group(j + 1)) {
            GfMatrix comm = ua.inverse().mul(ub.inverse()).mul(ua).mul(ub);
            if (!inSpan.count(comm.key())) {
              c.ok = false;
              c.detail = "commutator of U_" + std::to_string(i + 1) + ", U_" +
                         std::to_string(j + 1) + " escapes the interval group";
            }
          }
      }
    rep.checks.push_back(c);
  }

  // RGD2: m(u) = u' u u'' conjugating U_beta onto U_{s beta}
  {
    RgdCheck c{"RGD2"};
    for (int s = 0; s < 2 && c.ok; ++s) {
      Root alphaS = Root::simple(f.cox, s);
      int iPlus = f.index_of_root(alphaS);
      int iMinus = f.index_of_root(alphaS.negated());
      auto uPlus = f.group(iPlus);
      auto uMinus = f.group(iMinus);
      WeylElement ws = WeylElement::generator(f.cox, s);
      for (auto& u : uPlus) {
        if (u.is_identity()) continue;
        bool found = false;
        for (auto& u1 : uMinus)
          for (auto& u2 : uMinus) {
            if (found) break;
            GfMatrix m = u1.mul(u).mul(u2);
            GfMatrix mi = m.inverse();
            bool good = true;
            for (int b = 0; b < N && good; ++b) {
              Root img(f.cox, ws.act(f.circle[b].coords()));
              int target = f.index_of_root(img);
              std::unordered_set<std::string> targetSet;
              for (auto& tg : f.group(target)) targetSet.insert(tg.key());
              for (auto& ub : f.group(b + 1))
                if (!targetSet.count(m.mul(ub).mul(mi).key())) good = false;
            }
            if (good) found = true;
          }
        if (!found) {
          c.ok = false;
          c.detail = "no m(u) for a unit of U_{alpha_s" + std::to_string(s + 1) + "}";
        }
      }
    }
    rep.checks.push_back(c);
  }

  // positive and negative unipotent subgroups
  std::vector<GfMatrix> posGens, negGens, allGens;
  for (int i = 0; i < N; ++i) {
    (f.circle[i].is_positive() ? posGens : negGens).push_back(f.gens[i]);
    allGens.push_back(f.gens[i]);
  }
  auto uPlus = group_closure(posGens);
  rep.uPlusOrder = uPlus.size();
  std::unordered_set<std::string> uPlusSet;
  for (auto& m : uPlus) uPlusSet.insert(m.key());

  // RGD3: U_{-alpha_s} not contained in U_+
  {
    RgdCheck c{"RGD3"};
    for (int s = 0; s < 2; ++s) {
      Root neg = Root::simple(f.cox, s).negated();
      for (auto& u : f.group(f.index_of_root(neg)))
        if (!u.is_identity() && uPlusSet.count(u.key())) {
          c.ok = false;
          c.detail = "U_{-alpha_s" + std::to_string(s + 1) + "} lies in U_+";
        }
    }
    rep.checks.push_back(c);
  }

  // RGD4: G = H <U_alpha>; with G the closure of all root groups this means
  // H <= G, which is verified by computing H inside G
  {
    RgdCheck c{"RGD4"};
    auto G = group_closure(allGens);
    rep.groupOrder = G.size();
    std::vector<std::vector<std::string>> groupKeys(N);
    for (int i = 0; i < N; ++i)
      for (auto& m : f.group(i + 1)) groupKeys[i].push_back(m.key());
    size_t torus = 0;
    for (auto& g : G) {
      GfMatrix gi = g.inverse();
      bool normalizesAll = true;
      for (int i = 0; i < N && normalizesAll; ++i) {
        std::unordered_set<std::string> imgs;
        for (auto& u : f.group(i + 1)) imgs.insert(g.mul(u).mul(gi).key());
        for (auto& k : groupKeys[i])
          if (!imgs.count(k)) normalizesAll = false;
      }
      if (normalizesAll) ++torus;
    }
    rep.torusOrder = torus;
    c.detail = "|G| = " + std::to_string(G.size()) +
               ", |H| = " + std::to_string(torus);
    rep.checks.push_back(c);
  }
  return rep;
}

std::vector<GfMatrix> commutator_projection(const RootSubgroupFamily& f, int i,
                                            int k) {
  const int n = f.gonality;
  // normalize k into i+1 .. i+n-2
  int rel = k - i;
  rel = ((rel % f.size()) + f.size()) % f.size();
  if (rel < 1 || rel > n - 2)
    throw domain_error("commutator projection needs i+1 <= k <= i+n-2");
  const int j = i + n - 1;

  // unique normal form over the open interval U_{i+1} ... U_{j-1}
  std::vector<int> slots;
  for (int l = i + 1; l <= j - 1; ++l) slots.push_back(l);
  std::vector<std::vector<GfMatrix>> factors;
  for (int l : slots) factors.push_back(f.group(l));

  std::map<std::string, std::vector<int>> normalForm;
  std::vector<int> idx(slots.size(), 0);
  for (;;) {
    GfMatrix prod = GfMatrix::identity(f.q, f.dim);
    for (size_t t = 0; t < slots.size(); ++t) prod = prod.mul(factors[t][idx[t]]);
    if (!normalForm.emplace(prod.key(), idx).second)
      throw structural_error("interval normal form is not unique");
    size_t t = 0;
    while (t < idx.size() && ++idx[t] == static_cast<int>(factors[t].size())) {
      idx[t] = 0;
      ++t;
    }
    if (t == idx.size()) break;
  }

  std::map<std::string, GfMatrix> collected;
  const int kSlotPos = rel - 1;  // position of U_k among the interval slots
  for (auto& ai : f.group(i))
    for (auto& aj : f.group(j)) {
      GfMatrix comm = ai.inverse().mul(aj.inverse()).mul(ai).mul(aj);
      auto it = normalForm.find(comm.key());
      if (it == normalForm.end())
        throw structural_error("commutator escapes the interval normal form");
      const GfMatrix& fk = factors[kSlotPos][it->second[kSlotPos]];
      collected.emplace(fk.key(), fk);
    }
  std::vector<GfMatrix> out;
  for (auto& [key, m] : collected) out.push_back(m);
  return out;
}

WcGenReport check_wc_generation(const RootSubgroupFamily& f, int s, int side) {
  WcGenReport rep;
  Root alphaS = Root::simple(f.cox, s);
  std::vector<GfMatrix> full, restricted;
  rep.allOrdersFinite = true;
  for (int i = 0; i < f.size(); ++i) {
    const Root& beta = f.circle[i];
    if (beta.is_positive() != (side == 0)) continue;
    full.push_back(f.gens[i]);
    int ord;
    if (beta == alphaS || beta == alphaS.negated())
      ord = 1;  // r_beta s is the identity
    else
      ord = reflection_product_order(beta, alphaS);
    if (ord == kInfiniteOrder) {
      rep.allOrdersFinite = false;
      continue;
    }
    restricted.push_back(f.gens[i]);
  }
  if (!rep.allOrdersFinite)
    throw structural_error("infinite reflection order in a spherical family");
  auto a = group_closure(full);
  auto b = group_closure(restricted);
  rep.orderFull = a.size();
  rep.orderRestricted = b.size();
  std::unordered_set<std::string> aset;
  for (auto& m : a) aset.insert(m.key());
  rep.equal = a.size() == b.size();
  for (auto& m : b)
    if (!aset.count(m.key())) rep.equal = false;
  return rep;
}

std::pair<int, int> standard_chamber_pair(const ZooEntry& zoo) {
  const FlagGeometry& g = *zoo.geometry;
  auto basisVec = [&](int i) {
    std::vector<std::uint8_t> v(g.dim, 0);
    v[i] = 1;
    return v;
  };
  auto flagOf = [&](std::vector<int> order) {
    std::array<std::uint64_t, 3> masks{0, 0, 0};
    std::vector<std::vector<std::uint8_t>> basis;
    for (int lvl = 0; lvl < g.levels; ++lvl) {
      basis.push_back(basisVec(order[lvl]));
      // mask of the span so far
      std::uint64_t m = 0;
      // enumerate combinations over current basis
      size_t total = 1;
      for (size_t t = 0; t < basis.size(); ++t) total *= g.q;
      for (size_t code = 1; code < total; ++code) {
        size_t c = code;
        std::vector<std::uint8_t> v(g.dim, 0);
        for (size_t t = 0; t < basis.size(); ++t) {
          int coef = static_cast<int>(c % g.q);
          c /= g.q;
          for (int d = 0; d < g.dim; ++d)
            v[d] = static_cast<std::uint8_t>((v[d] + coef * basis[t][d]) % g.q);
        }
        if (std::all_of(v.begin(), v.end(), [](auto x) { return !x; })) continue;
        m |= 1ull << g.point_of_vector(v);
      }
      masks[lvl] = m;
    }
    std::string key(reinterpret_cast<const char*>(masks.data()), 24);
    auto it = g.chamberIndex.find(key);
    if (it == g.chamberIndex.end())
      throw structural_error("standard flag is not a chamber");
    return it->second;
  };
  std::vector<int> fwd, bwd;
  for (int i = 0; i < g.levels; ++i) fwd.push_back(i);
  for (int i = 0; i < g.levels; ++i) bwd.push_back(g.dim - 1 - i);
  return {flagOf(fwd), flagOf(bwd)};
}

TransitivityReport simply_transitive_check(const RootSubgroupFamily& f,
                                           const ZooEntry& zoo,
                                           const TwinBuilding& t, int side) {
  TransitivityReport rep;
  auto [cPlus, cMinus] = standard_chamber_pair(zoo);
  const Building& b = t.half();
  if (b.gallery_distance(cPlus, cMinus) != t.max_length())
    throw structural_error("standard flags are not opposite");

  std::vector<GfMatrix> gens;
  for (int i = 0; i < f.size(); ++i)
    if (f.circle[i].is_positive() == (side == 0)) gens.push_back(f.gens[i]);
  auto U = group_closure(gens);
  rep.groupOrder = U.size();

  const int cEps = side == 0 ? cPlus : cMinus;
  const int cOther = side == 0 ? cMinus : cPlus;
  auto opposite = t.opposite_chambers(cEps);
  rep.oppositeCount = opposite.size();

  std::unordered_set<int> oppSet(opposite.begin(), opposite.end());
  std::unordered_set<int> seen;
  rep.simplyTransitive = true;
  for (auto& u : U) {
    auto perm = zoo.geometry->point_permutation(u);
    if (zoo.geometry->chamber_image(perm, cEps) != cEps) {
      rep.simplyTransitive = false;
      rep.detail = "group element moves its own chamber c_eps";
      return rep;
    }
    int img = zoo.geometry->chamber_image(perm, cOther);
    if (!oppSet.count(img)) {
      rep.simplyTransitive = false;
      rep.detail = "orbit leaves the opposite set";
      return rep;
    }
    if (!seen.insert(img).second) {
      rep.simplyTransitive = false;
      rep.detail = "action is not free on the opposite set";
      return rep;
    }
  }
  if (seen.size() != oppSet.size()) {
    rep.simplyTransitive = false;
    rep.detail = "action is not transitive on the opposite set";
  }
  return rep;
}

}  // namespace twinbld
