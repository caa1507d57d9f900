// The certificate verifier recomputes every order test and the coverage set
// from scratch; it deliberately shares no state with generation.

#include <algorithm>
#include <map>
#include <set>

#include "twinbld/affine.hpp"

namespace twinbld {

namespace {

int order_vs_simple(CoxPtr cox, int s, const Root& r) {
  Root alphaS = Root::simple(cox, s);
  if (r == alphaS || r == alphaS.negated()) return 1;
  return reflection_product_order(alphaS, r);
}

}  // namespace

CertVerifyResult verify_certificate(const WcCertificate& c) {
  CertVerifyResult res;
  auto problem = [&](const std::string& p) { res.problems.push_back(p); };

  CoxPtr cox;
  try {
    cox = CoxeterMatrix::named(c.type);
  } catch (const std::exception&) {
    problem("unknown type tag: " + c.type);
    res.accepted = false;
    return res;
  }
  if (cox->is_spherical(GenSet::full(cox->rank()))) problem("type is not affine");
  if (c.gen < 0 || c.gen >= cox->rank()) problem("generator out of range");
  if (c.depth < 1) problem("depth out of range");
  if (!c.failures.empty()) problem("certificate records generation failures");
  if (!res.problems.empty()) {
    res.accepted = false;
    return res;
  }
  const int s = c.gen;

  // coverage: every infinite-order positive root within depth needs exactly
  // one entry, and no entry may cover a finite-order root
  std::map<std::vector<i64>, int> expected;  // root -> entry count
  for (const auto& rw : enumerate_positive_roots(cox, c.depth))
    if (order_vs_simple(cox, s, rw.root) == kInfiniteOrder)
      expected.emplace(rw.root.coords(), 0);
  for (const auto& e : c.entries) {
    auto it = expected.find(e.gamma.coords());
    if (it == expected.end()) {
      problem("entry for a root that needs no certificate");
      continue;
    }
    ++it->second;
  }
  for (auto& [coords, count] : expected) {
    if (count == 0) problem("uncovered infinite-order root");
    if (count > 1) problem("root covered twice");
  }

  for (size_t idx = 0; idx < c.entries.size(); ++idx) {
    const auto& e = c.entries[idx];
    const std::string tag = "entry " + std::to_string(idx) + ": ";
    const int m = e.fan.gonality();
    if (m < 3) {
      problem(tag + "fan gonality below 3");
      continue;
    }
    if (e.ell <= 1 || e.ell >= m) problem(tag + "ell is not interior");
    if (e.ell >= 1 && e.ell <= m && !(e.fan.fan[e.ell - 1] == e.gamma))
      problem(tag + "gamma is not fan[ell]");
    if (order_vs_simple(cox, s, e.gamma) != kInfiniteOrder)
      problem(tag + "gamma has finite order with s");

    std::set<std::vector<i64>> distinct;
    for (const auto& r : e.fan.fan) {
      if (!r.is_positive()) problem(tag + "fan root is not positive");
      distinct.insert(r.coords());
    }
    if (distinct.size() != e.fan.fan.size()) problem(tag + "fan repeats a root");

    // consecutive reflections generate rotations of exact order m
    for (int i = 0; i + 1 < m; ++i)
      if (reflection_product_order(e.fan.fan[i], e.fan.fan[i + 1]) != m)
        problem(tag + "consecutive fan roots do not have product order m");

    // concurrency: every fan reflection lies in the dihedral group spanned
    // by the first two
    if (m >= 2) {
      WeylElement r1 = e.fan.fan[0].reflection();
      WeylElement r2 = e.fan.fan[1].reflection();
      std::vector<WeylElement> dih{WeylElement::identity(cox)};
      std::vector<std::string> keys{dih[0].key()};
      for (size_t i = 0; i < dih.size() && dih.size() <= 2u * m; ++i)
        for (const WeylElement* g : {&r1, &r2}) {
          WeylElement nx = dih[i] * *g;
          bool fresh = true;
          for (auto& k : keys)
            if (k == nx.key()) fresh = false;
          if (fresh) {
            keys.push_back(nx.key());
            dih.push_back(nx);
          }
        }
      if (dih.size() != 2u * m)
        problem(tag + "fan walls do not span a dihedral group of order 2m");
      else
        for (const auto& r : e.fan.fan) {
          std::string k = r.reflection().key();
          bool found = false;
          for (auto& dk : keys)
            if (dk == k) found = true;
          if (!found) problem(tag + "fan root wall misses the vertex");
        }
    }

    // the single-reduction-step discipline: every companion root is a base
    // case, finite order against s, no entry depends on another entry
    for (int i = 1; i <= m; ++i)
      if (i != e.ell &&
          order_vs_simple(cox, s, e.fan.fan[i - 1]) == kInfiniteOrder)
        problem(tag + "fan companion has infinite order with s");
  }

  res.accepted = res.problems.empty();
  return res;
}

}  // namespace twinbld
