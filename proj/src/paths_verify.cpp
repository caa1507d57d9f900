// Certificate verification is kept apart from the searches that produce the
// paths: everything is recomputed from building primitives, so a pruned or
// buggy search cannot vouch for itself.

#include <algorithm>
#include <sstream>

#include "twinbld/paths.hpp"

namespace twinbld {

namespace {

std::vector<int> fresh_panel_projection(const Building& b, int fromPanel,
                                        int resId) {
  std::vector<int> img;
  for (int x : b.panel_chambers(fromPanel))
    img.push_back(b.project_to_rank2(x, resId));
  std::sort(img.begin(), img.end());
  img.erase(std::unique(img.begin(), img.end()), img.end());
  return img;
}

bool same_members(const Building& b, int panel, const std::vector<int>& set) {
  auto m = b.panel_chambers(panel);
  return std::equal(m.begin(), m.end(), set.begin(), set.end());
}

bool path_well_formed(const Building& b, const CompatiblePath& p,
                      std::string* why) {
  if (p.panels.empty() ||
      p.residues.size() + 1 != p.panels.size()) {
    if (why) *why = "malformed path arrays";
    return false;
  }
  for (int i = 0; i < p.length(); ++i) {
    int X = p.panels[i], Y = p.panels[i + 1], R = p.residues[i];
    GenSet J = b.rank2_type(R);
    if (!J.contains(b.panel_type(X)) || !J.contains(b.panel_type(Y))) {
      if (why) *why = "panel type outside the edge residue type";
      return false;
    }
    int pairIdx = b.rank2_pair(R);
    // both panels inside R
    if (b.rank2_of(b.panel_chambers(X)[0], pairIdx) != R ||
        b.rank2_of(b.panel_chambers(Y)[0], pairIdx) != R) {
      if (why) *why = "panel not inside the edge residue";
      return false;
    }
    // opposite in R: some chamber pair realizes r_J, and types correspond
    if (b.pair_opposite_type(pairIdx, b.panel_type(X)) != b.panel_type(Y)) {
      if (why) *why = "panel types not swapped by r_J";
      return false;
    }
    const int lr = b.pair_longest(pairIdx).length();
    bool opp = false;
    for (int x : b.panel_chambers(X))
      for (int y : b.panel_chambers(Y))
        if (b.gallery_distance(x, y) == lr) opp = true;
    if (!opp) {
      if (why) *why = "consecutive panels not opposite in their residue";
      return false;
    }
  }
  return true;
}

}  // namespace

PathReport verify_path_properties(const Building& b, const CompatiblePath& path) {
  PathReport rep;
  std::string why;
  if (!path_well_formed(b, path, &why)) {
    rep.checks.push_back({"well-formed", false, why});
    return rep;
  }
  rep.checks.push_back({"well-formed", true, ""});

  const int k = path.length();
  const int P0 = path.panels.front(), Pk = path.panels.back();

  // defining equations, recomputed
  bool comp = true;
  for (int i = 1; i <= k; ++i)
    if (!same_members(b, path.panels[i - 1],
                      fresh_panel_projection(b, P0, path.residues[i - 1])))
      comp = false;
  rep.checks.push_back({"compatible", comp, comp ? "" : "proj_R P0 != P_{i-1}"});

  // (a) projection factorization through every intermediate panel
  bool factor = true;
  for (int i = 0; i <= k; ++i) {
    int Pi = path.panels[i];
    for (int x : b.panel_chambers(P0)) {
      int direct = b.project_to_panel(x, Pk);
      int via = b.project_to_panel(b.project_to_panel(x, Pi), Pk);
      if (direct != via) factor = false;
    }
  }
  rep.checks.push_back({"factorization", factor, ""});

  // (b) delta multiplicativity and (c) length additivity
  bool mult = true, add = true;
  try {
    WeylElement whole = panel_distance(b, P0, Pk);
    for (int i = 0; i <= k; ++i) {
      int Pi = path.panels[i];
      WeylElement first = panel_distance(b, P0, Pi);
      WeylElement second = panel_distance(b, Pi, Pk);
      if (!(first * second == whole)) mult = false;
      if (first.length() + second.length() != whole.length()) add = false;
    }
  } catch (const domain_error&) {
    mult = add = false;
  }
  rep.checks.push_back({"delta-multiplicative", mult, ""});
  rep.checks.push_back({"length-additive", add, ""});

  // (d) the reversed path is compatible
  bool rev = true;
  for (int i = 1; i <= k; ++i)
    if (!same_members(b, path.panels[i],
                      fresh_panel_projection(b, Pk, path.residues[i - 1])))
      rev = false;
  rep.checks.push_back({"reversal-compatible", rev, ""});
  return rep;
}

PathReport verify_anchored_path(const TwinBuilding& t, int sideP, int panelP,
                                const CompatiblePath& path) {
  const Building& b = t.half();
  PathReport rep;
  std::string why;
  if (!path_well_formed(b, path, &why)) {
    rep.checks.push_back({"well-formed", false, why});
    return rep;
  }
  rep.checks.push_back({"well-formed", true, ""});

  const int k = path.length();
  const int P0 = path.panels.front();

  rep.checks.push_back({"start-opposite-anchor",
                        cross_opposite_panels(t, sideP, panelP, P0), ""});

  bool comp = true;
  for (int i = 1; i <= k; ++i)
    if (!same_members(b, path.panels[i - 1],
                      fresh_panel_projection(b, P0, path.residues[i - 1])))
      comp = false;
  rep.checks.push_back({"compatible", comp, ""});

  // anchor condition: proj_{R_i} P = P_i (coprojection across signs)
  bool anch = true;
  for (int i = 1; i <= k; ++i) {
    std::vector<int> img;
    for (int x : b.panel_chambers(panelP))
      img.push_back(b.project_to_rank2(x, path.residues[i - 1]));
    std::sort(img.begin(), img.end());
    img.erase(std::unique(img.begin(), img.end()), img.end());
    if (!same_members(b, path.panels[i], img)) anch = false;
  }
  rep.checks.push_back({"anchor-projection", anch, ""});

  // codistance identity: l*(x, proj_{P_i} x) = l(delta(P_0,P_i)) + 1
  bool codist = true;
  for (int i = 0; i <= k; ++i) {
    int Pi = path.panels[i];
    int expected;
    try {
      expected = panel_distance(b, P0, Pi).length() + 1;
    } catch (const domain_error&) {
      codist = false;
      break;
    }
    for (int x : b.panel_chambers(panelP))
      if (t.codist_length(x, t.coproj_panel(x, Pi)) != expected) codist = false;
  }
  rep.checks.push_back({"codistance-identity", codist, ""});

  // factorizations (a): proj_{P0}(x) = proj_{P0}(proj_{P_i}(x)) for x in P,
  // and (b): proj_P(y) = proj_P(proj_{P_i}(y)) for y in P0
  bool fa = true, fb = true;
  for (int i = 0; i <= k; ++i) {
    int Pi = path.panels[i];
    for (int x : b.panel_chambers(panelP)) {
      int direct = t.coproj_panel(x, P0);
      int via = b.project_to_panel(t.coproj_panel(x, Pi), P0);
      if (direct != via) fa = false;
    }
    for (int y : b.panel_chambers(P0)) {
      int direct = t.coproj_panel(y, panelP);
      int via = t.coproj_panel(b.project_to_panel(y, Pi), panelP);
      if (direct != via) fb = false;
    }
  }
  rep.checks.push_back({"anchor-factorization-a", fa, ""});
  rep.checks.push_back({"anchor-factorization-b", fb, ""});
  return rep;
}

bool verify_wall_certificate(const TwinBuilding& t, int side, int c, int s,
                             const WallEdgeCertificate& cert, std::string* why) {
  const Building& b = t.half();
  auto fail = [&](const std::string& m) {
    if (why) *why = m;
    return false;
  };
  const int anchor = t.half_panel(side, c, s);
  if (cert.q1 == cert.q2) return fail("certificate joins a vertex to itself");
  if (!cross_opposite_panels(t, side, anchor, cert.q1) ||
      !cross_opposite_panels(t, side, anchor, cert.q2))
    return fail("endpoint panel not opposite P_s(c)");
  if (cert.path1.panels.empty() || cert.path2.panels.empty())
    return fail("empty path");
  if (cert.path1.panels.front() != cert.q1 ||
      cert.path2.panels.front() != cert.q2)
    return fail("path does not start at its vertex");
  if (cert.path1.panels.back() != cert.target ||
      cert.path2.panels.back() != cert.target)
    return fail("path does not end at the common panel");
  if (cert.path1.length() != cert.path2.length())
    return fail("paths have different lengths");
  if (cert.path1.type_pairs(b) != cert.path2.type_pairs(b))
    return fail("paths have different type sequences");
  for (const auto* p : {&cert.path1, &cert.path2}) {
    PathReport rep = verify_anchored_path(t, side, anchor, *p);
    if (!rep.ok()) {
      for (auto& ck : rep.checks)
        if (!ck.ok) return fail("anchored path check failed: " + ck.property);
    }
  }
  return true;
}

}  // namespace twinbld
