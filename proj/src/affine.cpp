#include "twinbld/affine.hpp"

#include <algorithm>
#include <map>
#include <ostream>

#include <json.hpp>

#include "twinbld/parallel.hpp"

namespace twinbld {

namespace {

Root positive(const Root& r) { return r.is_positive() ? r : r.negated(); }

int order_with_simple(CoxPtr cox, int s, const Root& r) {
  Root alphaS = Root::simple(cox, s);
  if (r == alphaS || r == alphaS.negated()) return 1;
  return reflection_product_order(alphaS, r);
}

}  // namespace

std::vector<RootWitness> enumerate_positive_roots(CoxPtr cox, int depth) {
  if (depth < 1) throw domain_error("root enumeration depth must be >= 1");
  std::vector<RootWitness> out;
  std::map<std::vector<i64>, int> seen;
  for (int s = 0; s < cox->rank(); ++s) {
    Root r = Root::simple(cox, s);
    seen.emplace(r.coords(), 1);
    out.push_back({r, 1, WeylElement::identity(cox), s});
  }
  size_t layerBegin = 0;
  for (int d = 2; d <= depth; ++d) {
    size_t layerEnd = out.size();
    // collect the layer deterministically, sorted by coordinates
    std::map<std::vector<i64>, RootWitness> next;
    for (size_t i = layerBegin; i < layerEnd; ++i) {
      for (int s = 0; s < cox->rank(); ++s) {
        WeylElement ws = WeylElement::generator(cox, s);
        Root img(cox, ws.act(out[i].root.coords()));
        if (!img.is_positive()) continue;
        if (seen.count(img.coords()) || next.count(img.coords())) continue;
        next.emplace(img.coords(),
                     RootWitness{img, d, ws * out[i].u, out[i].t});
      }
    }
    for (auto& [c, w] : next) {
      seen.emplace(c, 1);
      out.push_back(w);
    }
    layerBegin = layerEnd;
  }
  return out;
}

VertexFan build_vertex_fan(CoxPtr cox, int s, const RootWitness& gw) {
  if (order_with_simple(cox, s, gw.root) != kInfiniteOrder)
    throw domain_error("vertex fan is only built for o(s r_gamma) = infinity");

  const std::vector<int> word = gw.u.word();
  if (word.empty())
    throw structural_error("infinite-order root with a length-0 witness");
  const int a = word.back();
  const int b = gw.t;
  if (a == b) throw structural_error("witness gallery repeats its last letter");
  const int m = cox->order(a, b);
  if (m == kInfiniteOrder || m < 3)
    throw structural_error("witness residue has gonality < 3");

  // minimal representative d of the coset (u t) <a,b>
  WeylElement d = gw.u * WeylElement::generator(cox, b);
  for (bool moved = true; moved;) {
    moved = false;
    for (int j : {a, b})
      if (d.descends_right(j)) {
        d = d * WeylElement::generator(cox, j);
        moved = true;
      }
  }

  // pencil roots: d w'(alpha_c) over the dihedral <a,b>, normalized positive
  std::vector<WeylElement> dihedral{WeylElement::identity(cox)};
  {
    std::vector<std::string> keys{dihedral[0].key()};
    for (size_t i = 0; i < dihedral.size(); ++i)
      for (int j : {a, b}) {
        WeylElement nx = dihedral[i] * WeylElement::generator(cox, j);
        bool fresh = true;
        for (auto& k : keys)
          if (k == nx.key()) fresh = false;
        if (fresh) {
          keys.push_back(nx.key());
          dihedral.push_back(nx);
        }
      }
    if (dihedral.size() != 2u * m)
      throw structural_error("dihedral enumeration has the wrong order");
  }
  std::map<std::vector<i64>, Root> pencil;
  for (const auto& w : dihedral)
    for (int c : {a, b}) {
      Root r = positive(Root(cox, (d * w).act(Root::simple(cox, c).coords())));
      pencil.emplace(r.coords(), r);
    }
  if (pencil.size() != static_cast<size_t>(m))
    throw structural_error("pencil has the wrong number of roots");

  // endpoints: the walls of d inside the residue
  Root e1 = positive(Root(cox, d.act(Root::simple(cox, a).coords())));
  Root e2 = positive(Root(cox, d.act(Root::simple(cox, b).coords())));
  if (e2.coords() < e1.coords()) std::swap(e1, e2);

  VertexFan fan;
  fan.fan.push_back(e1);
  // alpha_2 is the unique pencil root besides the endpoints whose reflection
  // product with alpha_1 has order m (angular separation 1); then successive
  // reflection alpha_{i+1} = r_{alpha_i}(alpha_{i-1}) walks the pencil.
  std::optional<Root> second;
  for (auto& [c, r] : pencil) {
    if (r == e1 || r == e2) continue;
    if (reflection_product_order(e1, r) != m) continue;
    if (second && !(*second == r))
      throw structural_error("natural numbering start is ambiguous");
    second = r;
  }
  if (!second) throw structural_error("no successor for the fan start");
  fan.fan.push_back(*second);
  while (static_cast<int>(fan.fan.size()) < m) {
    const Root& prev = fan.fan[fan.fan.size() - 2];
    const Root& cur = fan.fan.back();
    Root nxt = positive(prev.reflected_by(cur));
    if (!pencil.count(nxt.coords()))
      throw structural_error("successive reflection left the pencil");
    fan.fan.push_back(nxt);
  }
  if (!(fan.fan.back() == e2))
    throw structural_error("natural numbering does not end at the far wall");
  return fan;
}

WcCertificate generate_certificate(const std::string& type, int s, int depth,
                                   bool parallel) {
  CoxPtr cox = CoxeterMatrix::named(type);
  if (cox->is_spherical(GenSet::full(cox->rank())))
    throw domain_error("certificates are for affine types");
  if (s < 0 || s >= cox->rank()) throw domain_error("generator out of range");

  WcCertificate cert;
  cert.type = type;
  cert.gen = s;
  cert.depth = depth;

  auto roots = enumerate_positive_roots(cox, depth);
  std::vector<std::optional<CertEntry>> entries(roots.size());
  std::vector<std::optional<CertFailure>> failures(roots.size());
  parallel_for(roots.size(), parallel, [&](size_t i) {
    const auto& rw = roots[i];
    if (order_with_simple(cox, s, rw.root) != kInfiniteOrder) return;
    try {
      VertexFan fan = build_vertex_fan(cox, s, rw);
      int ell = -1;
      for (size_t j = 0; j < fan.fan.size(); ++j)
        if (fan.fan[j] == rw.root) ell = static_cast<int>(j) + 1;
      if (ell < 0) throw structural_error("gamma is not in its own fan");
      if (ell == 1 || ell == fan.gonality())
        throw structural_error("gamma sits on the fan boundary");
      for (int j = 1; j <= fan.gonality(); ++j)
        if (j != ell &&
            order_with_simple(cox, s, fan.fan[j - 1]) == kInfiniteOrder)
          throw structural_error("fan companion has infinite order with s");
      entries[i] = CertEntry{rw.root, std::move(fan), ell};
    } catch (const std::exception& e) {
      failures[i] = CertFailure{rw.root, e.what()};
    }
  });
  for (auto& e : entries)
    if (e) cert.entries.push_back(std::move(*e));
  for (auto& f : failures)
    if (f) cert.failures.push_back(std::move(*f));
  return cert;
}

// --- JSON round-trip --------------------------------------------------------

namespace {

nlohmann::ordered_json root_json(const Root& r) {
  return nlohmann::ordered_json(r.coords());
}

Root root_from_json(CoxPtr cox, const nlohmann::json& j) {
  std::vector<i64> c = j.get<std::vector<i64>>();
  return Root(cox, std::move(c));
}

}  // namespace

void write_certificate_json(const WcCertificate& c, std::ostream& out) {
  nlohmann::ordered_json j;
  j["schema"] = 1;
  j["type"] = c.type;
  j["s"] = c.gen;
  j["depth"] = c.depth;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : c.entries) {
    nlohmann::ordered_json je;
    je["gamma"] = root_json(e.gamma);
    je["vertex"] = {root_json(e.fan.fan.front()), root_json(e.fan.fan.back())};
    je["fan"] = nlohmann::json::array();
    for (const auto& r : e.fan.fan) je["fan"].push_back(root_json(r));
    je["ell"] = e.ell;
    j["entries"].push_back(je);
  }
  j["failures"] = nlohmann::json::array();
  for (const auto& f : c.failures) {
    nlohmann::ordered_json jf;
    jf["gamma"] = root_json(f.gamma);
    jf["reason"] = f.reason;
    j["failures"].push_back(jf);
  }
  out << j.dump(2) << "\n";
}

WcCertificate parse_certificate_json(std::istream& in) {
  nlohmann::json j = nlohmann::json::parse(in);
  WcCertificate c;
  c.type = j.at("type").get<std::string>();
  c.gen = j.at("s").get<int>();
  c.depth = j.at("depth").get<int>();
  CoxPtr cox = CoxeterMatrix::named(c.type);
  for (const auto& je : j.at("entries")) {
    CertEntry e{root_from_json(cox, je.at("gamma")), {}, je.at("ell").get<int>()};
    for (const auto& jr : je.at("fan")) e.fan.fan.push_back(root_from_json(cox, jr));
    c.entries.push_back(std::move(e));
  }
  if (j.contains("failures"))
    for (const auto& jf : j.at("failures"))
      c.failures.push_back(
          {root_from_json(cox, jf.at("gamma")), jf.at("reason").get<std::string>()});
  return c;
}

WcCertificate mutate_certificate(const WcCertificate& c, std::uint64_t seed) {
  if (c.entries.empty()) throw domain_error("nothing to mutate");
  WcCertificate m = c;
  SplitMix64 rng(seed);
  auto& e = m.entries[rng.below(m.entries.size())];
  switch (rng.below(3)) {
    case 0:  // push ell to a fan endpoint
      e.ell = rng.below(2) ? 1 : e.fan.gonality();
      break;
    case 1: {  // move gamma to the fan boundary by swapping fan slots
      std::swap(e.fan.fan[e.ell - 1], e.fan.fan[rng.below(2) ? 0 : e.fan.fan.size() - 1]);
      break;
    }
    default:  // drop the entry: coverage must catch the hole
      m.entries.erase(m.entries.begin() + (&e - m.entries.data()));
      break;
  }
  return m;
}

}  // namespace twinbld
