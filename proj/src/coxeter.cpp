#include "twinbld/coxeter.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <istream>
#include <numeric>
#include <sstream>

namespace twinbld {

namespace {

bool all_nonneg(std::span<const i64> v) {
  return std::all_of(v.begin(), v.end(), [](i64 x) { return x >= 0; });
}
bool all_nonpos(std::span<const i64> v) {
  return std::all_of(v.begin(), v.end(), [](i64 x) { return x <= 0; });
}
bool is_zero(std::span<const i64> v) {
  return std::all_of(v.begin(), v.end(), [](i64 x) { return x == 0; });
}

// Determinant of a small symmetric integer matrix, fraction-free Bareiss.
i64 int_determinant(std::vector<std::vector<i64>> a) {
  const int n = static_cast<int>(a.size());
  if (n == 0) return 1;
  i64 sign = 1, prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int p = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) {
          p = i;
          break;
        }
      if (p < 0) return 0;
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) {
        i64 num = checked_add(checked_mul(a[i][j], a[k][k]),
                              -checked_mul(a[i][k], a[k][j]));
        a[i][j] = num / prev;  // divides exactly (Bareiss)
      }
    prev = a[k][k];
  }
  return sign * a[n - 1][n - 1];
}

}  // namespace

CoxPtr CoxeterMatrix::from_orders(int rank, const std::vector<int>& upper,
                                  std::string name) {
  if (rank < 0 || rank > 31) throw domain_error("rank out of range");
  const size_t expect = static_cast<size_t>(rank) * (rank - 1) / 2;
  if (upper.size() != expect)
    throw validation_error("wrong number of Coxeter matrix entries");

  auto cm = std::make_shared<CoxeterMatrix>();
  cm->rank_ = rank;
  cm->name_ = std::move(name);
  cm->m_.assign(static_cast<size_t>(rank) * rank, 1);
  cm->pairing_.assign(static_cast<size_t>(rank) * rank, 0);
  cm->labels_.resize(rank);
  for (int s = 0; s < rank; ++s) {
    cm->labels_[s] = "s" + std::to_string(s + 1);
    cm->pairing_[cm->idx(s, s)] = 2;
  }
  size_t k = 0;
  for (int s = 0; s < rank; ++s)
    for (int t = s + 1; t < rank; ++t, ++k) {
      int m = upper[k];
      if (m != kInfiniteOrder && m != 2 && m != 3 && m != 4 && m != 6)
        throw validation_error("off-diagonal order must be 2,3,4,6 or inf");
      cm->m_[cm->idx(s, t)] = cm->m_[cm->idx(t, s)] = m;
      i64 lo = -1, hi = -1;
      switch (m) {
        case 2: lo = hi = 0; break;
        case 3: lo = hi = -1; break;
        case 4: lo = -1; hi = -2; break;
        case 6: lo = -1; hi = -3; break;
        case kInfiniteOrder: lo = hi = -2; break;
      }
      cm->pairing_[cm->idx(s, t)] = lo;
      cm->pairing_[cm->idx(t, s)] = hi;
    }

  // Symmetrizer: d_t * pairing(s,t) = d_s * pairing(t,s). Solved by BFS over
  // the diagram; a contradictory cycle is rejected.
  std::vector<i64> d(rank, 0);
  for (int root = 0; root < rank; ++root) {
    if (d[root] != 0) continue;
    d[root] = 1;
    std::deque<int> q{root};
    while (!q.empty()) {
      int s = q.front();
      q.pop_front();
      for (int t = 0; t < rank; ++t) {
        i64 pst = cm->pairing_[cm->idx(s, t)];
        i64 pts = cm->pairing_[cm->idx(t, s)];
        if (s == t || pst == 0) continue;
        // want d_t * pst = d_s * pts  =>  d_t = d_s * pts / pst
        i64 num = checked_mul(d[s], pts);
        if (num % pst != 0) {
          // scale the whole component
          i64 f = pst / std::gcd(num, pst);
          if (f < 0) f = -f;
          for (int u = 0; u < rank; ++u) d[u] = checked_mul(d[u], f);
          num = checked_mul(d[s], pts);
        }
        i64 want = num / pst;
        if (d[t] == 0) {
          d[t] = want;
          q.push_back(t);
        } else if (d[t] != want) {
          throw structural_error("pairing matrix is not symmetrizable");
        }
      }
    }
  }
  cm->symmetrizer_ = std::move(d);
  return cm;
}

CoxPtr CoxeterMatrix::named(const std::string& name) {
  auto chain = [&](std::vector<int> ms) {
    // orders on consecutive pairs, 2 elsewhere
    int rank = static_cast<int>(ms.size()) + 1;
    std::vector<int> upper;
    for (int s = 0; s < rank; ++s)
      for (int t = s + 1; t < rank; ++t)
        upper.push_back(t == s + 1 ? ms[s] : 2);
    return from_orders(rank, upper, name);
  };
  if (name == "A1") return from_orders(1, {}, name);
  if (name == "A2") return chain({3});
  if (name == "A3") return chain({3, 3});
  if (name == "C2" || name == "B2") return chain({4});
  if (name == "C3" || name == "B3") return chain({3, 4});
  if (name == "G2") return chain({6});
  if (name == "~A2") return from_orders(3, {3, 3, 3}, name);
  if (name == "~C2") return chain({4, 4});
  if (name == "~G2") return chain({3, 6});
  throw domain_error("unknown Coxeter type name: " + name);
}

CoxPtr CoxeterMatrix::parse(std::istream& in) {
  int rank;
  if (!(in >> rank)) throw validation_error("missing rank");
  std::vector<int> upper;
  std::string tok;
  for (int s = 0; s < rank; ++s)
    for (int t = s + 1; t < rank; ++t) {
      if (!(in >> tok)) throw validation_error("missing Coxeter matrix entry");
      if (tok == "inf" || tok == "Inf" || tok == "INF")
        upper.push_back(kInfiniteOrder);
      else
        upper.push_back(std::stoi(tok));
    }
  return from_orders(rank, upper, "custom");
}

i64 CoxeterMatrix::bilinear(std::span<const i64> a,
                            std::span<const i64> b) const {
  i64 acc = 0;
  for (int s = 0; s < rank_; ++s) {
    if (a[s] == 0) continue;
    for (int t = 0; t < rank_; ++t) {
      if (b[t] == 0) continue;
      // B(alpha_s, alpha_t) = d_t * <alpha_s, alpha_t^v>
      i64 bst = checked_mul(symmetrizer_[t], pairing_[idx(s, t)]);
      acc = checked_add(acc, checked_mul(checked_mul(a[s], b[t]), bst));
    }
  }
  return acc;
}

i64 CoxeterMatrix::copairing(std::span<const i64> v,
                             std::span<const i64> alpha) const {
  i64 num = checked_mul(2, bilinear(v, alpha));
  i64 den = bilinear(alpha, alpha);
  if (den == 0 || num % den != 0)
    throw structural_error("coroot pairing is not integral");
  return num / den;
}

bool CoxeterMatrix::is_spherical(GenSet J) const {
  const auto gens = J.members();
  const int k = static_cast<int>(gens.size());
  for (int g : gens)
    if (g < 0 || g >= rank_) throw domain_error("generator out of range");

  // Positive definiteness of B restricted to J (Sylvester, exact integers).
  bool posdef = true;
  for (int lead = 1; lead <= k && posdef; ++lead) {
    std::vector<std::vector<i64>> sub(lead, std::vector<i64>(lead));
    for (int i = 0; i < lead; ++i)
      for (int j = 0; j < lead; ++j)
        sub[i][j] =
            checked_mul(symmetrizer_[gens[j]], pairing_[idx(gens[i], gens[j])]);
    if (int_determinant(std::move(sub)) <= 0) posdef = false;
  }

  // Cross-check by bounded enumeration whenever the verdict is "finite":
  // the closure must then actually complete.
  if (posdef) {
    auto self = std::make_shared<CoxeterMatrix>(*this);
    std::vector<WeylElement> els{WeylElement::identity(self)};
    std::unordered_map<std::string, char> seen{{els[0].key(), 1}};
    size_t cap = 200000;
    for (size_t i = 0; i < els.size(); ++i) {
      for (int g : gens) {
        WeylElement next = els[i] * WeylElement::generator(self, g);
        if (seen.emplace(next.key(), 1).second) {
          els.push_back(std::move(next));
          if (els.size() > cap)
            throw structural_error(
                "sphericity cross-check failed: enumeration exceeded cap");
        }
      }
    }
  }
  return posdef;
}

// ---------------------------------------------------------------------------

WeylElement::WeylElement(CoxPtr cox, IntMatrix m, IntMatrix mi)
    : cox_(std::move(cox)), mat_(std::move(m)), inv_(std::move(mi)) {}

WeylElement WeylElement::identity(CoxPtr cox) {
  int n = cox->rank();
  return WeylElement(std::move(cox), IntMatrix::identity(n),
                     IntMatrix::identity(n));
}

WeylElement WeylElement::generator(CoxPtr cox, int s) {
  int n = cox->rank();
  if (s < 0 || s >= n) throw domain_error("generator index out of range");
  IntMatrix m = IntMatrix::identity(n);
  for (int t = 0; t < n; ++t) m(s, t) -= cox->pairing(t, s);
  return WeylElement(std::move(cox), m, m);  // involution
}

WeylElement WeylElement::from_word(CoxPtr cox, std::span<const int> word) {
  WeylElement w = identity(cox);
  for (int s : word) w = w * generator(cox, s);
  return w;
}

WeylElement WeylElement::operator*(const WeylElement& o) const {
  if (cox_ != o.cox_ && !(*cox_ == *o.cox_))
    throw structural_error("Coxeter context mismatch in product");
  return WeylElement(cox_, mat_.mul(o.mat_), o.inv_.mul(inv_));
}

WeylElement WeylElement::inverse() const {
  return WeylElement(cox_, inv_, mat_);
}

bool WeylElement::descends_left(int s) const {
  // l(sw) < l(w)  iff  w^-1(alpha_s) < 0
  const int n = cox_->rank();
  for (int i = 0; i < n; ++i)
    if (inv_(i, s) > 0) return false;
  return true;
}

bool WeylElement::descends_right(int s) const {
  const int n = cox_->rank();
  for (int i = 0; i < n; ++i)
    if (mat_(i, s) > 0) return false;
  return true;
}

std::vector<int> WeylElement::word() const {
  if (auto cached = std::atomic_load(&wordCache_)) return *cached;
  std::vector<int> out;
  WeylElement cur = *this;
  const int n = cox_->rank();
  size_t guard = 0;
  while (!cur.is_identity()) {
    int s = -1;
    for (int g = 0; g < n; ++g)
      if (cur.descends_left(g)) {
        s = g;
        break;
      }
    if (s < 0) throw structural_error("no left descent on non-identity element");
    out.push_back(s);
    cur = WeylElement::generator(cox_, s) * cur;
    if (++guard > 1000000) throw structural_error("word stripping diverged");
  }
  auto sp = std::make_shared<const std::vector<int>>(out);
  std::atomic_store(&wordCache_, sp);
  return out;
}

int WeylElement::length() const { return static_cast<int>(word().size()); }

int WeylElement::order(int cap) const {
  WeylElement p = *this;
  for (int k = 1; k <= cap; ++k) {
    if (p.is_identity()) return k;
    p = p * *this;
  }
  return 0;
}

// ---------------------------------------------------------------------------

Root::Root(CoxPtr cox, std::vector<i64> coords)
    : cox_(std::move(cox)), coords_(std::move(coords)) {
  if (static_cast<int>(coords_.size()) != cox_->rank())
    throw structural_error("root coordinate size mismatch");
  if (is_zero(coords_)) throw structural_error("zero vector is not a root");
  if (all_nonneg(coords_))
    positive_ = true;
  else if (all_nonpos(coords_))
    positive_ = false;
  else
    throw structural_error("mixed-sign root coordinates");
}

Root Root::simple(CoxPtr cox, int s) {
  std::vector<i64> c(cox->rank(), 0);
  c[s] = 1;
  return Root(std::move(cox), std::move(c));
}

Root Root::negated() const {
  std::vector<i64> c(coords_);
  for (auto& x : c) x = -x;
  return Root(cox_, std::move(c));
}

Root Root::reflected_by(const Root& mirror) const {
  i64 p = cox_->copairing(coords_, mirror.coords_);
  std::vector<i64> c(coords_);
  for (int i = 0; i < cox_->rank(); ++i)
    c[i] = checked_add(c[i], -checked_mul(p, mirror.coords_[i]));
  return Root(cox_, std::move(c));
}

WeylElement Root::reflection() const {
  const int n = cox_->rank();
  IntMatrix m = IntMatrix::identity(n);
  for (int t = 0; t < n; ++t) {
    std::vector<i64> et(n, 0);
    et[t] = 1;
    i64 p = cox_->copairing(et, coords_);
    for (int i = 0; i < n; ++i)
      m(i, t) = checked_add(m(i, t), -checked_mul(p, coords_[i]));
  }
  return WeylElement(cox_, m, m);  // a reflection is its own inverse
}

Root Root::mapped_by(const WeylElement& w) const {
  return Root(cox_, w.act(coords_));
}

std::string Root::key() const {
  return std::string(reinterpret_cast<const char*>(coords_.data()),
                     coords_.size() * sizeof(i64));
}

// ---------------------------------------------------------------------------

WeylElement multiply(const WeylElement& a, const WeylElement& b) {
  return a * b;
}

int length(const WeylElement& w) { return w.length(); }

WeylElement longest_element(CoxPtr cox, GenSet J) {
  if (!cox->is_spherical(J))
    throw domain_error("longest element requires a spherical subset");
  WeylElement w = WeylElement::identity(cox);
  // Greedy ascent: multiply by any J-generator that increases length.
  bool grew = true;
  while (grew) {
    grew = false;
    for (int s : J.members()) {
      if (!w.descends_right(s)) {
        w = w * WeylElement::generator(cox, s);
        grew = true;
      }
    }
  }
  return w;
}

ExchangeOutcome check_exchange_variant(const WeylElement& w, int s, int t) {
  CoxPtr cox = w.context();
  WeylElement sw = WeylElement::generator(cox, s) * w;
  WeylElement wt = w * WeylElement::generator(cox, t);
  const int lw = w.length();
  if (sw.length() != lw - 1 || wt.length() != lw - 1)
    throw domain_error("check_exchange_variant precondition violated");
  WeylElement swt = sw * WeylElement::generator(cox, t);
  if (swt.length() == lw - 2) return ExchangeOutcome::LengthDrop2;
  if (swt == w) return ExchangeOutcome::Equal;
  throw structural_error("length dichotomy violated");  // cannot happen
}

int reflection_product_order(const Root& a, const Root& b) {
  if (a == b || a == b.negated())
    throw domain_error("reflection_product_order requires a != +-b");
  const auto& cox = *a.context();
  i64 c = checked_mul(cox.copairing(a.coords(), b.coords()),
                      cox.copairing(b.coords(), a.coords()));
  if (c < 0) throw structural_error("negative pairing product");
  switch (c) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: return kInfiniteOrder;
  }
}

// ---------------------------------------------------------------------------

FiniteWeylGroup FiniteWeylGroup::enumerate(CoxPtr cox, size_t cap) {
  if (!cox->is_spherical(GenSet::full(cox->rank())))
    throw unsupported_error("group is infinite");
  FiniteWeylGroup g;
  g.cox_ = cox;
  g.elements_.push_back(WeylElement::identity(cox));
  g.index_.emplace(g.elements_[0].key(), 0);
  for (size_t i = 0; i < g.elements_.size(); ++i) {
    for (int s = 0; s < cox->rank(); ++s) {
      WeylElement next = g.elements_[i] * WeylElement::generator(cox, s);
      auto [it, fresh] = g.index_.emplace(next.key(), g.elements_.size());
      if (fresh) {
        g.elements_.push_back(std::move(next));
        if (g.elements_.size() > cap)
          throw structural_error("group enumeration exceeded cap");
      }
    }
  }
  return g;
}

std::optional<size_t> FiniteWeylGroup::index_of(const WeylElement& w) const {
  auto it = index_.find(w.key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<Root> FiniteWeylGroup::all_roots() const {
  std::unordered_map<std::string, Root> seen;
  std::vector<Root> out;
  for (const auto& w : elements_)
    for (int s = 0; s < cox_->rank(); ++s) {
      Root r = Root::simple(cox_, s).mapped_by(w);
      if (seen.emplace(r.key(), r).second) out.push_back(r);
    }
  std::sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (a.is_positive() != b.is_positive()) return a.is_positive();
    return a.coords() < b.coords();
  });
  return out;
}

std::vector<char> FiniteWeylGroup::half_set(const Root& a) const {
  std::vector<char> in(elements_.size(), 0);
  for (size_t i = 0; i < elements_.size(); ++i) {
    auto v = elements_[i].act_inverse(a.coords());
    in[i] = all_nonneg(v) ? 1 : 0;
  }
  return in;
}

bool is_prenilpotent(const FiniteWeylGroup& W, const Root& a, const Root& b) {
  auto ha = W.half_set(a), hb = W.half_set(b);
  bool meet = false, cometa = false;
  for (size_t i = 0; i < ha.size(); ++i) {
    if (ha[i] && hb[i]) meet = true;
    if (!ha[i] && !hb[i]) cometa = true;
  }
  return meet && cometa;
}

std::vector<Root> root_interval(const FiniteWeylGroup& W, const Root& a,
                                const Root& b) {
  if (a == b) throw domain_error("root interval requires distinct roots");
  if (!is_prenilpotent(W, a, b))
    throw domain_error("root interval requires a prenilpotent pair");
  auto ha = W.half_set(a), hb = W.half_set(b);
  std::vector<Root> out;
  for (const Root& g : W.all_roots()) {
    auto hg = W.half_set(g);
    bool ok = true;
    for (size_t i = 0; i < ha.size() && ok; ++i) {
      if (ha[i] && hb[i] && !hg[i]) ok = false;        // a^b subset g
      if (!ha[i] && !hb[i] && hg[i]) ok = false;       // (-a)^(-b) subset -g
    }
    if (ok) out.push_back(g);
  }
  return out;
}

}  // namespace twinbld
