#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "twinbld/util.hpp"

namespace twinbld {

inline constexpr int kInfiniteOrder = 0;  // m_st = infinity sentinel

class CoxeterMatrix;
using CoxPtr = std::shared_ptr<const CoxeterMatrix>;

/// A Coxeter matrix together with a fixed crystallographic realization.
///
/// Off-diagonal orders are restricted to {2,3,4,6,inf}. Each edge carries the
/// integer pairings <a_s, a_t^v>: 3 -> (-1,-1), 4 -> (-1,-2), 6 -> (-1,-3),
/// inf -> (-2,-2), with the -1 on the lower generator index. The symmetrized
/// form B makes reflections and coroot pairings exact integer computations.
class CoxeterMatrix {
 public:
  /// Named types: A2, A3, C2, C3, G2, ~A2, ~C2, ~G2 (also A1, B2=C2, B3=C3).
  static CoxPtr named(const std::string& name);
  /// rank, then the strict upper triangle of m_st row by row ("inf" allowed).
  static CoxPtr parse(std::istream& in);
  static CoxPtr from_orders(int rank, const std::vector<int>& upperTriangle,
                            std::string name = "");

  int rank() const { return rank_; }
  /// m_st; kInfiniteOrder encodes infinity.
  int order(int s, int t) const { return m_[idx(s, t)]; }
  const std::string& label(int s) const { return labels_[s]; }
  const std::string& name() const { return name_; }

  i64 pairing(int s, int t) const { return pairing_[idx(s, t)]; }
  /// Symmetric bilinear form on root coordinate vectors.
  i64 bilinear(std::span<const i64> a, std::span<const i64> b) const;
  /// <v, alpha^v> for a root alpha (exact; throws if the division is inexact).
  i64 copairing(std::span<const i64> v, std::span<const i64> alpha) const;

  /// True iff <J> is finite. Decided by positive definiteness of B|_J with a
  /// bounded-enumeration cross-check.
  bool is_spherical(GenSet J) const;

  bool operator==(const CoxeterMatrix& o) const {
    return rank_ == o.rank_ && m_ == o.m_;
  }

 private:
  size_t idx(int s, int t) const {
    return static_cast<size_t>(s) * rank_ + t;
  }
  int rank_ = 0;
  std::string name_;
  std::vector<int> m_;
  std::vector<i64> pairing_;
  std::vector<i64> symmetrizer_;  // d_s with d_t * pairing(s,t) symmetric
  std::vector<std::string> labels_;
};

/// An element of W in the crystallographic reflection representation.
/// Immutable; the ShortLex reduced word is a race-free idempotent cache.
class WeylElement {
 public:
  static WeylElement identity(CoxPtr cox);
  static WeylElement generator(CoxPtr cox, int s);
  static WeylElement from_word(CoxPtr cox, std::span<const int> word);

  const CoxPtr& context() const { return cox_; }
  const IntMatrix& matrix() const { return mat_; }
  const IntMatrix& inverse_matrix() const { return inv_; }

  WeylElement operator*(const WeylElement& o) const;
  WeylElement inverse() const;
  bool operator==(const WeylElement& o) const { return mat_ == o.mat_; }
  bool is_identity() const { return mat_.is_identity(); }

  bool descends_left(int s) const;   // l(sw) < l(w)
  bool descends_right(int s) const;  // l(ws) < l(w)

  int length() const;
  /// ShortLex-minimal reduced word via repeated minimal-left-descent stripping.
  std::vector<int> word() const;

  std::vector<i64> act(std::span<const i64> coords) const {
    return mat_.apply(coords);
  }
  std::vector<i64> act_inverse(std::span<const i64> coords) const {
    return inv_.apply(coords);
  }

  /// Smallest k <= cap with w^k = 1, else 0.
  int order(int cap = 64) const;

  std::string key() const { return mat_.key(); }

 private:
  friend class Root;
  WeylElement(CoxPtr cox, IntMatrix m, IntMatrix mi);
  CoxPtr cox_;
  IntMatrix mat_, inv_;
  mutable std::shared_ptr<const std::vector<int>> wordCache_;
};

/// A root in simple-root coordinates; sign coherence enforced at construction.
class Root {
 public:
  Root(CoxPtr cox, std::vector<i64> coords);
  static Root simple(CoxPtr cox, int s);

  const CoxPtr& context() const { return cox_; }
  const std::vector<i64>& coords() const { return coords_; }
  bool is_positive() const { return positive_; }
  Root negated() const;
  /// r_mirror(this).
  Root reflected_by(const Root& mirror) const;
  /// The reflection r_alpha as a group element.
  WeylElement reflection() const;
  /// Image under w, renormalized into a Root (sign coherence re-checked).
  Root mapped_by(const WeylElement& w) const;

  bool operator==(const Root& o) const { return coords_ == o.coords_; }
  std::string key() const;

 private:
  CoxPtr cox_;
  std::vector<i64> coords_;
  bool positive_;
};

enum class ExchangeOutcome { LengthDrop2, Equal };

WeylElement multiply(const WeylElement& a, const WeylElement& b);
int length(const WeylElement& w);

/// r_J for spherical J; domain_error otherwise.
WeylElement longest_element(CoxPtr cox, GenSet J);

/// Requires l(sw) = l(w)-1 = l(wt). Returns LengthDrop2 iff l(swt) = l(w)-2,
/// else verifies swt = w and returns Equal.
ExchangeOutcome check_exchange_variant(const WeylElement& w, int s, int t);

/// o(r_a r_b) from the pairing product {0->2, 1->3, 2->4, 3->6, >=4->inf}.
/// Returns kInfiniteOrder for infinity. Requires a != +-b.
int reflection_product_order(const Root& a, const Root& b);

/// Full enumeration of a finite W; used for root half-sets and as test oracle.
class FiniteWeylGroup {
 public:
  static FiniteWeylGroup enumerate(CoxPtr cox, size_t cap = 200000);

  const CoxPtr& context() const { return cox_; }
  size_t size() const { return elements_.size(); }
  const WeylElement& element(size_t i) const { return elements_[i]; }
  const std::vector<WeylElement>& elements() const { return elements_; }
  std::optional<size_t> index_of(const WeylElement& w) const;

  /// All roots {w(alpha_s)}, deduplicated, positives first, each sorted by
  /// coordinates.
  std::vector<Root> all_roots() const;
  /// Chamber half-set of a root: membership flag per element id
  /// (u in alpha iff u^-1(alpha) is positive).
  std::vector<char> half_set(const Root& a) const;

 private:
  CoxPtr cox_;
  std::vector<WeylElement> elements_;
  std::unordered_map<std::string, size_t> index_;
};

/// {a,b} prenilpotent? (chamber half-set test; finite W only).
bool is_prenilpotent(const FiniteWeylGroup& W, const Root& a, const Root& b);

/// Closed root interval [a,b] per the half-set definition. Requires a != b
/// prenilpotent (domain_error) and finite W (unsupported_error upstream).
std::vector<Root> root_interval(const FiniteWeylGroup& W, const Root& a,
                                const Root& b);

}  // namespace twinbld
