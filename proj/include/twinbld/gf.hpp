#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "twinbld/util.hpp"

namespace twinbld {

/// Dense square matrix over a prime field F_q, q in {2,3}.
class GfMatrix {
 public:
  GfMatrix() : q_(2), n_(0) {}
  GfMatrix(int q, int n) : q_(q), n_(n), a_(static_cast<size_t>(n) * n, 0) {
    if (q != 2 && q != 3) throw domain_error("only F2 and F3 supported");
  }
  static GfMatrix identity(int q, int n) {
    GfMatrix m(q, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int q() const { return q_; }
  int size() const { return n_; }
  std::uint8_t& operator()(int i, int j) {
    return a_[static_cast<size_t>(i) * n_ + j];
  }
  std::uint8_t operator()(int i, int j) const {
    return a_[static_cast<size_t>(i) * n_ + j];
  }
  bool operator==(const GfMatrix&) const = default;

  GfMatrix mul(const GfMatrix& o) const {
    GfMatrix r(q_, n_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) {
        int v = (*this)(i, k);
        if (!v) continue;
        for (int j = 0; j < n_; ++j)
          r(i, j) = static_cast<std::uint8_t>((r(i, j) + v * o(k, j)) % q_);
      }
    return r;
  }

  std::vector<std::uint8_t> apply(const std::vector<std::uint8_t>& v) const {
    std::vector<std::uint8_t> r(n_, 0);
    for (int i = 0; i < n_; ++i) {
      int acc = 0;
      for (int j = 0; j < n_; ++j) acc += (*this)(i, j) * v[j];
      r[i] = static_cast<std::uint8_t>(acc % q_);
    }
    return r;
  }

  GfMatrix inverse() const;
  GfMatrix transpose() const {
    GfMatrix r(q_, n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  bool is_identity() const {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  std::string key() const {
    return std::string(reinterpret_cast<const char*>(a_.data()), a_.size());
  }

 private:
  int q_, n_;
  std::vector<std::uint8_t> a_;
};

inline GfMatrix GfMatrix::inverse() const {
  const int inv1[] = {0, 1};
  const int inv2[] = {0, 1, 2};  // over F3: 2*2=4=1
  GfMatrix a = *this, r = identity(q_, n_);
  for (int col = 0; col < n_; ++col) {
    int piv = -1;
    for (int i = col; i < n_; ++i)
      if (a(i, col)) {
        piv = i;
        break;
      }
    if (piv < 0) throw structural_error("singular matrix");
    if (piv != col)
      for (int j = 0; j < n_; ++j) {
        std::swap(a(piv, j), a(col, j));
        std::swap(r(piv, j), r(col, j));
      }
    int f = q_ == 2 ? inv1[a(col, col)] : inv2[a(col, col)];
    for (int j = 0; j < n_; ++j) {
      a(col, j) = static_cast<std::uint8_t>(a(col, j) * f % q_);
      r(col, j) = static_cast<std::uint8_t>(r(col, j) * f % q_);
    }
    for (int i = 0; i < n_; ++i) {
      if (i == col || !a(i, col)) continue;
      int g = a(i, col);
      for (int j = 0; j < n_; ++j) {
        a(i, j) = static_cast<std::uint8_t>((a(i, j) + (q_ - g) * a(col, j)) % q_);
        r(i, j) = static_cast<std::uint8_t>((r(i, j) + (q_ - g) * r(col, j)) % q_);
      }
    }
  }
  return r;
}

}  // namespace twinbld
