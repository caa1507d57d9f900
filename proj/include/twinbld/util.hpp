#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace twinbld {

using i64 = std::int64_t;

// Error categories. The CLI maps these onto distinct exit codes.
struct structural_error : std::logic_error {
  using std::logic_error::logic_error;
};
struct domain_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct unsupported_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Coordinate arithmetic never wraps silently: certificate depth bounds keep
// values small, so an overflow means a bug or a misuse and must abort loudly.
inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r))
    throw structural_error("integer overflow in add");
  return r;
}

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw structural_error("integer overflow in mul");
  return r;
}

/// Small dense square matrix over Z with checked arithmetic.
class IntMatrix {
 public:
  IntMatrix() : n_(0) {}
  explicit IntMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0) {}

  static IntMatrix identity(int n) {
    IntMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int size() const { return n_; }
  i64& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  i64 operator()(int i, int j) const {
    return a_[static_cast<size_t>(i) * n_ + j];
  }

  bool operator==(const IntMatrix& o) const = default;

  IntMatrix mul(const IntMatrix& o) const {
    if (n_ != o.n_) throw structural_error("matrix size mismatch");
    IntMatrix r(n_);
    for (int i = 0; i < n_; ++i)
      for (int k = 0; k < n_; ++k) {
        i64 v = (*this)(i, k);
        if (v == 0) continue;
        for (int j = 0; j < n_; ++j)
          r(i, j) = checked_add(r(i, j), checked_mul(v, o(k, j)));
      }
    return r;
  }

  std::vector<i64> apply(std::span<const i64> v) const {
    if (static_cast<int>(v.size()) != n_)
      throw structural_error("matrix/vector size mismatch");
    std::vector<i64> r(n_, 0);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        r[i] = checked_add(r[i], checked_mul((*this)(i, j), v[j]));
    return r;
  }

  bool is_identity() const {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
    return true;
  }

  // Stable byte key for hashing.
  std::string key() const {
    return std::string(reinterpret_cast<const char*>(a_.data()),
                       a_.size() * sizeof(i64));
  }

 private:
  int n_;
  std::vector<i64> a_;
};

/// Subset of generator indices (rank <= 31), value semantics.
class GenSet {
 public:
  GenSet() : bits_(0) {}
  explicit GenSet(std::uint32_t bits) : bits_(bits) {}
  static GenSet single(int s) { return GenSet(1u << s); }
  static GenSet full(int rank) { return GenSet((1u << rank) - 1u); }
  static GenSet pair(int s, int t) { return GenSet((1u << s) | (1u << t)); }

  bool contains(int s) const { return (bits_ >> s) & 1u; }
  GenSet with(int s) const { return GenSet(bits_ | (1u << s)); }
  GenSet without(int s) const { return GenSet(bits_ & ~(1u << s)); }
  int count() const { return __builtin_popcount(bits_); }
  bool empty() const { return bits_ == 0; }
  std::uint32_t bits() const { return bits_; }
  bool operator==(const GenSet&) const = default;
  bool subset_of(GenSet o) const { return (bits_ & ~o.bits_) == 0; }

  std::vector<int> members() const {
    std::vector<int> r;
    for (std::uint32_t b = bits_; b; b &= b - 1)
      r.push_back(__builtin_ctz(b));
    return r;
  }

 private:
  std::uint32_t bits_;
};

// Deterministic seeded stream; sampling checks must reproduce bit-for-bit
// across runs and across the serial/parallel kernels.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return next() % n; }
};

struct UnionFind {
  std::vector<int> parent;

  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  // Keeps the smaller id as the representative, so component labels are
  // deterministic.
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
  int components() {
    int c = 0;
    for (size_t i = 0; i < parent.size(); ++i)
      if (find(static_cast<int>(i)) == static_cast<int>(i)) ++c;
    return c;
  }
};

}  // namespace twinbld
