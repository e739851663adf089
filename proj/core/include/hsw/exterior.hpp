#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "hsw/scalar.hpp"

namespace hsw {

struct BaseMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

long binomial(int n, int k);

// Strictly increasing k-subsets of {0..n-1}, lexicographic.
class ExteriorIndex {
public:
  ExteriorIndex(int n, int k);
  int n() const { return n_; }
  int k() const { return k_; }
  int size() const { return static_cast<int>(subsets_.size()); }
  const std::vector<int>& subset(int i) const { return subsets_[i]; }
  uint32_t mask(int i) const { return masks_[i]; }
  // position of a sorted subset given as a bitmask, or -1
  int index_of(uint32_t mask) const;

private:
  int n_, k_;
  std::vector<std::vector<int>> subsets_;
  std::vector<uint32_t> masks_;
  std::map<uint32_t, int> pos_;
};

// Sign of the permutation sorting idx, 0 if an index repeats.
int sort_sign(std::vector<int> idx);

// Sign of e_A ∧ e_B relative to e_{A∪B}, 0 if A and B meet.
int merge_sign(uint32_t a, uint32_t b);

inline int popcount(uint32_t m) { return __builtin_popcount(m); }

// Element of the full exterior algebra on n generators.
class ExteriorElement {
public:
  explicit ExteriorElement(int n) : n_(n) {}
  static ExteriorElement generator(int n, int i);
  // e_{i1} ∧ ... ∧ e_{ik} for an arbitrary index list
  static ExteriorElement monomial(int n, const std::vector<int>& idx, const Scalar& c = 1);

  int n() const { return n_; }
  const std::map<uint32_t, Scalar>& terms() const { return terms_; }
  Scalar coeff(uint32_t mask) const;
  void add(uint32_t mask, const Scalar& c);
  bool is_zero() const { return terms_.empty(); }
  // homogeneous degree, -1 for zero or mixed
  int grade() const;

  ExteriorElement& operator+=(const ExteriorElement& o);
  ExteriorElement& operator-=(const ExteriorElement& o);
  ExteriorElement& operator*=(const Scalar& s);
  friend ExteriorElement operator+(ExteriorElement a, const ExteriorElement& b) { return a += b; }
  friend ExteriorElement operator-(ExteriorElement a, const ExteriorElement& b) { return a -= b; }
  friend ExteriorElement operator*(const Scalar& s, ExteriorElement a) { return a *= s; }
  friend bool operator==(const ExteriorElement& a, const ExteriorElement& b) { return a.n_ == b.n_ && a.terms_ == b.terms_; }

private:
  int n_;
  std::map<uint32_t, Scalar> terms_;
};

ExteriorElement wedge(const ExteriorElement& a, const ExteriorElement& b);

}  // namespace hsw
