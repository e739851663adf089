#include "hsw/exterior.hpp"

#include <algorithm>

namespace hsw {

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

ExteriorIndex::ExteriorIndex(int n, int k) : n_(n), k_(k) {
  if (n < 0 || n > 31) throw std::invalid_argument("exterior base dimension out of range");
  if (k < 0 || k > n) return;
  std::vector<int> cur(k);
  for (int i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    uint32_t m = 0;
    for (int x : cur) m |= 1u << x;
    pos_[m] = static_cast<int>(subsets_.size());
    subsets_.push_back(cur);
    masks_.push_back(m);
    int i = k - 1;
    while (i >= 0 && cur[i] == n - k + i) --i;
    if (i < 0) break;
    ++cur[i];
    for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
}

int ExteriorIndex::index_of(uint32_t mask) const {
  auto it = pos_.find(mask);
  return it == pos_.end() ? -1 : it->second;
}

int sort_sign(std::vector<int> idx) {
  int s = 1;
  // insertion sort counting transpositions; lists are short
  for (size_t i = 1; i < idx.size(); ++i)
    for (size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      s = -s;
    }
  for (size_t i = 1; i < idx.size(); ++i)
    if (idx[i - 1] == idx[i]) return 0;
  return s;
}

int merge_sign(uint32_t a, uint32_t b) {
  if (a & b) return 0;
  // count pairs (i in a, j in b) with i > j
  int inv = 0;
  for (uint32_t bb = b; bb; bb &= bb - 1) {
    int j = __builtin_ctz(bb);
    inv += popcount(a & ~((2u << j) - 1));
  }
  return (inv % 2) ? -1 : 1;
}

ExteriorElement ExteriorElement::generator(int n, int i) {
  if (i < 0 || i >= n) throw std::out_of_range("generator index");
  ExteriorElement e(n);
  e.add(1u << i, 1);
  return e;
}

ExteriorElement ExteriorElement::monomial(int n, const std::vector<int>& idx, const Scalar& c) {
  ExteriorElement e(n);
  int s = sort_sign(idx);
  if (s == 0) return e;
  uint32_t m = 0;
  for (int i : idx) {
    if (i < 0 || i >= n) throw std::out_of_range("monomial index");
    m |= 1u << i;
  }
  e.add(m, s > 0 ? c : -c);
  return e;
}

Scalar ExteriorElement::coeff(uint32_t mask) const {
  auto it = terms_.find(mask);
  return it == terms_.end() ? Scalar(0) : it->second;
}

void ExteriorElement::add(uint32_t mask, const Scalar& c) {
  if (c.is_zero()) return;
  auto& x = terms_[mask];
  x += c;
  if (x.is_zero()) terms_.erase(mask);
}

int ExteriorElement::grade() const {
  int g = -1;
  for (const auto& [m, c] : terms_) {
    int k = popcount(m);
    if (g >= 0 && g != k) return -1;
    g = k;
  }
  return g;
}

ExteriorElement& ExteriorElement::operator+=(const ExteriorElement& o) {
  if (n_ != o.n_) throw BaseMismatch("exterior sum over different bases");
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

ExteriorElement& ExteriorElement::operator-=(const ExteriorElement& o) {
  if (n_ != o.n_) throw BaseMismatch("exterior difference over different bases");
  for (const auto& [m, c] : o.terms_) add(m, -c);
  return *this;
}

ExteriorElement& ExteriorElement::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

ExteriorElement wedge(const ExteriorElement& a, const ExteriorElement& b) {
  if (a.n() != b.n()) throw BaseMismatch("wedge of elements over bases " + std::to_string(a.n()) + " and " + std::to_string(b.n()));
  ExteriorElement r(a.n());
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      int s = merge_sign(ma, mb);
      if (s == 0) continue;
      Scalar c = ca * cb;
      r.add(ma | mb, s > 0 ? c : -c);
    }
  return r;
}

}  // namespace hsw
