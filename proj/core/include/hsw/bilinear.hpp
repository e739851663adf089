#pragma once

#include <map>
#include <utility>
#include <vector>

#include "hsw/graded.hpp"

namespace hsw {

// Sparse structure tensor X_k × Y_l → Z_{k+l+shift} on basis pairs.
class Bilinear {
public:
  Bilinear() = default;
  Bilinear(GradedVectorSpace x, GradedVectorSpace y, GradedVectorSpace z, int shift = 0);

  const GradedVectorSpace& left() const { return x_; }
  const GradedVectorSpace& right() const { return y_; }
  const GradedVectorSpace& target() const { return z_; }
  int shift() const { return shift_; }

  // value on basis vectors (k,i), (l,j); nullptr means zero
  const Vec* at(int k, int i, int l, int j) const;
  Vec basis_value(int k, int i, int l, int j) const;
  void set(int k, int i, int l, int j, Vec v);
  void add_to(int k, int i, int l, int j, const Vec& v);

  Vec apply(int k, const Vec& x, int l, const Vec& y) const;
  bool is_zero() const;

  Bilinear& operator+=(const Bilinear& o);
  Bilinear& operator-=(const Bilinear& o);
  Bilinear& operator*=(const Scalar& s);
  friend Bilinear operator+(Bilinear a, const Bilinear& b) { return a += b; }
  friend Bilinear operator-(Bilinear a, const Bilinear& b) { return a -= b; }
  friend Bilinear operator*(const Scalar& s, Bilinear a) { return a *= s; }
  friend bool operator==(const Bilinear& a, const Bilinear& b);

  // visit every stored nonzero entry
  template <class F>
  void for_each(F&& f) const {
    for (const auto& [kl, vals] : data_) {
      int ny = y_.dim(kl.second);
      for (size_t p = 0; p < vals.size(); ++p)
        if (!vals[p].empty()) f(kl.first, static_cast<int>(p) / ny, kl.second, static_cast<int>(p) % ny, vals[p]);
    }
  }

private:
  GradedVectorSpace x_, y_, z_;
  int shift_ = 0;
  std::map<std::pair<int, int>, std::vector<Vec>> data_;
};

// L∘B
Bilinear compose_left(const GradedLinearMap& l, const Bilinear& b);
// B∘(f × g)
Bilinear compose_right(const Bilinear& b, const GradedLinearMap& f, const GradedLinearMap& g);

}  // namespace hsw
