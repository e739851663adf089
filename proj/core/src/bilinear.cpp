#include "hsw/bilinear.hpp"

namespace hsw {

Bilinear::Bilinear(GradedVectorSpace x, GradedVectorSpace y, GradedVectorSpace z, int shift)
    : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)), shift_(shift) {}

const Vec* Bilinear::at(int k, int i, int l, int j) const {
  auto it = data_.find({k, l});
  if (it == data_.end()) return nullptr;
  const Vec& v = it->second[static_cast<size_t>(i) * y_.dim(l) + j];
  return v.empty() ? nullptr : &v;
}

Vec Bilinear::basis_value(int k, int i, int l, int j) const {
  const Vec* v = at(k, i, l, j);
  return v ? *v : Vec(z_.dim(k + l + shift_));
}

void Bilinear::set(int k, int i, int l, int j, Vec v) {
  int nz = z_.dim(k + l + shift_);
  if (i < 0 || i >= x_.dim(k) || j < 0 || j >= y_.dim(l)) throw ShapeMismatch("bilinear: basis index out of range");
  if (static_cast<int>(v.size()) != nz) throw ShapeMismatch("bilinear: value length at degrees (" + std::to_string(k) + "," + std::to_string(l) + ")");
  auto& slot = data_[{k, l}];
  if (slot.empty()) slot.resize(static_cast<size_t>(x_.dim(k)) * y_.dim(l));
  if (vec_is_zero(v)) v.clear();
  slot[static_cast<size_t>(i) * y_.dim(l) + j] = std::move(v);
}

void Bilinear::add_to(int k, int i, int l, int j, const Vec& v) {
  if (vec_is_zero(v)) return;
  set(k, i, l, j, vec_add(basis_value(k, i, l, j), v));
}

Vec Bilinear::apply(int k, const Vec& x, int l, const Vec& y) const {
  if (static_cast<int>(x.size()) != x_.dim(k) || static_cast<int>(y.size()) != y_.dim(l))
    throw ShapeMismatch("bilinear: argument length");
  Vec out(z_.dim(k + l + shift_));
  auto it = data_.find({k, l});
  if (it == data_.end()) return out;
  int ny = y_.dim(l);
  for (int i = 0; i < x_.dim(k); ++i) {
    if (x[i].is_zero()) continue;
    for (int j = 0; j < ny; ++j) {
      if (y[j].is_zero()) continue;
      const Vec& v = it->second[static_cast<size_t>(i) * ny + j];
      if (v.empty()) continue;
      Scalar c = x[i] * y[j];
      for (size_t r = 0; r < out.size(); ++r) out[r].add_mul(c, v[r]);
    }
  }
  return out;
}

bool Bilinear::is_zero() const {
  for (const auto& [kl, vals] : data_)
    for (const auto& v : vals)
      if (!v.empty()) return false;
  return true;
}

Bilinear& Bilinear::operator+=(const Bilinear& o) {
  if (!(x_ == o.x_) || !(y_ == o.y_) || !(z_ == o.z_) || shift_ != o.shift_) throw ShapeMismatch("bilinear sum");
  o.for_each([&](int k, int i, int l, int j, const Vec& v) { add_to(k, i, l, j, v); });
  return *this;
}

Bilinear& Bilinear::operator-=(const Bilinear& o) {
  if (!(x_ == o.x_) || !(y_ == o.y_) || !(z_ == o.z_) || shift_ != o.shift_) throw ShapeMismatch("bilinear difference");
  o.for_each([&](int k, int i, int l, int j, const Vec& v) { add_to(k, i, l, j, vec_scale(v, -1)); });
  return *this;
}

Bilinear& Bilinear::operator*=(const Scalar& s) {
  for (auto& [kl, vals] : data_)
    for (auto& v : vals) {
      if (v.empty()) continue;
      v = vec_scale(v, s);
      if (vec_is_zero(v)) v.clear();
    }
  return *this;
}

bool operator==(const Bilinear& a, const Bilinear& b) {
  if (!(a.x_ == b.x_) || !(a.y_ == b.y_) || !(a.z_ == b.z_) || a.shift_ != b.shift_) return false;
  Bilinear d = a;
  d -= b;
  return d.is_zero();
}

Bilinear compose_left(const GradedLinearMap& l, const Bilinear& b) {
  if (!(l.source() == b.target())) throw ShapeMismatch("compose_left: spaces differ");
  Bilinear r(b.left(), b.right(), l.target(), b.shift() + l.shift());
  b.for_each([&](int k, int i, int m, int j, const Vec& v) { r.set(k, i, m, j, l.apply(k + m + b.shift(), v)); });
  return r;
}

Bilinear compose_right(const Bilinear& b, const GradedLinearMap& f, const GradedLinearMap& g) {
  if (!(f.target() == b.left()) || !(g.target() == b.right())) throw ShapeMismatch("compose_right: spaces differ");
  Bilinear r(f.source(), g.source(), b.target(), b.shift() + f.shift() + g.shift());
  for (int k : f.source().degrees())
    for (int l : g.source().degrees())
      for (int i = 0; i < f.source().dim(k); ++i) {
        Vec fx = f.apply(k, unit_vec(f.source().dim(k), i));
        for (int j = 0; j < g.source().dim(l); ++j) {
          Vec gy = g.apply(l, unit_vec(g.source().dim(l), j));
          r.set(k, i, l, j, b.apply(k + f.shift(), fx, l + g.shift(), gy));
        }
      }
  return r;
}

}  // namespace hsw
