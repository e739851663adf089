#include "hsw/framed.hpp"

#include <algorithm>

namespace hsw {

AdPolynomial AdPolynomial::constant(const Scalar& c) {
  AdPolynomial p;
  p.add_term({}, c);
  return p;
}

AdPolynomial AdPolynomial::variable(int id) {
  AdPolynomial p;
  p.add_term({static_cast<uint16_t>(id)}, Scalar(1));
  return p;
}

bool AdPolynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

int AdPolynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, static_cast<int>(m.size()));
  return d;
}

void AdPolynomial::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(m, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

AdPolynomial& AdPolynomial::operator+=(const AdPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

AdPolynomial& AdPolynomial::operator-=(const AdPolynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

AdPolynomial& AdPolynomial::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

AdPolynomial operator*(const AdPolynomial& a, const AdPolynomial& b) {
  AdPolynomial r;
  for (const auto& [m1, c1] : a.terms_)
    for (const auto& [m2, c2] : b.terms_) {
      AdPolynomial::Monomial m;
      m.reserve(m1.size() + m2.size());
      std::merge(m1.begin(), m1.end(), m2.begin(), m2.end(), std::back_inserter(m));
      r.add_term(m, c1 * c2);
    }
  return r;
}

Scalar AdPolynomial::eval(const std::vector<Scalar>& vals) const {
  Scalar s(0);
  for (const auto& [m, c] : terms_) {
    Scalar t = c;
    for (auto v : m) t *= vals.at(v);
    s += t;
  }
  return s;
}

AdPolynomial AdPolynomial::substitute(const std::map<int, AdPolynomial>& table) const {
  AdPolynomial r;
  for (const auto& [m, c] : terms_) {
    AdPolynomial t = constant(c);
    Monomial kept;
    for (auto v : m) {
      auto it = table.find(v);
      if (it == table.end())
        kept.push_back(v);
      else
        t = t * it->second;
    }
    AdPolynomial k;
    k.add_term(kept, Scalar(1));
    r += t * k;
  }
  return r;
}

AdPolynomial FrameContext::derivative(const AdPolynomial& p, int f, int i) const {
  AdPolynomial r;
  for (const auto& [m, c] : p.terms()) {
    for (size_t idx = 0; idx < m.size(); ++idx) {
      int v = m[idx];
      int fv = v / (n * n), j = (v / n) % n, k = v % n;
      if (fv != f) continue;
      AdPolynomial::Monomial mm(m.begin(), m.end());
      mm.erase(mm.begin() + idx);
      AdPolynomial rest = AdPolynomial::constant(c);
      for (auto w : mm) rest = rest * AdPolynomial::variable(w);
      AdPolynomial dv;
      for (int l = 0; l < n; ++l) {
        const Scalar& a = ad[i](j, l);
        if (!a.is_zero()) dv += AdPolynomial::variable(var(f, l, k)) * (-a);
      }
      r += rest * dv;
    }
  }
  return r;
}

std::vector<std::pair<int, Scalar>> FrameContext::frame_bracket(int a, int b) const {
  std::vector<std::pair<int, Scalar>> out;
  if (a / n != b / n) return out;
  int off = (a / n) * n;
  for (int r = 0; r < n; ++r) {
    const Scalar& c = ad[a - off](r, b - off);
    if (!c.is_zero()) out.emplace_back(off + r, c);
  }
  return out;
}

int FramedPolyvector::grade() const {
  int g = -1;
  for (const auto& [m, c] : terms_) {
    int k = popcount(m);
    if (g >= 0 && g != k) return -1;
    g = k;
  }
  return g;
}

void FramedPolyvector::add(uint32_t mask, const AdPolynomial& c) {
  if (c.is_zero()) return;
  auto [it, fresh] = terms_.emplace(mask, c);
  if (fresh) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

FramedPolyvector FramedPolyvector::monomial(int frames, const std::vector<int>& idx, const AdPolynomial& c) {
  FramedPolyvector p(frames);
  int s = sort_sign(idx);
  if (s == 0) return p;
  uint32_t mask = 0;
  for (int i : idx) mask |= 1u << i;
  p.add(mask, c * Scalar(s));
  return p;
}

FramedPolyvector& FramedPolyvector::operator+=(const FramedPolyvector& o) {
  if (frames_ == 0) frames_ = o.frames_;
  if (o.frames_ != 0 && o.frames_ != frames_) throw FrameMismatch("frame counts differ");
  for (const auto& [m, c] : o.terms_) add(m, c);
  return *this;
}

FramedPolyvector& FramedPolyvector::operator-=(const FramedPolyvector& o) {
  if (frames_ == 0) frames_ = o.frames_;
  if (o.frames_ != 0 && o.frames_ != frames_) throw FrameMismatch("frame counts differ");
  for (const auto& [m, c] : o.terms_) add(m, c * Scalar(-1));
  return *this;
}

FramedPolyvector& FramedPolyvector::operator*=(const Scalar& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

FramedPolyvector FramedPolyvector::times(const AdPolynomial& p) const {
  FramedPolyvector r(frames_);
  for (const auto& [m, c] : terms_) r.add(m, c * p);
  return r;
}

FramedPolyvector FramedPolyvector::substitute(const std::map<int, AdPolynomial>& table) const {
  FramedPolyvector r(frames_);
  for (const auto& [m, c] : terms_) r.add(m, c.substitute(table));
  return r;
}

ExteriorElement FramedPolyvector::eval(const std::vector<Scalar>& vals) const {
  ExteriorElement e(frames_);
  for (const auto& [m, c] : terms_) e.add(m, c.eval(vals));
  return e;
}

FramedPolyvector wedge(const FramedPolyvector& a, const FramedPolyvector& b) {
  if (a.frames() != b.frames() && a.frames() && b.frames()) throw FrameMismatch("frame counts differ");
  FramedPolyvector r(std::max(a.frames(), b.frames()));
  for (const auto& [m1, c1] : a.terms())
    for (const auto& [m2, c2] : b.terms()) {
      int s = merge_sign(m1, m2);
      if (s == 0) continue;
      r.add(m1 | m2, (c1 * c2) * Scalar(s));
    }
  return r;
}

namespace {

std::vector<int> bits(uint32_t m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1) out.push_back(i);
  return out;
}

// [f X_i, g X_j] = fg [X_i, X_j] + f X_i(g) X_j − g X_j(f) X_i
FramedPolyvector vector_bracket(const FrameContext& ctx, const AdPolynomial& f, int i, const AdPolynomial& g, int j) {
  FramedPolyvector r(ctx.frames());
  AdPolynomial fg = f * g;
  for (const auto& [k, c] : ctx.frame_bracket(i, j)) r.add(1u << k, fg * c);
  if (!g.is_constant()) r.add(1u << j, f * ctx.derivative(g, i / ctx.n, i % ctx.n));
  if (!f.is_constant()) r.add(1u << i, (g * ctx.derivative(f, j / ctx.n, j % ctx.n)) * Scalar(-1));
  return r;
}

}  // namespace

FramedPolyvector schouten(const FrameContext& ctx, const FramedPolyvector& p, const FramedPolyvector& q) {
  if (p.is_zero() || q.is_zero()) return FramedPolyvector(ctx.frames());
  if (p.frames() != ctx.frames() || q.frames() != ctx.frames()) throw FrameMismatch("polyvector not on this frame");
  FramedPolyvector r(ctx.frames());
  const AdPolynomial one = AdPolynomial::constant(Scalar(1));
  for (const auto& [mi, f] : p.terms())
    for (const auto& [mj, g] : q.terms()) {
      auto I = bits(mi), J = bits(mj);
      if (I.empty() || J.empty()) throw FrameMismatch("Schouten bracket with a function");
      for (size_t a = 0; a < I.size(); ++a)
        for (size_t b = 0; b < J.size(); ++b) {
          FramedPolyvector xy = vector_bracket(ctx, a == 0 ? f : one, I[a], b == 0 ? g : one, J[b]);
          if (xy.is_zero()) continue;
          AdPolynomial coef = (a != 0 ? f : one) * (b != 0 ? g : one);
          uint32_t restI = mi & ~(1u << I[a]), restJ = mj & ~(1u << J[b]);
          FramedPolyvector ri(ctx.frames()), rj(ctx.frames());
          ri.add(restI, coef);
          rj.add(restJ, one);
          FramedPolyvector w = wedge(wedge(xy, ri), rj);
          if ((a + b) % 2) w *= Scalar(-1);
          r += w;
        }
    }
  return r;
}

FramedPolyvector left_field(const FrameContext& ctx, int f, const Vec& x) {
  FramedPolyvector r(ctx.frames());
  for (int j = 0; j < ctx.n; ++j)
    if (!x[j].is_zero()) r.add(1u << (f * ctx.n + j), AdPolynomial::constant(x[j]));
  return r;
}

FramedPolyvector right_field(const FrameContext& ctx, int f, const Vec& x) {
  FramedPolyvector r(ctx.frames());
  for (int j = 0; j < ctx.n; ++j) {
    AdPolynomial c;
    for (int k = 0; k < ctx.n; ++k)
      if (!x[k].is_zero()) c += AdPolynomial::variable(ctx.var(f, j, k)) * x[k];
    r.add(1u << (f * ctx.n + j), c);
  }
  return r;
}

}  // namespace hsw
