#include "hsw/graded.hpp"

#include <atomic>

namespace hsw {

namespace {
std::atomic<int> g_lo{-6}, g_hi{6};

void check_degree(int d) {
  if (d < g_lo.load() || d > g_hi.load())
    throw DegreeOutOfWindow("degree " + std::to_string(d) + " outside window [" + std::to_string(g_lo.load()) + "," +
                            std::to_string(g_hi.load()) + "]");
}
}  // namespace

void set_degree_window(DegreeWindow w) {
  if (w.lo > w.hi) throw std::invalid_argument("empty degree window");
  g_lo = w.lo;
  g_hi = w.hi;
}
DegreeWindow degree_window() { return {g_lo.load(), g_hi.load()}; }

GradedVectorSpace::GradedVectorSpace(std::map<int, int> dims) {
  for (auto [d, n] : dims) {
    if (n < 0) throw std::invalid_argument("negative dimension");
    if (n == 0) continue;
    check_degree(d);
    dims_[d] = n;
  }
}

int GradedVectorSpace::dim(int deg) const {
  auto it = dims_.find(deg);
  return it == dims_.end() ? 0 : it->second;
}

int GradedVectorSpace::total_dim() const {
  int n = 0;
  for (auto [d, k] : dims_) n += k;
  return n;
}

std::vector<int> GradedVectorSpace::degrees() const {
  std::vector<int> out;
  for (auto [d, k] : dims_) out.push_back(d);
  return out;
}

void GradedVectorSpace::set_labels(int deg, std::vector<std::string> labels) {
  if (static_cast<int>(labels.size()) != dim(deg)) throw ShapeMismatch("label count");
  labels_[deg] = std::move(labels);
}

std::string GradedVectorSpace::label(int deg, int i) const {
  auto it = labels_.find(deg);
  if (it != labels_.end()) return it->second.at(i);
  return "v" + std::to_string(deg) + "_" + std::to_string(i);
}

GradedVectorSpace shift_space(const GradedVectorSpace& v, int k) {
  std::map<int, int> d;
  for (auto [deg, n] : v.dims()) d[deg - k] = n;
  return GradedVectorSpace(d);
}

GradedVectorSpace direct_sum(const GradedVectorSpace& a, const GradedVectorSpace& b) {
  std::map<int, int> d = a.dims();
  for (auto [deg, n] : b.dims()) d[deg] += n;
  return GradedVectorSpace(d);
}

GradedLinearMap::GradedLinearMap(GradedVectorSpace src, GradedVectorSpace tgt, int shift)
    : src_(std::move(src)), tgt_(std::move(tgt)), shift_(shift) {}

GradedLinearMap GradedLinearMap::identity(const GradedVectorSpace& v) {
  GradedLinearMap m(v, v, 0);
  for (auto [d, n] : v.dims()) m.set_block(d, Matrix::identity(n));
  return m;
}

Matrix GradedLinearMap::block(int d) const {
  auto it = blocks_.find(d);
  if (it != blocks_.end()) return it->second;
  return Matrix(tgt_.dim(d + shift_), src_.dim(d));
}

void GradedLinearMap::set_block(int d, Matrix m) {
  if (m.rows() != tgt_.dim(d + shift_) || m.cols() != src_.dim(d))
    throw ShapeMismatch("block at degree " + std::to_string(d) + " has shape " + std::to_string(m.rows()) + "x" +
                        std::to_string(m.cols()) + ", expected " + std::to_string(tgt_.dim(d + shift_)) + "x" +
                        std::to_string(src_.dim(d)));
  if (m.empty()) {
    blocks_.erase(d);
    return;
  }
  blocks_[d] = std::move(m);
}

Vec GradedLinearMap::apply(int d, const Vec& x) const {
  if (static_cast<int>(x.size()) != src_.dim(d)) throw ShapeMismatch("apply: argument length");
  auto it = blocks_.find(d);
  if (it == blocks_.end()) return Vec(tgt_.dim(d + shift_));
  return it->second * x;
}

bool GradedLinearMap::is_zero() const {
  for (const auto& [d, m] : blocks_)
    if (!m.is_zero()) return false;
  return true;
}

void GradedLinearMap::check_compatible(const GradedLinearMap& o, const char* what) const {
  if (!(src_ == o.src_) || !(tgt_ == o.tgt_) || shift_ != o.shift_)
    throw ShapeMismatch(std::string(what) + ": maps between different spaces");
}

GradedLinearMap& GradedLinearMap::operator+=(const GradedLinearMap& o) {
  check_compatible(o, "sum");
  for (const auto& [d, m] : o.blocks_) set_block(d, block(d) + m);
  return *this;
}

GradedLinearMap& GradedLinearMap::operator-=(const GradedLinearMap& o) {
  check_compatible(o, "difference");
  for (const auto& [d, m] : o.blocks_) set_block(d, block(d) - m);
  return *this;
}

GradedLinearMap& GradedLinearMap::operator*=(const Scalar& s) {
  for (auto& [d, m] : blocks_) m *= s;
  return *this;
}

bool operator==(const GradedLinearMap& a, const GradedLinearMap& b) {
  if (!(a.src_ == b.src_) || !(a.tgt_ == b.tgt_) || a.shift_ != b.shift_) return false;
  for (int d : a.src_.degrees())
    if (!(a.block(d) == b.block(d))) return false;
  return true;
}

GradedLinearMap glm_compose(const GradedLinearMap& f, const GradedLinearMap& g) {
  // degreewise check, reported at the first offending degree
  std::map<int, int> all = f.source().dims();
  for (auto [d, n] : g.target().dims()) all[d] += 0;
  for (auto [d, n] : all)
    if (f.source().dim(d) != g.target().dim(d))
      throw ShapeMismatch("compose: degree " + std::to_string(d) + " has dim " + std::to_string(f.source().dim(d)) +
                          " in the outer source but " + std::to_string(g.target().dim(d)) + " in the inner target");
  GradedLinearMap h(g.source(), f.target(), f.shift() + g.shift());
  for (int d : g.source().degrees()) {
    Matrix m = f.block(d + g.shift()) * g.block(d);
    h.set_block(d, std::move(m));
  }
  return h;
}

GradedLinearMap glm_inverse(const GradedLinearMap& f) {
  if (f.shift() != 0) throw MathError("inverse of a shifted map");
  GradedLinearMap g(f.target(), f.source(), 0);
  std::map<int, int> all = f.source().dims();
  for (auto [d, n] : f.target().dims()) all[d] += 0;
  for (auto [d, n] : all) {
    auto inv = inverse(f.block(d));
    if (!inv) throw MathError("map is not invertible in degree " + std::to_string(d));
    g.set_block(d, *inv);
  }
  return g;
}

GradedLinearMap glm_direct_sum(const GradedLinearMap& f, const GradedLinearMap& g) {
  if (f.shift() != g.shift()) throw ShapeMismatch("direct sum of maps with different shifts");
  GradedLinearMap h(direct_sum(f.source(), g.source()), direct_sum(f.target(), g.target()), f.shift());
  for (int d : h.source().degrees()) h.set_block(d, Matrix::direct_sum(f.block(d), g.block(d)));
  return h;
}

namespace {
GradedLinearMap summand_map(const GradedVectorSpace& a, const GradedVectorSpace& b, bool first, bool incl) {
  GradedVectorSpace s = direct_sum(a, b);
  const GradedVectorSpace& part = first ? a : b;
  GradedLinearMap m = incl ? GradedLinearMap(part, s, 0) : GradedLinearMap(s, part, 0);
  for (int d : s.degrees()) {
    int n = part.dim(d);
    Matrix blk = incl ? Matrix(s.dim(d), n) : Matrix(n, s.dim(d));
    int off = first ? 0 : a.dim(d);
    for (int i = 0; i < n; ++i) {
      if (incl)
        blk(off + i, i) = 1;
      else
        blk(i, off + i) = 1;
    }
    m.set_block(d, blk);
  }
  return m;
}
}  // namespace

GradedLinearMap inclusion_first(const GradedVectorSpace& a, const GradedVectorSpace& b) { return summand_map(a, b, true, true); }
GradedLinearMap inclusion_second(const GradedVectorSpace& a, const GradedVectorSpace& b) { return summand_map(a, b, false, true); }
GradedLinearMap projection_first(const GradedVectorSpace& a, const GradedVectorSpace& b) { return summand_map(a, b, true, false); }
GradedLinearMap projection_second(const GradedVectorSpace& a, const GradedVectorSpace& b) { return summand_map(a, b, false, false); }

GradedElement::GradedElement(GradedVectorSpace space) : space_(std::move(space)) {
  for (auto [d, n] : space_.dims()) comps_[d] = Vec(n);
}

GradedElement::GradedElement(GradedVectorSpace space, std::map<int, Vec> comps) : GradedElement(std::move(space)) {
  for (auto& [d, v] : comps) set_component(d, std::move(v));
}

const Vec& GradedElement::component(int d) const {
  static const Vec empty;
  auto it = comps_.find(d);
  return it == comps_.end() ? empty : it->second;
}

void GradedElement::set_component(int d, Vec v) {
  if (static_cast<int>(v.size()) != space_.dim(d)) throw ShapeMismatch("component length at degree " + std::to_string(d));
  if (v.empty()) return;
  comps_[d] = std::move(v);
}

bool GradedElement::is_zero() const {
  for (const auto& [d, v] : comps_)
    if (!vec_is_zero(v)) return false;
  return true;
}

bool operator==(const GradedElement& a, const GradedElement& b) {
  return a.space_ == b.space_ && a.comps_ == b.comps_;
}

}  // namespace hsw
