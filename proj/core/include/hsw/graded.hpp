#pragma once

#include <map>
#include <string>
#include <vector>

#include "hsw/linalg.hpp"

namespace hsw {

// Degrees outside the window are rejected on construction.
struct DegreeWindow {
  int lo = -6;
  int hi = 6;
};
void set_degree_window(DegreeWindow w);
DegreeWindow degree_window();

struct DegreeOutOfWindow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class GradedVectorSpace {
public:
  GradedVectorSpace() = default;
  explicit GradedVectorSpace(std::map<int, int> dims);
  GradedVectorSpace(std::initializer_list<std::pair<const int, int>> dims) : GradedVectorSpace(std::map<int, int>(dims)) {}

  int dim(int deg) const;
  int total_dim() const;
  // degrees with positive dimension, ascending
  std::vector<int> degrees() const;
  const std::map<int, int>& dims() const { return dims_; }

  // labels are metadata only
  void set_labels(int deg, std::vector<std::string> labels);
  std::string label(int deg, int i) const;

  friend bool operator==(const GradedVectorSpace& a, const GradedVectorSpace& b) { return a.dims_ == b.dims_; }

private:
  std::map<int, int> dims_;  // only positive entries are stored
  std::map<int, std::vector<std::string>> labels_;
};

// dims'(d) = dims(d + k), so V[1] puts V_d in degree d-1
GradedVectorSpace shift_space(const GradedVectorSpace& v, int k);
GradedVectorSpace direct_sum(const GradedVectorSpace& a, const GradedVectorSpace& b);

class GradedLinearMap {
public:
  GradedLinearMap() = default;
  GradedLinearMap(GradedVectorSpace src, GradedVectorSpace tgt, int shift = 0);

  static GradedLinearMap identity(const GradedVectorSpace& v);

  const GradedVectorSpace& source() const { return src_; }
  const GradedVectorSpace& target() const { return tgt_; }
  int shift() const { return shift_; }

  // block from source degree d to target degree d+shift; zero if absent
  Matrix block(int d) const;
  void set_block(int d, Matrix m);
  const std::map<int, Matrix>& blocks() const { return blocks_; }

  Vec apply(int d, const Vec& x) const;
  bool is_zero() const;

  GradedLinearMap& operator+=(const GradedLinearMap& o);
  GradedLinearMap& operator-=(const GradedLinearMap& o);
  GradedLinearMap& operator*=(const Scalar& s);
  friend GradedLinearMap operator+(GradedLinearMap a, const GradedLinearMap& b) { return a += b; }
  friend GradedLinearMap operator-(GradedLinearMap a, const GradedLinearMap& b) { return a -= b; }
  friend GradedLinearMap operator*(const Scalar& s, GradedLinearMap a) { return a *= s; }
  friend bool operator==(const GradedLinearMap& a, const GradedLinearMap& b);

private:
  void check_compatible(const GradedLinearMap& o, const char* what) const;

  GradedVectorSpace src_, tgt_;
  int shift_ = 0;
  std::map<int, Matrix> blocks_;  // only nonzero-shape blocks
};

// f after g
GradedLinearMap glm_compose(const GradedLinearMap& f, const GradedLinearMap& g);
// degreewise inverse of a shift-0 map; throws MathError when a block is singular
GradedLinearMap glm_inverse(const GradedLinearMap& f);
GradedLinearMap glm_direct_sum(const GradedLinearMap& f, const GradedLinearMap& g);
// inclusion of the first / second summand of direct_sum(a, b), and the projections
GradedLinearMap inclusion_first(const GradedVectorSpace& a, const GradedVectorSpace& b);
GradedLinearMap inclusion_second(const GradedVectorSpace& a, const GradedVectorSpace& b);
GradedLinearMap projection_first(const GradedVectorSpace& a, const GradedVectorSpace& b);
GradedLinearMap projection_second(const GradedVectorSpace& a, const GradedVectorSpace& b);

class GradedElement {
public:
  GradedElement() = default;
  explicit GradedElement(GradedVectorSpace space);
  GradedElement(GradedVectorSpace space, std::map<int, Vec> comps);

  const GradedVectorSpace& space() const { return space_; }
  const Vec& component(int d) const;
  void set_component(int d, Vec v);
  const std::map<int, Vec>& components() const { return comps_; }
  bool is_zero() const;

  friend bool operator==(const GradedElement& a, const GradedElement& b);

private:
  GradedVectorSpace space_;
  std::map<int, Vec> comps_;
};

}  // namespace hsw
