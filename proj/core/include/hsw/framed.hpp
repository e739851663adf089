#pragma once

#include <map>
#include <vector>

#include "hsw/exterior.hpp"
#include "hsw/linalg.hpp"

namespace hsw {

struct FrameMismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Polynomial in the entries of Ad_{g_f^{-1}}, one matrix per group factor f.
// Variable (f, j, k) has id (f·n + j)·n + k.
class AdPolynomial {
public:
  using Monomial = std::vector<uint16_t>;  // sorted variable ids

  AdPolynomial() = default;
  static AdPolynomial constant(const Scalar& c);
  static AdPolynomial variable(int id);

  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  int degree() const;

  AdPolynomial& operator+=(const AdPolynomial& o);
  AdPolynomial& operator-=(const AdPolynomial& o);
  AdPolynomial& operator*=(const Scalar& s);
  friend AdPolynomial operator+(AdPolynomial a, const AdPolynomial& b) { return a += b; }
  friend AdPolynomial operator-(AdPolynomial a, const AdPolynomial& b) { return a -= b; }
  friend AdPolynomial operator*(AdPolynomial a, const Scalar& s) { return a *= s; }
  friend AdPolynomial operator*(const AdPolynomial& a, const AdPolynomial& b);
  friend bool operator==(const AdPolynomial& a, const AdPolynomial& b) { return a.terms_ == b.terms_; }

  Scalar eval(const std::vector<Scalar>& vals) const;
  // replace variable v by table[v] where present
  AdPolynomial substitute(const std::map<int, AdPolynomial>& table) const;

private:
  void add_term(const Monomial& m, const Scalar& c);
  std::map<Monomial, Scalar> terms_;
};

// Structure constants and frame layout: frame index f·n + i is the
// left-invariant field of e_i on factor f.
struct FrameContext {
  int n = 0;
  int factors = 0;
  std::vector<Matrix> ad;  // ad[i](j, l) = e_j-coefficient of [e_i, e_l]

  int frames() const { return n * factors; }
  int var(int f, int j, int k) const { return (f * n + j) * n + k; }
  int vars() const { return factors * n * n; }
  // left-invariant derivative of p along e_i on factor f, using ∂(Ad_{g⁻¹}) = −ad·Ad_{g⁻¹}
  AdPolynomial derivative(const AdPolynomial& p, int f, int i) const;
  // [X_a, X_b] for frame indices
  std::vector<std::pair<int, Scalar>> frame_bracket(int a, int b) const;
};

// Σ_I coef_I X_I over sorted frame subsets (bitmask).
class FramedPolyvector {
public:
  FramedPolyvector() = default;
  explicit FramedPolyvector(int frames) : frames_(frames) {}

  int frames() const { return frames_; }
  const std::map<uint32_t, AdPolynomial>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  int grade() const;  // -1 when zero or mixed

  void add(uint32_t mask, const AdPolynomial& c);
  // c · X_{i1} ∧ … ∧ X_{ik}
  static FramedPolyvector monomial(int frames, const std::vector<int>& idx, const AdPolynomial& c);

  FramedPolyvector& operator+=(const FramedPolyvector& o);
  FramedPolyvector& operator-=(const FramedPolyvector& o);
  FramedPolyvector& operator*=(const Scalar& s);
  friend FramedPolyvector operator+(FramedPolyvector a, const FramedPolyvector& b) { return a += b; }
  friend FramedPolyvector operator-(FramedPolyvector a, const FramedPolyvector& b) { return a -= b; }
  friend FramedPolyvector operator*(const Scalar& s, FramedPolyvector a) { return a *= s; }
  friend bool operator==(const FramedPolyvector& a, const FramedPolyvector& b) { return a.terms_ == b.terms_; }
  FramedPolyvector times(const AdPolynomial& p) const;
  FramedPolyvector substitute(const std::map<int, AdPolynomial>& table) const;

  // exact value at a point given the Ad entries
  ExteriorElement eval(const std::vector<Scalar>& vals) const;

private:
  int frames_ = 0;
  std::map<uint32_t, AdPolynomial> terms_;
};

FramedPolyvector wedge(const FramedPolyvector& a, const FramedPolyvector& b);
// Schouten–Nijenhuis bracket; grades ≥ 1
FramedPolyvector schouten(const FrameContext& ctx, const FramedPolyvector& p, const FramedPolyvector& q);

// single frames
FramedPolyvector left_field(const FrameContext& ctx, int f, const Vec& x);
// right-invariant field of x on factor f: Σ_j (Ad_{g_f⁻¹}x)_j X_{f,j}
FramedPolyvector right_field(const FrameContext& ctx, int f, const Vec& x);

}  // namespace hsw
