#pragma once

#include <gmpxx.h>

#include <iosfwd>
#include <stdexcept>
#include <string>

namespace hsw {

// A field element. Exact rationals by default; a double with a global
// comparison tolerance when the value came from non-rational input.
// Mixed arithmetic degrades to double.
class Scalar {
public:
  Scalar() = default;
  Scalar(int v) : q_(v) {}
  Scalar(long v) : q_(v) {}
  Scalar(long long v) : q_(static_cast<long>(v)) {}
  Scalar(const mpq_class& q) : q_(q) { q_.canonicalize(); }
  Scalar(long num, long den);

  static Scalar from_double(double d);
  static Scalar parse(const std::string& s);

  bool is_float() const { return flt_; }
  const mpq_class& rational() const;
  double to_double() const;
  bool is_zero() const;
  int sign() const;

  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  Scalar operator-() const;

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  // fused a += b*c, the hot path of every matrix product
  void add_mul(const Scalar& b, const Scalar& c);

  std::string str() const;

private:
  mpq_class q_;
  double f_ = 0.0;
  bool flt_ = false;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Tolerance used when either side of a comparison is a float.
void set_float_tolerance(double tol);
double float_tolerance();

// (-1)^k for any integer k
inline int sgn_pow(long k) { return (k % 2 == 0) ? 1 : -1; }

struct MathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace hsw
