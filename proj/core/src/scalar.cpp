#include "hsw/scalar.hpp"

#include <atomic>
#include <cmath>
#include <ostream>
#include <sstream>

namespace hsw {

namespace {
std::atomic<double> g_tol{1e-9};
}

void set_float_tolerance(double tol) {
  if (!(tol > 0)) throw MathError("tolerance must be positive");
  g_tol.store(tol);
}
double float_tolerance() { return g_tol.load(); }

Scalar::Scalar(long num, long den) : q_(num, den) {
  if (den == 0) throw MathError("zero denominator");
  q_.canonicalize();
}

Scalar Scalar::from_double(double d) {
  Scalar s;
  s.flt_ = true;
  s.f_ = d;
  return s;
}

Scalar Scalar::parse(const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  if (s.empty()) throw MathError("empty scalar");
  bool is_rational = true;
  for (char c : s)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '/')) is_rational = false;
  if (is_rational) {
    if (s[0] == '+') s = s.substr(1);
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw MathError("bad rational '" + text + "'");
    if (s.find('/') != std::string::npos && q.get_den() == 0) throw MathError("zero denominator");
    q.canonicalize();
    return Scalar(q);
  }
  try {
    size_t pos = 0;
    double d = std::stod(s, &pos);
    if (pos != s.size()) throw MathError("bad number '" + text + "'");
    return from_double(d);
  } catch (const std::logic_error&) {
    throw MathError("bad number '" + text + "'");
  }
}

const mpq_class& Scalar::rational() const {
  if (flt_) throw MathError("float scalar has no exact value");
  return q_;
}

double Scalar::to_double() const { return flt_ ? f_ : q_.get_d(); }

bool Scalar::is_zero() const {
  if (flt_) return std::fabs(f_) <= float_tolerance();
  return sgn(q_) == 0;
}

int Scalar::sign() const {
  if (is_zero()) return 0;
  return flt_ ? (f_ > 0 ? 1 : -1) : sgn(q_);
}

Scalar& Scalar::operator+=(const Scalar& o) {
  if (!flt_ && !o.flt_) {
    q_ += o.q_;
  } else {
    f_ = to_double() + o.to_double();
    flt_ = true;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& o) {
  if (!flt_ && !o.flt_) {
    q_ -= o.q_;
  } else {
    f_ = to_double() - o.to_double();
    flt_ = true;
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& o) {
  if (!flt_ && !o.flt_) {
    q_ *= o.q_;
  } else {
    f_ = to_double() * o.to_double();
    flt_ = true;
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& o) {
  if (o.is_zero()) throw MathError("division by zero");
  if (!flt_ && !o.flt_) {
    q_ /= o.q_;
  } else {
    f_ = to_double() / o.to_double();
    flt_ = true;
  }
  return *this;
}

Scalar Scalar::operator-() const {
  Scalar r = *this;
  if (flt_)
    r.f_ = -f_;
  else
    r.q_ = -q_;
  return r;
}

void Scalar::add_mul(const Scalar& b, const Scalar& c) {
  if (!flt_ && !b.flt_ && !c.flt_) {
    if (sgn(b.q_) == 0 || sgn(c.q_) == 0) return;
    // mpq has no fused op; one temporary is the best we can do
    thread_local mpq_class tmp;
    mpq_mul(tmp.get_mpq_t(), b.q_.get_mpq_t(), c.q_.get_mpq_t());
    q_ += tmp;
    return;
  }
  f_ = to_double() + b.to_double() * c.to_double();
  flt_ = true;
}

bool operator==(const Scalar& a, const Scalar& b) {
  if (!a.flt_ && !b.flt_) return a.q_ == b.q_;
  return std::fabs(a.to_double() - b.to_double()) <= float_tolerance();
}

std::string Scalar::str() const {
  if (flt_) {
    std::ostringstream os;
    os.precision(17);
    os << f_;
    return os.str();
  }
  return q_.get_str();
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.str(); }

}  // namespace hsw
