#pragma once

// Number types used to evaluate the discriminant formulas:
//   Surd    - exact element p + q sqrt(k) of Q(sqrt(k)) over GMP rationals
//   Tracked - double carrying the sum of absolute monomial sizes, so a sign
//             test can tell cancellation noise from a genuine zero

#include <gmpxx.h>

#include <cmath>
#include <string>

namespace orbitavg {

class Surd {
 public:
  Surd() = default;
  Surd(long n) : p_(n) {}
  Surd(const mpq_class& p) : p_(p) {}
  Surd(const mpq_class& p, const mpq_class& q, long k);

  const mpq_class& rational_part() const { return p_; }
  const mpq_class& surd_part() const { return q_; }
  long radicand() const { return k_; }
  bool is_rational() const { return q_ == 0; }

  int sign() const;
  double to_double() const;
  std::string str() const;

  Surd operator-() const;
  friend Surd operator+(const Surd& a, const Surd& b);
  friend Surd operator-(const Surd& a, const Surd& b);
  friend Surd operator*(const Surd& a, const Surd& b);
  friend Surd operator/(const Surd& a, const Surd& b);
  friend bool operator==(const Surd& a, const Surd& b);

 private:
  void normalize();
  static long common_radicand(const Surd& a, const Surd& b);

  mpq_class p_ = 0;
  mpq_class q_ = 0;
  long k_ = 0;
};

class Tracked {
 public:
  Tracked() = default;
  Tracked(double c) : v_(c), s_(std::abs(c)) {}
  Tracked(double value, double scale) : v_(value), s_(scale) {}

  double value() const { return v_; }
  double scale() const { return s_; }

  // -1, 0, +1 with |value| <= rel * scale counted as zero.
  int sign(double rel = 1e-9) const;

  Tracked operator-() const { return {-v_, s_}; }
  friend Tracked operator+(Tracked a, Tracked b) { return {a.v_ + b.v_, a.s_ + b.s_}; }
  friend Tracked operator-(Tracked a, Tracked b) { return {a.v_ - b.v_, a.s_ + b.s_}; }
  friend Tracked operator*(Tracked a, Tracked b) { return {a.v_ * b.v_, a.s_ * b.s_}; }
  friend Tracked operator/(Tracked a, Tracked b) {
    return {a.v_ / b.v_, a.s_ / std::abs(b.v_)};
  }

 private:
  double v_ = 0.0;
  double s_ = 0.0;
};

inline int sign_of(double v) { return (v > 0) - (v < 0); }
inline int sign_of(const mpq_class& v) { return sgn(v); }
inline int sign_of(const Surd& v) { return v.sign(); }
inline int sign_of(const Tracked& v) { return v.sign(); }

inline double to_double(double v) { return v; }
inline double to_double(const mpq_class& v) { return v.get_d(); }
inline double to_double(const Surd& v) { return v.to_double(); }
inline double to_double(const Tracked& v) { return v.value(); }

std::string to_string(const mpq_class& v);

template <class T>
T ipow(const T& x, int n) {
  T out(1);
  for (int i = 0; i < n; ++i) out = out * x;
  return out;
}

}  // namespace orbitavg
