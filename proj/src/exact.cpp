#include "orbitavg/exact.hpp"

#include <cmath>

#include "orbitavg/error.hpp"

namespace orbitavg {

Surd::Surd(const mpq_class& p, const mpq_class& q, long k) : p_(p), q_(q), k_(k) {
  if (k < 0) throw DomainError("negative radicand");
  normalize();
}

void Surd::normalize() {
  p_.canonicalize();
  q_.canonicalize();
  if (k_ < 0) throw DomainError("surd radicand must be non-negative");
  if (k_ == 0) q_ = 0;
  const long root = std::lround(std::sqrt(static_cast<double>(k_)));
  if (k_ > 0 && root * root == k_) {
    p_ += q_ * root;
    q_ = 0;
  }
  if (q_ == 0) k_ = 0;
}

long Surd::common_radicand(const Surd& a, const Surd& b) {
  if (a.k_ == 0) return b.k_;
  if (b.k_ == 0 || a.k_ == b.k_) return a.k_;
  throw DomainError("cannot mix surds with different radicands");
}

int Surd::sign() const {
  const int sp = sgn(p_), sq = sgn(q_);
  if (sq == 0) return sp;
  if (sp == 0) return sq;
  if (sp == sq) return sp;
  // opposite signs: compare p^2 with q^2 k
  const mpq_class lhs = p_ * p_;
  const mpq_class rhs = q_ * q_ * k_;
  const int c = cmp(lhs, rhs);
  return c == 0 ? 0 : (c > 0 ? sp : sq);
}

double Surd::to_double() const {
  return p_.get_d() + q_.get_d() * std::sqrt(static_cast<double>(k_));
}

std::string to_string(const mpq_class& v) { return v.get_str(); }

std::string Surd::str() const {
  if (is_rational()) return p_.get_str();
  const std::string head = p_ == 0 ? "" : p_.get_str() + (q_ < 0 ? "-" : "+");
  const mpq_class mag = p_ == 0 ? q_ : mpq_class(abs(q_));
  return head + mag.get_str() + "*sqrt(" + std::to_string(k_) + ")";
}

Surd Surd::operator-() const { return Surd(-p_, -q_, k_); }

Surd operator+(const Surd& a, const Surd& b) {
  const long k = Surd::common_radicand(a, b);
  return Surd(a.p_ + b.p_, a.q_ + b.q_, k);
}

Surd operator-(const Surd& a, const Surd& b) {
  const long k = Surd::common_radicand(a, b);
  return Surd(a.p_ - b.p_, a.q_ - b.q_, k);
}

Surd operator*(const Surd& a, const Surd& b) {
  const long k = Surd::common_radicand(a, b);
  const mpq_class p = a.p_ * b.p_ + a.q_ * b.q_ * k;
  const mpq_class q = a.p_ * b.q_ + a.q_ * b.p_;
  return Surd(p, q, k);
}

Surd operator/(const Surd& a, const Surd& b) {
  const long k = Surd::common_radicand(a, b);
  const mpq_class den = b.p_ * b.p_ - b.q_ * b.q_ * k;
  if (den == 0) throw DomainError("division by zero surd");
  const Surd conj(b.p_ / den, -b.q_ / den, k);
  return a * conj;
}

bool operator==(const Surd& a, const Surd& b) {
  return a.p_ == b.p_ && a.q_ == b.q_ && (a.q_ == 0 || a.k_ == b.k_);
}

int Tracked::sign(double rel) const {
  if (!(std::abs(v_) > rel * s_)) return 0;
  return v_ > 0 ? 1 : -1;
}

}  // namespace orbitavg
