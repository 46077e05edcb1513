#pragma once

// Discriminant formulas, generic over the number type T (double, mpq_class,
// Surd or Tracked). Formulas that are even in every parameter take squared
// arguments (a2 = a^2, ...) so irrational golden points such as r = sqrt(31)/4
// stay rational.

#include "orbitavg/exact.hpp"

namespace orbitavg {

template <class T>
struct QuinticDiscriminants {
  T D2, D3, D4, D5, E2, F2;
};

// Discrimination system of x^5 + p x^3 + q x^2 + u x + v.
template <class T>
QuinticDiscriminants<T> quintic_discriminants(const T& p, const T& q, const T& u, const T& v) {
  const T p2 = p * p, p3 = p2 * p, p4 = p3 * p, p5 = p4 * p;
  const T q2 = q * q, q3 = q2 * q, q4 = q3 * q, q5 = q4 * q;
  const T u2 = u * u, u3 = u2 * u, u4 = u3 * u, u5 = u4 * u;
  const T v2 = v * v, v3 = v2 * v, v4 = v3 * v;
  QuinticDiscriminants<T> s;
  s.D2 = -p;
  s.D3 = T(-12) * p3 - T(45) * q2 + T(40) * p * u;
  s.D4 = T(-4) * p3 * q2 - T(27) * q4 + T(12) * p4 * u + T(117) * p * q2 * u -
         T(88) * p2 * u2 + T(160) * u3 - T(40) * p2 * q * v - T(300) * q * u * v +
         T(125) * p * v2;
  s.D5 = T(-4) * p3 * q2 * u2 - T(27) * q4 * u2 + T(16) * p4 * u3 + T(144) * p * q2 * u3 -
         T(128) * p2 * u4 + T(256) * u5 + T(16) * p3 * q3 * v + T(108) * q5 * v -
         T(72) * p4 * q * u * v - T(630) * p * q3 * u * v + T(560) * p2 * q * u2 * v -
         T(1600) * q * u3 * v + T(108) * p5 * v2 + T(825) * p2 * q2 * v2 -
         T(900) * p3 * u * v2 + T(2250) * q2 * u * v2 + T(2000) * p * u2 * v2 -
         T(3750) * p * q * v3 + T(3125) * v4;
  s.E2 = T(16) * p4 * q2 - T(48) * p5 * u + T(60) * p2 * q2 * u + T(160) * p3 * u2 +
         T(900) * q2 * u2 - T(1100) * p3 * q * v - T(3375) * q3 * v + T(1500) * p * q * u * v +
         T(625) * p2 * v2;
  s.F2 = T(3) * q2 - T(8) * p * u;
  return s;
}

// ---- cubic a3 x^3 + a2 x^2 + a1 x + a0

template <class T>
T cubic_discriminant(const T& a3, const T& a2, const T& a1, const T& a0) {
  return T(18) * a3 * a2 * a1 * a0 - T(4) * a2 * a2 * a2 * a0 + a2 * a2 * a1 * a1 -
         T(4) * a3 * a1 * a1 * a1 - T(27) * a3 * a3 * a0 * a0;
}

// ---- forced Duffing with quintic stiffness (cubic and quintic terms, no damping)

template <class T>
T thm5_D(const T& a, const T& l, const T& d) {
  const T d2 = d * d;
  return T(53747712) * ipow(a, 5) * d2 / (T(78125) * ipow(l, 7)) + T(20480) * d2 * d2 / ipow(l, 4);
}

template <class T>
T thm5_D4(const T& a, const T& l, const T& d) {
  return T(384) * a * d * d / ipow(l, 3);
}

// ---- damping, cubic stiffness and forcing

template <class T>
T thm6_delta1(const T& a2, const T& r2, const T& d2) {
  return T(324) * a2 * a2 + d2 * r2 + T(9) * a2 * (d2 - T(4) * r2);
}

template <class T>
T thm6_delta2(const T& a2, const T& r2, const T& d2) {
  const T d4 = d2 * d2, r4 = r2 * r2, r6 = r4 * r2;
  return T(2187) * a2 * a2 * d4 + T(27) * d4 * r4 - T(16) * d2 * r6 +
         T(18) * a2 * (T(27) * d4 * r2 - T(72) * d2 * r4 + T(32) * r6);
}

// Coefficient of x0 in the linear Groebner element b2.
template <class T>
T thm6_b2_xcoef(const T& a2, const T& r2, const T& d2) {
  return T(-324) * a2 * a2 * r2 - T(9) * a2 * d2 * r2 + T(36) * a2 * r2 * r2 - d2 * r2 * r2;
}

// ---- full model

template <class T>
T thm7_D(const T& a2, const T& r2, const T& d2) {
  const T d4 = d2 * d2, d6 = d4 * d2, d8 = d4 * d4;
  const T r4 = r2 * r2, r6 = r4 * r2, r8 = r4 * r4, r10 = r8 * r2, r12 = r6 * r6;
  const T a4 = a2 * a2, a6 = a4 * a2, a8 = a4 * a4, a10 = a8 * a2, a12 = a6 * a6,
          a14 = a12 * a2;
  T out = T(2066242608) * a14 * d6 - T(3125) * d8 * r12;
  out = out - T(531441) * a12 *
                  (T(3125) * d8 + T(96) * d6 * r2 + T(1536) * d4 * r4 - T(1024) * d2 * r6);
  out = out + T(354294) * a10 * (T(3125) * d8 * r2 + T(616) * d6 * r4 - T(1600) * d4 * r6);
  out = out + T(18) * a2 * r10 *
                  (T(9375) * d8 + T(5000) * d6 * r2 - T(88000) * d4 * r4 +
                   T(102400) * d2 * r6 - T(32768) * r8);
  out = out + T(2916) * a6 * r6 *
                  (T(15625) * d8 + T(11700) * d6 * r2 - T(45632) * d4 * r4 +
                   T(23552) * d2 * r6 - T(2048) * r8);
  out = out - T(6561) * a8 * r4 *
                  (T(46875) * d8 + T(24832) * d6 * r2 - T(66816) * d4 * r4 +
                   T(12288) * d2 * r6 + T(4096) * r8);
  out = out + T(81) * a4 * r8 *
                  (T(-46875) * d8 - T(36000) * d6 * r2 + T(275200) * d4 * r4 -
                   T(246784) * d2 * r6 + T(61440) * r8);
  return out;
}

template <class T>
T thm7_C(const T& a, const T& r, const T& d, const T& l) {
  const T a2 = a * a, d2 = d * d, l2 = l * l;
  const T r6 = ipow(r, 6), r8 = r6 * r * r;
  const T inner = T(540) * a2 * a * l - T(9) * a2 * (d2 - T(600) * l2) -
                  T(120) * a * l * (d2 - T(150) * l2) + T(50) * l2 * (T(-7) * d2 + T(400) * l2);
  return T(4) * (T(3) * a + T(10) * l) * inner * r6 +
         T(6) * (a + T(5) * l) * (T(6) * a - d + T(20) * l) * (T(6) * a + d + T(20) * l) * r8;
}

template <class T>
T thm7_D5_1(const T& a2, const T& r2, const T& d2) {
  return T(110075314176) * ipow(a2, 4) * ipow(r2, 10) /
         (ipow(d2, 10) * ipow(r2 - T(9) * a2, 28));
}

template <class T>
T thm7_D5_2(const T& a2, const T& r2, const T& d2) {
  const T a4 = a2 * a2, a6 = a4 * a2, a8 = a4 * a4, a10 = a8 * a2;
  const T d4 = d2 * d2, r4 = r2 * r2, r6 = r4 * r2, r8 = r4 * r4, r10 = r8 * r2,
          r14 = r10 * r4;
  const T base = T(59049) * a10 * d4 + T(16) * r14 + T(36) * a2 * r10 * (T(11) * d2 - T(4) * r2) -
                 T(81) * a4 * r6 * (d4 - T(12) * d2 * r2 + T(16) * r4) -
                 T(6561) * a8 * (T(3) * d4 * r2 - T(4) * d2 * r4) +
                 T(729) * a6 * (T(3) * d4 * r4 - T(28) * d2 * r6 + T(16) * r8);
  return base * base;
}

template <class T>
T thm7_D2_closed(const T& a2, const T& r2, const T& d2) {
  const T w = r2 - T(3) * a2, z = r2 - T(9) * a2;
  return T(-1296) * a2 * r2 * r2 * w * w / (d2 * ipow(z, 4));
}

// ---- damping, quintic stiffness and forcing

template <class T>
T thm8_C(const T& r, const T& l, const T& d) {
  const T d2 = d * d, d3 = d2 * d, l2 = l * l, l3 = l2 * l;
  const T r4 = ipow(r, 4), r6 = r4 * r * r, r8 = r6 * r * r;
  return T(4000) * d3 * l3 * r4 + T(7200000) * d * l3 * l2 * r4 + T(60) * d3 * l * r6 +
         T(72000) * d * l3 * r6 +
         (T(50) * d2 * d2 * l2 * r4 - T(220000) * d2 * l2 * l2 * r4 - T(8000000) * l3 * l3 * r4 -
          T(2800) * d2 * l2 * r6 + T(160000) * l2 * l2 * r6 - T(6) * d2 * r8 + T(2400) * l2 * r8);
}

template <class T>
T thm8_N2(const T& r2, const T& l2, const T& d2) {
  return (T(-4500) * l2 * r2 * r2 + T(3) * ipow(r2, 3)) / (T(3125) * d2 * l2 * l2);
}

template <class T>
T thm8_N3(const T& r2, const T& l2, const T& d2) {
  const T l4 = l2 * l2, l6 = l4 * l2, r4 = r2 * r2, r6 = r4 * r2, r8 = r4 * r4;
  return T(5859375) * d2 * d2 * l6 + T(18750000) * d2 * l6 * r2 +
         T(87500) * l4 * (T(-7) * d2 + T(1200) * l2) * r4 +
         T(25) * l2 * (T(-7) * d2 + T(155600) * l2) * r6 + T(15600) * l2 * r8 + T(9) * r8 * r2;
}

template <class T>
T thm8_N4(const T& r2, const T& l2, const T& d2) {
  const T l4 = l2 * l2, l6 = l4 * l2, l8 = l4 * l4, l10 = l8 * l2, l12 = l6 * l6;
  const T r4 = r2 * r2, r6 = r4 * r2, r8 = r4 * r4, r10 = r8 * r2, r12 = r6 * r6;
  const T d4 = d2 * d2, d6 = d4 * d2, d8 = d4 * d4;
  T out = T(1171875) * d8 * l6 * (T(1250000) * l4 + T(8500) * l2 * r2 + r4);
  out = out - T(2500) * d6 * l4 *
                  (T(312500000000) * l8 + T(5343750000) * l6 * r2 + T(74625000) * l4 * r4 +
                   T(358375) * l2 * r6 + T(69) * r8);
  out = out - T(3000) * d4 * l2 * r2 *
                  (T(218750000000) * l10 - T(21625000000) * l8 * r2 - T(686625000) * l6 * r4 -
                   T(3715000) * l4 * r6 - T(650) * l2 * r8 - T(3) * r10);
  out = out - T(1600) * l2 * r6 *
                  (T(400000000000) * l10 - T(144900000000) * l8 * r2 - T(2817000000) * l6 * r4 -
                   T(8880000) * l4 * r6 + T(38700) * l2 * r8 + T(27) * r10);
  out = out + T(12) * d2 * r4 *
                  (T(-50000000000000) * l12 - T(32250000000000) * l10 * r2 -
                   T(662400000000) * l8 * r4 - T(2803000000) * l6 * r6 + T(5410000) * l4 * r8 +
                   T(19200) * l2 * r10 + T(9) * r12);
  return out;
}

template <class T>
T thm8_N5(const T& r2, const T& l2, const T& d2) {
  const T l4 = l2 * l2, l6 = l4 * l2, r4 = r2 * r2, r6 = r4 * r2, r8 = r4 * r4, r10 = r8 * r2;
  const T d4 = d2 * d2, d6 = d4 * d2, d8 = d4 * d4;
  return T(48828125) * d8 * l6 - T(4687500) * d6 * l4 * r4 +
         T(6400) * l2 * r10 * (T(1600) * l2 + r2) -
         T(16) * d2 * r8 * (T(2000000) * l4 + T(2900) * l2 * r2 + r4) +
         d4 * r6 * (T(27500000) * l4 + T(60000) * l2 * r2 + T(27) * r4);
}

template <class T>
T thm8_M5(const T& r2, const T& l2, const T& d2) {
  const T l4 = l2 * l2, r4 = r2 * r2;
  return T(-25) * d2 * d2 * l2 + d2 * (T(110000) * l4 + T(1400) * l2 * r2 + T(3) * r4) +
         T(400) * (T(10000) * l4 * l2 - T(200) * l4 * r2 - T(3) * l2 * r4);
}

}  // namespace orbitavg
