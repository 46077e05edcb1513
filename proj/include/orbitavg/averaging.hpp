#pragma once

// First-order averaged function of the rescaled oscillator around the
// linear center x' = y, y' = -x:
//
//   f(z) = int_0^{2 pi} Y(t)^{-1} F1(t, x(t, z)) dt
//
// with Y(t) the rotation fundamental matrix and x(t, z) the circular
// unperturbed orbit through z = (x0, y0).

#include <array>
#include <complex>

#include "orbitavg/core_model.hpp"

namespace orbitavg {

struct AveragedValue {
  double f1 = 0.0;
  double f2 = 0.0;
};

double norm(AveragedValue v);

// 2x2 Jacobian of (f1, f2) with respect to (x0, y0).
struct Jacobian2 {
  double m11 = 0.0, m12 = 0.0;
  double m21 = 0.0, m22 = 0.0;

  double trace() const { return m11 + m22; }
  double det() const { return m11 * m22 - m12 * m21; }
  double max_abs() const;
  std::array<std::complex<double>, 2> eigenvalues() const;
};

using Matrix2 = std::array<std::array<double, 2>, 2>;

State unperturbed_flow(State z, double t);
Matrix2 fundamental_matrix(double t);

// Default trapezoid node count; the integrand is a trigonometric polynomial
// of degree <= 6, so any count >= 16 integrates it exactly.
inline constexpr int kDefaultQuadratureNodes = 64;

AveragedValue f_quadrature(const Subcase& sub, const ScaledParams& p, State z,
                           int nodes = kDefaultQuadratureNodes);
AveragedValue f_closed(const Subcase& sub, const ScaledParams& p, State z);
Jacobian2 jacobian(const Subcase& sub, const ScaledParams& p, State z);

}  // namespace orbitavg
