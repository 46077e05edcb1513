#include "orbitavg/averaging.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "orbitavg/error.hpp"

namespace orbitavg {

using std::numbers::pi;

double norm(AveragedValue v) { return std::hypot(v.f1, v.f2); }

double Jacobian2::max_abs() const {
  return std::max({std::abs(m11), std::abs(m12), std::abs(m21), std::abs(m22)});
}

std::array<std::complex<double>, 2> Jacobian2::eigenvalues() const {
  const double tr = trace();
  const double disc = tr * tr / 4.0 - det();
  if (disc >= 0.0) {
    const double s = std::sqrt(disc);
    // Larger-magnitude root first, the other from the product to avoid cancellation.
    const double big = tr / 2.0 + (tr >= 0.0 ? s : -s);
    const double small = big != 0.0 ? det() / big : 0.0;
    return {std::complex<double>(std::min(big, small), 0.0),
            std::complex<double>(std::max(big, small), 0.0)};
  }
  const double s = std::sqrt(-disc);
  return {std::complex<double>(tr / 2.0, -s), std::complex<double>(tr / 2.0, s)};
}

State unperturbed_flow(State z, double t) {
  const double c = std::cos(t), s = std::sin(t);
  return {z.x * c + z.y * s, z.y * c - z.x * s};
}

Matrix2 fundamental_matrix(double t) {
  const double c = std::cos(t), s = std::sin(t);
  return {{{c, s}, {-s, c}}};
}

AveragedValue f_quadrature(const Subcase& sub, const ScaledParams& p, State z, int nodes) {
  if (nodes < 16) throw DomainError("quadrature needs at least 16 nodes");
  const double h = 2.0 * pi / nodes;
  double acc1 = 0.0, acc2 = 0.0;
  for (int k = 0; k < nodes; ++k) {
    const double t = h * k;
    const State u = unperturbed_flow(z, t);
    const double x2 = u.x * u.x;
    double g = 0.0;
    if (sub.include_ry) g += p.r * u.y;
    if (sub.include_rx2y) g -= p.r * x2 * u.y;
    if (sub.include_ax3) g -= p.a * x2 * u.x;
    if (sub.include_lx5) g -= p.l * x2 * x2 * u.x;
    if (sub.include_dcos) g += p.d * std::cos(t);
    // Y^{-1}(t) (0, g) = (-sin t g, cos t g)
    acc1 -= std::sin(t) * g;
    acc2 += std::cos(t) * g;
  }
  return {h * acc1, h * acc2};
}

AveragedValue f_closed(const Subcase& sub, const ScaledParams& p, State z) {
  const double x = z.x, y = z.y, s = x * x + y * y;
  AveragedValue f;
  if (sub.include_dcos) f.f2 += pi * p.d;
  if (sub.include_ry) {
    f.f1 += pi * p.r * x;
    f.f2 += pi * p.r * y;
  }
  if (sub.include_rx2y) {
    f.f1 -= 0.25 * pi * p.r * x * s;
    f.f2 -= 0.25 * pi * p.r * y * s;
  }
  if (sub.include_ax3) {
    f.f1 += 0.75 * pi * p.a * y * s;
    f.f2 -= 0.75 * pi * p.a * x * s;
  }
  if (sub.include_lx5) {
    f.f1 += 0.625 * pi * p.l * y * s * s;
    f.f2 -= 0.625 * pi * p.l * x * s * s;
  }
  return f;
}

Jacobian2 jacobian(const Subcase& sub, const ScaledParams& p, State z) {
  const double x = z.x, y = z.y, s = x * x + y * y;
  Jacobian2 j;
  if (sub.include_ry) {
    j.m11 += pi * p.r;
    j.m22 += pi * p.r;
  }
  if (sub.include_rx2y) {
    const double k = 0.25 * pi * p.r;
    j.m11 -= k * (s + 2.0 * x * x);
    j.m12 -= k * 2.0 * x * y;
    j.m21 -= k * 2.0 * x * y;
    j.m22 -= k * (s + 2.0 * y * y);
  }
  if (sub.include_ax3) {
    const double k = 0.75 * pi * p.a;
    j.m11 += k * 2.0 * x * y;
    j.m12 += k * (s + 2.0 * y * y);
    j.m21 -= k * (s + 2.0 * x * x);
    j.m22 -= k * 2.0 * x * y;
  }
  if (sub.include_lx5) {
    const double k = 0.625 * pi * p.l;
    j.m11 += k * 4.0 * x * y * s;
    j.m12 += k * (s * s + 4.0 * y * y * s);
    j.m21 -= k * (s * s + 4.0 * x * x * s);
    j.m22 -= k * 4.0 * x * y * s;
  }
  return j;
}

}  // namespace orbitavg
