#include "orbitavg/shooting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "orbitavg/certificates.hpp"
#include "orbitavg/error.hpp"
#include "orbitavg/rootfind.hpp"

namespace orbitavg {

namespace {

using std::numbers::pi;
constexpr double kTwoPi = 2.0 * pi;
constexpr double kBlowUp = 1e8;

template <std::size_t N>
using Vec = std::array<double, N>;

// Dormand-Prince 5(4) tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                 e6 = 22.0 / 525, e7 = -1.0 / 40;

template <std::size_t N, class Rhs, class Observer>
Vec<N> dopri(const Rhs& rhs, Vec<N> y, double t0, double t1, const IntegratorConfig& cfg,
             const Observer& observe) {
  validate(cfg);
  if (!(t1 > t0)) throw DomainError("integration needs t1 > t0");
  auto axpy = [](const Vec<N>& base, double h, std::initializer_list<std::pair<double, const Vec<N>*>> terms) {
    Vec<N> out = base;
    for (const auto& [w, k] : terms)
      for (std::size_t i = 0; i < N; ++i) out[i] += h * w * (*k)[i];
    return out;
  };

  double t = t0;
  double h = std::min({cfg.max_step, 0.01, t1 - t0});
  double err_old = 1e-4;
  Vec<N> k1 = rhs(t, y), k2, k3, k4, k5, k6, k7;
  long steps = 0;
  while (t < t1) {
    if (++steps > cfg.max_steps) throw IntegrationError("integration exceeded max_steps");
    bool last = false;
    if (t + h >= t1 || t + 1.01 * h >= t1) {
      h = t1 - t;
      last = true;
    }
    k2 = rhs(t + c2 * h, axpy(y, h, {{a21, &k1}}));
    k3 = rhs(t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    k4 = rhs(t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    k5 = rhs(t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    k6 = rhs(t + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const Vec<N> ynew = axpy(y, h, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
    k7 = rhs(t + h, ynew);
    double err = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
      const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(y[i]), std::abs(ynew[i]));
      err = std::max(err, std::abs(e) / sc);
    }
    if (!std::isfinite(err)) throw IntegrationError("non-finite state during integration");
    if (err <= 1.0) {
      t = last ? t1 : t + h;
      y = ynew;
      k1 = k7;
      double mag = 0.0;
      for (double v : y) mag = std::max(mag, std::abs(v));
      if (mag > kBlowUp) throw IntegrationError("state norm exceeded 1e8 (blow-up)");
      observe(t, y);
      // proportional-integral controller
      double fac = std::pow(err, 0.17) * std::pow(err_old, -0.04) / 0.9;
      fac = std::clamp(fac, 0.1, 5.0);
      h = std::min(h / fac, cfg.max_step);
      err_old = std::max(err, 1e-4);
    } else {
      h = h / std::min(5.0, std::pow(err, 0.2) / 0.9);
    }
    if (h < 1e-14 * std::max(1.0, std::abs(t))) throw IntegrationError("step size underflow");
  }
  return y;
}

struct NoObserver {
  template <std::size_t N>
  void operator()(double, const Vec<N>&) const {}
};

Vec<2> field(const PhysicalParams& p, double t, const Vec<2>& s) {
  const State d = vector_field(p, t, {s[0], s[1]});
  return {d.x, d.y};
}

Vec<6> variational_field(const PhysicalParams& p, double t, const Vec<6>& s) {
  const double x = s[0], y = s[1], x2 = x * x;
  const State d = vector_field(p, t, {x, y});
  const double a21v = -1.0 - 3.0 * p.alpha * x2 - 5.0 * p.lambda * x2 * x2 - 2.0 * p.rho * x * y;
  const double a22v = p.rho - p.rho * x2;
  // Phi row-major: s[2] s[3] / s[4] s[5]; Phi' = A Phi with A = [[0,1],[a21,a22]]
  return {d.x, d.y, s[4], s[5], a21v * s[2] + a22v * s[4], a21v * s[3] + a22v * s[5]};
}

}  // namespace

void validate(const IntegratorConfig& cfg) {
  if (!(cfg.rel_tol > 0.0 && cfg.rel_tol <= 1e-2) || !(cfg.abs_tol > 0.0 && cfg.abs_tol <= 1e-2))
    throw DomainError("integrator tolerances must lie in (0, 1e-2]");
  if (!(cfg.max_step > 0.0) || cfg.max_steps <= 0)
    throw DomainError("max_step and max_steps must be positive");
}

State integrate(const PhysicalParams& phys, State z0, double t0, double t1,
                const IntegratorConfig& cfg) {
  const auto rhs = [&phys](double t, const Vec<2>& s) { return field(phys, t, s); };
  const Vec<2> out = dopri<2>(rhs, {z0.x, z0.y}, t0, t1, cfg, NoObserver{});
  return {out[0], out[1]};
}

std::vector<std::pair<double, State>> sample_trajectory(const PhysicalParams& phys, State z0,
                                                       double t0, double t1, int n,
                                                       const IntegratorConfig& cfg) {
  if (n < 1) throw DomainError("need at least one sample interval");
  std::vector<std::pair<double, State>> out;
  out.emplace_back(t0, z0);
  State z = z0;
  for (int i = 1; i <= n; ++i) {
    const double ta = t0 + (t1 - t0) * (i - 1) / n, tb = t0 + (t1 - t0) * i / n;
    z = integrate(phys, z, ta, tb, cfg);
    out.emplace_back(tb, z);
  }
  return out;
}

State poincare_map(const PhysicalParams& phys, State z, const IntegratorConfig& cfg) {
  return integrate(phys, z, 0.0, kTwoPi, cfg);
}

Matrix2 monodromy(const PhysicalParams& phys, State z, const IntegratorConfig& cfg,
                  MonodromyMode mode) {
  if (mode == MonodromyMode::variational) {
    const auto rhs = [&phys](double t, const Vec<6>& s) { return variational_field(phys, t, s); };
    const Vec<6> out = dopri<6>(rhs, {z.x, z.y, 1.0, 0.0, 0.0, 1.0}, 0.0, kTwoPi, cfg, NoObserver{});
    return {{{out[2], out[3]}, {out[4], out[5]}}};
  }
  const double h = 1e-6 * (1.0 + norm(z));
  Matrix2 m{};
  for (int j = 0; j < 2; ++j) {
    const State e = j == 0 ? State{h, 0.0} : State{0.0, h};
    const State plus = poincare_map(phys, z + e, cfg), minus = poincare_map(phys, z - e, cfg);
    m[0][static_cast<std::size_t>(j)] = (plus.x - minus.x) / (2.0 * h);
    m[1][static_cast<std::size_t>(j)] = (plus.y - minus.y) / (2.0 * h);
  }
  return m;
}

double liouville_determinant(const PhysicalParams& phys, State z, const IntegratorConfig& cfg) {
  const auto rhs = [&phys](double t, const Vec<3>& s) {
    const State d = vector_field(phys, t, {s[0], s[1]});
    return Vec<3>{d.x, d.y, phys.rho * (1.0 - s[0] * s[0])};
  };
  const Vec<3> out = dopri<3>(rhs, {z.x, z.y, 0.0}, 0.0, kTwoPi, cfg, NoObserver{});
  return std::exp(out[2]);
}

double det(const Matrix2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

std::array<std::complex<double>, 2> eigenvalues(const Matrix2& m) {
  const Jacobian2 j{m[0][0], m[0][1], m[1][0], m[1][1]};
  return j.eigenvalues();
}

std::string to_string(FloquetStability s) {
  switch (s) {
    case FloquetStability::stable: return "stable";
    case FloquetStability::unstable_saddle: return "unstable-saddle";
    case FloquetStability::unstable_repellor: return "unstable-repellor";
    case FloquetStability::marginal: return "marginal";
  }
  return "marginal";
}

FloquetStability classify_multipliers(const std::array<std::complex<double>, 2>& mu) {
  constexpr double band = 1e-9;
  const double m1 = std::abs(mu[0]), m2 = std::abs(mu[1]);
  if (m1 < 1.0 - band && m2 < 1.0 - band) return FloquetStability::stable;
  if (m1 > 1.0 + band && m2 > 1.0 + band) return FloquetStability::unstable_repellor;
  if ((m1 > 1.0 + band && m2 < 1.0 - band) || (m2 > 1.0 + band && m1 < 1.0 - band))
    return FloquetStability::unstable_saddle;
  return FloquetStability::marginal;
}

ShootingResult shoot(const PhysicalParams& phys, State guess, const IntegratorConfig& cfg,
                     double tol) {
  if (!(tol > 0.0)) throw DomainError("shooting tolerance must be positive");
  State z = guess;
  State g = poincare_map(phys, z, cfg) - z;
  auto newton_matrix = [&](const Matrix2& m) {
    Matrix2 j = m;
    j[0][0] -= 1.0;
    j[1][1] -= 1.0;
    if (!(std::abs(det(j)) >= 1e-12))
      throw ShootingError("singular Newton matrix (|det(M - I)| < 1e-12)");
    return j;
  };
  for (int it = 0; it <= 50; ++it) {
    const Matrix2 m = monodromy(phys, z, cfg);
    const Matrix2 j = newton_matrix(m);
    if (norm(g) <= tol) {
      ShootingResult res;
      res.fixed_point = z;
      res.residual = norm(g);
      res.monodromy = m;
      res.multipliers = eigenvalues(m);
      res.stability = classify_multipliers(res.multipliers);
      res.iterations = it;
      return res;
    }
    if (it == 50) break;
    const double dj = det(j);
    const State step{-(j[1][1] * g.x - j[0][1] * g.y) / dj, -(-j[1][0] * g.x + j[0][0] * g.y) / dj};
    double lambda = 1.0;
    State trial = z + step;
    State gt;
    bool ok = false;
    for (int h = 0; h < 12; ++h) {
      try {
        gt = poincare_map(phys, trial, cfg) - trial;
        if (norm(gt) < norm(g) || h == 11) {
          ok = true;
          break;
        }
      } catch (const IntegrationError&) {
        // blow-up: shrink the step
      }
      lambda *= 0.5;
      trial = z + lambda * step;
    }
    if (!ok) throw ShootingError("Newton line search failed");
    z = trial;
    g = gt;
  }
  std::ostringstream msg;
  msg << "shooting did not converge in 50 iterations (residual " << norm(g) << ")";
  throw ShootingError(msg.str());
}

std::vector<State> theorem_predictions(int theorem, const ScaledParams& p) {
  if (theorem >= 1 && theorem <= 4) {
    const PredictedOrbit o = theorem_orbit(theorem, p);
    return {{o.x0, o.y0}};
  }
  if (theorem >= 5 && theorem <= 8) {
    std::vector<State> out;
    for (const AveragedZero& z : averaged_zeros(subcase_by_id(theorem_subcase(theorem)), p).zeros)
      out.push_back({z.x0, z.y0});
    return out;
  }
  throw DomainError("theorem must be in 1..8");
}

double loglog_slope(const std::vector<double>& eps, const std::vector<double>& err) {
  const std::size_t n = std::min(eps.size(), err.size());
  if (n < 2) return std::numeric_limits<double>::quiet_NaN();
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = std::log(eps[i]), y = std::log(err[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

SweepResult convergence_sweep(int theorem, const ScaledParams& p, const ScalingExponents& exps,
                              const std::vector<double>& eps_list, const IntegratorConfig& cfg,
                              double tol) {
  for (std::size_t i = 0; i < eps_list.size(); ++i) {
    if (!(eps_list[i] > 0.0 && eps_list[i] <= 0.2))
      throw DomainError("sweep eps values must lie in (0, 0.2]");
    if (i > 0 && !(eps_list[i] < eps_list[i - 1]))
      throw DomainError("sweep eps list must be strictly decreasing");
  }
  SweepResult result;
  if (eps_list.empty()) {
    result.slope = std::numeric_limits<double>::quiet_NaN();
    return result;
  }
  const Subcase sub = subcase_of(exps);
  if (sub.id != theorem_subcase(theorem))
    throw HypothesisError("exponents select subcase " + std::to_string(sub.id) + " but theorem " +
                          std::to_string(theorem) + " lives in subcase " +
                          std::to_string(theorem_subcase(theorem)));
  validate(p);
  const std::vector<State> preds = theorem_predictions(theorem, p);

  std::vector<std::vector<double>> be(preds.size()), bv(preds.size());
  for (double eps : eps_list) {
    const PhysicalParams phys = unscale(p, exps, eps);
    for (std::size_t b = 0; b < preds.size(); ++b) {
      SweepRow row;
      row.eps = eps;
      row.branch = static_cast<int>(b);
      row.predicted = preds[b];
      try {
        const ShootingResult s = shoot(phys, scale_state(preds[b], exps, eps), cfg, tol);
        row.converged = true;
        row.shot = unscale_state(s.fixed_point, exps, eps);
        row.error = norm(row.shot - row.predicted);
        row.residual = s.residual;
        row.mult_abs[0] = std::abs(s.multipliers[0]);
        row.mult_abs[1] = std::abs(s.multipliers[1]);
        row.stability = to_string(s.stability);
        if (row.error > 0.0) {
          be[b].push_back(eps);
          bv[b].push_back(row.error);
        }
      } catch (const Error& e) {
        row.message = e.what();
      }
      result.rows.push_back(row);
    }
  }
  result.slope = std::numeric_limits<double>::quiet_NaN();
  for (std::size_t b = 0; b < preds.size(); ++b) {
    const double s = be[b].size() >= 3 ? loglog_slope(be[b], bv[b])
                                        : std::numeric_limits<double>::quiet_NaN();
    result.branch_slopes.push_back(s);
    if (std::isfinite(s) && !(result.slope <= s)) result.slope = s;
  }
  return result;
}

}  // namespace orbitavg
