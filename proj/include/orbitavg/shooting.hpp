#pragma once

// Numerical verification on the full system: adaptive Dormand-Prince
// integration, the time-2pi Poincare map, monodromy, Newton shooting for
// fixed points and eps-convergence sweeps.

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "orbitavg/averaging.hpp"
#include "orbitavg/core_model.hpp"

namespace orbitavg {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double max_step = 0.5;
  long max_steps = 1'000'000;
};

// Tolerances must lie in (0, 1e-2]; max_step and max_steps positive.
void validate(const IntegratorConfig& cfg);

// Solution of the full system at t1 starting from z0 at t0.
State integrate(const PhysicalParams& phys, State z0, double t0, double t1,
                const IntegratorConfig& cfg = {});

// Samples (t, state) along the trajectory at n + 1 equally spaced times.
std::vector<std::pair<double, State>> sample_trajectory(const PhysicalParams& phys, State z0,
                                                       double t0, double t1, int n,
                                                       const IntegratorConfig& cfg = {});

State poincare_map(const PhysicalParams& phys, State z, const IntegratorConfig& cfg = {});

enum class MonodromyMode { variational, finite_difference };

Matrix2 monodromy(const PhysicalParams& phys, State z, const IntegratorConfig& cfg = {},
                  MonodromyMode mode = MonodromyMode::variational);

// exp(int_0^{2pi} rho (1 - x(t)^2) dt) along the orbit through z.
double liouville_determinant(const PhysicalParams& phys, State z, const IntegratorConfig& cfg = {});

double det(const Matrix2& m);
std::array<std::complex<double>, 2> eigenvalues(const Matrix2& m);

enum class FloquetStability { stable, unstable_saddle, unstable_repellor, marginal };
std::string to_string(FloquetStability s);
FloquetStability classify_multipliers(const std::array<std::complex<double>, 2>& mu);

struct ShootingResult {
  State fixed_point;
  double residual = 0.0;
  Matrix2 monodromy{};
  std::array<std::complex<double>, 2> multipliers{};
  FloquetStability stability = FloquetStability::marginal;
  int iterations = 0;
};

inline constexpr double kDefaultShootTol = 1e-10;

// Damped Newton on P(z) - z. Throws ShootingError on a singular Newton
// matrix or after 50 iterations without convergence.
ShootingResult shoot(const PhysicalParams& phys, State guess, const IntegratorConfig& cfg = {},
                     double tol = kDefaultShootTol);

struct SweepRow {
  double eps = 0.0;
  int branch = 0;
  State predicted;  // scaled coordinates
  bool converged = false;
  State shot;       // scaled coordinates
  double error = 0.0;
  double residual = 0.0;
  double mult_abs[2] = {0.0, 0.0};
  std::string stability;
  std::string message;
};

struct SweepResult {
  std::vector<SweepRow> rows;            // eps-major, then branch
  std::vector<double> branch_slopes;     // NaN where fewer than 3 rows converged
  double slope = 0.0;                    // min over finite branch slopes, NaN if none
};

// Averaged predictions in scaled coordinates for a theorem: the explicit
// orbit (theorems 1..4) or all simple zeros of the averaged function (5..8).
std::vector<State> theorem_predictions(int theorem, const ScaledParams& p);

// eps_list must be strictly decreasing with every value in (0, 0.2].
// Shooting failures are recorded per row.
SweepResult convergence_sweep(int theorem, const ScaledParams& p, const ScalingExponents& exps,
                              const std::vector<double>& eps_list, const IntegratorConfig& cfg = {},
                              double tol = kDefaultShootTol);

// Least-squares slope of log(error) against log(eps).
double loglog_slope(const std::vector<double>& eps, const std::vector<double>& err);

}  // namespace orbitavg
