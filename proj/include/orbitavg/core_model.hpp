#pragma once

// The extended Duffing-Van der Pol oscillator
//
//   x' = y
//   y' = -x + rho y - alpha x^3 - rho x^2 y - lambda x^5 + delta cos t
//
// together with the eps-rescaling that selects which terms act at first
// order, and the 20 first-order subcases that rescaling can produce.

#include <array>
#include <string>
#include <vector>

namespace orbitavg {

struct State {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const State&, const State&) = default;
};

State operator+(State a, State b);
State operator-(State a, State b);
State operator*(double k, State s);
double norm(State s);

struct PhysicalParams {
  double rho = 0.0;
  double alpha = 0.0;
  double lambda = 0.0;
  double delta = 0.0;
};

// Scaled coefficients (r, a, l, d) of the rescaled system.
struct ScaledParams {
  double r = 0.0;
  double a = 0.0;
  double l = 0.0;
  double d = 0.0;
};

// Non-negative integer powers of eps: x = eps^m X, y = eps^m Y,
// rho = eps^n1 r, alpha = eps^n2 a, lambda = eps^n3 l, delta = eps^n4 d.
struct ScalingExponents {
  int m = 0;
  int n1 = 1;
  int n2 = 1;
  int n3 = 1;
  int n4 = 1;

  friend bool operator==(const ScalingExponents&, const ScalingExponents&) = default;
};

// The five eps-powers multiplying r y, r x^2 y, a x^3, l x^5 and d cos t.
struct TermPowers {
  int ry = 0;
  int rx2y = 0;
  int ax3 = 0;
  int lx5 = 0;
  int dcos = 0;
};

TermPowers term_powers(const ScalingExponents& exps);

// Throws DomainError (negative exponents, n4 < m) or AveragingInapplicable
// (some power is zero; the message names the matching unperturbed case C1..C17).
void validate(const ScalingExponents& exps);

// Throws DomainError when delta <= 0, rho < 0 or lambda == 0.
void validate(const PhysicalParams& phys);

// Throws DomainError when d <= 0 or r < 0.
void validate(const ScaledParams& p);

// Which terms survive at first order in eps.
struct Subcase {
  int id = 0;
  bool include_ry = false;
  bool include_rx2y = false;
  bool include_ax3 = false;
  bool include_lx5 = false;
  bool include_dcos = false;
  bool m_positive = false;

  bool any_term() const {
    return include_ry || include_rx2y || include_ax3 || include_lx5 || include_dcos;
  }
  std::string describe() const;

  friend bool operator==(const Subcase&, const Subcase&) = default;
};

inline constexpr int kSubcaseCount = 20;

Subcase subcase_by_id(int id);
Subcase subcase_of(const ScalingExponents& exps);

// Subcases in which the eight existence theorems live: 8, 10, 11, 17, 5, 3, 1, 4.
int theorem_subcase(int theorem);
// 0 when the subcase is not one of the theorem subcases.
int theorem_of_subcase(int id);

// A representative exponent vector realising subcase `id` (inactive powers set to 2).
ScalingExponents canonical_exponents(int id);

ScaledParams apply_scaling(const PhysicalParams& phys, const ScalingExponents& exps, double eps);
PhysicalParams unscale(const ScaledParams& scaled, const ScalingExponents& exps, double eps);

// (x, y) = eps^m (X, Y)
State scale_state(State scaled, const ScalingExponents& exps, double eps);
State unscale_state(State physical, const ScalingExponents& exps, double eps);

State vector_field(const PhysicalParams& phys, double t, State s);

}  // namespace orbitavg
