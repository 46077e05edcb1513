#include "orbitavg/core_model.hpp"

#include <cmath>
#include <sstream>

#include "orbitavg/error.hpp"

namespace orbitavg {

State operator+(State a, State b) { return {a.x + b.x, a.y + b.y}; }
State operator-(State a, State b) { return {a.x - b.x, a.y - b.y}; }
State operator*(double k, State s) { return {k * s.x, k * s.y}; }
double norm(State s) { return std::hypot(s.x, s.y); }

TermPowers term_powers(const ScalingExponents& e) {
  return {e.n1, 2 * e.m + e.n1, 2 * e.m + e.n2, 4 * e.m + e.n3, e.n4 - e.m};
}

namespace {

// Unperturbed-system case of the 18-way split on which powers vanish.
// Only C18 (all powers positive) leaves the linear center.
int unperturbed_case(const TermPowers& p) {
  const bool z1 = p.ry == 0, z2 = p.rx2y == 0, z3 = p.ax3 == 0, z4 = p.lx5 == 0,
             z5 = p.dcos == 0;
  if (z1) {
    if (z2) return 1 + (z3 ? 0 : 4) + (z4 ? 0 : 2) + (z5 ? 0 : 1);
    return z5 ? 9 : 10;
  }
  if (z3) return 11 + (z4 ? 0 : 2) + (z5 ? 0 : 1);
  if (z4) return z5 ? 15 : 16;
  return z5 ? 17 : 18;
}

struct Row {
  bool ry, rx2y, ax3, lx5, dcos, m_positive;
};

// Flag patterns of the 20 first-order subcases, in table order.
constexpr std::array<Row, kSubcaseCount> kRows = {{
    {true, true, true, true, true, false},     // 1
    {true, true, true, true, false, false},    // 2
    {true, true, true, false, true, false},    // 3
    {true, true, false, true, true, false},    // 4
    {false, false, true, true, true, false},   // 5
    {true, true, true, false, false, false},   // 6
    {true, true, false, true, false, false},   // 7
    {true, true, false, false, true, false},   // 8
    {false, false, true, true, false, false},  // 9
    {false, false, true, false, true, false},  // 10
    {false, false, false, true, true, false},  // 11
    {true, true, false, false, false, false},  // 12
    {false, false, true, false, false, false}, // 13
    {false, false, false, true, false, false}, // 14
    {false, false, false, false, true, false}, // 15
    {false, false, false, false, false, false},// 16
    {true, false, false, false, true, true},   // 17
    {true, false, false, false, false, true},  // 18
    {false, false, false, false, true, true},  // 19
    {false, false, false, false, false, true}, // 20
}};

constexpr std::array<int, 8> kTheoremSubcase = {8, 10, 11, 17, 5, 3, 1, 4};

}  // namespace

void validate(const ScalingExponents& e) {
  if (e.m < 0 || e.n1 < 0 || e.n2 < 0 || e.n3 < 0 || e.n4 < 0)
    throw DomainError("scaling exponents must be non-negative integers");
  if (e.n4 < e.m) throw DomainError("scaling exponents require n4 >= m");
  const TermPowers p = term_powers(e);
  if (p.ry == 0 || p.rx2y == 0 || p.ax3 == 0 || p.lx5 == 0 || p.dcos == 0) {
    std::ostringstream msg;
    msg << "averaging inapplicable: unperturbed case C" << unperturbed_case(p)
        << " (powers n1=" << p.ry << ", 2m+n1=" << p.rx2y << ", 2m+n2=" << p.ax3
        << ", 4m+n3=" << p.lx5 << ", n4-m=" << p.dcos << "; all must be >= 1)";
    throw AveragingInapplicable(msg.str());
  }
}

void validate(const PhysicalParams& phys) {
  if (!(phys.delta > 0.0)) throw DomainError("delta must be positive");
  if (!(phys.rho >= 0.0)) throw DomainError("rho must be non-negative");
  if (phys.lambda == 0.0 || !std::isfinite(phys.lambda))
    throw DomainError("lambda must be finite and nonzero");
  if (!std::isfinite(phys.alpha) || !std::isfinite(phys.delta) || !std::isfinite(phys.rho))
    throw DomainError("physical parameters must be finite");
}

void validate(const ScaledParams& p) {
  if (!(p.d > 0.0)) throw DomainError("d must be positive");
  if (!(p.r >= 0.0)) throw DomainError("r must be non-negative");
  if (!std::isfinite(p.a) || !std::isfinite(p.l) || !std::isfinite(p.d) || !std::isfinite(p.r))
    throw DomainError("scaled parameters must be finite");
}

std::string Subcase::describe() const {
  std::string out;
  auto add = [&out](bool on, const char* term) {
    if (!on) return;
    if (!out.empty()) out += " + ";
    out += term;
  };
  add(include_ry, "r y");
  add(include_rx2y, "-r x^2 y");
  add(include_ax3, "-a x^3");
  add(include_lx5, "-l x^5");
  add(include_dcos, "d cos t");
  return out.empty() ? "0" : out;
}

Subcase subcase_by_id(int id) {
  if (id < 1 || id > kSubcaseCount) throw DomainError("subcase id must be in 1..20");
  const Row& row = kRows[static_cast<std::size_t>(id - 1)];
  return {id, row.ry, row.rx2y, row.ax3, row.lx5, row.dcos, row.m_positive};
}

Subcase subcase_of(const ScalingExponents& exps) {
  validate(exps);
  const TermPowers p = term_powers(exps);
  const Row want{p.ry == 1, p.rx2y == 1, p.ax3 == 1, p.lx5 == 1, p.dcos == 1, exps.m > 0};
  for (int id = 1; id <= kSubcaseCount; ++id) {
    const Row& row = kRows[static_cast<std::size_t>(id - 1)];
    if (row.ry == want.ry && row.rx2y == want.rx2y && row.ax3 == want.ax3 &&
        row.lx5 == want.lx5 && row.dcos == want.dcos && row.m_positive == want.m_positive)
      return subcase_by_id(id);
  }
  // Unreachable for validated exponents: with m = 0 both r-terms share n1,
  // with m > 0 only r y and d cos t can reach power one.
  throw DomainError("no subcase matches the exponent pattern");
}

int theorem_subcase(int theorem) {
  if (theorem < 1 || theorem > 8) throw DomainError("theorem must be in 1..8");
  return kTheoremSubcase[static_cast<std::size_t>(theorem - 1)];
}

int theorem_of_subcase(int id) {
  for (std::size_t k = 0; k < kTheoremSubcase.size(); ++k)
    if (kTheoremSubcase[k] == id) return static_cast<int>(k) + 1;
  return 0;
}

ScalingExponents canonical_exponents(int id) {
  const Subcase s = subcase_by_id(id);
  ScalingExponents e;
  if (!s.m_positive) {
    e.m = 0;
    e.n1 = s.include_ry ? 1 : 2;
    e.n2 = s.include_ax3 ? 1 : 2;
    e.n3 = s.include_lx5 ? 1 : 2;
    e.n4 = s.include_dcos ? 1 : 2;
  } else {
    e.m = 1;
    e.n1 = s.include_ry ? 1 : 2;
    e.n2 = 1;
    e.n3 = 1;
    e.n4 = e.m + (s.include_dcos ? 1 : 2);
  }
  return e;
}

ScaledParams apply_scaling(const PhysicalParams& phys, const ScalingExponents& exps, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("eps must be positive");
  validate(exps);
  return {phys.rho / std::pow(eps, exps.n1), phys.alpha / std::pow(eps, exps.n2),
          phys.lambda / std::pow(eps, exps.n3), phys.delta / std::pow(eps, exps.n4)};
}

PhysicalParams unscale(const ScaledParams& scaled, const ScalingExponents& exps, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("eps must be positive");
  PhysicalParams phys{scaled.r * std::pow(eps, exps.n1), scaled.a * std::pow(eps, exps.n2),
                      scaled.l * std::pow(eps, exps.n3), scaled.d * std::pow(eps, exps.n4)};
  if (!(phys.delta > 0.0)) throw DomainError("unscaled delta must be positive");
  if (!(phys.rho >= 0.0)) throw DomainError("unscaled rho must be non-negative");
  return phys;
}

State scale_state(State scaled, const ScalingExponents& exps, double eps) {
  return std::pow(eps, exps.m) * scaled;
}

State unscale_state(State physical, const ScalingExponents& exps, double eps) {
  return (1.0 / std::pow(eps, exps.m)) * physical;
}

State vector_field(const PhysicalParams& p, double t, State s) {
  const double x2 = s.x * s.x;
  return {s.y, -s.x + p.rho * s.y - p.alpha * x2 * s.x - p.rho * x2 * s.y -
                   p.lambda * x2 * x2 * s.x + p.delta * std::cos(t)};
}

}  // namespace orbitavg
