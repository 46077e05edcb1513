#pragma once

// Theorem-level predictions: explicit orbits for theorems 1-4, counting
// certificates for theorems 5-8 and the golden example suite.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitavg/averaging.hpp"
#include "orbitavg/exact.hpp"

namespace orbitavg {

enum class OrbitStability { stable, unstable_saddle, unstable_repellor, undecided };

std::string to_string(OrbitStability s);

// Real parts within 1e-9 * max(1, max|M_ij|) of zero give `undecided`.
OrbitStability classify_stability(const Jacobian2& m);

struct PredictedOrbit {
  double x0 = 0.0;
  double y0 = 0.0;
  Jacobian2 jacobian;
  OrbitStability stability = OrbitStability::undecided;
};

PredictedOrbit thm1_orbit(double r, double d);
PredictedOrbit thm2_orbit(double a, double d);
PredictedOrbit thm3_orbit(double l, double d);
PredictedOrbit thm4_orbit(double r, double d);
PredictedOrbit theorem_orbit(int theorem, const ScaledParams& p);  // theorems 1..4

// Exact parameter values for sign confirmation. Squares may be given when the
// value itself is irrational (r = sqrt(31)/4 has r2 = 31/16).
struct ExactPoint {
  std::optional<Surd> a, r, l, d;
  std::optional<Surd> a2, r2, l2, d2;
};

struct CountCertificate {
  int theorem = 0;
  std::vector<std::pair<std::string, double>> discriminants;
  std::vector<std::pair<std::string, std::string>> exact_values;
  int predicted_count = 0;
  bool hypotheses_ok = true;
  std::vector<std::string> violated;
  bool exact = false;
};

// Theorems 5..8. Throws UndecidedError when the deciding discriminant is
// within the sign band of zero and no exact value confirms it, or when the
// theorem makes no claim (theorem 7 with D = 0, theorem 8 five-root pattern).
// Violated hypotheses are reported in the certificate, not thrown.
CountCertificate count_certificate(int theorem, const ScaledParams& p,
                                   const std::optional<ExactPoint>& exact = std::nullopt);

// Throws HypothesisError naming the violated hypotheses, if any.
void require_hypotheses(const CountCertificate& cert);

struct GoldenEntry {
  int theorem = 0;
  std::string name;
  std::string expected;
  std::string got;
  bool pass = false;

  std::string line() const;  // THM<k> <name> expected=<v> got=<v> status=PASS|FAIL
};

std::vector<GoldenEntry> certify_golden_examples();

std::string format_double(double v);

}  // namespace orbitavg
