#pragma once

// Univariate polynomials, the quintic discrimination system, Sturm root
// isolation and the solver for zeros of the averaged function.

#include <string>
#include <vector>

#include "orbitavg/averaging.hpp"
#include "orbitavg/core_model.hpp"
#include "orbitavg/discriminants.hpp"

namespace orbitavg {

inline constexpr int kMaxDegree = 8;
// Relative band inside which a discriminant sign is read as zero.
inline constexpr double kSignTolerance = 1e-9;

class Poly {
 public:
  Poly() = default;
  // Ascending coefficients; trailing zeros are trimmed. Throws DomainError on
  // non-finite coefficients, an all-zero list or degree > 8.
  explicit Poly(std::vector<double> ascending);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coeffs() const { return c_; }
  double operator[](int i) const { return i <= degree() ? c_[static_cast<std::size_t>(i)] : 0.0; }
  double leading() const { return c_.back(); }
  double operator()(double x) const;
  Poly derivative() const;
  Poly monic() const;

 private:
  std::vector<double> c_;
};

struct DepressedQuintic {
  double p = 0.0, q = 0.0, u = 0.0, v = 0.0;
  double shift = 0.0;  // original variable = phi + shift
};

DepressedQuintic depress_quintic(const Poly& quintic);

using DiscriminantSystem = QuinticDiscriminants<double>;
DiscriminantSystem discriminant_system(const DepressedQuintic& dq);

struct RootProfile {
  std::vector<int> real_multiplicities;  // non-increasing
  int complex_pairs = 0;

  int degree() const;
  int real_count() const { return static_cast<int>(real_multiplicities.size()); }
  int simple_real_count() const;
  std::string str() const;  // e.g. "{2,1}+1c"

  friend bool operator==(const RootProfile&, const RootProfile&) = default;
};

// Signs (-1, 0, +1) of D5, D4, D3, D2, E2, F2.
struct SignPattern {
  int D5 = 0, D4 = 0, D3 = 0, D2 = 0, E2 = 0, F2 = 0;
};

SignPattern discriminant_signs(const DepressedQuintic& dq, double rel = kSignTolerance);
// Row 1..12 of the classification table.
int table_row(const SignPattern& s);
RootProfile profile_from_row(int row);
RootProfile classify_quintic(const DepressedQuintic& dq, double rel = kSignTolerance);
RootProfile cubic_classify(const Poly& cubic, double rel = kSignTolerance);

struct RealRoot {
  double value = 0.0;
  int multiplicity = 1;
};

std::vector<RealRoot> real_roots(const Poly& poly, double tol = 1e-12);
RootProfile profile_of(const std::vector<RealRoot>& roots, int degree);

// Number of distinct real roots in (lo, hi] by Sturm's theorem.
int sturm_count(const Poly& poly, double lo, double hi);

// ---- reductions of the averaged equations

// Theorem 5: quintic in x0 (monic). Theorems 6-8: the b1 resolvent in y0.
Poly b1_poly(int theorem, const ScaledParams& p);

// Thm 6: x0 from the linear Groebner element b2 at a root y0 of b1.
double thm6_x_from_b2(const ScaledParams& p, double y0);

struct AveragedZero {
  double x0 = 0.0;
  double y0 = 0.0;
  std::string source;
  double det = 0.0;
  double trace = 0.0;
  double residual = 0.0;
};

struct ZeroSearch {
  std::vector<AveragedZero> zeros;
  std::vector<std::string> failures;
};

// Simple zeros of f for the given subcase, sorted by (x0, y0).
// Throws ZeroFieldError for subcases with no active term.
ZeroSearch averaged_zeros(const Subcase& sub, const ScaledParams& p, double tol = 1e-10);

double zero_residual_bound(State z);

}  // namespace orbitavg
