#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "orbitavg/error.hpp"
#include "orbitavg/rootfind.hpp"

namespace orbitavg {

namespace {

using std::numbers::pi;

struct Candidate {
  State z;
  std::string source;
};

bool solve2(const Jacobian2& j, AveragedValue f, State& step) {
  const double det = j.det();
  if (!(std::abs(det) > 1e-14 * std::max(1.0, j.max_abs() * j.max_abs()))) return false;
  step = {-(j.m22 * f.f1 - j.m12 * f.f2) / det, -(-j.m21 * f.f1 + j.m11 * f.f2) / det};
  return std::isfinite(step.x) && std::isfinite(step.y);
}

// Damped Newton on f. Returns false on a singular Jacobian, divergence or
// non-convergence.
bool newton2(const Subcase& sub, const ScaledParams& p, State& z, double tol) {
  AveragedValue f = f_closed(sub, p, z);
  for (int it = 0; it < 100; ++it) {
    State step;
    if (!solve2(jacobian(sub, p, z), f, step)) return false;
    double lambda = 1.0;
    State trial = z + step;
    AveragedValue ft = f_closed(sub, p, trial);
    for (int h = 0; h < 30 && !(norm(ft) < norm(f)); ++h) {
      lambda *= 0.5;
      trial = z + lambda * step;
      ft = f_closed(sub, p, trial);
    }
    const double moved = lambda * norm(step);
    z = trial;
    f = ft;
    if (!std::isfinite(z.x) || !std::isfinite(z.y) || norm(z) > 1e6) return false;
    if (moved < tol && norm(f) <= zero_residual_bound(z)) return true;
  }
  return norm(f) <= zero_residual_bound(z);
}

std::vector<double> simple_real_roots(const Poly& poly) {
  std::vector<double> out;
  for (const RealRoot& r : real_roots(poly))
    if (r.multiplicity == 1) out.push_back(r.value);
  return out;
}

// f1(x, y0) for fixed y0 as a polynomial in x (full model and its subsets).
Poly f1_in_x(const Subcase& sub, const ScaledParams& p, double y) {
  std::vector<double> c(6, 0.0);
  const double y2 = y * y;
  if (sub.include_ry) c[1] += p.r;
  if (sub.include_rx2y) {
    c[1] -= 0.25 * p.r * y2;
    c[3] -= 0.25 * p.r;
  }
  if (sub.include_ax3) {
    c[0] += 0.75 * p.a * y * y2;
    c[2] += 0.75 * p.a * y;
  }
  if (sub.include_lx5) {
    c[0] += 0.625 * p.l * y * y2 * y2;
    c[2] += 1.25 * p.l * y * y2;
    c[4] += 0.625 * p.l * y;
  }
  while (c.size() > 1 && c.back() == 0.0) c.pop_back();
  if (c.size() == 1 && c[0] == 0.0) return Poly({1.0});
  return Poly(c);
}

std::vector<Candidate> grid_candidates(const Subcase& sub, const ScaledParams& p, double tol) {
  std::vector<Candidate> out;
  for (int i = 0; i < 17; ++i)
    for (int j = 0; j < 17; ++j) {
      State z{-4.0 + 0.5 * i, -4.0 + 0.5 * j};
      if (newton2(sub, p, z, tol)) out.push_back({z, "grid-newton"});
    }
  return out;
}

// Quintic b1 in y0, then x0 from the real roots of f1(., y0), keeping the
// candidate that best satisfies f2.
std::vector<Candidate> quintic_b1_candidates(int theorem, const Subcase& sub,
                                             const ScaledParams& p, ZeroSearch& search) {
  std::vector<Candidate> out;
  const std::string tag = "b1-quintic(thm" + std::to_string(theorem) + ")";
  for (double y : simple_real_roots(b1_poly(theorem, p))) {
    const Poly g = f1_in_x(sub, p, y);
    std::vector<double> xs;
    if (g.degree() >= 1)
      for (const RealRoot& r : real_roots(g)) xs.push_back(r.value);
    double best_x = 0.0, best = INFINITY;
    for (double x : xs) {
      const double res = norm(f_closed(sub, p, {x, y}));
      if (res < best) {
        best = res;
        best_x = x;
      }
    }
    if (!std::isfinite(best)) {
      std::ostringstream msg;
      msg << tag << ": no x0 for y0=" << y;
      search.failures.push_back(msg.str());
      continue;
    }
    out.push_back({{best_x, y}, tag});
  }
  return out;
}

std::vector<Candidate> theorem_candidates(const Subcase& sub, const ScaledParams& p,
                                          double tol, ZeroSearch& search) {
  std::vector<Candidate> out;
  switch (sub.id) {
    case 8:  // x0 = 0, -(r/4) y^3 + r y + d = 0
      if (p.r == 0.0) return out;
      for (double y : simple_real_roots(Poly({p.d, p.r, 0.0, -0.25 * p.r})))
        out.push_back({{0.0, y}, "x0=0 cubic"});
      return out;
    case 10:  // y0 = 0, (3a/4) x^3 = d
      if (p.a == 0.0) return out;
      out.push_back({{std::cbrt(4.0 * p.d / (3.0 * p.a)), 0.0}, "y0=0 cubic"});
      return out;
    case 11: {  // y0 = 0, (5l/8) x^5 = d
      if (p.l == 0.0) return out;
      const double v = 8.0 * p.d / (5.0 * p.l);
      out.push_back({{std::copysign(std::pow(std::abs(v), 0.2), v), 0.0}, "y0=0 quintic"});
      return out;
    }
    case 17:
      if (p.r == 0.0) return out;
      out.push_back({{0.0, -p.d / p.r}, "linear"});
      return out;
    case 5:
      if (p.l == 0.0) return grid_candidates(sub, p, tol);
      for (double x : simple_real_roots(b1_poly(5, p))) out.push_back({{x, 0.0}, "y0=0 quintic"});
      return out;
    case 3: {
      const double c1 = thm6_b2_xcoef(p.a * p.a, p.r * p.r, p.d * p.d);
      if (c1 == 0.0 || p.r == 0.0) {
        search.failures.push_back("b2 x0-coefficient vanishes; grid search used");
        return grid_candidates(sub, p, tol);
      }
      for (double y : simple_real_roots(b1_poly(6, p)))
        out.push_back({{thm6_x_from_b2(p, y), y}, "b1-cubic+b2(thm6)"});
      return out;
    }
    case 1:
      if (p.a == 0.0 || p.r == 0.0 || p.l == 0.0) return grid_candidates(sub, p, tol);
      return quintic_b1_candidates(7, sub, p, search);
    case 4:
      if (p.r == 0.0 || p.l == 0.0) return grid_candidates(sub, p, tol);
      return quintic_b1_candidates(8, sub, p, search);
    default:
      return grid_candidates(sub, p, tol);
  }
}

}  // namespace

double zero_residual_bound(State z) {
  const double s = z.x * z.x + z.y * z.y;
  return 1e-9 * (1.0 + s * s * s);
}

Poly b1_poly(int theorem, const ScaledParams& p) {
  const double a = p.a, r = p.r, d = p.d, l = p.l;
  switch (theorem) {
    case 5:
      if (l == 0.0) throw HypothesisError("theorem 5 reduction needs l != 0");
      return Poly({-8.0 * d / (5.0 * l), 0.0, 0.0, 6.0 * a / (5.0 * l), 0.0, 1.0});
    case 6: {
      const double a2 = a * a, d2 = d * d, r2 = r * r, r3 = r2 * r, r4 = r2 * r2;
      if (thm6_b2_xcoef(a2, r2, d2) == 0.0)
        throw HypothesisError(
            "theorem 6 needs -324a^4r^2 - 9a^2d^2r^2 + 36a^2r^4 - d^2r^4 != 0");
      return Poly({144 * a2 * d * r3 - 4 * d2 * d * r3,
                   108 * a2 * d2 * r2 + 144 * a2 * r4 - 4 * d2 * r4, 144 * a2 * d * r3,
                   81 * a2 * a2 * d2 + 18 * a2 * d2 * r2 + d2 * r4});
    }
    case 7: {
      if (a == 0.0 || r == 0.0 || l == 0.0) throw HypothesisError("theorem 7 reduction needs a r l != 0");
      const double a2 = a * a, d2 = d * d, d3 = d2 * d, l2 = l * l, r2 = r * r, r3 = r2 * r,
                   r4 = r2 * r2, r5 = r4 * r, r6 = r4 * r2;
      return Poly({144 * a2 * d * r5 - 4 * d3 * r5 + 960 * a * d * l * r5 + 1600 * d * l2 * r5,
                   108 * a2 * d2 * r4 + 960 * a * d2 * l * r4 + 2000 * d2 * l2 * r4 +
                       144 * a2 * r6 - 4 * d2 * r6 + 960 * a * l * r6 + 1600 * l2 * r6,
                   120 * a * d3 * l * r3 + 500 * d3 * l2 * r3 + 144 * a2 * d * r5 +
                       1200 * a * d * l * r5 + 2400 * d * l2 * r5,
                   81 * a2 * a2 * d2 * r2 + 540 * a2 * a * d2 * l * r2 + 900 * a2 * d2 * l2 * r2 +
                       18 * a2 * d2 * r4 + 300 * a * d2 * l * r4 + 900 * d2 * l2 * r4 + d2 * r6,
                   -450 * a2 * d3 * l2 * r - 1500 * a * d3 * l2 * l * r + 50 * d3 * l2 * r3,
                   625 * d2 * d2 * l2 * l2});
    }
    case 8: {
      if (r == 0.0 || l == 0.0) throw HypothesisError("theorem 8 reduction needs r l != 0");
      const double d2 = d * d, d3 = d2 * d, l2 = l * l, r2 = r * r, r3 = r2 * r, r4 = r2 * r2,
                   r5 = r4 * r, r6 = r4 * r2;
      return Poly({-4 * d3 * r5 + 1600 * d * l2 * r5,
                   2000 * d2 * l2 * r4 - 4 * d2 * r6 + 1600 * l2 * r6,
                   500 * d3 * l2 * r3 + 2400 * d * l2 * r5, 900 * d2 * l2 * r4 + d2 * r6,
                   50 * d3 * l2 * r3, 625 * d2 * d2 * l2 * l2});
    }
    default:
      throw DomainError("b1_poly is defined for theorems 5..8");
  }
}

double thm6_x_from_b2(const ScaledParams& p, double y) {
  const double a = p.a, r = p.r, d = p.d, a2 = a * a, a3 = a2 * a, d2 = d * d, r2 = r * r;
  const double c1 = thm6_b2_xcoef(a2, r2, d2);
  if (c1 == 0.0) throw HypothesisError("theorem 6 b2 x0-coefficient vanishes");
  const double rest = 216 * a3 * d * r2 + (27 * a3 * d2 * r + 216 * a3 * r2 * r + 3 * a * d2 * r2 * r) * y +
                      (243 * a3 * a2 * d + 54 * a3 * d * r2 + 3 * a * d * r2 * r2) * y * y;
  return -rest / c1;
}

ZeroSearch averaged_zeros(const Subcase& sub, const ScaledParams& p, double tol) {
  if (!sub.any_term())
    throw ZeroFieldError("zero first-order field: subcase " + std::to_string(sub.id) +
                         " has no active term");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  ZeroSearch search;
  std::vector<Candidate> cands = theorem_candidates(sub, p, tol, search);

  std::vector<AveragedZero> zeros;
  int grid_degenerate = 0;
  for (Candidate& c : cands) {
    State z = c.z;
    if (!(norm(f_closed(sub, p, z)) <= zero_residual_bound(z))) {
      State polished = z;
      if (!newton2(sub, p, polished, tol) || norm(polished - z) > 1e-3 * (1.0 + norm(z))) {
        std::ostringstream msg;
        msg << c.source << ": Newton polish failed near (" << z.x << ", " << z.y << ")";
        search.failures.push_back(msg.str());
        continue;
      }
      z = polished;
    }
    const Jacobian2 j = jacobian(sub, p, z);
    AveragedZero az;
    az.x0 = z.x;
    az.y0 = z.y;
    az.source = c.source;
    az.det = j.det();
    az.trace = j.trace();
    az.residual = norm(f_closed(sub, p, z));
    if (!(std::abs(az.det) > 1e-9 * std::max(1.0, j.max_abs() * j.max_abs()))) {
      if (c.source == "grid-newton") {
        ++grid_degenerate;
        continue;
      }
      std::ostringstream msg;
      msg << c.source << ": non-simple zero at (" << z.x << ", " << z.y << ") dropped";
      search.failures.push_back(msg.str());
      continue;
    }
    bool dup = false;
    for (const AveragedZero& e : zeros)
      if (std::hypot(e.x0 - az.x0, e.y0 - az.y0) <= 10.0 * tol) dup = true;
    if (!dup) zeros.push_back(az);
  }
  if (grid_degenerate > 0)
    search.failures.push_back("grid-newton: " + std::to_string(grid_degenerate) +
                              " seeds reached non-simple zeros");
  std::sort(zeros.begin(), zeros.end(), [](const AveragedZero& a, const AveragedZero& b) {
    return a.x0 != b.x0 ? a.x0 < b.x0 : a.y0 < b.y0;
  });
  search.zeros = std::move(zeros);
  return search;
}

}  // namespace orbitavg
