#include "orbitavg/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "orbitavg/error.hpp"

namespace orbitavg {

namespace {

using Coeffs = std::vector<double>;

double max_abs(const Coeffs& c) {
  double m = 0.0;
  for (double v : c) m = std::max(m, std::abs(v));
  return m;
}

void trim(Coeffs& c, double abs_tol) {
  while (c.size() > 1 && std::abs(c.back()) <= abs_tol) c.pop_back();
  if (c.size() == 1 && std::abs(c[0]) <= abs_tol) c[0] = 0.0;
}

bool is_zero(const Coeffs& c) { return c.size() == 1 && c[0] == 0.0; }
int deg(const Coeffs& c) { return static_cast<int>(c.size()) - 1; }

Coeffs scaled(Coeffs c) {
  const double m = max_abs(c);
  if (m > 0.0)
    for (double& v : c) v /= m;
  return c;
}

double horner(const Coeffs& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Coeffs derivative(const Coeffs& c) {
  if (c.size() <= 1) return {0.0};
  Coeffs d(c.size() - 1);
  for (std::size_t i = 1; i < c.size(); ++i) d[i - 1] = static_cast<double>(i) * c[i];
  return d;
}

// Polynomial long division a = q b + r. Remainder coefficients below
// rel * max|a| are dropped.
void divide(const Coeffs& a, const Coeffs& b, Coeffs& q, Coeffs& r, double rel) {
  r = a;
  const int db = deg(b);
  if (deg(a) < db) {
    q = {0.0};
    return;
  }
  q.assign(static_cast<std::size_t>(deg(a) - db + 1), 0.0);
  const double lead = b.back();
  for (int k = deg(a) - db; k >= 0; --k) {
    const double f = r[static_cast<std::size_t>(k + db)] / lead;
    q[static_cast<std::size_t>(k)] = f;
    for (int j = 0; j <= db; ++j)
      r[static_cast<std::size_t>(k + j)] -= f * b[static_cast<std::size_t>(j)];
  }
  r.resize(static_cast<std::size_t>(std::max(db, 1)));
  trim(r, rel * std::max(max_abs(a), 1e-300));
}

Coeffs sub(const Coeffs& a, const Coeffs& b) {
  Coeffs out(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
  return out;
}

constexpr double kGcdTol = 1e-10;

Coeffs make_monic(Coeffs c) {
  const double l = c.back();
  for (double& v : c) v /= l;
  return c;
}

Coeffs numeric_gcd(Coeffs a, Coeffs b) {
  a = scaled(a);
  b = scaled(b);
  if (is_zero(b)) return make_monic(a);
  if (is_zero(a)) return make_monic(b);
  if (deg(a) < deg(b)) std::swap(a, b);
  while (!is_zero(b) && deg(b) > 0) {
    Coeffs q, r;
    divide(a, b, q, r, kGcdTol);
    a = b;
    b = scaled(r);
  }
  if (is_zero(b)) return make_monic(a);
  return {1.0};
}

Coeffs exact_quotient(const Coeffs& a, const Coeffs& b) {
  Coeffs q, r;
  divide(a, b, q, r, kGcdTol);
  return q;
}

struct Sturm {
  std::vector<Coeffs> seq;

  explicit Sturm(const Coeffs& f) {
    seq.push_back(scaled(f));
    seq.push_back(scaled(derivative(f)));
    while (deg(seq.back()) > 0) {
      Coeffs q, r;
      divide(seq[seq.size() - 2], seq.back(), q, r, 1e-14);
      if (is_zero(r)) break;
      for (double& v : r) v = -v;
      seq.push_back(scaled(r));
    }
  }

  int variations(double x) const {
    int count = 0;
    int last = 0;
    for (const Coeffs& s : seq) {
      const double v = horner(s, x);
      const int sg = (v > 0) - (v < 0);
      if (sg == 0) continue;
      if (last != 0 && sg != last) ++count;
      last = sg;
    }
    return count;
  }
};

double cauchy_bound(const Coeffs& c) {
  double m = 0.0;
  for (std::size_t i = 0; i + 1 < c.size(); ++i) m = std::max(m, std::abs(c[i] / c.back()));
  return 1.0 + m;
}

// Distinct roots of a (numerically) square-free polynomial.
std::vector<double> isolate(const Coeffs& f, double tol) {
  std::vector<double> out;
  if (deg(f) < 1) return out;
  const Sturm st(f);
  const double bound = cauchy_bound(f);
  std::function<void(double, double, int, int)> rec = [&](double lo, double hi, int vlo, int vhi) {
    const int n = vlo - vhi;
    if (n <= 0) return;
    if (hi - lo <= tol * std::max(1.0, std::abs(lo) + std::abs(hi))) {
      for (int i = 0; i < n; ++i) out.push_back(0.5 * (lo + hi));
      return;
    }
    if (n == 1) {
      // bisection on the Sturm count keeps the root in (lo, hi]
      double a = lo, b = hi;
      int va = vlo;
      for (int it = 0; it < 200 && b - a > tol * std::max(1.0, std::abs(a) + std::abs(b)); ++it) {
        const double m = 0.5 * (a + b);
        const int vm = st.variations(m);
        if (va - vm >= 1) {
          b = m;
        } else {
          a = m;
          va = vm;
        }
      }
      double x = 0.5 * (a + b);
      const Coeffs df = derivative(f);
      for (int it = 0; it < 8; ++it) {
        const double fx = horner(f, x), dfx = horner(df, x);
        if (fx == 0.0 || dfx == 0.0) break;
        const double nx = x - fx / dfx;
        if (!(nx > lo && nx <= hi) || std::abs(horner(f, nx)) >= std::abs(fx)) break;
        x = nx;
      }
      out.push_back(x);
      return;
    }
    const double m = 0.5 * (lo + hi);
    const int vm = st.variations(m);
    rec(lo, m, vlo, vm);
    rec(m, hi, vm, vhi);
  };
  rec(-bound, bound, st.variations(-bound), st.variations(bound));
  return out;
}

}  // namespace

Poly::Poly(std::vector<double> ascending) : c_(std::move(ascending)) {
  if (c_.empty()) throw DomainError("polynomial needs at least one coefficient");
  for (double v : c_)
    if (!std::isfinite(v)) throw DomainError("polynomial coefficients must be finite");
  while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
  if (c_.back() == 0.0) throw DomainError("zero polynomial");
  if (degree() > kMaxDegree) throw DomainError("polynomial degree exceeds 8");
}

double Poly::operator()(double x) const { return horner(c_, x); }

Poly Poly::derivative() const {
  if (degree() == 0) throw DomainError("derivative of a constant");
  return Poly(orbitavg::derivative(c_));
}

Poly Poly::monic() const { return Poly(make_monic(c_)); }

DepressedQuintic depress_quintic(const Poly& quintic) {
  if (quintic.degree() != 5) throw DomainError("depress_quintic needs a degree-5 polynomial");
  Coeffs c = make_monic(quintic.coeffs());
  const double s = -c[4] / 5.0;
  // Taylor shift: coefficients of P(phi + s) by repeated synthetic division
  for (int k = 0; k < 5; ++k)
    for (int j = 4; j >= k; --j) c[static_cast<std::size_t>(j)] += s * c[static_cast<std::size_t>(j + 1)];
  DepressedQuintic dq;
  dq.p = c[3];
  dq.q = c[2];
  dq.u = c[1];
  dq.v = c[0];
  dq.shift = s;
  return dq;
}

DiscriminantSystem discriminant_system(const DepressedQuintic& dq) {
  return quintic_discriminants(dq.p, dq.q, dq.u, dq.v);
}

int RootProfile::degree() const {
  int n = 2 * complex_pairs;
  for (int m : real_multiplicities) n += m;
  return n;
}

int RootProfile::simple_real_count() const {
  return static_cast<int>(std::count(real_multiplicities.begin(), real_multiplicities.end(), 1));
}

std::string RootProfile::str() const {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < real_multiplicities.size(); ++i)
    os << (i ? "," : "") << real_multiplicities[i];
  os << '}';
  if (complex_pairs > 0) os << "+" << complex_pairs << "c";
  return os.str();
}

SignPattern discriminant_signs(const DepressedQuintic& dq, double rel) {
  const auto t = quintic_discriminants(Tracked(dq.p), Tracked(dq.q), Tracked(dq.u), Tracked(dq.v));
  return {t.D5.sign(rel), t.D4.sign(rel), t.D3.sign(rel),
          t.D2.sign(rel), t.E2.sign(rel), t.F2.sign(rel)};
}

int table_row(const SignPattern& s) {
  if (s.D5 > 0) return (s.D4 > 0 && s.D3 > 0 && s.D2 > 0) ? 1 : 2;
  if (s.D5 < 0) return 3;
  if (s.D4 > 0) return 4;
  if (s.D4 < 0) return 5;
  if (s.D3 > 0) return s.E2 != 0 ? 6 : 7;
  if (s.D3 < 0) return s.E2 != 0 ? 8 : 9;
  if (s.D2 != 0) return s.F2 != 0 ? 10 : 11;
  return 12;
}

RootProfile profile_from_row(int row) {
  switch (row) {
    case 1: return {{1, 1, 1, 1, 1}, 0};
    case 2: return {{1}, 2};
    case 3: return {{1, 1, 1}, 1};
    case 4: return {{2, 1, 1, 1}, 0};
    case 5: return {{2, 1}, 1};
    case 6: return {{2, 2, 1}, 0};
    case 7: return {{3, 1, 1}, 0};
    case 8: return {{1}, 2};
    case 9: return {{3}, 1};
    case 10: return {{3, 2}, 0};
    case 11: return {{4, 1}, 0};
    case 12: return {{5}, 0};
    default: throw DomainError("table row must be in 1..12");
  }
}

RootProfile classify_quintic(const DepressedQuintic& dq, double rel) {
  return profile_from_row(table_row(discriminant_signs(dq, rel)));
}

RootProfile cubic_classify(const Poly& cubic, double rel) {
  if (cubic.degree() != 3) throw DomainError("cubic_classify needs a degree-3 polynomial");
  const Tracked a3(cubic[3]), a2(cubic[2]), a1(cubic[1]), a0(cubic[0]);
  const int s = cubic_discriminant(a3, a2, a1, a0).sign(rel);
  if (s > 0) return {{1, 1, 1}, 0};
  if (s < 0) return {{1}, 1};
  // all three roots coincide iff a2^2 = 3 a1 a3
  const Tracked t = a2 * a2 - Tracked(3.0) * a1 * a3;
  if (t.sign(rel) == 0) return {{3}, 0};
  return {{2, 1}, 0};
}

int sturm_count(const Poly& poly, double lo, double hi) {
  const Sturm st(poly.coeffs());
  return st.variations(lo) - st.variations(hi);
}

std::vector<RealRoot> real_roots(const Poly& poly, double tol) {
  if (poly.degree() < 1) throw DomainError("real_roots needs degree >= 1");
  if (!(tol > 0.0)) throw DomainError("real_roots tolerance must be positive");
  const Coeffs f = make_monic(poly.coeffs());

  // Yun square-free decomposition
  std::vector<std::pair<Coeffs, int>> factors;
  const Coeffs df = derivative(f);
  const Coeffs g = numeric_gcd(f, df);
  if (deg(g) == 0) {
    factors.emplace_back(f, 1);
  } else {
    Coeffs b = exact_quotient(f, g);
    Coeffs c = exact_quotient(df, g);
    Coeffs d = sub(c, derivative(b));
    trim(d, kGcdTol * std::max(max_abs(c), 1.0));
    for (int i = 1; deg(b) > 0 && i <= kMaxDegree; ++i) {
      const Coeffs a = numeric_gcd(b, d);
      if (deg(a) > 0) factors.emplace_back(a, i);
      b = exact_quotient(b, a);
      c = exact_quotient(d, a);
      d = sub(c, derivative(b));
      trim(d, kGcdTol * std::max(max_abs(c), 1.0));
    }
    int total = 0;
    for (const auto& [fac, m] : factors) total += deg(fac) * m;
    if (total != deg(f)) {
      factors.clear();
      factors.emplace_back(f, 1);
    }
  }

  std::vector<RealRoot> out;
  for (const auto& [fac, m] : factors)
    for (double x : isolate(fac, tol)) out.push_back({x, m});
  std::sort(out.begin(), out.end(),
            [](const RealRoot& a, const RealRoot& b) { return a.value < b.value; });
  return out;
}

RootProfile profile_of(const std::vector<RealRoot>& roots, int degree) {
  RootProfile p;
  int used = 0;
  for (const RealRoot& r : roots) {
    p.real_multiplicities.push_back(r.multiplicity);
    used += r.multiplicity;
  }
  std::sort(p.real_multiplicities.rbegin(), p.real_multiplicities.rend());
  p.complex_pairs = (degree - used) / 2;
  return p;
}

}  // namespace orbitavg
