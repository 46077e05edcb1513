#include "orbitavg/certificates.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "orbitavg/discriminants.hpp"
#include "orbitavg/error.hpp"
#include "orbitavg/rootfind.hpp"

namespace orbitavg {

using std::numbers::pi;

std::string to_string(OrbitStability s) {
  switch (s) {
    case OrbitStability::stable: return "stable";
    case OrbitStability::unstable_saddle: return "unstable-saddle";
    case OrbitStability::unstable_repellor: return "unstable-repellor";
    case OrbitStability::undecided: return "undecided";
  }
  return "undecided";
}

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // drops the sign of -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

OrbitStability classify_stability(const Jacobian2& m) {
  const auto ev = m.eigenvalues();
  const double band = 1e-9 * std::max(1.0, m.max_abs());
  const double r1 = ev[0].real(), r2 = ev[1].real();
  if (std::abs(r1) <= band || std::abs(r2) <= band) return OrbitStability::undecided;
  if (r1 < 0 && r2 < 0) return OrbitStability::stable;
  if (r1 > 0 && r2 > 0) return OrbitStability::unstable_repellor;
  return OrbitStability::unstable_saddle;
}

namespace {

PredictedOrbit make_orbit(int subcase, const ScaledParams& p, double x0, double y0) {
  PredictedOrbit o;
  o.x0 = x0;
  o.y0 = y0;
  o.jacobian = jacobian(subcase_by_id(subcase), p, {x0, y0});
  o.stability = classify_stability(o.jacobian);
  return o;
}

}  // namespace

PredictedOrbit thm1_orbit(double r, double d) {
  if (!(r > 0.0) || !(81.0 * d * d > 48.0 * r * r))
    throw HypothesisError("theorem 1 needs 81d^2 > 48r^2 > 0");
  const double gamma = std::cbrt(9.0 * d + std::sqrt(81.0 * d * d - 48.0 * r * r));
  const double y0 =
      (2.0 / 3.0) * std::cbrt(36.0 * r) / gamma + (1.0 / 3.0) * std::cbrt(6.0 / r) * gamma;
  return make_orbit(8, {r, 0.0, 0.0, d}, 0.0, y0);
}

PredictedOrbit thm2_orbit(double a, double d) {
  if (a == 0.0 || !std::isfinite(a)) throw HypothesisError("theorem 2 needs a != 0");
  return make_orbit(10, {0.0, a, 0.0, d}, std::cbrt(4.0 * d / (3.0 * a)), 0.0);
}

PredictedOrbit thm3_orbit(double l, double d) {
  if (l == 0.0 || !std::isfinite(l)) throw HypothesisError("theorem 3 needs l != 0");
  const double v = 8.0 * d / (5.0 * l);
  return make_orbit(11, {0.0, 0.0, l, d}, std::copysign(std::pow(std::abs(v), 0.2), v), 0.0);
}

PredictedOrbit thm4_orbit(double r, double d) {
  if (r == 0.0 || !std::isfinite(r)) throw HypothesisError("theorem 4 needs r != 0");
  return make_orbit(17, {r, 0.0, 0.0, d}, 0.0, -d / r);
}

PredictedOrbit theorem_orbit(int theorem, const ScaledParams& p) {
  switch (theorem) {
    case 1: return thm1_orbit(p.r, p.d);
    case 2: return thm2_orbit(p.a, p.d);
    case 3: return thm3_orbit(p.l, p.d);
    case 4: return thm4_orbit(p.r, p.d);
    default: throw DomainError("explicit orbits exist for theorems 1..4 only");
  }
}

namespace {

std::optional<Surd> square_of(const std::optional<Surd>& v, const std::optional<Surd>& v2) {
  if (v2) return v2;
  if (v) return (*v) * (*v);
  return std::nullopt;
}

struct ExactSquares {
  Surd a2, r2, l2, d2;
};

std::optional<ExactSquares> exact_squares(const std::optional<ExactPoint>& e, bool need_a,
                                          bool need_r, bool need_l) {
  if (!e) return std::nullopt;
  const auto a2 = square_of(e->a, e->a2), r2 = square_of(e->r, e->r2),
             l2 = square_of(e->l, e->l2), d2 = square_of(e->d, e->d2);
  if (!d2 || (need_a && !a2) || (need_r && !r2) || (need_l && !l2)) return std::nullopt;
  return ExactSquares{a2.value_or(Surd()), r2.value_or(Surd()), l2.value_or(Surd()), *d2};
}

// Sign of a discriminant, confirmed exactly when possible.
int decide(CountCertificate& cert, const std::string& name, const Tracked& t,
           const std::optional<Surd>& exact_value, bool required) {
  cert.discriminants.emplace_back(name, t.value());
  if (exact_value) {
    cert.exact_values.emplace_back(name, exact_value->str());
    return exact_value->sign();
  }
  const int s = t.sign(kSignTolerance);
  if (s == 0 && required)
    throw UndecidedError("theorem " + std::to_string(cert.theorem) + ": " + name + " = " +
                         format_double(t.value()) +
                         " lies within the sign tolerance of zero (boundary); no exact value");
  return s;
}

void check(CountCertificate& cert, bool ok, const std::string& hypothesis) {
  if (!ok) {
    cert.hypotheses_ok = false;
    cert.violated.push_back(hypothesis);
  }
}

CountCertificate thm5_certificate(const ScaledParams& p, const std::optional<ExactPoint>& e) {
  CountCertificate cert;
  cert.theorem = 5;
  if (p.l == 0.0) throw HypothesisError("theorem 5 needs l != 0");
  const bool have_exact = e && e->a && e->l && e->d;
  std::optional<Surd> D, D4;
  if (have_exact) {
    D = thm5_D(*e->a, *e->l, *e->d);
    D4 = thm5_D4(*e->a, *e->l, *e->d);
    cert.exact = true;
  }
  const Tracked ta(p.a), tl(p.l), td(p.d);
  const int sD = decide(cert, "D", thm5_D(ta, tl, td), D, true);
  decide(cert, "D4", thm5_D4(ta, tl, td), D4, false);
  const int sal = have_exact ? e->a->sign() * e->l->sign() : sign_of(p.a) * sign_of(p.l);
  check(cert, sal < 0, "a*l < 0");
  // D > 0 lies outside the statement; the table then gives a single simple root.
  cert.predicted_count = sD < 0 ? 3 : 1;
  return cert;
}

CountCertificate thm6_certificate(const ScaledParams& p, const std::optional<ExactPoint>& e) {
  CountCertificate cert;
  cert.theorem = 6;
  const auto ex = exact_squares(e, true, true, false);
  const Tracked a2(p.a * p.a), r2(p.r * p.r), d2(p.d * p.d);
  std::optional<Surd> d1, d2e, c1;
  if (ex) {
    d1 = thm6_delta1(ex->a2, ex->r2, ex->d2);
    d2e = thm6_delta2(ex->a2, ex->r2, ex->d2);
    c1 = thm6_b2_xcoef(ex->a2, ex->r2, ex->d2);
    cert.exact = true;
  }
  const int s1 = decide(cert, "Delta1", thm6_delta1(a2, r2, d2), d1, false);
  const int s2 = decide(cert, "Delta2", thm6_delta2(a2, r2, d2), d2e, true);
  const int sc = decide(cert, "b2_x0_coef", thm6_b2_xcoef(a2, r2, d2), c1, false);
  check(cert, sc != 0, "-324a^4r^2 - 9a^2d^2r^2 + 36a^2r^4 - d^2r^4 != 0");
  if (s2 >= 0) {
    cert.predicted_count = 1;
  } else if (s1 == 0) {
    if (!ex)
      throw UndecidedError("theorem 6: Delta1 lies within the sign tolerance of zero (boundary)");
    cert.predicted_count = 1;
  } else {
    cert.predicted_count = 3;
  }
  return cert;
}

CountCertificate thm7_certificate(const ScaledParams& p, const std::optional<ExactPoint>& e) {
  CountCertificate cert;
  cert.theorem = 7;
  const auto ex = exact_squares(e, true, true, false);
  const Tracked a2(p.a * p.a), r2(p.r * p.r), d2(p.d * p.d);
  std::optional<Surd> D, W;
  if (ex) {
    D = thm7_D(ex->a2, ex->r2, ex->d2);
    W = (ex->r2 - Surd(3) * ex->a2) * (ex->r2 - Surd(9) * ex->a2);
    cert.exact = true;
  }
  check(cert, p.a != 0.0 && p.r != 0.0, "a*r != 0");
  const Tracked tw = (r2 - Tracked(3.0) * a2) * (r2 - Tracked(9.0) * a2);
  const int sw = decide(cert, "(r^2-3a^2)(r^2-9a^2)", tw, W, false);
  check(cert, sw != 0, "(r^2-3a^2)(r^2-9a^2) != 0");
  const Tracked C = thm7_C(Tracked(p.a), Tracked(p.r), Tracked(p.d), Tracked(p.l));
  const int sC = decide(cert, "C", C, std::nullopt, false);
  check(cert, sC != 0, "C != 0");
  const int sD = decide(cert, "D", thm7_D(a2, r2, d2), D, true);
  if (p.d != 0.0 && (r2 - Tracked(9.0) * a2).sign() != 0) {
    cert.discriminants.emplace_back("D5_1", thm7_D5_1(p.a * p.a, p.r * p.r, p.d * p.d));
    cert.discriminants.emplace_back("D2_closed", thm7_D2_closed(p.a * p.a, p.r * p.r, p.d * p.d));
  }
  cert.discriminants.emplace_back("D5_2", thm7_D5_2(p.a * p.a, p.r * p.r, p.d * p.d));
  if (p.a != 0.0 && p.r != 0.0 && p.l != 0.0) {
    const DiscriminantSystem ds = discriminant_system(depress_quintic(b1_poly(7, p)));
    cert.discriminants.emplace_back("D2_b1", ds.D2);
    cert.discriminants.emplace_back("D5_b1", ds.D5);
  }
  if (sD == 0) throw UndecidedError("theorem 7 makes no claim when D = 0");
  cert.predicted_count = sD < 0 ? 1 : 3;
  return cert;
}

CountCertificate thm8_certificate(const ScaledParams& p, const std::optional<ExactPoint>& e) {
  CountCertificate cert;
  cert.theorem = 8;
  if (p.l == 0.0 || p.d == 0.0) throw HypothesisError("theorem 8 needs l != 0 and d != 0");
  const auto ex = exact_squares(e, false, true, true);
  const Tracked r2(p.r * p.r), l2(p.l * p.l), d2(p.d * p.d);
  std::optional<Surd> N2, N3, N4, N5, M5;
  if (ex) {
    N2 = thm8_N2(ex->r2, ex->l2, ex->d2);
    N3 = thm8_N3(ex->r2, ex->l2, ex->d2);
    N4 = thm8_N4(ex->r2, ex->l2, ex->d2);
    N5 = thm8_N5(ex->r2, ex->l2, ex->d2);
    M5 = thm8_M5(ex->r2, ex->l2, ex->d2);
    cert.exact = true;
  }
  const int sC = decide(cert, "C", thm8_C(Tracked(p.r), Tracked(p.l), Tracked(p.d)), std::nullopt, false);
  const int s2 = decide(cert, "N2", thm8_N2(r2, l2, d2), N2, false);
  const int s3 = decide(cert, "N3", thm8_N3(r2, l2, d2), N3, false);
  const int s4 = decide(cert, "N4", thm8_N4(r2, l2, d2), N4, false);
  const int s5 = decide(cert, "N5", thm8_N5(r2, l2, d2), N5, true);
  const int sM = decide(cert, "M5", thm8_M5(r2, l2, d2), M5, false);
  check(cert, sC != 0, "C != 0");
  check(cert, sM != 0, "M5 != 0");
  if (s5 == 0) throw UndecidedError("theorem 8 makes no claim when N5 = 0");
  if (s5 < 0) {
    cert.predicted_count = 3;
  } else if (s2 <= 0 || s3 >= 0 || s4 >= 0) {
    cert.predicted_count = 1;
  } else {
    throw UndecidedError(
        "theorem 8 makes no claim for N5 > 0 with N2 > 0, N3 < 0 and N4 < 0 (five-root pattern)");
  }
  return cert;
}

}  // namespace

CountCertificate count_certificate(int theorem, const ScaledParams& p,
                                   const std::optional<ExactPoint>& exact) {
  switch (theorem) {
    case 5: return thm5_certificate(p, exact);
    case 6: return thm6_certificate(p, exact);
    case 7: return thm7_certificate(p, exact);
    case 8: return thm8_certificate(p, exact);
    default: throw DomainError("count certificates exist for theorems 5..8 only");
  }
}

void require_hypotheses(const CountCertificate& cert) {
  if (cert.hypotheses_ok) return;
  std::string msg = "theorem " + std::to_string(cert.theorem) + " hypotheses violated:";
  for (const std::string& v : cert.violated) msg += " [" + v + "]";
  throw HypothesisError(msg);
}

std::string GoldenEntry::line() const {
  return "THM" + std::to_string(theorem) + " " + name + " expected=" + expected + " got=" + got +
         " status=" + (pass ? "PASS" : "FAIL");
}

namespace {

mpq_class q(const char* s) { return mpq_class(s); }

Surd sq(const char* s) { return Surd(q(s)); }

GoldenEntry exact_entry(int thm, std::string name, const Surd& expected, const Surd& got) {
  return {thm, std::move(name), expected.str(), got.str(), expected == got};
}

GoldenEntry count_entry(int thm, std::string name, int expected, const ScaledParams& p,
                        const std::optional<ExactPoint>& e) {
  GoldenEntry g{thm, std::move(name), std::to_string(expected), "", false};
  try {
    const CountCertificate c = count_certificate(thm, p, e);
    g.got = std::to_string(c.predicted_count);
    g.pass = c.predicted_count == expected;
  } catch (const Error& err) {
    g.got = "error";
  }
  return g;
}

GoldenEntry close_entry(int thm, std::string name, double expected, double got, double rel) {
  const bool ok = std::abs(got - expected) <= rel * std::max(1.0, std::abs(expected));
  return {thm, std::move(name), format_double(expected), format_double(got), ok};
}

GoldenEntry orbit_entry(int thm, const PredictedOrbit& o, double x, double y,
                        OrbitStability st) {
  const bool ok = std::abs(o.x0 - x) <= 1e-12 * std::max(1.0, std::abs(x)) &&
                  std::abs(o.y0 - y) <= 1e-12 * std::max(1.0, std::abs(y)) && o.stability == st;
  return {thm, "orbit",
          "(" + format_double(x) + ";" + format_double(y) + ";" + to_string(st) + ")",
          "(" + format_double(o.x0) + ";" + format_double(o.y0) + ";" + to_string(o.stability) + ")",
          ok};
}

}  // namespace

std::vector<GoldenEntry> certify_golden_examples() {
  std::vector<GoldenEntry> out;

  // Theorem 1: y0 is the real root of y^3 - 4y - 4 at r = d = 1.
  {
    const PredictedOrbit o = thm1_orbit(1.0, 1.0);
    double y = 2.0;
    for (int i = 0; i < 60; ++i) y -= (y * y * y - 4 * y - 4) / (3 * y * y - 4);
    out.push_back(orbit_entry(1, o, 0.0, y, OrbitStability::stable));
  }
  out.push_back(orbit_entry(2, thm2_orbit(4.0 / 3.0, 1.0), 1.0, 0.0, OrbitStability::undecided));
  out.push_back(orbit_entry(3, thm3_orbit(8.0 / 5.0, 1.0), 1.0, 0.0, OrbitStability::undecided));
  out.push_back(orbit_entry(4, thm4_orbit(1.0, 1.0), 0.0, -1.0, OrbitStability::unstable_repellor));

  // Theorem 5
  {
    const Surd a = sq("25/18"), l(-1), d = sq("5/12");
    out.push_back(exact_entry(5, "D(25/18,-1,5/12)", Surd(0), thm5_D(a, l, d)));
    const auto ds = quintic_discriminants(Surd(q("-5/3")), Surd(0), Surd(0), Surd(q("2/3")));
    out.push_back(exact_entry(5, "D4(p=-5/3,v=2/3)", sq("-2500/27"), ds.D4));
    out.push_back(exact_entry(5, "D5(p=-5/3,v=2/3)", Surd(0), ds.D5));
    const DepressedQuintic dq = depress_quintic(b1_poly(5, {0.0, 25.0 / 18.0, -1.0, 5.0 / 12.0}));
    const RootProfile prof = classify_quintic(dq);
    out.push_back({5, "profile(25/18,-1,5/12)", "{2,1}+1c", prof.str(), prof.str() == "{2,1}+1c"});
    out.push_back(count_entry(5, "count(25/18,-1,5/12)", 1, {0.0, 25.0 / 18.0, -1.0, 5.0 / 12.0},
                              ExactPoint{a, std::nullopt, l, d, {}, {}, {}, {}}));
    for (long av : {1L, 7L}) {
      const Surd A(av), Dd = Surd(q("18/31")) * A, L = Surd(q("-42/155")) * A;
      out.push_back(exact_entry(5, "D(a=" + std::to_string(av) + ",d=18a/31,l=-42a/155)",
                                sq("-1425339825408/823543"), thm5_D(A, L, Dd)));
    }
    const double av = 1.0;
    out.push_back(count_entry(5, "count(1,-42/155,18/31)", 3, {0.0, av, -42.0 / 155.0, 18.0 / 31.0},
                              ExactPoint{Surd(1), std::nullopt, sq("-42/155"), sq("18/31"), {}, {}, {}, {}}));
  }

  // Theorem 6 (squares of a, r, d)
  {
    out.push_back(exact_entry(6, "Delta2(1,1,6)", Surd(3452544), thm6_delta2(Surd(1), Surd(1), Surd(36))));
    const ScaledParams p{1.0, 1.0, 0.0, 6.0};
    const Poly b1 = b1_poly(6, p);
    out.push_back(close_entry(6, "b1_c3(1,1,6)", 3600.0, b1[3], 0.0));
    const RootProfile prof = cubic_classify(b1);
    out.push_back({6, "b1_profile(1,1,6)", "{1}+1c", prof.str(), prof.str() == "{1}+1c"});
    out.push_back(count_entry(6, "count(1,1,6)", 1, p,
                              ExactPoint{Surd(1), Surd(1), std::nullopt, Surd(6), {}, {}, {}, {}}));
    const Surd r2_d1 = sq("308025/16") * sq("154073/9622");
    out.push_back(exact_entry(6, "Delta1_zero(r=(555/4)sqrt(154073/9622),a=185,d=22)", Surd(0),
                              thm6_delta1(Surd(185 * 185), r2_d1, Surd(22 * 22))));
    out.push_back(exact_entry(6, "Delta2_zero(r=585sqrt3,a=195,d=585sqrt2)", Surd(0),
                              thm6_delta2(Surd(195 * 195), Surd(3 * 585 * 585), Surd(2 * 585 * 585))));
    out.push_back(exact_entry(6, "Delta2(1/4,3,2)", sq("-114453/16"),
                              thm6_delta2(sq("1/16"), Surd(9), Surd(4))));
    out.push_back(count_entry(6, "count(1/4,3,2)", 3, {3.0, 0.25, 0.0, 2.0},
                              ExactPoint{sq("1/4"), Surd(3), std::nullopt, Surd(2), {}, {}, {}, {}}));
  }

  // Theorem 7 (squares of a, r, d)
  {
    out.push_back(exact_entry(7, "D(1,2,8/3)", sq("-2770035802112/6561"),
                              thm7_D(Surd(1), Surd(4), sq("64/9"))));
    out.push_back(exact_entry(7, "D(1/sqrt3,1,1)", Surd(2752), thm7_D(sq("1/3"), Surd(1), Surd(1))));
    out.push_back(count_entry(7, "count(1,2,8/3,l=1)", 1, {2.0, 1.0, 1.0, 8.0 / 3.0},
                              ExactPoint{Surd(1), Surd(2), Surd(1), sq("8/3"), {}, {}, {}, {}}));
    const ScaledParams p2752{1.0, 1.0 / std::sqrt(3.0), -1.0 / (5.0 * std::sqrt(3.0)), 1.0};
    out.push_back(count_entry(7, "count(1/sqrt3,1,1,-1/(5sqrt3))", 3, p2752,
                              ExactPoint{{}, Surd(1), {}, Surd(1), sq("1/3"), {}, sq("1/75"), {}}));
    int nreal = 0;
    for (const RealRoot& r : real_roots(b1_poly(7, p2752))) nreal += r.multiplicity == 1;
    out.push_back({7, "b1_real_roots(1/sqrt3,1,1,-1/(5sqrt3))", "3", std::to_string(nreal), nreal == 3});
    // classifier check on the auxiliary quintic q'(x)
    const Poly qp({-438800.0, 1838720.0, -3115392.0, 2643968.0, -1126400.0, 196608.0});
    const RootProfile prof = classify_quintic(depress_quintic(qp));
    out.push_back({7, "qprime_profile", "{1}+2c", prof.str(), prof.str() == "{1}+2c"});
    const auto roots = real_roots(qp.monic());
    const double root = roots.size() == 1 ? roots[0].value : NAN;
    out.push_back({7, "qprime_root", "1.06703", format_double(root), std::abs(root - 1.06703) < 1e-4});
  }

  // Theorem 8 (squares of r, l, d)
  {
    const Surd r2 = sq("31/16"), l2 = sq("1/400"), d2(1);
    out.push_back(exact_entry(8, "N5(sqrt31/4,1/20,1)", sq("-258261575/1048576"), thm8_N5(r2, l2, d2)));
    const Surd lit = thm8_N5(r2, Surd(1), d2);
    out.push_back({8, "N5_sign(sqrt31/4,1,1)", "positive", lit.str(), lit.sign() > 0});
    out.push_back(count_entry(8, "count(sqrt31/4,1/20,1)", 3, {std::sqrt(31.0) / 4.0, 0.0, 0.05, 1.0},
                              ExactPoint{{}, {}, sq("1/20"), Surd(1), {}, r2, {}, {}}));
    const Surd pr2(31), pl2(1), pd2(q("1547875/15625"), q("-226851/15625"), 35);
    const Surd n3 = thm8_N3(pr2, pl2, pd2);
    const Surd n3_expected(q("206837701817900/625"), q("-10419995302263/625"), 35);
    out.push_back(exact_entry(8, "N3(sqrt31,1,sqrt(1547875-226851sqrt35)/125)", n3_expected, n3));
    const Surd n5 = thm8_N5(pr2, pl2, pd2);
    const Surd n5_expected(q("1298982956103457430916488/48828125"),
                           q("-219279665109588055117050/48828125"), 35);
    out.push_back(exact_entry(8, "N5(sqrt31,1,sqrt(1547875-226851sqrt35)/125)", n5_expected, n5));
    out.push_back({8, "N3_N5_positive", "true", (n3.sign() > 0 && n5.sign() > 0) ? "true" : "false",
                   n3.sign() > 0 && n5.sign() > 0});
    const ScaledParams ppos{std::sqrt(31.0), 0.0, 1.0, std::sqrt(pd2.to_double())};
    out.push_back(count_entry(8, "count(sqrt31,1,sqrt(1547875-226851sqrt35)/125)", 1, ppos,
                              ExactPoint{{}, {}, Surd(1), {}, {}, pr2, {}, pd2}));
  }
  return out;
}

}  // namespace orbitavg
