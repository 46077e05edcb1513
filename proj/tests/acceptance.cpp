// Acceptance criteria AC1..AC8: one PASS/FAIL line each.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "orbitavg/certificates.hpp"
#include "orbitavg/discriminants.hpp"
#include "orbitavg/error.hpp"
#include "orbitavg/rootfind.hpp"
#include "orbitavg/shooting.hpp"

using namespace orbitavg;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Checker {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      out_.pass = false;
      if (failures_++ < 4) out_.detail += (out_.detail.empty() ? "" : "; ") + what;
    }
  }
  void note(const std::string& s) {
    if (out_.pass) notes_ += (notes_.empty() ? "" : "; ") + s;
  }
  Outcome result() const {
    Outcome o = out_;
    if (o.pass) o.detail = notes_;
    return o;
  }

 private:
  Outcome out_;
  std::string notes_;
  int failures_ = 0;
};

Surd q(const char* s) { return Surd(mpq_class(s)); }

std::string fmt(double v) {
  std::ostringstream s;
  s.precision(6);
  s << v;
  return s.str();
}

// ---------------------------------------------------------------- AC1

Outcome ac1() {
  Checker c;
  auto exact = [&](const std::string& name, const Surd& got, const Surd& want) {
    c.expect(got == want, name + " got " + got.str() + " want " + want.str());
  };
  exact("thm5 D", thm5_D(q("25/18"), Surd(-1), q("5/12")), Surd(0));
  for (long a : {1L, 7L}) {
    const Surd A(a);
    exact("thm5 D family a=" + std::to_string(a),
          thm5_D(A, q("-42/155") * A, q("18/31") * A), q("-1425339825408/823543"));
  }
  exact("thm6 Delta2", thm6_delta2(Surd(1), Surd(1), Surd(36)), Surd(3452544));
  exact("thm7 D", thm7_D(Surd(1), Surd(4), q("64/9")), q("-2770035802112/6561"));
  exact("thm7 D 2752", thm7_D(q("1/3"), Surd(1), Surd(1)), Surd(2752));
  // r = sqrt31/4 enters through r^2; l = 1/20 (see README)
  exact("thm8 N5", thm8_N5(q("31/16"), q("1/400"), Surd(1)), q("-258261575/1048576"));
  // floating evaluation agrees to 1e-9 relative
  const double n5 = thm8_N5(31.0 / 16.0, 1.0 / 400.0, 1.0);
  c.expect(std::abs(n5 + 258261575.0 / 1048576.0) <= 1e-9 * 258261575.0 / 1048576.0, "thm8 N5 double");
  const double d7 = thm7_D(1.0 / 3.0, 1.0, 1.0);
  c.expect(std::abs(d7 - 2752.0) <= 1e-9 * 2752.0, "thm7 D double");
  c.note("7 exact values");
  return c.result();
}

// ---------------------------------------------------------------- AC2

Outcome ac2() {
  Checker c;
  const Poly qprime({-438800.0, 1838720.0, -3115392.0, 2643968.0, -1126400.0, 196608.0});
  const RootProfile pq = classify_quintic(depress_quintic(qprime.monic()));
  c.expect(pq.real_multiplicities == std::vector<int>{1}, "q' profile " + pq.str());
  const auto roots = real_roots(qprime.monic());
  c.expect(roots.size() == 1 && std::abs(roots[0].value - 1.06703) <= 1e-4,
           "q' root " + (roots.empty() ? std::string("none") : fmt(roots[0].value)));
  const RootProfile p5 = classify_quintic(depress_quintic(Poly({0, 0, 0, 0, 0, 1})));
  c.expect(p5.real_multiplicities == std::vector<int>{5} && p5.complex_pairs == 0, "x^5 " + p5.str());
  const RootProfile t5 = classify_quintic(depress_quintic(b1_poly(5, {0.0, 25.0 / 18.0, -1.0, 5.0 / 12.0})));
  c.expect(t5.real_multiplicities == std::vector<int>{2, 1}, "thm5 " + t5.str());
  if (!roots.empty()) c.note("q' " + pq.str() + " root " + fmt(roots[0].value) + ", x^5 " + p5.str() + ", thm5 " + t5.str());
  return c.result();
}

// ---------------------------------------------------------------- AC3

Outcome ac3() {
  Checker c;
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> u(-2.0, 2.0), pos(0.0, 2.0);
  double worst = 0.0;
  for (int id = 1; id <= kSubcaseCount; ++id) {
    const Subcase s = subcase_by_id(id);
    for (int i = 0; i < 200; ++i) {
      const ScaledParams p{pos(rng), u(rng), u(rng), pos(rng) + 1e-3};
      const State z{u(rng), u(rng)};
      const AveragedValue a = f_closed(s, p, z), b = f_quadrature(s, p, z, 64);
      const double bound = 1e-10 * (1.0 + std::pow(norm(z), 6));
      const double err = std::max(std::abs(a.f1 - b.f1), std::abs(a.f2 - b.f2));
      worst = std::max(worst, err / bound);
      c.expect(err <= bound, "subcase " + std::to_string(id) + " err " + fmt(err));
    }
  }
  c.note("4000 points, worst err/bound " + fmt(worst));
  return c.result();
}

// ---------------------------------------------------------------- AC4

Outcome ac4() {
  Checker c;
  std::mt19937_64 rng(1000);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  int tested = 0, disagree = 0, skipped = 0;
  while (tested < 1000) {
    std::vector<double> coeffs(6);
    for (double& x : coeffs) x = u(rng);
    const Poly p(coeffs);
    const DepressedQuintic dq = depress_quintic(p);
    const SignPattern s = discriminant_signs(dq);
    if (s.D5 == 0 || s.D4 == 0 || s.D3 == 0 || s.D2 == 0 || s.E2 == 0 || s.F2 == 0) {
      ++skipped;
      continue;
    }
    ++tested;
    const RootProfile a = classify_quintic(dq), b = profile_of(real_roots(p), 5);
    if (!(a == b)) {
      ++disagree;
      c.expect(false, "classifier " + a.str() + " vs solver " + b.str());
    }
  }
  c.note("1000 quintics, " + std::to_string(disagree) + " disagreements, " + std::to_string(skipped) +
         " near-zero discriminants skipped");
  return c.result();
}

// ---------------------------------------------------------------- AC5

struct Golden {
  int theorem;
  ScaledParams p;
};

const Golden kOrbitGoldens[] = {
    {1, {1.0, 0.01, 0.01, 1.0}},
    {2, {1.0, 4.0 / 3.0, 1.0, 1.0}},
    {3, {1.0, 1.0, 8.0 / 5.0, 1.0}},
    {4, {1.0, 1.0, 1.0, 1.0}},
};

std::vector<State> g_shot_orbits_phys;
std::vector<PhysicalParams> g_shot_params;

Outcome ac5() {
  Checker c;
  const std::vector<double> eps = {0.1, 0.05, 0.02, 0.01};
  std::string slopes;
  for (const Golden& g : kOrbitGoldens) {
    const ScalingExponents e = canonical_exponents(theorem_subcase(g.theorem));
    const SweepResult s = convergence_sweep(g.theorem, g.p, e, eps);
    const std::string tag = "thm" + std::to_string(g.theorem);
    bool all = s.rows.size() == eps.size();
    for (const SweepRow& r : s.rows) all = all && r.converged;
    c.expect(all, tag + " shooting failed");
    for (std::size_t i = 1; i < s.rows.size(); ++i)
      c.expect(s.rows[i].error < s.rows[i - 1].error, tag + " error not monotone");
    c.expect(s.slope >= 0.8, tag + " slope " + fmt(s.slope));
    for (const SweepRow& r : s.rows) {
      if (!r.converged) continue;
      if (g.theorem == 1) c.expect(r.mult_abs[0] < 1.0 && r.mult_abs[1] < 1.0, "thm1 not stable");
      if (g.theorem == 4) c.expect(r.mult_abs[0] > 1.0 && r.mult_abs[1] > 1.0, "thm4 not unstable");
      g_shot_params.push_back(unscale(g.p, e, r.eps));
      g_shot_orbits_phys.push_back(scale_state(r.shot, e, r.eps));
    }
    slopes += (slopes.empty() ? "" : " ") + tag + "=" + fmt(s.slope);
  }
  c.note("slopes " + slopes);
  return c.result();
}

// ---------------------------------------------------------------- AC6

Outcome ac6() {
  Checker c;
  const Golden fixtures[] = {{6, {3.0, 0.25, 1.0, 2.0}}, {8, {std::sqrt(31.0) / 4.0, 1.0, 0.05, 1.0}}};
  std::string detail;
  for (const Golden& g : fixtures) {
    const std::string tag = "thm" + std::to_string(g.theorem);
    const int sub = theorem_subcase(g.theorem);
    const ZeroSearch zs = averaged_zeros(subcase_by_id(sub), g.p);
    c.expect(zs.zeros.size() == 3, tag + " averaged zeros " + std::to_string(zs.zeros.size()));
    const ScalingExponents e = canonical_exponents(sub);
    const PhysicalParams phys = unscale(g.p, e, 0.01);
    std::vector<State> found;
    for (const AveragedZero& z : zs.zeros) {
      try {
        const ShootingResult r = shoot(phys, scale_state({z.x0, z.y0}, e, 0.01));
        c.expect(r.residual <= 1e-10, tag + " residual " + fmt(r.residual));
        found.push_back(r.fixed_point);
        g_shot_params.push_back(phys);
        g_shot_orbits_phys.push_back(r.fixed_point);
      } catch (const Error& err) {
        c.expect(false, tag + " " + err.what());
      }
    }
    double dmin = INFINITY;
    for (std::size_t i = 0; i < found.size(); ++i)
      for (std::size_t j = i + 1; j < found.size(); ++j) dmin = std::min(dmin, norm(found[i] - found[j]));
    c.expect(found.size() == 3 && dmin > 1e-2, tag + " fixed points not distinct");
    detail += (detail.empty() ? "" : "; ") + tag + " 3 zeros, min separation " + fmt(dmin);
  }
  c.note(detail);
  return c.result();
}

// ---------------------------------------------------------------- AC7

struct CountPoint {
  int theorem;
  ScaledParams p;
  ExactPoint e;
};

ExactPoint scale_exact(const ExactPoint& e, const mpq_class& k) {
  const Surd K(k), K2(k * k);
  auto sc = [](const std::optional<Surd>& v, const Surd& f) -> std::optional<Surd> {
    if (!v) return std::nullopt;
    return *v * f;
  };
  return {sc(e.a, K), sc(e.r, K), sc(e.l, K), sc(e.d, K), sc(e.a2, K2), sc(e.r2, K2), sc(e.l2, K2), sc(e.d2, K2)};
}

Outcome ac7() {
  Checker c;
  double worst_liou = 0.0, worst_mono = 0.0;
  for (std::size_t i = 0; i < g_shot_orbits_phys.size(); ++i) {
    const PhysicalParams& p = g_shot_params[i];
    const State z = g_shot_orbits_phys[i];
    const Matrix2 var = monodromy(p, z), fd = monodromy(p, z, {}, MonodromyMode::finite_difference);
    const double liou = liouville_determinant(p, z);
    const double rl = std::abs(det(var) - liou) / liou;
    double num = 0.0, den = 0.0;
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        num = std::max(num, std::abs(var[a][b] - fd[a][b]));
        den = std::max(den, std::abs(var[a][b]));
      }
    worst_liou = std::max(worst_liou, rl);
    worst_mono = std::max(worst_mono, num / den);
    c.expect(rl <= 1e-6, "Liouville " + fmt(rl));
    c.expect(num / den <= 1e-5, "monodromy modes " + fmt(num / den));
  }
  c.expect(!g_shot_orbits_phys.empty(), "no shot orbits");

  const double s3 = std::sqrt(3.0);
  const std::vector<CountPoint> points = {
      {5, {0.0, 25.0 / 18.0, -1.0, 5.0 / 12.0}, {q("25/18"), {}, Surd(-1), q("5/12"), {}, {}, {}, {}}},
      {5, {0.0, 1.0, -42.0 / 155.0, 18.0 / 31.0}, {Surd(1), {}, q("-42/155"), q("18/31"), {}, {}, {}, {}}},
      {6, {1.0, 1.0, 0.0, 6.0}, {Surd(1), Surd(1), {}, Surd(6), {}, {}, {}, {}}},
      {6, {3.0, 0.25, 0.0, 2.0}, {q("1/4"), Surd(3), {}, Surd(2), {}, {}, {}, {}}},
      {7, {2.0, 1.0, 1.0, 8.0 / 3.0}, {Surd(1), Surd(2), Surd(1), q("8/3"), {}, {}, {}, {}}},
      {7, {1.0, 1.0 / s3, -1.0 / (5.0 * s3), 1.0}, {{}, Surd(1), {}, Surd(1), q("1/3"), {}, q("1/75"), {}}},
      {8, {std::sqrt(31.0) / 4.0, 0.0, 0.05, 1.0}, {{}, {}, q("1/20"), Surd(1), {}, q("31/16"), {}, {}}},
  };
  int checked = 0;
  for (const CountPoint& pt : points) {
    const std::string tag = "thm" + std::to_string(pt.theorem);
    const int base = count_certificate(pt.theorem, pt.p, pt.e).predicted_count;
    const Subcase sub = subcase_by_id(theorem_subcase(pt.theorem));
    const std::size_t zeros = averaged_zeros(sub, pt.p).zeros.size();
    for (const mpq_class& k : {mpq_class(1, 2), mpq_class(3)}) {
      const double kd = k.get_d();
      const ScaledParams ps{pt.p.r * kd, pt.p.a * kd, pt.p.l * kd, pt.p.d * kd};
      const int got = count_certificate(pt.theorem, ps, scale_exact(pt.e, k)).predicted_count;
      c.expect(got == base, tag + " certificate count changes under scaling");
      c.expect(averaged_zeros(sub, ps).zeros.size() == zeros, tag + " zero count changes under scaling");
      ++checked;
    }
  }
  for (const Golden& g : kOrbitGoldens) {
    const Subcase sub = subcase_by_id(theorem_subcase(g.theorem));
    const std::size_t base = averaged_zeros(sub, g.p).zeros.size();
    for (double k : {0.5, 3.0}) {
      const ScaledParams ps{g.p.r * k, g.p.a * k, g.p.l * k, g.p.d * k};
      c.expect(averaged_zeros(sub, ps).zeros.size() == base, "orbit count changes under scaling");
      ++checked;
    }
  }
  c.note(std::to_string(g_shot_orbits_phys.size()) + " orbits, worst Liouville " + fmt(worst_liou) +
         ", worst monodromy " + fmt(worst_mono) + ", " + std::to_string(checked) + " scaled counts");
  return c.result();
}

// ---------------------------------------------------------------- AC8

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome ac8() {
  Checker c;
  const std::filesystem::path dir = std::filesystem::temp_directory_path() / "orbitavg_ac8";
  std::filesystem::create_directories(dir);
  const std::vector<std::pair<std::string, std::string>> cmds = {
      {"certify", "certify"},
      {"predict6", "predict --theorem 6"},
      {"predict8", "predict --theorem 8 --r 'sqrt(31/16)' --l 1/20 --d 1"},
      {"plot1", "plot --theorem 1 --eps 0.01"},
      {"plot6", "plot --theorem 6 --eps 0.01"},
  };
  for (const auto& [name, args] : cmds) {
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      const auto file = dir / (name + "_" + std::to_string(run) + ".out");
      const std::string cmd = std::string("\"") + ORBITAVG_CLI_PATH + "\" " + args + " > \"" +
                              file.string() + "\" 2>/dev/null";
      const int rc = std::system(cmd.c_str());
      c.expect(rc == 0, name + " exit status " + std::to_string(rc));
      outputs[run] = slurp(file);
    }
    c.expect(!outputs[0].empty() && outputs[0] == outputs[1], name + " output differs between runs");
  }
  std::filesystem::remove_all(dir);
  c.note("certify, predict x2, plot x2 byte-identical");
  return c.result();
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4},
      {"AC5", ac5}, {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8},
  };
  const double limits[] = {1.0, 1.0, 5.0, 30.0, 60.0, 60.0, 30.0, 60.0};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > limits[i]) {
      o.pass = false;
      o.detail += (o.detail.empty() ? "" : "; ") + std::string("over time limit ") + fmt(limits[i]) + " s";
    }
    char line[64];
    std::snprintf(line, sizeof line, "%s %s (%.3f s)", criteria[i].first.c_str(), o.pass ? "PASS" : "FAIL", secs);
    std::cout << line << " " << o.detail << std::endl;
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
