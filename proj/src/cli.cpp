#include "orbitavg/cli.hpp"

#include <CLI11.hpp>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "orbitavg/certificates.hpp"
#include "orbitavg/error.hpp"
#include "orbitavg/rootfind.hpp"
#include "orbitavg/shooting.hpp"

namespace orbitavg {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A parameter value: integers and p/q are exact, sqrt(p/q) carries an
// exact square, decimals are floating.
struct Number {
  double value = 0.0;
  std::optional<Surd> exact;
  std::optional<Surd> square;
};

Number rational_number(const mpq_class& q) {
  return {q.get_d(), Surd(q), std::nullopt};
}

std::optional<mpq_class> parse_rational(const std::string& s) {
  static const std::regex re(R"(^\s*([+-]?[0-9]+)(?:/([0-9]+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, re)) return std::nullopt;
  std::string num = m[1].str();
  if (num[0] == '+') num.erase(0, 1);
  const std::string den = m[2].matched ? m[2].str() : "1";
  mpz_class n(num), d(den);
  if (d == 0) throw UsageError("zero denominator in '" + s + "'");
  mpq_class q(n, d);
  q.canonicalize();
  return q;
}

Number parse_number(const std::string& name, const std::string& s) {
  if (auto q = parse_rational(s)) return rational_number(*q);
  static const std::regex sqrt_re(R"(^\s*([+-]?)sqrt\(([0-9/\s]+)\)\s*$)");
  std::smatch m;
  if (std::regex_match(s, m, sqrt_re)) {
    const auto q = parse_rational(m[2].str());
    if (!q || *q < 0) throw UsageError(name + ": bad radicand in '" + s + "'");
    const double mag = std::sqrt(q->get_d());
    return {m[1].str() == "-" ? -mag : mag, std::nullopt, Surd(*q)};
  }
  double v = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last || !std::isfinite(v))
    throw UsageError(name + ": not a number: '" + s + "'");
  return {v, std::nullopt, std::nullopt};
}

double parse_plain(const std::string& name, const std::string& s) {
  return parse_number(name, s).value;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(parse_plain("--eps-list", item));
  }
  return out;
}

struct Options {
  std::string command;
  std::optional<int> theorem, subcase;
  std::optional<std::string> r, a, l, d;
  std::optional<int> m, n1, n2, n3, n4;
  std::optional<std::string> eps, eps_list;
  std::string out_path;
  bool physical = false;
};

struct Resolved {
  int subcase = 0;
  int theorem = 0;  // 0 when the subcase carries no theorem
  ScalingExponents exps;
  ScaledParams p;
  ExactPoint exact;
  double eps = 0.01;
};

// Default scaled parameters: the golden configuration of each theorem.
std::array<std::string, 4> default_params(int theorem) {
  switch (theorem) {
    case 1: return {"1", "1/100", "1/100", "1"};
    case 2: return {"1", "4/3", "1", "1"};
    case 5: return {"1", "1", "-1", "1"};
    case 6: return {"3", "1/4", "1", "2"};
    case 7: return {"2", "1", "1", "8/3"};
    case 8: return {"sqrt(31/16)", "1", "1/20", "1"};
    default: return {"1", "1", "1", "1"};
  }
}

Resolved resolve(const Options& o) {
  if (o.theorem.has_value() == o.subcase.has_value())
    throw UsageError("exactly one of --theorem / --subcase is required");
  Resolved rc;
  if (o.theorem) {
    if (*o.theorem < 1 || *o.theorem > 8) throw UsageError("--theorem must be in 1..8");
    rc.theorem = *o.theorem;
    rc.subcase = theorem_subcase(rc.theorem);
  } else {
    if (*o.subcase < 1 || *o.subcase > kSubcaseCount) throw UsageError("--subcase must be in 1..20");
    rc.subcase = *o.subcase;
    rc.theorem = theorem_of_subcase(rc.subcase);
  }
  rc.exps = canonical_exponents(rc.subcase);
  if (o.m) rc.exps.m = *o.m;
  if (o.n1) rc.exps.n1 = *o.n1;
  if (o.n2) rc.exps.n2 = *o.n2;
  if (o.n3) rc.exps.n3 = *o.n3;
  if (o.n4) rc.exps.n4 = *o.n4;
  validate(rc.exps);

  if (o.eps) rc.eps = parse_plain("--eps", *o.eps);
  if (!(rc.eps > 0.0 && rc.eps <= 0.2)) throw UsageError("--eps must lie in (0, 0.2]");

  const auto defaults = default_params(rc.theorem);
  const Number r = parse_number("--r", o.r.value_or(defaults[0]));
  const Number a = parse_number("--a", o.a.value_or(defaults[1]));
  const Number l = parse_number("--l", o.l.value_or(defaults[2]));
  const Number d = parse_number("--d", o.d.value_or(defaults[3]));
  if (o.physical) {
    const PhysicalParams phys{r.value, a.value, l.value, d.value};
    validate(phys);
    rc.p = apply_scaling(phys, rc.exps, rc.eps);
  } else {
    rc.p = {r.value, a.value, l.value, d.value};
    rc.exact = {a.exact, r.exact, l.exact, d.exact, a.square, r.square, l.square, d.square};
  }
  validate(rc.p);
  return rc;
}

std::optional<ExactPoint> exact_point(const Resolved& rc) {
  const ExactPoint& e = rc.exact;
  if (!e.a && !e.r && !e.l && !e.d && !e.a2 && !e.r2 && !e.l2 && !e.d2) return std::nullopt;
  return e;
}

// Output sink: --out file if given, otherwise stdout.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : to_file_(!path.empty()) {
    if (to_file_) {
      file_.open(path, std::ios::binary | std::ios::trunc);
      if (!file_) throw Error("cannot open output file '" + path + "'");
    }
    stream_ = to_file_ ? static_cast<std::ostream*>(&file_) : &fallback;
  }
  std::ostream& stream() { return *stream_; }
  bool to_file() const { return to_file_; }

 private:
  bool to_file_;
  std::ofstream file_;
  std::ostream* stream_;
};

double shooting_tolerance() {
  const char* env = std::getenv("ORBITAVG_TOL");
  if (env == nullptr || *env == '\0') return kDefaultShootTol;
  const double tol = parse_plain("ORBITAVG_TOL", env);
  if (!(tol > 0.0)) throw UsageError("ORBITAVG_TOL must be positive");
  return tol;
}

std::vector<State> predictions(const Resolved& rc) {
  if (rc.theorem != 0) return theorem_predictions(rc.theorem, rc.p);
  std::vector<State> out;
  for (const AveragedZero& z : averaged_zeros(subcase_by_id(rc.subcase), rc.p).zeros)
    out.push_back({z.x0, z.y0});
  return out;
}

int cmd_classify(const Resolved& rc, std::ostream& out, std::ostream& err) {
  if (rc.theorem >= 1 && rc.theorem <= 4) {
    const PredictedOrbit o = theorem_orbit(rc.theorem, rc.p);
    out << "theorem=" << rc.theorem << " x0=" << format_double(o.x0) << " y0=" << format_double(o.y0)
        << " count=1\n";
    return kExitOk;
  }
  if (rc.theorem == 0) {
    const ZeroSearch zs = averaged_zeros(subcase_by_id(rc.subcase), rc.p);
    out << "subcase=" << rc.subcase << " count=" << zs.zeros.size();
    if (!zs.failures.empty()) out << " failures=" << zs.failures.size();
    out << "\n";
    return kExitOk;
  }
  CountCertificate cert;
  try {
    cert = count_certificate(rc.theorem, rc.p, exact_point(rc));
  } catch (const UndecidedError& e) {
    const bool boundary = std::string(e.what()).find("boundary") != std::string::npos;
    out << "theorem=" << rc.theorem << " status=" << (boundary ? "boundary" : "undecided") << "\n";
    err << "orbitavg: " << e.what() << "\n";
    return kExitHypothesis;
  }
  out << "theorem=" << rc.theorem;
  for (const auto& [name, value] : cert.discriminants) {
    std::string shown = format_double(value);
    for (const auto& [ename, evalue] : cert.exact_values)
      if (ename == name) shown = evalue;
    out << " " << name << "=" << shown;
  }
  out << " count=" << cert.predicted_count;
  if (cert.exact) out << " exact=1";
  out << "\n";
  if (!cert.hypotheses_ok) {
    require_hypotheses(cert);
  }
  return kExitOk;
}

int cmd_predict(const Resolved& rc, const std::string& out_path, std::ostream& out) {
  Sink sink(out_path, out);
  std::ostream& os = sink.stream();
  os << "x0,y0,det,trace,stability\n";
  if (rc.theorem >= 1 && rc.theorem <= 4) {
    const PredictedOrbit o = theorem_orbit(rc.theorem, rc.p);
    os << format_double(o.x0) << "," << format_double(o.y0) << "," << format_double(o.jacobian.det())
       << "," << format_double(o.jacobian.trace()) << "," << to_string(o.stability) << "\n";
    return kExitOk;
  }
  const Subcase sub = subcase_by_id(rc.subcase);
  for (const AveragedZero& z : averaged_zeros(sub, rc.p).zeros) {
    const Jacobian2 j = jacobian(sub, rc.p, {z.x0, z.y0});
    os << format_double(z.x0) << "," << format_double(z.y0) << "," << format_double(j.det()) << ","
       << format_double(j.trace()) << "," << to_string(classify_stability(j)) << "\n";
  }
  return kExitOk;
}

int cmd_shoot_table(const Resolved& rc, const std::vector<double>& eps_list, bool sweep,
                    const std::string& out_path, std::ostream& out, std::ostream& err) {
  if (rc.theorem == 0)
    throw UsageError("verify/sweep need a theorem (or a subcase that carries one)");
  const SweepResult res =
      convergence_sweep(rc.theorem, rc.p, rc.exps, eps_list, IntegratorConfig{}, shooting_tolerance());
  Sink sink(out_path, out);
  std::ostream& os = sink.stream();
  os << "eps,x_pred,y_pred,x_star,y_star,error,residual,mult1_abs,mult2_abs,stability,status\n";
  int converged = 0;
  for (const SweepRow& row : res.rows) {
    os << format_double(row.eps) << "," << format_double(row.predicted.x) << ","
       << format_double(row.predicted.y) << ",";
    if (row.converged) {
      ++converged;
      os << format_double(row.shot.x) << "," << format_double(row.shot.y) << ","
         << format_double(row.error) << "," << format_double(row.residual) << ","
         << format_double(row.mult_abs[0]) << "," << format_double(row.mult_abs[1]) << ","
         << row.stability << ",OK\n";
    } else {
      os << ",,,,,,,FAIL\n";
      err << "orbitavg: eps=" << format_double(row.eps) << " branch " << row.branch << ": "
          << row.message << "\n";
    }
  }
  std::ostream& summary = sink.to_file() ? out : err;
  if (sweep) {
    summary << "SLOPE=" << (std::isfinite(res.slope) ? format_double(res.slope) : "nan") << "\n";
  } else {
    summary << "CONVERGED=" << converged << "/" << res.rows.size() << "\n";
  }
  return !res.rows.empty() && converged == 0 ? kExitFailure : kExitOk;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

int cmd_plot(const Resolved& rc, const std::string& out_path, std::ostream& out) {
  constexpr int kSamples = 512;
  const std::vector<State> preds = predictions(rc);
  if (preds.empty()) throw Error("no averaged prediction to shoot from");
  const double tol = shooting_tolerance();
  std::vector<std::vector<State>> curves;
  for (const State& pred : preds) {
    const PhysicalParams phys = unscale(rc.p, rc.exps, rc.eps);
    const ShootingResult s = shoot(phys, scale_state(pred, rc.exps, rc.eps), IntegratorConfig{}, tol);
    std::vector<State> curve;
    for (const auto& [t, z] :
         sample_trajectory(phys, s.fixed_point, 0.0, 2.0 * std::numbers::pi, kSamples))
      curve.push_back(unscale_state(z, rc.exps, rc.eps));
    curves.push_back(std::move(curve));
  }

  double xmin = preds[0].x, xmax = xmin, ymin = preds[0].y, ymax = ymin;
  auto grow = [&](State z) {
    xmin = std::min(xmin, z.x);
    xmax = std::max(xmax, z.x);
    ymin = std::min(ymin, z.y);
    ymax = std::max(ymax, z.y);
  };
  for (const State& z : preds) grow(z);
  for (const auto& c : curves)
    for (const State& z : c) grow(z);
  const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
  const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax), half = 0.55 * span;
  constexpr double size = 600.0, margin = 60.0;
  auto px = [&](double x) { return margin + (x - (cx - half)) / (2.0 * half) * size; };
  auto py = [&](double y) { return margin + ((cy + half) - y) / (2.0 * half) * size; };

  Sink sink(out_path, out);
  std::ostream& os = sink.stream();
  const double total = size + 2.0 * margin;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(total) << "\" height=\""
     << fmt(total) << "\" viewBox=\"0 0 " << fmt(total) << " " << fmt(total) << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << fmt(total) << "\" height=\"" << fmt(total)
     << "\" fill=\"white\"/>\n";
  os << "<rect x=\"" << fmt(margin) << "\" y=\"" << fmt(margin) << "\" width=\"" << fmt(size)
     << "\" height=\"" << fmt(size) << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (cx - half < 0.0 && 0.0 < cx + half)
    os << "<line x1=\"" << fmt(px(0.0)) << "\" y1=\"" << fmt(margin) << "\" x2=\"" << fmt(px(0.0))
       << "\" y2=\"" << fmt(margin + size) << "\" stroke=\"#bbbbbb\"/>\n";
  if (cy - half < 0.0 && 0.0 < cy + half)
    os << "<line x1=\"" << fmt(margin) << "\" y1=\"" << fmt(py(0.0)) << "\" x2=\"" << fmt(margin + size)
       << "\" y2=\"" << fmt(py(0.0)) << "\" stroke=\"#bbbbbb\"/>\n";
  os << "<text x=\"" << fmt(margin + size / 2) << "\" y=\"" << fmt(total - 15) << "\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"16\">X = x/eps^m</text>\n";
  os << "<text x=\"20\" y=\"" << fmt(margin + size / 2) << "\" text-anchor=\"middle\" "
     << "font-family=\"sans-serif\" font-size=\"16\" transform=\"rotate(-90 20 " << fmt(margin + size / 2)
     << ")\">Y = y/eps^m</text>\n";
  os << "<text x=\"" << fmt(margin) << "\" y=\"" << fmt(margin - 30) << "\" font-family=\"monospace\" "
     << "font-size=\"12\">" << (rc.theorem ? "theorem " + std::to_string(rc.theorem) : "subcase " + std::to_string(rc.subcase))
     << " eps=" << format_double(rc.eps) << " x:[" << fmt(cx - half) << "," << fmt(cx + half) << "] y:["
     << fmt(cy - half) << "," << fmt(cy + half) << "]</text>\n";
  for (const auto& c : curves) {
    os << "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < c.size(); ++i)
      os << (i ? " " : "") << fmt(px(c[i].x)) << "," << fmt(py(c[i].y));
    os << "\"/>\n";
    os << "<circle cx=\"" << fmt(px(c.front().x)) << "\" cy=\"" << fmt(py(c.front().y))
       << "\" r=\"3\" fill=\"#1f5fbf\"/>\n";
  }
  for (const State& z : preds)
    os << "<path d=\"M " << fmt(px(z.x) - 6) << " " << fmt(py(z.y)) << " h 12 M " << fmt(px(z.x)) << " "
       << fmt(py(z.y) - 6) << " v 12\" stroke=\"#c0392b\" stroke-width=\"2\"/>\n";
  os << "</svg>\n";
  return kExitOk;
}

int cmd_certify(const std::string& out_path, std::ostream& out) {
  Sink sink(out_path, out);
  int failed = 0, passed = 0;
  for (const GoldenEntry& g : certify_golden_examples()) {
    sink.stream() << g.line() << "\n";
    (g.pass ? passed : failed)++;
  }
  sink.stream() << "PASSED=" << passed << " FAILED=" << failed << "\n";
  return failed == 0 ? kExitOk : kExitFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Averaging predictions and shooting verification for a forced oscillator", "orbitavg"};
  app.set_config("--config", "", "key = value file; command-line flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.add_option("command", o.command, "classify | predict | verify | sweep | certify | plot")
      ->required()
      ->check(CLI::IsMember({"classify", "predict", "verify", "sweep", "certify", "plot"}));
  auto* th = app.add_option("--theorem", o.theorem, "theorem 1..8");
  app.add_option("--subcase", o.subcase, "subcase 1..20")->excludes(th);
  app.add_option("--r", o.r, "scaled r (integer, p/q, sqrt(p/q) or decimal)");
  app.add_option("--a", o.a, "scaled a");
  app.add_option("--l", o.l, "scaled l");
  app.add_option("--d", o.d, "scaled d");
  app.add_option("--m", o.m);
  app.add_option("--n1", o.n1);
  app.add_option("--n2", o.n2);
  app.add_option("--n3", o.n3);
  app.add_option("--n4", o.n4);
  app.add_option("--eps", o.eps, "eps for verify / plot / --physical (default 0.01)");
  app.add_option("--eps-list", o.eps_list, "comma-separated decreasing eps values");
  app.add_option("--out", o.out_path, "output file (default stdout)");
  app.add_flag("--physical", o.physical, "--r --a --l --d are rho, alpha, lambda, delta");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "orbitavg: " << e.what() << "\n" << "usage: orbitavg <classify|predict|verify|sweep|certify|plot> "
        << "[--theorem K | --subcase N] [--r V --a V --l V --d V] [--m V --n1 V --n2 V --n3 V --n4 V] "
        << "[--eps V | --eps-list V,V,...] [--config PATH] [--out PATH] [--physical]\n";
    return kExitUsage;
  }

  try {
    if (o.command == "certify") return cmd_certify(o.out_path, out);
    const Resolved rc = resolve(o);
    if (o.command == "classify") return cmd_classify(rc, out, err);
    if (o.command == "predict") return cmd_predict(rc, o.out_path, out);
    if (o.command == "verify") return cmd_shoot_table(rc, {rc.eps}, false, o.out_path, out, err);
    if (o.command == "sweep")
      return cmd_shoot_table(rc, parse_list(o.eps_list.value_or("0.1,0.05,0.02,0.01")), true,
                             o.out_path, out, err);
    return cmd_plot(rc, o.out_path, out);
  } catch (const UsageError& e) {
    err << "orbitavg: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "orbitavg: " << e.what() << "\n";
    return kExitUsage;
  } catch (const HypothesisError& e) {
    err << "orbitavg: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const UndecidedError& e) {
    err << "orbitavg: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const AveragingInapplicable& e) {
    err << "orbitavg: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const ZeroFieldError& e) {
    err << "orbitavg: " << e.what() << "\n";
    return kExitHypothesis;
  } catch (const std::exception& e) {
    err << "orbitavg: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace orbitavg
