#include "zpreal/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "zpreal/cauchy.hpp"
#include "zpreal/chain.hpp"
#include "zpreal/instance_io.hpp"
#include "zpreal/verify.hpp"
#include "zpreal/wiener_hopf.hpp"

namespace zpreal::cli {

using nlohmann::json;

int exit_code(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::ParseError: return kParse;
    case ErrorKind::NoFactorization:
    case ErrorKind::Singular11: return kNoFactorization;
    case ErrorKind::VerificationFailed: return kVerificationFailed;
    case ErrorKind::OnContour: return kOnContour;
    case ErrorKind::CardinalityMismatch: return kCardinalityMismatch;
    case ErrorKind::ConfigError: return kUsage;
    case ErrorKind::DimensionMismatch:
    case ErrorKind::Singular:
    case ErrorKind::SingularSchur:
    case ErrorKind::Collision:
    case ErrorKind::PoleHit:
    case ErrorKind::DegenerateDerivative:
    case ErrorKind::NotRankOne:
    case ErrorKind::ZeroGaugeEntry:
    case ErrorKind::SpectraOverlap:
    case ErrorKind::InvalidData:
    case ErrorKind::InconsistentData:
    case ErrorKind::SingularCoupling:
    case ErrorKind::DomainViolation: return kValidation;
    case ErrorKind::GenerationFailed: return kInternal;
  }
  return kInternal;
}

namespace {

std::string fmt_real(double v) {
  if (v == 0.0) v = 0.0;  // drops the sign of -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", v);
  return buf;
}

double parse_real(const std::string& s, const std::string& whole) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorKind::ConfigError, "cannot parse complex number '" + whole + "'");
  }
  return v;
}

struct Common {
  double tol = default_tolerances().report_tol;
  double cond_max = default_tolerances().cond_max;
  std::string report_out;
  bool timing = false;

  Tolerances tolerances() const {
    Tolerances t = default_tolerances();
    t.report_tol = tol;
    t.cond_max = cond_max;
    return t;
  }
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--tol", c.tol, "Pass/fail tolerance of reported residuals")->check(CLI::PositiveNumber);
  app->add_option("--cond-max", c.cond_max, "Conditioning threshold on the leading coupling block")
      ->check(CLI::PositiveNumber);
  app->add_option("--report-out", c.report_out, "Also write the report as JSON to this file");
  app->add_flag("--timing", c.timing, "Include wall-clock timing in the report");
}

void write_report_json(const Report& r, const std::string& path) {
  if (path.empty()) return;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::ConfigError, "cannot write '" + path + "'");
  f << report_to_json(r).dump(2) << "\n";
}

using Clock = std::chrono::steady_clock;

void stamp(Report& r, const Common& c, Clock::time_point t0) {
  if (!c.timing) return;
  r.values["elapsed_ms"] = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

json contour_json(const CircleContour& c) {
  return {{"center", complex_to_json(c.center)}, {"radius", c.radius}};
}

}  // namespace

std::string format_complex(Complex z) {
  const double im = z.imag() == 0.0 ? 0.0 : z.imag();
  const std::string re = fmt_real(z.real());
  if (std::signbit(im)) return re + " - " + fmt_real(-im) + "i";
  return re + " + " + fmt_real(im) + "i";
}

std::string format_matrix(const Matrix& m) {
  std::string out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) out += ", ";
      out += format_complex(m(r, c));
    }
    out += "\n";
  }
  return out;
}

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw Error(ErrorKind::ConfigError, "empty complex number");
  if (s.back() != 'i' && s.back() != 'j') return {parse_real(s, text), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string::npos) return {0.0, parse_real(s, text)};
  const std::string re = s.substr(0, split), im = s.substr(split);
  if (re.empty()) throw Error(ErrorKind::ConfigError, "cannot parse complex number '" + text + "'");
  return {parse_real(re, text), parse_real(im, text)};
}

std::vector<Complex> parse_complex_list(const std::string& text) {
  std::vector<Complex> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = text.find(',', start);
    out.push_back(parse_complex(text.substr(start, comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

namespace {

int cmd_generate(std::size_t k, std::size_t n, std::uint64_t seed, const std::string& out_path,
                 const std::string& geometry_kind, std::size_t n_plus, Complex center, double radius,
                 const Common& common, std::ostream& out) {
  const auto t0 = Clock::now();
  Geometry g;
  json gj;
  if (geometry_kind == "split") {
    g = Geometry::split(center, radius, n_plus);
    gj = {{"kind", "split"}, {"contour", contour_json({center, radius})}, {"n_plus", n_plus},
          {"min_separation", g.min_separation}};
  } else {
    gj = {{"kind", "disk"}, {"radius", g.radius}, {"min_separation", g.min_separation}};
  }
  const RealizationBundle b = random_instance(k, n, seed, g, common.tolerances());
  InstanceFile f;
  f.data = b.data;
  f.metadata = {{"generator", "random_instance"},
                {"seed", seed},
                {"geometry", gj},
                {"description", "synthesized from random Sylvester data"}};
  const std::string text = write_instance(f);
  Report r;
  r.merge(b.diagnostics);
  stamp(r, common, t0);
  write_report_json(r, common.report_out);
  if (out_path.empty() || out_path == "-") {
    out << text;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw Error(ErrorKind::ConfigError, "cannot write '" + out_path + "'");
    file << text;
    out << "wrote " << out_path << " (k=" << k << ", n=" << n << ", seed=" << seed << ")\n";
  }
  return kOk;
}

int cmd_verify(const std::string& path, const Common& common, std::ostream& out) {
  const auto t0 = Clock::now();
  const Tolerances tol = common.tolerances();
  const InstanceFile f = load_instance(path, tol.sep_min);
  Report r = verify_instance(f.data, tol);
  stamp(r, common, t0);
  out << "instance " << path << " (k=" << f.data.k << ", n=" << f.data.n() << ")\n" << format_text(r);
  write_report_json(r, common.report_out);
  return r.passed() ? kOk : kVerificationFailed;
}

int cmd_eval(const std::string& path, const std::string& which, Complex x, std::optional<Complex> y,
             std::ostream& out) {
  const InstanceFile f = load_instance(path);
  const RealizationBundle b = build_bundle(f.data);
  const bool two_point = which.rfind("joint", 0) == 0 || which.rfind("hybrid", 0) == 0;
  if (two_point && !y) throw Error(ErrorKind::ConfigError, "--y is required for " + which);
  Matrix m;
  if (which == "R") {
    m = eval_R(b, x);
  } else if (which == "Rinv") {
    m = eval_Rinv(b, x);
  } else if (which == "jointR") {
    m = eval_joint_right(b, x, *y);
  } else if (which == "jointL") {
    m = eval_joint_left(b, x, *y);
  } else if (which == "hybridR") {
    m = eval_hybrid_right(b, x, *y);
  } else {
    m = eval_hybrid_left(b, x, *y);
  }
  out << format_matrix(m);
  return kOk;
}

json index_json(const std::vector<std::size_t>& v) {
  json a = json::array();
  for (auto i : v) a.push_back(i);
  return a;
}

int cmd_factorize(const std::string& path, const CircleContour& c, const std::string& out_plus,
                  const std::string& out_minus, const Common& common, std::ostream& out) {
  const auto t0 = Clock::now();
  const Tolerances tol = common.tolerances();
  const InstanceFile f = load_instance(path, tol.sep_min);
  const RealizationBundle b = build_bundle(f.data, tol);
  const FactorizationResult res = factorize(b, c, tol);
  Report r = res.report;
  stamp(r, common, t0);
  auto write = [&](const RealizationBundle& fb, const std::string& dest, const char* role,
                   const std::vector<std::size_t>& ip, const std::vector<std::size_t>& in) {
    if (dest.empty()) return;
    InstanceFile ff;
    ff.data = fb.data;
    ff.metadata = {{"role", role},
                   {"source", path},
                   {"contour", contour_json(c)},
                   {"source_pole_indices", index_json(ip)},
                   {"source_zero_indices", index_json(in)},
                   {"cond_S11", res.cond_S11}};
    save_instance(ff, dest);
  };
  write(res.plus, out_plus, "plus", res.part.idxP_plus, res.part.idxN_plus);
  write(res.minus, out_minus, "minus", res.part.idxP_minus, res.part.idxN_minus);
  out << "factorization of " << path << " (n_plus=" << res.part.n_plus() << ", n_minus=" << res.part.n_minus()
      << ")\n"
      << format_text(r);
  write_report_json(r, common.report_out);
  return r.passed() ? kOk : kVerificationFailed;
}

int cmd_cauchy(const std::string& op, const std::string& lambda_text, const std::string& mu_text,
               const std::string& c_text, std::ostream& out) {
  const auto lambda = parse_complex_list(lambda_text);
  const auto mu = parse_complex_list(mu_text);
  if (op == "matrix") {
    out << format_matrix(cauchy_matrix(lambda, mu));
  } else if (op == "invert") {
    out << format_matrix(cauchy_inverse_formula(lambda, mu, parse_complex(c_text)));
  } else {
    out << format_complex(cauchy_det_squared(lambda, mu)) << "\n";
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Zero-pole realization toolkit", "zpreal"};
  app.require_subcommand(1);

  Common common;

  std::size_t k = 1, n = 1, n_plus = 0;
  std::uint64_t seed = 0;
  std::string out_path, geometry = "disk";
  double c_re = 0.0, c_im = 0.0, radius = 1.0;
  auto* gen = app.add_subcommand("generate", "Write a random instance built by Sylvester synthesis");
  gen->add_option("--k", k, "Matrix size")->required()->check(CLI::PositiveNumber);
  gen->add_option("--n", n, "Number of poles (and zeros)")->required()->check(CLI::PositiveNumber);
  gen->add_option("--seed", seed, "Generator seed")->required();
  gen->add_option("--out", out_path, "Output file (stdout if omitted)");
  gen->add_option("--geometry", geometry, "disk or split")->check(CLI::IsMember({"disk", "split"}));
  gen->add_option("--n-plus", n_plus, "Split geometry: points inside the circle");
  gen->add_option("--center-re", c_re);
  gen->add_option("--center-im", c_im);
  gen->add_option("--radius", radius)->check(CLI::PositiveNumber);
  add_common(gen, common);

  std::string path;
  auto* ver = app.add_subcommand("verify", "Run the full identity suite on an instance file");
  ver->add_option("path", path, "Instance file")->required();
  add_common(ver, common);

  std::string which = "R";
  double x_re = 0.0, x_im = 0.0, y_re = 0.0, y_im = 0.0;
  auto* ev = app.add_subcommand("eval", "Evaluate a representation formula");
  ev->add_option("path", path, "Instance file")->required();
  ev->add_option("--which", which, "R, Rinv, jointR, jointL, hybridR or hybridL")
      ->check(CLI::IsMember({"R", "Rinv", "jointR", "jointL", "hybridR", "hybridL"}));
  ev->add_option("--x", x_re, "Real part of x")->required();
  ev->add_option("--x-im", x_im, "Imaginary part of x");
  auto* y_opt = ev->add_option("--y", y_re, "Real part of y");
  auto* y_im_opt = ev->add_option("--y-im", y_im, "Imaginary part of y");

  std::string out_plus, out_minus;
  auto* fac = app.add_subcommand("factorize", "Wiener-Hopf factorization with respect to a circle");
  fac->add_option("path", path, "Instance file")->required();
  fac->add_option("--center-re", c_re);
  fac->add_option("--center-im", c_im);
  fac->add_option("--radius", radius)->check(CLI::PositiveNumber);
  fac->add_option("--out-plus", out_plus, "Write the interior factor here");
  fac->add_option("--out-minus", out_minus, "Write the exterior factor here");
  add_common(fac, common);

  std::string op, lambda_text, mu_text, c_text = "1";
  auto* cau = app.add_subcommand("cauchy", "Cauchy matrix, closed-form inverse, squared determinant");
  cau->add_option("op", op, "matrix, invert or detsq")->required()->check(CLI::IsMember({"matrix", "invert", "detsq"}));
  cau->add_option("--lambda", lambda_text, "Comma-separated poles")->required();
  cau->add_option("--mu", mu_text, "Comma-separated zeros")->required();
  cau->add_option("--c", c_text, "Value at infinity (invert)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    if (gen->parsed()) {
      return cmd_generate(k, n, seed, out_path, geometry, n_plus, {c_re, c_im}, radius, common, out);
    }
    if (ver->parsed()) return cmd_verify(path, common, out);
    if (ev->parsed()) {
      std::optional<Complex> y;
      if (y_opt->count() || y_im_opt->count()) y = Complex(y_re, y_im);
      return cmd_eval(path, which, {x_re, x_im}, y, out);
    }
    if (fac->parsed()) return cmd_factorize(path, {{c_re, c_im}, radius}, out_plus, out_minus, common, out);
    return cmd_cauchy(op, lambda_text, mu_text, c_text, out);
  } catch (const Error& e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternal;
  }
}

}  // namespace zpreal::cli
