#include "polydist/cli/commands.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "polydist/cli/pipeline.hpp"
#include "polydist/cli/report.hpp"
#include "polydist/errors.hpp"

namespace polydist::cli {

namespace {

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

// 0 = ok, 1 = cannot write.
int write_text(const std::optional<std::string>& path, const std::string& text,
               std::ostream& out, std::ostream& err) {
  if (!path) {
    out << text;
    return 0;
  }
  std::ofstream f(*path, std::ios::binary);
  if (!f) {
    err << "polydist: cannot write '" << *path << "'\n";
    return 1;
  }
  f << text;
  return f ? 0 : 1;
}

std::optional<Complex> parse_complex_flag(const std::string& s) {
  std::istringstream in(s);
  double re = 0.0, im = 0.0;
  char comma = 0;
  if (!(in >> re)) return std::nullopt;
  if (in >> comma) {
    if (comma != ',' || !(in >> im)) return std::nullopt;
  }
  std::string rest;
  if (in >> rest) return std::nullopt;
  return Complex(re, im);
}

}  // namespace

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err) {
  ProblemSpec spec = [&]() -> ProblemSpec {
    ProblemSpec s = load_problem_file(args.problem_path);
    if (args.mode) {
      const auto m = mode_from_string(*args.mode);
      if (!m) throw Error("input.mode", "unknown mode '" + *args.mode + "'");
      s.mode = *m;
    }
    if (args.gamma_max) s.gamma.gamma_max = *args.gamma_max;
    if (args.grid) s.gamma.grid = *args.grid;
    if (args.gamma_tol) s.gamma.gamma_tol = *args.gamma_tol;
    if (args.coalescence_rtol) s.gamma.coalescence_rtol = *args.coalescence_rtol;
    return s;
  }();

  AnalysisOptions opts;
  if (args.verify_tol) opts.verify_tol = *args.verify_tol;

  try {
    const AnalysisResult result = run_analysis(spec, opts);
    const std::string text = dump_report(analysis_report(spec, result));
    if (write_text(args.report_path, text, out, err) != 0) return 1;
    return result.verified_multiple ? 0 : 2;
  } catch (const Error& e) {
    if (e.code().rfind("input.", 0) == 0) throw;  // input errors exit 1
    const std::string text = dump_report(error_report("analyze", e.code(), e.what()));
    if (write_text(args.report_path, text, out, err) != 0) return 1;
    return 2;
  }
}

int cmd_curve(const CurveArgs& args, std::ostream& err) {
  const ProblemSpec spec = load_problem_file(args.problem_path);
  if (!spec.mu) throw Error("input.mu", "problem field 'mu': missing");

  std::vector<CurveSample> samples;
  try {
    samples = sample_curve(spec.P, *spec.mu, args.gamma_lo, args.gamma_hi, args.samples);
  } catch (const Error& e) {
    throw Error("input.range", e.what());
  }

  std::ofstream f(args.out_path, std::ios::binary);
  if (!f) {
    err << "polydist: cannot write '" << args.out_path << "'\n";
    return 1;
  }
  f << "gamma,s_2n_minus_1,s_2n_minus_2\n";
  for (const CurveSample& s : samples)
    f << format_double(s.gamma) << ',' << format_double(s.s_lo) << ','
      << format_double(s.s_hi) << '\n';
  return f ? 0 : 1;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  const ProblemSpec spec = load_problem_file(args.problem_path);

  Complex mu;
  if (args.mu) {
    const auto parsed = parse_complex_flag(*args.mu);
    if (!parsed) throw Error("input.mu", "--mu expects 're' or 're,im'");
    mu = *parsed;
  } else if (spec.mu) {
    mu = *spec.mu;
  } else {
    throw Error("input.mu", "mu is needed either in the file or via --mu");
  }

  const VerificationReport r = verify_multiple(spec.P, mu, args.tol);
  const std::string text = dump_report(verify_report(spec.P, mu, r));
  if (write_text(args.report_path, text, out, err) != 0) return 1;
  const bool multiple = r.verdict == MultiplicityVerdict::multiple_defective ||
                        r.verdict == MultiplicityVerdict::multiple_semisimple;
  return multiple ? 0 : 2;
}

}  // namespace polydist::cli
