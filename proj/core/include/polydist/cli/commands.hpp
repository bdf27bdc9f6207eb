#pragma once

#include <iosfwd>
#include <optional>
#include <string>

namespace polydist::cli {

// Exit-code contract shared by all commands: 0 success (analyze/verify:
// verdict "multiple"), 1 input error, 2 verification or pipeline failure.

struct AnalyzeArgs {
  std::string problem_path;
  std::optional<std::string> mode;        // auto | single | corrected
  std::optional<std::string> report_path; // default: stdout
  std::optional<double> verify_tol;
  std::optional<double> gamma_max;
  std::optional<int> grid;
  std::optional<double> gamma_tol;
  std::optional<double> coalescence_rtol;
};

int cmd_analyze(const AnalyzeArgs& args, std::ostream& out, std::ostream& err);

struct CurveArgs {
  std::string problem_path;
  double gamma_lo = 0.0;
  double gamma_hi = 10.0;
  int samples = 101;
  std::string out_path;
};

int cmd_curve(const CurveArgs& args, std::ostream& err);

struct VerifyArgs {
  std::string problem_path;
  std::optional<std::string> mu;          // "re,im"; falls back to the file
  std::optional<std::string> report_path; // default: stdout
  double tol = 1e-8;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err);

}  // namespace polydist::cli
