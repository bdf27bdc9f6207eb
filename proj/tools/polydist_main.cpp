#include <iostream>

#include <CLI11.hpp>

#include "polydist/cli/commands.hpp"
#include "polydist/errors.hpp"

namespace cli = polydist::cli;

int main(int argc, char** argv) {
  CLI::App app{
      "polydist: spectral-norm distance bounds from a matrix polynomial to the\n"
      "matrix polynomials having a prescribed multiple eigenvalue, with the\n"
      "corrected construction for weakly normal inputs"};
  app.require_subcommand(1);

  cli::AnalyzeArgs analyze_args;
  std::string analyze_mode, analyze_report;
  double verify_tol = -1.0, gamma_max = -1.0, gamma_tol = -1.0, coalescence_rtol = -1.0;
  int grid = -1;
  auto* analyze = app.add_subcommand(
      "analyze", "precheck, gamma search, (conditional) correction, perturbation, verification");
  analyze->add_option("file", analyze_args.problem_path, "problem JSON file")->required();
  analyze->add_option("--mode", analyze_mode, "auto | single | corrected");
  analyze->add_option("--report", analyze_report, "write the JSON report here (default stdout)");
  analyze->add_option("--verify-tol", verify_tol, "verification tolerance (default 1e-8)");
  analyze->add_option("--gamma-max", gamma_max, "initial gamma search window (default 10)");
  analyze->add_option("--grid", grid, "coarse grid count (default 200)");
  analyze->add_option("--gamma-tol", gamma_tol, "golden-section tolerance (default 1e-10)");
  analyze->add_option("--coalescence-rtol", coalescence_rtol,
                      "relative coalescence tolerance (default 1e-6)");

  cli::CurveArgs curve_args;
  auto* curve =
      app.add_subcommand("curve", "sample the two singular-value branches to CSV");
  curve->add_option("file", curve_args.problem_path, "problem JSON file")->required();
  curve->add_option("--gamma-lo", curve_args.gamma_lo, "left end (default 0)");
  curve->add_option("--gamma-hi", curve_args.gamma_hi, "right end (default 10)");
  curve->add_option("--samples", curve_args.samples, "sample count (default 101)");
  curve->add_option("--out", curve_args.out_path, "output CSV path")->required();

  cli::VerifyArgs verify_args;
  std::string verify_mu, verify_report;
  auto* verify = app.add_subcommand(
      "verify", "check whether mu is a multiple eigenvalue of the polynomial in the file");
  verify->add_option("file", verify_args.problem_path, "problem JSON file (holds Q)")->required();
  verify->add_option("--mu", verify_mu, "eigenvalue candidate as 're,im'");
  verify->add_option("--tol", verify_args.tol, "verification tolerance (default 1e-8)");
  verify->add_option("--report", verify_report, "write the JSON report here (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (analyze->parsed()) {
      if (!analyze_mode.empty()) analyze_args.mode = analyze_mode;
      if (!analyze_report.empty()) analyze_args.report_path = analyze_report;
      if (verify_tol > 0.0) analyze_args.verify_tol = verify_tol;
      if (gamma_max > 0.0) analyze_args.gamma_max = gamma_max;
      if (grid > 0) analyze_args.grid = grid;
      if (gamma_tol > 0.0) analyze_args.gamma_tol = gamma_tol;
      if (coalescence_rtol > 0.0) analyze_args.coalescence_rtol = coalescence_rtol;
      return cli::cmd_analyze(analyze_args, std::cout, std::cerr);
    }
    if (curve->parsed()) {
      return cli::cmd_curve(curve_args, std::cerr);
    }
    if (!verify_mu.empty()) verify_args.mu = verify_mu;
    if (!verify_report.empty()) verify_args.report_path = verify_report;
    return cli::cmd_verify(verify_args, std::cout, std::cerr);
  } catch (const polydist::Error& e) {
    std::cerr << "polydist: [" << e.code() << "] " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "polydist: " << e.what() << "\n";
    return 1;
  }
}
