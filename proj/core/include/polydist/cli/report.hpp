#pragma once

#include <nlohmann/json.hpp>

#include "polydist/cli/pipeline.hpp"

namespace polydist::cli {

using Json = nlohmann::ordered_json;

// Complex numbers serialize as [re, im] pairs, matrices as row-major nested
// arrays of such pairs. Formatting is fixed so identical inputs produce
// byte-identical reports.

Json json_complex(Complex z);
Json json_matrix(const Matrix& m);
Json json_poly(const MatrixPolynomial& p);

Json verification_json(const VerificationReport& r);
Json analysis_report(const ProblemSpec& spec, const AnalysisResult& result);
Json verify_report(const MatrixPolynomial& q, Complex mu, const VerificationReport& r);
Json error_report(const std::string& command, const std::string& code,
                  const std::string& message);

/// Fixed serialization used for all report output: two-space indent plus a
/// trailing newline.
std::string dump_report(const Json& j);

}  // namespace polydist::cli
