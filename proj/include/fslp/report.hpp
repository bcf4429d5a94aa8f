#pragma once

#include <ostream>
#include <string>
#include <string_view>

#include <fslp/harness.hpp>
#include <fslp/solver.hpp>

// Machine-readable output. CSV numeric fields use the shortest
// representation that round-trips the double exactly; JSON objects keep
// insertion order so that parse + re-serialize is idempotent.

namespace fslp {

inline constexpr std::string_view kVersion = "0.1.0";

/// Shortest round-trip decimal form of a double.
std::string format_double(double v);

/// CSV schema: header `k,lambda,residual,trusted`, one row per eigenvalue.
void write_solve_csv(std::ostream& os, const EigenSolution& sol);

/// JSON object {meta, eigenvalues}.
void write_solve_json(std::ostream& os, const EigenSolution& sol);

/// CSV schema: header `alpha,k,N,error`, then per-fit footer comment lines
/// `# fit alpha=<a> k=<k> exponent=<p> residual=<res>`. The coeff-decay
/// study additionally appends `# coeff ...` comment lines with the
/// closed-form estimates.
void write_study_csv(std::ostream& os, const StudyReport& rep);

/// JSON object {meta, eigenvalues, fits}.
void write_study_json(std::ostream& os, const StudyReport& rep);

}  // namespace fslp
