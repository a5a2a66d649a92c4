// Orchestration: run the full construction on a (diagram, singularity data)
// pair, verify the arithmetic conclusions, and assemble a deterministic
// machine-readable report.
#ifndef LAMINATION_PIPELINE_HPP
#define LAMINATION_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "lamination/bratteli.hpp"
#include "lamination/json_io.hpp"
#include "lamination/surface.hpp"

namespace lamination {

enum class OutputFormat { json, text };

struct RunConfig {
  int depth = 64;           // induction steps
  double tol = 1e-12;       // state-vector convergence tolerance
  int code_length = 1000;   // code symbols reported and analyzed; 0 omits the code block
  int analysis_max_n = 10;  // largest factor length in the analysis tables
  std::optional<std::vector<std::string>> labels;  // overrides the standard alphabet
  OutputFormat format = OutputFormat::json;
};

// Levels of the pre-code included in the report (the interesting depth for
// the staircase presentation; far above the flank-length float guard).
inline constexpr int kReportPrecodeDepth = 10;

struct LaminationReport {
  OrderedJson json;  // fixed field names, documented in the README
};

// Stages in order: check_unimodular, is_strictly_ergodic, state_vector,
// permutation_from_singularity_data, IET construction, induce, theta_point,
// pre_code, expand_code, symbolic_geodesic, analyses. Precondition violations
// come bare (RankMismatch, InvalidSingularityData); stage errors are rethrown
// as StageFailure carrying the stage name and the inner error code.
LaminationReport build_lamination_report(const BratteliDiagram& diagram,
                                         const SingularityData& delta,
                                         const RunConfig& config = {});

// Plain-text rendering of the same content.
std::string render_text(const LaminationReport& report);

}  // namespace lamination

#endif
