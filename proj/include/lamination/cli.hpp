// Command-line front end: input validation, the full report, and a worked
// two-interval walkthrough. Commands are plain functions over streams so
// tests drive them in-process; run_cli adds argument parsing on top.
#ifndef LAMINATION_CLI_HPP
#define LAMINATION_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "lamination/pipeline.hpp"

namespace lamination {

// Exit codes throughout: 0 ok, 1 domain failure, 2 usage or parse failure.
// Every failing path writes one structured line to err:
//   error: stage=<stage> code=<Code> msg="..."

// Prints unimodularity, ergodicity verdict, singularity-data validity, and
// rank compatibility; exit 0 iff all four pass.
int cmd_validate(const std::string& diagram_path, const std::string& delta_path,
                 std::ostream& out, std::ostream& err);

// Full report to out, JSON or text per config.format.
int cmd_report(const std::string& diagram_path, const std::string& delta_path,
               const RunConfig& config, std::ostream& out, std::ostream& err);

// Deterministic golden-mean walkthrough: state vector in closed form, the
// contraction ratio, the first contracted intervals, theta from a 64-step
// trace, pre-code and code prefixes.
int cmd_demo_golden_mean(std::ostream& out);

// argv-style interface (without the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace lamination

#endif
