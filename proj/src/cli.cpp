#include "lamination/cli.hpp"

#include <cmath>
#include <ostream>

#include <CLI11.hpp>

#include "lamination/coding.hpp"
#include "lamination/iet.hpp"

namespace lamination {

namespace {

std::string sanitize(const std::string& text) {
  std::string out;
  out.reserve(text.size());
  for (char c : text) {
    if (c == '\n' || c == '\r')
      out += ' ';
    else if (c == '"')
      out += '\'';
    else
      out += c;
  }
  return out;
}

void emit_error(std::ostream& err, const std::string& stage, const std::string& code,
                const std::string& msg) {
  err << "error: stage=" << stage << " code=" << code << " msg=\"" << sanitize(msg)
      << "\"\n";
}

}  // namespace

int cmd_validate(const std::string& diagram_path, const std::string& delta_path,
                 std::ostream& out, std::ostream& err) {
  try {
    const BratteliDiagram diagram =
        parse_diagram(parse_json_text(read_text_file(diagram_path)));
    const OrderedJson delta_doc = parse_json_text(read_text_file(delta_path));

    std::string first_stage, first_code, first_msg;
    const auto note_failure = [&](const std::string& stage, const std::string& code,
                                  const std::string& msg) {
      if (first_stage.empty()) {
        first_stage = stage;
        first_code = code;
        first_msg = msg;
      }
    };

    const UnimodularReport uni = check_unimodular(diagram);
    if (uni.overall) {
      out << "unimodularity: pass (" << uni.entries.size() << " levels)\n";
    } else {
      for (const auto& entry : uni.entries)
        if (!entry.pass) {
          const std::string msg = "level " + std::to_string(entry.level) +
                                  " has determinant " + entry.determinant.str();
          out << "unimodularity: fail (" << msg << ")\n";
          note_failure("unimodularity", "NotUnimodular", msg);
          break;
        }
    }

    const ErgodicityVerdict verdict = is_strictly_ergodic(diagram);
    if (verdict == ErgodicityVerdict::StrictlyErgodic) {
      out << "ergodicity: StrictlyErgodic (pass)\n";
    } else {
      out << "ergodicity: " << to_string(verdict) << " (fail)\n";
      note_failure("ergodicity", "NotErgodic", std::string("verdict ") + to_string(verdict));
    }

    std::optional<SurfaceInvariants> inv;
    try {
      inv = surface_invariants(parse_delta(delta_doc));
    } catch (const InvalidSingularityData& e) {
      out << "delta: invalid (" << e.what() << ")\n";
      note_failure("delta", e.code(), e.what());
    }
    if (inv)
      out << "delta: valid (g=" << inv->genus << ", m=" << inv->components
          << ", r=" << inv->intervals << ")\n";

    if (inv) {
      if (diagram.rank() == inv->intervals) {
        out << "rank: compatible (diagram rank " << diagram.rank() << " = 2g+m-1)\n";
      } else {
        const std::string msg = "diagram rank " + std::to_string(diagram.rank()) +
                                ", singularity data needs " +
                                std::to_string(inv->intervals);
        out << "rank: mismatch (" << msg << ")\n";
        note_failure("rank", "RankMismatch", msg);
      }
    } else {
      out << "rank: unavailable (delta invalid)\n";
    }

    if (first_stage.empty()) return 0;
    emit_error(err, first_stage, first_code, first_msg);
    return 1;
  } catch (const SchemaError& e) {
    emit_error(err, "input", e.code(), e.what());
    return 2;
  } catch (const Error& e) {
    emit_error(err, "input", e.code(), e.what());
    return 1;
  }
}

int cmd_report(const std::string& diagram_path, const std::string& delta_path,
               const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    const BratteliDiagram diagram =
        parse_diagram(parse_json_text(read_text_file(diagram_path)));
    const SingularityData delta = parse_delta(parse_json_text(read_text_file(delta_path)));
    if (config.labels &&
        static_cast<int>(config.labels->size()) != diagram.rank()) {
      emit_error(err, "cli", "ParseError",
                 "--labels needs exactly " + std::to_string(diagram.rank()) +
                     " names for this diagram");
      return 2;
    }
    const LaminationReport report = build_lamination_report(diagram, delta, config);
    if (config.format == OutputFormat::json)
      out << report.json.dump(2) << "\n";
    else
      out << render_text(report);
    return 0;
  } catch (const SchemaError& e) {
    emit_error(err, "input", e.code(), e.what());
    return 2;
  } catch (const StageFailure& e) {
    emit_error(err, e.stage(), e.inner_code(), e.what());
    return 1;
  } catch (const Error& e) {
    emit_error(err, "input", e.code(), e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error(err, "internal", "Unexpected", e.what());
    return 1;
  }
}

int cmd_demo_golden_mean(std::ostream& out) {
  const double s5 = std::sqrt(5.0);
  const double l1 = (s5 - 1.0) / 2.0;
  const double l2 = (3.0 - s5) / 2.0;
  const double eps = (3.0 + s5) / 2.0;

  out << "golden-mean walkthrough\n";
  out << "\n";
  out << "diagram: rank 2, period matrix [[1,1],[1,0]]\n";
  out << "state vector:\n";
  out << "  lambda_1 = (sqrt(5)-1)/2 = " << format_double(l1) << "\n";
  out << "  lambda_2 = (3-sqrt(5))/2 = " << format_double(l2) << "\n";
  out << "interval exchange: lengths (lambda_1, lambda_2), permutation (2,1)\n";
  out << "contraction ratio per A,B step pair: eps = (3+sqrt(5))/2 = "
      << format_double(eps) << "\n";
  out << "contracted intervals around theta, after k step pairs:\n";
  double p = 1.0;
  for (int k = 1; k <= 4; ++k) {
    p *= eps;
    out << "  k=" << k << ": [lambda_1 - lambda_1/eps^" << k
        << ", lambda_1 + lambda_2/eps^" << k << ") = [" << format_double(l1 - l1 / p)
        << ", " << format_double(l1 + l2 / p) << ")\n";
  }

  IncidenceMatrix fib(2, 2);
  fib << 1, 1, 1, 0;
  const BratteliDiagram diagram(2, {}, {fib});
  const StateVector state = state_vector(diagram);
  const IET iet(state.lambda, Permutation{{2, 1}});
  const InductionTrace trace = induce(iet, 64);
  const ThetaPoint theta = theta_point(trace);
  out << "theta after 64 induction steps: " << format_double(theta.value) << " +/- "
      << format_double(theta.radius) << " (= lambda_1, the first discontinuity)\n";

  const PreCode precode = pre_code(trace, theta.value, 10);
  out << "pre-code: ";
  for (std::size_t t = 0; t < precode.indices.size();) {
    std::size_t run = t;
    while (run < precode.indices.size() && precode.indices[run] == precode.indices[t])
      ++run;
    if (t) out << " ";
    for (std::size_t s = t; s < run; ++s) out << (precode.indices[t] == 1 ? 'a' : 'b');
    t = run;
  }
  out << "\n";

  const auto stream = expand_code(precode, trace);
  const SymbolicGeodesic geodesic =
      symbolic_geodesic(stream, LabelAlphabet::standard(1, 1));
  const std::vector<std::string> first = geodesic.produce_labels(16);
  out << "code (first 16): ";
  for (std::size_t t = 0; t < first.size(); ++t) {
    if (t) out << " ";
    out << first[t];
  }
  out << "\n";
  out << "note: renaming the letters identifies this code with the Morse coding of a\n"
         "geodesic on the once-punctured torus; the local two-letter insertion rule\n"
         "(a inside \"b a\", b inside \"a a\") matches it only up to a point and the\n"
         "matrix-driven expansion is authoritative.\n";
  return 0;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"symbolic geodesic coding from a Bratteli diagram and singularity data"};
  app.require_subcommand(1);

  std::string val_diagram, val_delta;
  auto* validate = app.add_subcommand(
      "validate", "check unimodularity, ergodicity, singularity data, rank");
  validate->add_option("diagram", val_diagram, "diagram JSON file")->required();
  validate->add_option("delta", val_delta, "singularity data JSON file")->required();

  std::string rep_diagram, rep_delta;
  RunConfig config;
  std::vector<std::string> labels;
  std::string format = "json";
  auto* report = app.add_subcommand("report", "full lamination report");
  report->add_option("diagram", rep_diagram, "diagram JSON file")->required();
  report->add_option("delta", rep_delta, "singularity data JSON file")->required();
  report->add_option("--depth", config.depth, "induction steps (default 64)")
      ->check(CLI::Range(1, 1000000));
  report->add_option("--tol", config.tol, "state-vector tolerance (default 1e-12)")
      ->check(CLI::PositiveNumber);
  report
      ->add_option("--length", config.code_length,
                   "code symbols to emit and analyze; 0 omits the code block")
      ->check(CLI::Range(0, 100000000));
  report
      ->add_option("--max-n", config.analysis_max_n,
                   "largest factor length in the analysis tables (default 10)")
      ->check(CLI::Range(1, 64));
  report
      ->add_option("--labels", labels,
                   "comma-separated label per symbol, in symbol order")
      ->delimiter(',');
  report->add_option("--format", format, "json or text (default json)")
      ->check(CLI::IsMember({"json", "text"}));

  auto* demo = app.add_subcommand("demo-golden-mean", "worked two-interval example");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(err, "cli", "ParseError", e.what());
    return 2;
  }

  if (validate->parsed()) return cmd_validate(val_diagram, val_delta, out, err);
  if (report->parsed()) {
    if (!labels.empty()) config.labels = labels;
    config.format = format == "text" ? OutputFormat::text : OutputFormat::json;
    return cmd_report(rep_diagram, rep_delta, config, out, err);
  }
  if (demo->parsed()) return cmd_demo_golden_mean(out);
  emit_error(err, "cli", "ParseError", "missing subcommand");
  return 2;
}

}  // namespace lamination
