#include "lamination/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lamination/coding.hpp"
#include "lamination/iet.hpp"

namespace lamination {

namespace {

constexpr const char* kDisclaimer =
    "Geometric conclusions are verified through their arithmetic and symbolic "
    "shadows (invariant counts, recurrence, complexity, frequencies); the "
    "hyperbolic realization of the lamination is outside computational scope.";

constexpr const char* kRauzyClassLimitation =
    "The synthesized permutation is verified to be irreducible with the "
    "prescribed cycle structure; whether it lies in the Rauzy class realizing "
    "the given stratum is not checked.";

constexpr double kFrequencyTol = 1e-2;
constexpr int kFrequencyMinLength = 100;

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageFailure&) {
    throw;
  } catch (const Error& e) {
    throw StageFailure(name, e.code(), std::string(name) + ": " + e.what());
  }
}

OrderedJson check_item(const std::string& name, const std::string& status,
                       const std::string& detail) {
  OrderedJson item = OrderedJson::object();
  item["name"] = name;
  item["status"] = status;
  item["detail"] = detail;
  return item;
}

std::string join_ints(const std::vector<int>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out;
}

}  // namespace

LaminationReport build_lamination_report(const BratteliDiagram& diagram,
                                         const SingularityData& delta,
                                         const RunConfig& config) {
  if (config.depth < 1) throw std::invalid_argument("RunConfig: depth must be >= 1");
  if (!(config.tol > 0)) throw std::invalid_argument("RunConfig: tol must be > 0");
  if (config.code_length < 0)
    throw std::invalid_argument("RunConfig: code_length must be >= 0");
  if (config.analysis_max_n < 1)
    throw std::invalid_argument("RunConfig: analysis_max_n must be >= 1");

  // Compatibility precondition; its failures are not stage failures.
  const SurfaceInvariants inv = surface_invariants(delta);
  if (diagram.rank() != inv.intervals)
    throw RankMismatch("diagram rank " + std::to_string(diagram.rank()) +
                       " != 2g + m - 1 = " + std::to_string(inv.intervals) +
                       " required by the singularity data");

  const LabelAlphabet labels = config.labels
                                   ? LabelAlphabet::custom(*config.labels)
                                   : LabelAlphabet::standard(inv.genus, inv.components);
  if (labels.size() != diagram.rank())
    throw std::invalid_argument("RunConfig: " + std::to_string(labels.size()) +
                                " labels for rank " + std::to_string(diagram.rank()));

  const UnimodularReport uni =
      stage("unimodularity", [&] { return check_unimodular(diagram); });
  if (!uni.overall) {
    for (const auto& entry : uni.entries)
      if (!entry.pass)
        throw StageFailure("unimodularity", "NotUnimodular",
                           "level " + std::to_string(entry.level) +
                               " has determinant " + entry.determinant.str());
  }

  const ErgodicityVerdict verdict =
      stage("ergodicity", [&] { return is_strictly_ergodic(diagram); });
  if (verdict != ErgodicityVerdict::StrictlyErgodic)
    throw StageFailure("ergodicity", "NotErgodic",
                       std::string("verdict ") + to_string(verdict));

  const StateVector state = stage("state_vector", [&] {
    return state_vector(diagram, kDefaultStateDepth, config.tol);
  });

  const Permutation pi =
      stage("permutation", [&] { return permutation_from_singularity_data(delta); });

  const IET iet = stage("iet", [&] { return IET(state.lambda, pi); });

  const InductionTrace trace =
      stage("induction", [&] { return induce(iet, config.depth); });

  const ThetaPoint theta = stage("theta", [&] { return theta_point(trace); });

  const int precode_depth = std::min(kReportPrecodeDepth, trace.depth());
  const PreCode precode =
      stage("pre_code", [&] { return pre_code(trace, theta.value, precode_depth); });

  std::vector<int> word;
  std::string code_text;
  std::string code_legend;
  if (config.code_length > 0) {
    const auto stream = stage("expand_code", [&] {
      auto s = expand_code(precode, trace);
      s->produce(static_cast<std::size_t>(config.code_length));
      return s;
    });
    const SymbolicGeodesic geodesic = stage("symbolic_geodesic", [&] {
      return symbolic_geodesic(stream, labels);
    });
    word = stream->produce(static_cast<std::size_t>(config.code_length));
    code_text = geodesic.text(word.size());
    code_legend = geodesic.legend();
  }

  // Analyses over the finite code prefix; rows whose length requirement the
  // prefix cannot meet are left out rather than erroring.
  const long n_word = static_cast<long>(word.size());
  OrderedJson analysis = OrderedJson::object();
  std::optional<std::vector<double>> freqs;
  double freq_diff = 0.0;
  if (!word.empty()) {
    stage("analysis", [&] {
      OrderedJson period = OrderedJson::object();
      if (n_word >= 4) {
        const int max_period = static_cast<int>(n_word / 4);
        const std::optional<int> found = is_periodic_up_to(word, max_period);
        period["max_period"] = max_period;
        if (found)
          period["found"] = *found;
        else
          period["found"] = nullptr;
      } else {
        period["max_period"] = 0;
        period["found"] = nullptr;
      }
      analysis["period"] = std::move(period);

      OrderedJson recurrence = OrderedJson::array();
      for (int n = 1; n <= config.analysis_max_n && 4L * n <= n_word; ++n) {
        const RecurrenceReport rep = recurrence_check(word, n);
        OrderedJson row = OrderedJson::object();
        row["n"] = rep.n;
        row["factors"] = rep.factor_count;
        row["all_recur"] = rep.all_recur;
        row["max_gap"] = rep.max_gap;
        recurrence.push_back(std::move(row));
      }
      analysis["recurrence"] = std::move(recurrence);

      OrderedJson complexity = OrderedJson::array();
      for (int n = 1; n <= config.analysis_max_n && 2L * n <= n_word; ++n) {
        OrderedJson row = OrderedJson::object();
        row["n"] = n;
        row["p_n"] = factor_complexity(word, n);
        complexity.push_back(std::move(row));
      }
      analysis["complexity"] = std::move(complexity);

      freqs = letter_frequencies(word, diagram.rank());
      for (int i = 0; i < diagram.rank(); ++i)
        freq_diff = std::max(freq_diff, std::abs((*freqs)[static_cast<std::size_t>(i)] -
                                                 state.lambda[i]));
      OrderedJson fj = OrderedJson::object();
      fj["observed"] = *freqs;
      fj["lambda"] = std::vector<double>(state.lambda.data(),
                                         state.lambda.data() + state.lambda.size());
      fj["max_abs_diff"] = freq_diff;
      analysis["frequencies"] = std::move(fj);
      return 0;
    });
  }

  OrderedJson checks = OrderedJson::array();
  {
    const bool ok = inv.components == inv.intervals - 2 * inv.genus + 1;
    checks.push_back(check_item(
        "components m = r - 2g + 1", ok ? "pass" : "fail",
        "m=" + std::to_string(inv.components) + ", r=" + std::to_string(inv.intervals) +
            ", g=" + std::to_string(inv.genus)));
  }
  {
    const AreaCheck area = check_area(delta);
    const auto cycles = cycle_decomposition(pi);
    std::vector<int> got;
    for (const auto& c : cycles) got.push_back(static_cast<int>(c.size()));
    std::sort(got.begin(), got.end());
    std::vector<int> want;
    for (int i = 0; i < delta.size(); ++i)
      want.push_back((delta.twice_k(i) + (i + 1 < delta.size() ? 2 : 4)) / 2);
    std::sort(want.begin(), want.end());
    const bool ok = area.pass && got == want;
    std::string detail = "area " + std::to_string(area.sides_minus_two_sum) + "=" +
                         std::to_string(area.expected) + "; cycle lengths (" +
                         join_ints(got) + ") vs prescribed (" + join_ints(want) + ")";
    checks.push_back(check_item("singularity data echoed", ok ? "pass" : "fail", detail));
  }
  {
    const bool ok = delta.sum_twice() == 2 * (2 * inv.genus - 2);
    checks.push_back(check_item(
        "sum k_i = 2g - 2", ok ? "pass" : "fail",
        "2*sum k_i = " + std::to_string(delta.sum_twice()) + ", 2*(2g-2) = " +
            std::to_string(2 * (2 * inv.genus - 2))));
  }
  {
    if (freqs && n_word >= kFrequencyMinLength) {
      const bool ok = freq_diff < kFrequencyTol;
      checks.push_back(check_item("frequencies match state vector",
                                  ok ? "pass" : "fail",
                                  "max abs diff " + format_double(freq_diff) +
                                      " over " + std::to_string(n_word) + " symbols"));
    } else {
      checks.push_back(check_item("frequencies match state vector", "skipped",
                                  "code prefix shorter than " +
                                      std::to_string(kFrequencyMinLength) + " symbols"));
    }
  }

  OrderedJson doc = OrderedJson::object();
  {
    OrderedJson input = OrderedJson::object();
    input["diagram_digest"] = fnv1a_digest(print_diagram(diagram).dump());
    input["rank"] = diagram.rank();
    input["delta"] = print_delta(delta)["ks"];
    doc["input"] = std::move(input);
  }
  {
    OrderedJson j = OrderedJson::object();
    j["genus"] = inv.genus;
    j["components"] = inv.components;
    j["intervals"] = inv.intervals;
    j["euler_characteristic"] = inv.euler_characteristic;
    j["total_area_multiple"] = inv.total_area_multiple;
    doc["invariants"] = std::move(j);
  }
  doc["ergodicity"] = to_string(verdict);
  {
    OrderedJson j = OrderedJson::object();
    j["lambda"] = std::vector<double>(state.lambda.data(),
                                      state.lambda.data() + state.lambda.size());
    j["tolerance"] = state.tolerance_used;
    j["depth_used"] = state.depth_used;
    doc["state_vector"] = std::move(j);
  }
  {
    OrderedJson j = OrderedJson::object();
    j["images"] = pi.images;
    j["one_line"] = to_string(pi);
    j["cycles"] = cycle_decomposition(pi);
    doc["permutation"] = std::move(j);
  }
  {
    OrderedJson j = OrderedJson::object();
    j["depth"] = trace.depth();
    std::string types;
    for (const auto& s : trace.steps) types += s.type;
    j["step_types"] = types;
    j["grouping"] = trace.grouping;
    j["contraction_constant"] = trace.contraction_constant;
    j["residual_max"] =
        trace.residuals.empty()
            ? 0.0
            : *std::max_element(trace.residuals.begin(), trace.residuals.end());
    const AdmissibleInterval& last = trace.steps.back().gamma;
    OrderedJson interval = OrderedJson::object();
    interval["xi"] = format_double(last.xi);
    interval["eta"] = format_double(last.eta);
    interval["length"] = format_double(last.length());
    j["final_interval"] = std::move(interval);
    OrderedJson th = OrderedJson::object();
    th["value"] = theta.value;
    th["radius"] = theta.radius;
    j["theta"] = std::move(th);
    doc["induction"] = std::move(j);
  }
  {
    OrderedJson j = OrderedJson::object();
    j["depth"] = precode.size();
    j["indices"] = precode.indices;
    j["staircase"] = precode.staircase;
    std::string rendered;
    for (std::size_t t = 0; t < precode.indices.size(); ++t) {
      if (t) rendered += " ";
      rendered += labels.label(precode.indices[t]);
    }
    j["rendered"] = rendered;
    doc["pre_code"] = std::move(j);
  }
  if (config.code_length > 0) {
    OrderedJson j = OrderedJson::object();
    j["length"] = static_cast<long>(word.size());
    j["labels"] = labels.labels();
    j["text"] = code_text;
    if (!code_legend.empty()) j["legend"] = code_legend;
    doc["code"] = std::move(j);
    doc["analysis"] = std::move(analysis);
  }
  doc["theorem_checks"] = std::move(checks);
  doc["limitations"] = OrderedJson::array({kRauzyClassLimitation});
  doc["disclaimer"] = kDisclaimer;

  return LaminationReport{std::move(doc)};
}

namespace {

std::string joined_number_list(const OrderedJson& arr) {
  std::string out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) out += " ";
    out += arr[i].dump();
  }
  return out;
}

}  // namespace

std::string render_text(const LaminationReport& report) {
  const OrderedJson& j = report.json;
  std::ostringstream out;
  out << "lamination report\n";
  out << "input: digest=" << j["input"]["diagram_digest"].get<std::string>()
      << " rank=" << j["input"]["rank"] << " delta=[" << joined_number_list(j["input"]["delta"])
      << "]\n";
  const OrderedJson& inv = j["invariants"];
  out << "invariants: g=" << inv["genus"] << " m=" << inv["components"] << " r="
      << inv["intervals"] << " chi=" << inv["euler_characteristic"]
      << " area_multiple=" << inv["total_area_multiple"] << "\n";
  out << "ergodicity: " << j["ergodicity"].get<std::string>() << "\n";
  out << "state vector: " << joined_number_list(j["state_vector"]["lambda"])
      << " (tol " << j["state_vector"]["tolerance"].dump() << ", depth "
      << j["state_vector"]["depth_used"] << ")\n";
  out << "permutation: " << j["permutation"]["one_line"].get<std::string>()
      << " cycles " << j["permutation"]["cycles"].dump() << "\n";
  const OrderedJson& ind = j["induction"];
  out << "induction: " << ind["depth"] << " steps, types "
      << ind["step_types"].get<std::string>() << ", grouping " << ind["grouping"]
      << ", contraction " << ind["contraction_constant"].dump() << "\n";
  out << "final interval: [" << ind["final_interval"]["xi"].get<std::string>() << ", "
      << ind["final_interval"]["eta"].get<std::string>() << ") length "
      << ind["final_interval"]["length"].get<std::string>() << "\n";
  out << "theta: " << ind["theta"]["value"].dump() << " +/- "
      << ind["theta"]["radius"].dump() << "\n";
  out << "pre-code (" << j["pre_code"]["depth"] << "): "
      << j["pre_code"]["rendered"].get<std::string>() << "\n";
  if (j.contains("code")) {
    out << "code (" << j["code"]["length"] << "): " << j["code"]["text"].get<std::string>()
        << "\n";
    if (j["code"].contains("legend"))
      out << "legend: " << j["code"]["legend"].get<std::string>() << "\n";
    const OrderedJson& an = j["analysis"];
    out << "period: none up to " << an["period"]["max_period"];
    if (!an["period"]["found"].is_null()) out << " (found " << an["period"]["found"] << ")";
    out << "\n";
    out << "recurrence:";
    for (const auto& row : an["recurrence"])
      out << " n=" << row["n"] << " gap=" << row["max_gap"]
          << (row["all_recur"].get<bool>() ? "" : "(!)");
    out << "\n";
    out << "complexity:";
    for (const auto& row : an["complexity"]) out << " p(" << row["n"] << ")=" << row["p_n"];
    out << "\n";
    out << "frequencies: observed " << joined_number_list(an["frequencies"]["observed"])
        << " vs lambda " << joined_number_list(an["frequencies"]["lambda"])
        << " (max diff " << an["frequencies"]["max_abs_diff"].dump() << ")\n";
  }
  out << "theorem checks:\n";
  for (const auto& item : j["theorem_checks"])
    out << "  [" << item["status"].get<std::string>() << "] "
        << item["name"].get<std::string>() << " -- " << item["detail"].get<std::string>()
        << "\n";
  for (const auto& lim : j["limitations"])
    out << "limitation: " << lim.get<std::string>() << "\n";
  out << "disclaimer: " << j["disclaimer"].get<std::string>() << "\n";
  return out.str();
}

}  // namespace lamination
