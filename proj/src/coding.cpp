#include "lamination/coding.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

namespace lamination {

namespace {

// The two-letter staircase presentation applies when the step types strictly
// alternate A,B,... over the levels being coded (deeper levels may degrade in
// floating point without affecting the shallow presentation).
bool staircase_applies(const InductionTrace& trace, int depth) {
  if (trace.initial.rank() != 2 || depth < 1) return false;
  for (int t = 0; t < depth; ++t)
    if (trace.steps[static_cast<std::size_t>(t)].type != (t % 2 == 0 ? 'A' : 'B'))
      return false;
  return true;
}

std::vector<int> staircase_word(int depth) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(depth));
  if (depth >= 1) out.push_back(2);
  int run = 1;
  while (static_cast<int>(out.size()) < depth) {
    for (int t = 0; t < run && static_cast<int>(out.size()) < depth; ++t) out.push_back(1);
    if (static_cast<int>(out.size()) < depth) out.push_back(2);
    ++run;
  }
  return out;
}

}  // namespace

PreCode pre_code(const InductionTrace& trace, double theta, int depth) {
  if (depth < 0) throw std::invalid_argument("pre_code: depth must be >= 0");
  if (depth > trace.depth())
    throw std::invalid_argument("pre_code: depth " + std::to_string(depth) +
                                " exceeds trace depth " + std::to_string(trace.depth()));
  if (trace.depth() >= 1) {
    const AdmissibleInterval& last = trace.steps.back().gamma;
    if (!(theta >= last.xi && theta < last.eta))
      throw std::invalid_argument("pre_code: theta is not inside the deepest chain interval");
  }
  PreCode out;
  out.staircase = staircase_applies(trace, depth);
  if (depth == 0) return out;
  if (out.staircase) {
    out.indices = staircase_word(depth);
    return out;
  }
  for (int j = 1; j <= depth; ++j) {
    const FlankState& f = trace.flanks[static_cast<std::size_t>(j - 1)];
    const Vec<double>& lens = trace.level(j).lengths();
    const double len_l = lens[f.left_tower - 1];
    const double len_r = lens[f.right_tower - 1];
    if (std::min(len_l, len_r) < kCodingGuard)
      throw ThetaOnBoundary("level " + std::to_string(j) +
                            ": flank length below float guard");
    out.indices.push_back(f.right_tower);
  }
  return out;
}

std::vector<int> SymbolicSequence::produce(std::size_t n) {
  std::lock_guard<std::mutex> lock(mu_);
  if (memo_.size() < n) extend(memo_, n);
  return std::vector<int>(memo_.begin(), memo_.begin() + static_cast<long>(n));
}

namespace {

// Streams the level-0 expansion of one deepest-level tower word, skipping a
// prefix: symbol counts of the full word are a column of the matrix product.
class ExpansionCursor {
 public:
  ExpansionCursor() = default;
  ExpansionCursor(const InductionTrace& trace, int tower, const Int& skip)
      : trace_(&trace) {
    const int level = trace.depth();
    if (skip >= leaves(level, tower)) return;  // empty suffix
    stack_.reserve(static_cast<std::size_t>(level) + 1);
    stack_.push_back({level, tower, 0});
    Int rest = skip;
    while (stack_.back().level > 0) {
      Frame& f = stack_.back();
      const auto kids = children(f.level, f.sym);
      int ci = f.next_child;
      for (;; ++ci) {
        const Int sz = leaves(f.level - 1, kids[static_cast<std::size_t>(ci)]);
        if (rest < sz) break;
        rest -= sz;
      }
      f.next_child = ci + 1;
      stack_.push_back({f.level - 1, kids[static_cast<std::size_t>(ci)], 0});
    }
  }

  bool done() const { return stack_.empty(); }

  int next() {
    const int symbol = stack_.back().sym;
    stack_.pop_back();
    while (!stack_.empty()) {
      Frame& f = stack_.back();
      const auto kids = children(f.level, f.sym);
      if (f.next_child < static_cast<int>(kids.size())) {
        int child = kids[static_cast<std::size_t>(f.next_child++)];
        int level = f.level - 1;
        stack_.push_back({level, child, 0});
        while (stack_.back().level > 0) {
          Frame& g = stack_.back();
          const auto gkids = children(g.level, g.sym);
          g.next_child = 1;
          stack_.push_back({g.level - 1, gkids[0], 0});
        }
        break;
      }
      stack_.pop_back();
    }
    return symbol;
  }

 private:
  struct Frame {
    int level;
    int sym;
    int next_child;
  };

  // Per-step substitution read off the step record: the first-return word of
  // each level-t interval in level-(t-1) symbols.
  std::vector<int> children(int level, int sym) const {
    const InductionStep& step = trace_->steps[static_cast<std::size_t>(level - 1)];
    const int r = step.induced.rank();
    const int d = step.d;
    if (step.type == 'A') {
      if (sym <= d) return {sym};
      if (sym == d + 1) return {d, r};
      return {sym - 1};
    }
    if (sym == d) return {d, r};
    return {sym};
  }

  Int leaves(int level, int sym) const {
    if (level == 0) return Int(1);
    return trace_->heights[static_cast<std::size_t>(level - 1)][sym - 1];
  }

  const InductionTrace* trace_ = nullptr;
  std::vector<Frame> stack_;
};

class CodeStream : public SymbolicSequence {
 public:
  explicit CodeStream(const InductionTrace& trace)
      : SymbolicSequence(trace.initial.rank()),
        trace_(std::make_shared<InductionTrace>(trace)),
        deepest_(trace_->steps.back().induced) {
    const FlankState& f = trace_->flanks.back();
    cursor_ = ExpansionCursor(*trace_, f.right_tower, f.right_floor);
    // Continuation after the pinned suffix: the first return of the flank
    // tower's base, approached from the right (half-open intervals make the
    // plain image correct).
    point_ = deepest_.apply(deepest_.domain_start(f.right_tower));
  }

 protected:
  void extend(std::vector<int>& memo, std::size_t target) override {
    while (memo.size() < target) {
      if (cursor_.done()) {
        const int j = locate(point_);
        cursor_ = ExpansionCursor(*trace_, j, Int(0));
        point_ = deepest_.apply(point_);
        continue;
      }
      memo.push_back(cursor_.next());
    }
  }

 private:
  int locate(double p) const {
    const double guard = 1e-12 * deepest_.total();
    for (int i = 2; i <= deepest_.rank(); ++i) {
      const double b = deepest_.domain_start(i);
      if (p != b && std::abs(p - b) <= guard)
        throw OrderingUnavailable(
            "continuation point at level " + std::to_string(trace_->depth()) +
            " is ambiguous within the float guard");
    }
    int j = 1;
    for (int i = 2; i <= deepest_.rank(); ++i)
      if (p >= deepest_.domain_start(i)) j = i;
    return j;
  }

  std::shared_ptr<const InductionTrace> trace_;
  IET deepest_;
  ExpansionCursor cursor_;
  double point_ = 0.0;
};

}  // namespace

std::shared_ptr<SymbolicSequence> expand_code(const PreCode& precode,
                                              const InductionTrace& trace) {
  if (trace.depth() < 1)
    throw std::invalid_argument("expand_code: trace has no steps");
  const PreCode check = pre_code(trace, trace.marked_point, precode.size());
  if (check.indices != precode.indices)
    throw std::invalid_argument("expand_code: pre-code inconsistent with trace");
  return std::make_shared<CodeStream>(trace);
}

LabelAlphabet LabelAlphabet::standard(int genus, int components) {
  if (genus < 1 || components < 1)
    throw std::invalid_argument("LabelAlphabet: genus and components must be >= 1");
  const int r = 2 * genus + components - 1;
  if (r == 2) return LabelAlphabet({"a", "b"});
  std::vector<std::string> names;
  for (int i = 1; i <= 2 * genus; ++i) names.push_back("c_" + std::to_string(i));
  for (int i = 1; i <= components - 1; ++i) names.push_back("h_" + std::to_string(i));
  return LabelAlphabet(std::move(names));
}

LabelAlphabet LabelAlphabet::custom(std::vector<std::string> names) {
  if (names.empty()) throw std::invalid_argument("LabelAlphabet: empty label list");
  for (const auto& n : names)
    if (n.empty()) throw std::invalid_argument("LabelAlphabet: empty label");
  return LabelAlphabet(std::move(names));
}

bool LabelAlphabet::all_single_char() const {
  return std::all_of(names_.begin(), names_.end(),
                     [](const std::string& s) { return s.size() == 1; });
}

SymbolicGeodesic::SymbolicGeodesic(std::shared_ptr<SymbolicSequence> code,
                                   LabelAlphabet labels)
    : code_(std::move(code)), labels_(std::move(labels)) {
  if (!code_) throw std::invalid_argument("SymbolicGeodesic: null code stream");
  if (labels_.size() != code_->alphabet_size())
    throw std::invalid_argument("SymbolicGeodesic: label count " +
                                std::to_string(labels_.size()) + " != alphabet size " +
                                std::to_string(code_->alphabet_size()));
}

std::vector<std::string> SymbolicGeodesic::produce_labels(std::size_t n) const {
  const std::vector<int> symbols = code_->produce(n);
  std::vector<std::string> out;
  out.reserve(symbols.size());
  for (int s : symbols) out.push_back(labels_.label(s));
  return out;
}

std::string SymbolicGeodesic::text(std::size_t n) const {
  const std::vector<int> symbols = code_->produce(n);
  std::string out;
  if (labels_.all_single_char()) {
    for (int s : symbols) out += labels_.label(s);
  } else if (labels_.size() <= 26) {
    for (int s : symbols) out += static_cast<char>('a' + s - 1);
  } else {
    for (std::size_t t = 0; t < symbols.size(); ++t) {
      if (t > 0) out += ",";
      out += std::to_string(symbols[t]);
    }
  }
  return out;
}

std::string SymbolicGeodesic::legend() const {
  if (labels_.all_single_char() || labels_.size() > 26) return "";
  std::string out;
  for (int s = 1; s <= labels_.size(); ++s) {
    if (s > 1) out += " ";
    out += static_cast<char>('a' + s - 1);
    out += "=" + labels_.label(s);
  }
  return out;
}

SymbolicGeodesic symbolic_geodesic(std::shared_ptr<SymbolicSequence> code,
                                   LabelAlphabet labels) {
  return SymbolicGeodesic(std::move(code), std::move(labels));
}

std::vector<int> insertion_rule_expand(const std::vector<int>& word) {
  for (int s : word)
    if (s != 1 && s != 2)
      throw std::invalid_argument("insertion_rule_expand: two-letter words only");
  std::vector<int> out;
  out.reserve(word.size() * 2);
  for (std::size_t t = 0; t < word.size(); ++t) {
    out.push_back(word[t]);
    if (t + 1 < word.size()) {
      if (word[t] == 2 && word[t + 1] == 1) out.push_back(1);  // a inside "b a"
      if (word[t] == 1 && word[t + 1] == 1) out.push_back(2);  // b inside "a a"
    }
  }
  return out;
}

std::optional<int> is_periodic_up_to(const std::vector<int>& word, int max_period) {
  if (max_period < 1) throw std::invalid_argument("is_periodic_up_to: max_period >= 1");
  if (static_cast<long>(word.size()) < 2L * max_period)
    throw WordTooShort("need length >= " + std::to_string(2 * max_period) + ", have " +
                       std::to_string(word.size()));
  for (int p = 1; p <= max_period; ++p) {
    bool ok = true;
    for (std::size_t i = 0; i + static_cast<std::size_t>(p) < word.size() && ok; ++i)
      ok = word[i] == word[i + static_cast<std::size_t>(p)];
    if (ok) return p;
  }
  return std::nullopt;
}

RecurrenceReport recurrence_check(const std::vector<int>& word, int n) {
  if (n < 1) throw std::invalid_argument("recurrence_check: n must be >= 1");
  if (static_cast<long>(word.size()) < 4L * n)
    throw WordTooShort("need length >= " + std::to_string(4 * n) + ", have " +
                       std::to_string(word.size()));
  const std::size_t un = static_cast<std::size_t>(n);
  std::map<std::vector<int>, std::vector<long>> occurrences;
  const std::size_t half = word.size() / 2;
  for (std::size_t i = 0; i + un <= half; ++i)
    occurrences[std::vector<int>(word.begin() + static_cast<long>(i),
                                 word.begin() + static_cast<long>(i + un))];
  for (std::size_t i = 0; i + un <= word.size(); ++i) {
    auto it = occurrences.find(std::vector<int>(word.begin() + static_cast<long>(i),
                                                word.begin() + static_cast<long>(i + un)));
    if (it != occurrences.end()) it->second.push_back(static_cast<long>(i));
  }
  RecurrenceReport report{n, static_cast<int>(occurrences.size()), true, 0, {}};
  for (const auto& [factor, positions] : occurrences) {
    if (positions.size() < 2) {
      report.all_recur = false;
      if (report.non_recurring.empty()) report.non_recurring = factor;
      continue;
    }
    for (std::size_t t = 1; t < positions.size(); ++t)
      report.max_gap = std::max(report.max_gap, positions[t] - positions[t - 1]);
  }
  return report;
}

long factor_complexity(const std::vector<int>& word, int n) {
  if (n < 1) throw std::invalid_argument("factor_complexity: n must be >= 1");
  if (static_cast<long>(word.size()) < 2L * n)
    throw WordTooShort("need length >= " + std::to_string(2 * n) + ", have " +
                       std::to_string(word.size()));
  std::set<std::vector<int>> factors;
  const std::size_t un = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i + un <= word.size(); ++i)
    factors.insert(std::vector<int>(word.begin() + static_cast<long>(i),
                                    word.begin() + static_cast<long>(i + un)));
  return static_cast<long>(factors.size());
}

std::vector<double> letter_frequencies(const std::vector<int>& word, int alphabet_size) {
  if (alphabet_size < 1) throw std::invalid_argument("letter_frequencies: alphabet >= 1");
  if (word.empty()) throw std::invalid_argument("letter_frequencies: empty word");
  std::vector<long> counts(static_cast<std::size_t>(alphabet_size), 0);
  for (int s : word) {
    if (s < 1 || s > alphabet_size)
      throw std::invalid_argument("letter_frequencies: symbol out of range");
    ++counts[static_cast<std::size_t>(s - 1)];
  }
  std::vector<double> out(static_cast<std::size_t>(alphabet_size), 0.0);
  const double total = static_cast<double>(word.size());
  double partial = 0.0;
  for (int i = 0; i + 1 < alphabet_size; ++i) {
    out[static_cast<std::size_t>(i)] = static_cast<double>(counts[static_cast<std::size_t>(i)]) / total;
    partial += out[static_cast<std::size_t>(i)];
  }
  out[static_cast<std::size_t>(alphabet_size - 1)] = 1.0 - partial;
  return out;
}

}  // namespace lamination
