// From an induction trace to symbols: the level-indexed pre-code, the full
// code of the contraction point as a lazy stream, relabeling to the surface
// alphabet, and finite-word diagnostics (periodicity, recurrence, factor
// complexity, letter frequencies).
#ifndef LAMINATION_CODING_HPP
#define LAMINATION_CODING_HPP

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "lamination/errors.hpp"
#include "lamination/iet.hpp"

namespace lamination {

struct PreCode {
  std::vector<int> indices;  // entry j-1 belongs to level j, values in 1..r
  bool staircase;            // true when the two-letter staircase presentation applies
  int size() const { return static_cast<int>(indices.size()); }
};

// Index of the part of the level-j interval chain containing theta, for
// j = 1..depth. The marked point lies on the internal boundary of each chain
// interval; the half-open floor convention places it in the right-hand part.
// For a two-interval trace whose step types strictly alternate (the
// golden-mean continued fraction pattern) the classical staircase presentation
// is emitted instead: b, a b, a a b, a a a b, ... with a=1, b=2.
// ThetaOnBoundary when a flank length falls below the float guard; `theta`
// must lie inside the deepest chain interval (consistency check only).
PreCode pre_code(const InductionTrace& trace, double theta, int depth);

// Lazily extendable symbol stream over 1..alphabet_size; produce(n) returns
// the first n symbols and is prefix-consistent. Thread-safe: the memo is
// guarded by an internal mutex.
class SymbolicSequence {
 public:
  explicit SymbolicSequence(int alphabet_size) : alphabet_(alphabet_size) {}
  virtual ~SymbolicSequence() = default;
  int alphabet_size() const { return alphabet_; }
  std::vector<int> produce(std::size_t n);

 protected:
  // Append symbols until memo.size() >= target; called under the lock.
  virtual void extend(std::vector<int>& memo, std::size_t target) = 0;

 private:
  int alphabet_;
  std::mutex mu_;
  std::vector<int> memo_;
};

// The code of theta approached from the right: the itinerary of theta+ under
// the initial transformation, produced exactly by expanding the deepest-level
// first-return words (their symbol counts are the columns of the accumulated
// matrix product). The pre-code is checked for consistency with the trace.
// OrderingUnavailable if a continuation point cannot be placed within the
// float guard at the deepest level.
std::shared_ptr<SymbolicSequence> expand_code(const PreCode& precode,
                                              const InductionTrace& trace);

class LabelAlphabet {
 public:
  // c_1..c_{2g} then h_1..h_{m-1}; the two-interval case uses the classical
  // two-letter names (a, b) so that codes read as in the standard example.
  static LabelAlphabet standard(int genus, int components);
  static LabelAlphabet custom(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::string& label(int symbol) const {  // 1-based
    return names_[static_cast<std::size_t>(symbol - 1)];
  }
  const std::vector<std::string>& labels() const { return names_; }
  bool all_single_char() const;

 private:
  explicit LabelAlphabet(std::vector<std::string> names) : names_(std::move(names)) {}
  std::vector<std::string> names_;
};

// A code stream with the level indices forgotten: a word over the label
// alphabet. Pointwise relabeling; shares (and lazily extends) the stream.
class SymbolicGeodesic {
 public:
  SymbolicGeodesic(std::shared_ptr<SymbolicSequence> code, LabelAlphabet labels);

  int alphabet_size() const { return labels_.size(); }
  const LabelAlphabet& labels() const { return labels_; }
  std::shared_ptr<SymbolicSequence> stream() const { return code_; }
  std::vector<std::string> produce_labels(std::size_t n) const;
  // Single characters when every label is one character; single letters
  // a,b,c,... with a legend when the alphabet fits into 26; otherwise
  // comma-separated symbol indices.
  std::string text(std::size_t n) const;
  std::string legend() const;

 private:
  std::shared_ptr<SymbolicSequence> code_;
  LabelAlphabet labels_;
};

SymbolicGeodesic symbolic_geodesic(std::shared_ptr<SymbolicSequence> code,
                                   LabelAlphabet labels);

// The two-letter local insertion rule on words over {1=a, 2=b}: an a is
// inserted inside every "b a", a b inside every "a a", nothing inside "a b"
// or "b b". A local approximation of the matrix-driven expansion; kept as a
// named helper so tests can pin where it diverges from the true code.
std::vector<int> insertion_rule_expand(const std::vector<int>& word);

// Smallest period p <= max_period such that word is p-periodic over its full
// length, if any. WordTooShort unless |word| >= 2*max_period.
std::optional<int> is_periodic_up_to(const std::vector<int>& word, int max_period);

struct RecurrenceReport {
  int n;
  int factor_count;        // distinct length-n factors of the first half
  bool all_recur;          // every such factor occurs at least twice in word
  long max_gap;            // largest gap between consecutive occurrence starts
  std::vector<int> non_recurring;  // a witness factor, empty when all recur
};

// Occurrence gaps of every length-n factor of the first half of word within
// the whole word. WordTooShort unless |word| >= 4n.
RecurrenceReport recurrence_check(const std::vector<int>& word, int n);

// Number of distinct length-n factors. WordTooShort unless |word| >= 2n.
long factor_complexity(const std::vector<int>& word, int n);

// Empirical frequency of each symbol 1..alphabet_size; the last component
// absorbs the rounding residual so the sum is exactly 1.0.
std::vector<double> letter_frequencies(const std::vector<int>& word, int alphabet_size);

}  // namespace lamination

#endif
