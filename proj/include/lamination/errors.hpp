// Error types shared across the library. Every domain error derives from
// lamination::Error and carries a stable machine-readable code string; contract
// misuse (caller bugs) raises std::invalid_argument instead.
#ifndef LAMINATION_ERRORS_HPP
#define LAMINATION_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace lamination {

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

#define LAMINATION_DEFINE_ERROR(NAME)                       \
  class NAME : public Error {                               \
   public:                                                  \
    explicit NAME(const std::string& message)               \
        : Error(#NAME, message) {}                          \
  }

// diagram
LAMINATION_DEFINE_ERROR(IndexBeyondFiniteDiagram);
LAMINATION_DEFINE_ERROR(NotErgodic);
LAMINATION_DEFINE_ERROR(NoConvergence);
// singularity data
LAMINATION_DEFINE_ERROR(InvalidSingularityData);
LAMINATION_DEFINE_ERROR(NonIntegerCycleLength);
LAMINATION_DEFINE_ERROR(IrreducibilityFailure);
// interval exchange
LAMINATION_DEFINE_ERROR(ReduciblePermutation);
LAMINATION_DEFINE_ERROR(OutOfDomain);
LAMINATION_DEFINE_ERROR(OrbitHitsDiscontinuity);
LAMINATION_DEFINE_ERROR(TieBreakUndefined);
LAMINATION_DEFINE_ERROR(NotContracted);
// coding
LAMINATION_DEFINE_ERROR(ThetaOnBoundary);
LAMINATION_DEFINE_ERROR(OrderingUnavailable);
LAMINATION_DEFINE_ERROR(WordTooShort);
// pipeline / io
LAMINATION_DEFINE_ERROR(RankMismatch);
LAMINATION_DEFINE_ERROR(NotUnimodular);
LAMINATION_DEFINE_ERROR(SchemaError);

#undef LAMINATION_DEFINE_ERROR

// Wraps an error thrown by a pipeline stage, preserving the stage name and the
// original error code for structured reporting.
class StageFailure : public Error {
 public:
  StageFailure(std::string stage, std::string inner_code, const std::string& message)
      : Error("StageFailure", message),
        stage_(std::move(stage)),
        inner_code_(std::move(inner_code)) {}
  const std::string& stage() const noexcept { return stage_; }
  const std::string& inner_code() const noexcept { return inner_code_; }

 private:
  std::string stage_;
  std::string inner_code_;
};

}  // namespace lamination

#endif
