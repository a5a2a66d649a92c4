// Bratteli diagrams given by an eventually periodic sequence of nonnegative
// integer incidence matrices of constant rank: unimodularity checks, the
// strict-ergodicity verdict (cone contraction), and the limiting state vector.
#ifndef LAMINATION_BRATTELI_HPP
#define LAMINATION_BRATTELI_HPP

#include <cstdint>
#include <vector>

#include "lamination/errors.hpp"
#include "lamination/matrix.hpp"

namespace lamination {

class BratteliDiagram {
 public:
  // prefix then (optionally) period, cycled forever; at least one matrix total.
  BratteliDiagram(int rank, std::vector<IncidenceMatrix> prefix,
                  std::vector<IncidenceMatrix> period = {});

  int rank() const { return rank_; }
  const std::vector<IncidenceMatrix>& prefix() const { return prefix_; }
  const std::vector<IncidenceMatrix>& period() const { return period_; }
  bool is_finite() const { return period_.empty(); }
  // Number of levels that determine the whole diagram (prefix + one period).
  int distinct_levels() const {
    return static_cast<int>(prefix_.size() + period_.size());
  }

  // 1-based level index; IndexBeyondFiniteDiagram past the end of a finite diagram.
  const IncidenceMatrix& matrix_at(long n) const;

 private:
  int rank_;
  std::vector<IncidenceMatrix> prefix_;
  std::vector<IncidenceMatrix> period_;
};

// M_1 * ... * M_n with unbounded integers.
Mat<Int> partial_product(const BratteliDiagram& diagram, long n);

struct UnimodularEntry {
  long level;
  Int determinant;
  bool pass;  // |det| == 1
};
struct UnimodularReport {
  std::vector<UnimodularEntry> entries;
  bool overall;
};

// Exact determinant of every level up to depth (default: every distinct level).
UnimodularReport check_unimodular(const BratteliDiagram& diagram, long depth);
UnimodularReport check_unimodular(const BratteliDiagram& diagram);

enum class ErgodicityVerdict { StrictlyErgodic, NotContracting, Inconclusive };
const char* to_string(ErgodicityVerdict v);

inline constexpr double kDefaultStateTol = 1e-12;
inline constexpr int kDefaultStateDepth = 256;

// StrictlyErgodic when the Hilbert-metric diameter of the partial-product
// column cone drops below tol (or, exactly, when a periodic diagram's period
// product is primitive); NotContracting when the period product is monomial
// (a permutation with scales maps the cone onto itself, no contraction ever);
// Inconclusive otherwise at the given depth.
ErgodicityVerdict is_strictly_ergodic(const BratteliDiagram& diagram,
                                      int depth = kDefaultStateDepth,
                                      double tol = kDefaultStateTol);

// Hilbert-metric diameters of the column cones of P_1..P_depth (+inf while
// some column has a zero entry); non-increasing by Birkhoff contraction.
std::vector<double> cone_diameters(const BratteliDiagram& diagram, int depth);

struct StateVector {
  Vec<double> lambda;  // strictly positive, sums to 1
  double tolerance_used;
  int depth_used;
};

// Normalized limit direction of the partial-product columns (image of the
// all-ones vector, normalized to sum 1, iterated until successive directions
// differ by < tol in max norm). Requires a StrictlyErgodic verdict.
StateVector state_vector(const BratteliDiagram& diagram,
                         int depth = kDefaultStateDepth,
                         double tol = kDefaultStateTol);

}  // namespace lamination

#endif
