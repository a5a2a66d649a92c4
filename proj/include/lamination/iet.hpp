// Interval exchange transformations: evaluation, natural coding, right
// Rauzy-Veech induction with exact matrix bookkeeping, the nested interval
// chain around the marked point and its limit theta, and a genericity probe
// for the orbits of the discontinuities.
#ifndef LAMINATION_IET_HPP
#define LAMINATION_IET_HPP

#include <optional>
#include <vector>

#include "lamination/errors.hpp"
#include "lamination/matrix.hpp"
#include "lamination/surface.hpp"

namespace lamination {

inline constexpr double kTieRelTol = 1e-12;       // relative: lengths shrink geometrically
inline constexpr double kCodingGuard = 1e-13;     // distance to a discontinuity
inline constexpr double kContractionThreshold = 1e-6;

class IET {
 public:
  // Strictly positive lengths; pi must be irreducible (ReduciblePermutation).
  IET(Vec<double> lengths, Permutation pi);

  int rank() const { return static_cast<int>(lengths_.size()); }
  const Vec<double>& lengths() const { return lengths_; }
  const Permutation& permutation() const { return pi_; }
  double total() const { return total_; }

  // Left endpoint of the i-th domain interval (1-based; i = r+1 gives total).
  double domain_start(int i) const { return domain_starts_[static_cast<std::size_t>(i - 1)]; }
  // Left endpoint of the s-th range slot (1-based).
  double slot_start(int s) const { return slot_starts_[static_cast<std::size_t>(s - 1)]; }

  // Index in 1..r of the domain interval containing x; OutOfDomain otherwise.
  int interval_index(double x) const;
  double apply(double x) const;
  double inverse_apply(double y) const;

 private:
  Vec<double> lengths_;
  Permutation pi_;
  Permutation pi_inv_;
  double total_;
  std::vector<double> domain_starts_;  // size r+1
  std::vector<double> slot_starts_;    // size r+1
};

// Itinerary of x: symbol t is the domain interval of the t-th iterate.
// OrbitHitsDiscontinuity if an iterate comes within `guard` of an interior
// discontinuity (symbols would be float noise there).
std::vector<int> natural_coding(const IET& iet, double x, int n,
                                double guard = kCodingGuard);

struct AdmissibleInterval {
  double xi;   // [xi, eta)
  double eta;
  double length() const { return eta - xi; }
};

struct InductionStep {
  char type;               // 'A': last domain length smaller; 'B': last range length smaller
  int d;                   // cut position, d = pi^{-1}(r)
  AdmissibleInterval gamma;  // inside induce(): in original-domain coordinates
  IncidenceMatrix matrix;  // elementary, lengths = matrix * induced lengths
  IET induced;
};

// One right Rauzy-Veech step. The returned gamma is the admissible prefix
// [0, |lambda| - min) in the iet's own coordinates. TieBreakUndefined when the
// competing last lengths agree to relative kTieRelTol.
InductionStep rauzy_step(const IET& iet, double tie_tol = kTieRelTol);

// The two tower floors flanking the marked point, as exact integer data:
// the marked point is the right endpoint of floor `left_floor` of tower
// `left_tower` and the left endpoint of floor `right_floor` of `right_tower`.
struct FlankState {
  int left_tower;
  Int left_floor;
  int right_tower;
  Int right_floor;
};

struct InductionTrace {
  IET initial;
  double marked_point;                 // first discontinuity of the initial IET
  std::vector<InductionStep> steps;    // step n: gamma in original coordinates
  std::vector<Mat<Int>> products;      // products[n-1] = M_1 * ... * M_n
  std::vector<Vec<Int>> heights;       // heights[n-1] = column sums of products[n-1]
  std::vector<FlankState> flanks;      // flanks[n-1]
  std::vector<double> residuals;       // max-norm of lambda - P_n * lambda^(n)
  int grouping = 1;                    // detected period of the step sequence (or 1)
  double contraction_constant = 0.0;   // c with |Gamma_n| <= |Gamma_1| * 2^(-(n-1)/c)

  int depth() const { return static_cast<int>(steps.size()); }
  const IET& level(int n) const {      // induced IET after n steps (n >= 1)
    return steps[static_cast<std::size_t>(n - 1)].induced;
  }
};

// n right Rauzy-Veech steps with exact product/height bookkeeping. The stored
// gamma chain is the union of the two floors flanking the marked point
// theta* = lambda_1 (the first discontinuity): nested half-open intervals
// whose lengths tend to 0, all containing theta*.
InductionTrace induce(const IET& iet, int n, double tie_tol = kTieRelTol);

// Continue an existing trace by `extra` further steps.
void extend_trace(InductionTrace& trace, int extra, double tie_tol = kTieRelTol);

struct ThetaPoint {
  double value;   // midpoint of the last interval in the chain
  double radius;  // half its length; |value - theta| <= radius
};

// NotContracted unless the trace has >= 2 steps and the last interval is
// shorter than `threshold`.
ThetaPoint theta_point(const InductionTrace& trace,
                       double threshold = kContractionThreshold);

enum class KeaneVerdict { GenericLikely, DegenerateDetected };

struct KeaneCollision {
  int discontinuity_a;  // interval index whose left endpoint collides
  long iterate_a;       // signed orbit time
  int discontinuity_b;
  long iterate_b;
  double distance;
};

struct KeaneReport {
  KeaneVerdict verdict;
  std::optional<KeaneCollision> collision;
};

// Checks that the bi-infinite orbit segments T^s(d_i), |s| <= depth, of all
// interior discontinuities d_2..d_r stay pairwise separated by more than tol.
KeaneReport keane_probe(const IET& iet, long depth = 1000, double tol = 1e-10);

}  // namespace lamination

#endif
