// Singularity data (k_1,...,k_m) of the ideal polygons tiling the principal
// region: derived surface invariants, the area identity, and the synthesis of
// an irreducible permutation with the prescribed cycle structure.
#ifndef LAMINATION_SURFACE_HPP
#define LAMINATION_SURFACE_HPP

#include <string>
#include <vector>

#include "lamination/errors.hpp"

namespace lamination {

// Nonnegative integers and half-integers, stored exactly as 2*k.
class SingularityData {
 public:
  // Each value must be a nonnegative multiple of 1/2 (within 1e-9 of one).
  explicit SingularityData(const std::vector<double>& ks);

  int size() const { return static_cast<int>(twice_ks_.size()); }  // m
  int twice_k(int i) const { return twice_ks_[static_cast<std::size_t>(i)]; }  // 0-based
  double k(int i) const { return twice_ks_[static_cast<std::size_t>(i)] / 2.0; }
  std::vector<double> ks() const;
  int sum_twice() const;  // 2 * sum(k_i)

 private:
  std::vector<int> twice_ks_;
};

// g with sum(k_i) = 2g - 2; InvalidSingularityData when no integer g >= 1 fits.
int genus_of(const SingularityData& delta);

struct SurfaceInvariants {
  int genus;                  // g
  int components;             // m, connected components of the principal region
  int intervals;              // r = 2g + m - 1
  int euler_characteristic;   // 2 - 2g
  int total_area_multiple;    // 4g - 4, total ideal-polygon area in units of pi
};

SurfaceInvariants surface_invariants(const SingularityData& delta);

// Sides of the ideal polygon of type k: n = 2k + 2.
int polygon_sides(double k);

struct AreaCheck {
  bool pass;
  long sides_minus_two_sum;  // sum over polygons of (n_i - 2)
  long expected;             // 4g - 4
  int genus;                 // g used on the right-hand side (derived or claimed)
  std::string detail;
};

// Verifies sum(n_i - 2) = 4g - 4 with g derived from delta; the overload takes
// a claimed genus instead, so deliberate mismatches are reportable.
AreaCheck check_area(const SingularityData& delta);
AreaCheck check_area(const SingularityData& delta, int claimed_genus);

struct Permutation {
  std::vector<int> images;  // images[i-1] = pi(i), values 1..r

  int size() const { return static_cast<int>(images.size()); }
  int operator()(int i) const { return images[static_cast<std::size_t>(i - 1)]; }
  bool is_bijective() const;
  // No proper prefix {1..j} maps onto itself.
  bool is_irreducible() const;
  Permutation inverse() const;
};

// One-line image notation "(a_1,...,a_r)" for reports.
std::string to_string(const Permutation& pi);

// Disjoint cycles, ordered by smallest element, each starting at its smallest.
std::vector<std::vector<int>> cycle_decomposition(const Permutation& pi);

// Irreducible permutation on r = 2g+m-1 symbols with exactly m cycles of
// lengths k_i + 1 (i < m) and k_m + 2. Assembly: consecutive blocks carrying
// cyclic shifts, conjugated by order reversal; while reducible, conjugate by
// the transposition of the last elements of adjacent blocks (conjugation
// preserves the cycle type).
Permutation permutation_from_singularity_data(const SingularityData& delta);

}  // namespace lamination

#endif
