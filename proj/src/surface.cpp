#include "lamination/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lamination {

namespace {

int half_integer_times_two(double v, const char* what) {
  const double twice = 2.0 * v;
  const double rounded = std::round(twice);
  if (std::abs(twice - rounded) > 1e-9)
    throw InvalidSingularityData(std::string(what) + ": " + std::to_string(v) +
                                 " is not an integer or half-integer");
  if (rounded < 0.0)
    throw InvalidSingularityData(std::string(what) + ": " + std::to_string(v) +
                                 " is negative");
  return static_cast<int>(rounded);
}

}  // namespace

SingularityData::SingularityData(const std::vector<double>& ks) {
  if (ks.empty()) throw InvalidSingularityData("singularity data must be nonempty");
  twice_ks_.reserve(ks.size());
  for (double v : ks) twice_ks_.push_back(half_integer_times_two(v, "singularity datum"));
}

std::vector<double> SingularityData::ks() const {
  std::vector<double> out;
  out.reserve(twice_ks_.size());
  for (int t : twice_ks_) out.push_back(t / 2.0);
  return out;
}

int SingularityData::sum_twice() const {
  return std::accumulate(twice_ks_.begin(), twice_ks_.end(), 0);
}

int genus_of(const SingularityData& delta) {
  const int s2 = delta.sum_twice();  // = 2 * sum(k_i) = 2 * (2g - 2)
  if (s2 % 4 != 0)
    throw InvalidSingularityData("sum k_i = " + std::to_string(s2 / 2.0) +
                                 " does not equal 2g-2 for any integer g");
  return s2 / 4 + 1;
}

SurfaceInvariants surface_invariants(const SingularityData& delta) {
  const int g = genus_of(delta);
  const int m = delta.size();
  return SurfaceInvariants{g, m, 2 * g + m - 1, 2 - 2 * g, 4 * g - 4};
}

int polygon_sides(double k) {
  const int twice = half_integer_times_two(k, "polygon type");
  const int n = twice + 2;
  if (n < 1) throw InvalidSingularityData("polygon type yields sides < 1");
  return n;
}

AreaCheck check_area(const SingularityData& delta) {
  long lhs = 0;
  for (int i = 0; i < delta.size(); ++i) lhs += polygon_sides(delta.k(i)) - 2;
  // Derive g independently of genus_of: 4g - 4 must equal lhs exactly.
  if (lhs % 4 != 0)
    return AreaCheck{false, lhs, -1, -1,
                     "sum(n_i - 2) = " + std::to_string(lhs) + " is not 4g-4 for integer g"};
  const int g = static_cast<int>(lhs / 4) + 1;
  return check_area(delta, g);
}

AreaCheck check_area(const SingularityData& delta, int claimed_genus) {
  long lhs = 0;
  for (int i = 0; i < delta.size(); ++i) lhs += polygon_sides(delta.k(i)) - 2;
  const long rhs = 4L * claimed_genus - 4;
  AreaCheck out;
  out.pass = lhs == rhs;
  out.sides_minus_two_sum = lhs;
  out.expected = rhs;
  out.genus = claimed_genus;
  out.detail = "sum(n_i - 2) = " + std::to_string(lhs) + ", 4g-4 = " + std::to_string(rhs);
  return out;
}

bool Permutation::is_bijective() const {
  const int r = size();
  std::vector<bool> seen(static_cast<std::size_t>(r), false);
  for (int v : images) {
    if (v < 1 || v > r || seen[static_cast<std::size_t>(v - 1)]) return false;
    seen[static_cast<std::size_t>(v - 1)] = true;
  }
  return true;
}

bool Permutation::is_irreducible() const {
  const int r = size();
  int max_image = 0;
  for (int j = 1; j < r; ++j) {
    max_image = std::max(max_image, (*this)(j));
    if (max_image == j) return false;  // pi({1..j}) == {1..j}
  }
  return true;
}

Permutation Permutation::inverse() const {
  Permutation inv;
  inv.images.assign(images.size(), 0);
  for (int i = 1; i <= size(); ++i) inv.images[static_cast<std::size_t>((*this)(i)-1)] = i;
  return inv;
}

std::string to_string(const Permutation& pi) {
  std::string out = "(";
  for (int i = 1; i <= pi.size(); ++i) {
    if (i > 1) out += ",";
    out += std::to_string(pi(i));
  }
  return out + ")";
}

std::vector<std::vector<int>> cycle_decomposition(const Permutation& pi) {
  const int r = pi.size();
  std::vector<bool> seen(static_cast<std::size_t>(r), false);
  std::vector<std::vector<int>> cycles;
  for (int start = 1; start <= r; ++start) {
    if (seen[static_cast<std::size_t>(start - 1)]) continue;
    std::vector<int> cycle;
    int j = start;
    do {
      cycle.push_back(j);
      seen[static_cast<std::size_t>(j - 1)] = true;
      j = pi(j);
    } while (j != start);
    cycles.push_back(std::move(cycle));  // starts at its smallest element
  }
  return cycles;
}

namespace {

// Conjugate pi by the transposition (a b).
Permutation conjugate_by_swap(const Permutation& pi, int a, int b) {
  auto tau = [&](int j) { return j == a ? b : (j == b ? a : j); };
  Permutation out;
  out.images.resize(pi.images.size());
  for (int j = 1; j <= pi.size(); ++j)
    out.images[static_cast<std::size_t>(j - 1)] = tau(pi(tau(j)));
  return out;
}

}  // namespace

Permutation permutation_from_singularity_data(const SingularityData& delta) {
  const SurfaceInvariants inv = surface_invariants(delta);
  const int m = inv.components;
  const int r = inv.intervals;

  // Cycle lengths: l_i = k_i + 1 for i < m, l_m = k_m + 2; their sum is r.
  // This is the unique affine choice matching that sum; flagged as a
  // convention, calibrated on the two-interval case (k=0 -> the swap).
  std::vector<int> lengths;
  for (int i = 0; i < m; ++i) {
    const int twice = delta.twice_k(i);
    if (twice % 2 != 0)
      throw NonIntegerCycleLength("cycle length for k = " + std::to_string(twice / 2.0) +
                                  " is not an integer");
    lengths.push_back(twice / 2 + 1 + (i == m - 1 ? 1 : 0));
  }

  // Consecutive blocks of sizes l_1..l_m, each carrying the cyclic shift
  // j -> j+1 (block end -> block start).
  Permutation pi;
  pi.images.assign(static_cast<std::size_t>(r), 0);
  int start = 1;
  for (int len : lengths) {
    const int end = start + len - 1;
    for (int j = start; j < end; ++j) pi.images[static_cast<std::size_t>(j - 1)] = j + 1;
    pi.images[static_cast<std::size_t>(end - 1)] = start;
    start = end + 1;
  }

  // Conjugate by the order reversal j -> r+1-j.
  {
    Permutation rev;
    rev.images.resize(static_cast<std::size_t>(r));
    auto rho = [r](int j) { return r + 1 - j; };
    for (int j = 1; j <= r; ++j)
      rev.images[static_cast<std::size_t>(j - 1)] = rho(pi(rho(j)));
    pi = rev;
  }

  // Repair: after the reversal the blocks sit in reversed order with sizes
  // l_m,...,l_1. While reducible, conjugate by the transposition swapping the
  // last elements of adjacent blocks, left to right. Conjugation keeps the
  // cycle type intact.
  if (!pi.is_irreducible()) {
    std::vector<int> boundary;  // last element of each reversed-order block
    int pos = 0;
    for (int i = m - 1; i >= 0; --i) {
      pos += lengths[static_cast<std::size_t>(i)];
      boundary.push_back(pos);
    }
    for (int t = 0; t + 1 < m && !pi.is_irreducible(); ++t)
      pi = conjugate_by_swap(pi, boundary[static_cast<std::size_t>(t)],
                             boundary[static_cast<std::size_t>(t + 1)]);
  }

  if (!pi.is_irreducible())
    throw IrreducibilityFailure("no irreducible permutation reached for delta with m = " +
                                std::to_string(m) + ", r = " + std::to_string(r));
  return pi;
}

}  // namespace lamination
