#include "lamination/iet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lamination {

IET::IET(Vec<double> lengths, Permutation pi)
    : lengths_(std::move(lengths)), pi_(std::move(pi)) {
  const int r = static_cast<int>(lengths_.size());
  if (r < 2) throw std::invalid_argument("IET: needs at least 2 intervals");
  if (pi_.size() != r) throw std::invalid_argument("IET: permutation size != length count");
  if (!pi_.is_bijective()) throw std::invalid_argument("IET: permutation not bijective");
  for (int i = 0; i < r; ++i)
    if (!(lengths_[i] > 0.0))
      throw std::invalid_argument("IET: lengths must be strictly positive");
  if (!pi_.is_irreducible())
    throw ReduciblePermutation("IET: permutation " + to_string(pi_) +
                               " fixes a proper prefix");
  pi_inv_ = pi_.inverse();
  domain_starts_.assign(static_cast<std::size_t>(r) + 1, 0.0);
  slot_starts_.assign(static_cast<std::size_t>(r) + 1, 0.0);
  for (int i = 1; i <= r; ++i)
    domain_starts_[static_cast<std::size_t>(i)] =
        domain_starts_[static_cast<std::size_t>(i - 1)] + lengths_[i - 1];
  total_ = domain_starts_[static_cast<std::size_t>(r)];
  for (int s = 1; s <= r; ++s)
    slot_starts_[static_cast<std::size_t>(s)] =
        slot_starts_[static_cast<std::size_t>(s - 1)] + lengths_[pi_inv_(s) - 1];
}

int IET::interval_index(double x) const {
  if (!(x >= 0.0) || !(x < total_))
    throw OutOfDomain("point " + std::to_string(x) + " outside [0, " +
                      std::to_string(total_) + ")");
  int i = rank();
  while (i > 1 && x < domain_start(i)) --i;
  return i;
}

double IET::apply(double x) const {
  const int i = interval_index(x);
  return slot_start(pi_(i)) + (x - domain_start(i));
}

double IET::inverse_apply(double y) const {
  if (!(y >= 0.0) || !(y < total_))
    throw OutOfDomain("point " + std::to_string(y) + " outside [0, " +
                      std::to_string(total_) + ")");
  int s = rank();
  while (s > 1 && y < slot_start(s)) --s;
  const int i = pi_inv_(s);
  return domain_start(i) + (y - slot_start(s));
}

std::vector<int> natural_coding(const IET& iet, double x, int n, double guard) {
  if (n < 0) throw std::invalid_argument("natural_coding: n must be >= 0");
  std::vector<int> word;
  word.reserve(static_cast<std::size_t>(n));
  for (int t = 0; t < n; ++t) {
    for (int i = 2; i <= iet.rank(); ++i)
      if (std::abs(x - iet.domain_start(i)) < guard)
        throw OrbitHitsDiscontinuity("iterate " + std::to_string(t) + " lies within " +
                                     std::to_string(guard) + " of a discontinuity");
    word.push_back(iet.interval_index(x));
    x = iet.apply(x);
  }
  return word;
}

InductionStep rauzy_step(const IET& iet, double tie_tol) {
  const int r = iet.rank();
  const int d = iet.permutation().inverse()(r);
  const double lam_r = iet.lengths()[r - 1];  // last interval of the domain partition
  const double lam_d = iet.lengths()[d - 1];  // last interval of the range partition
  if (std::abs(lam_r - lam_d) <= tie_tol * std::max(lam_r, lam_d))
    throw TieBreakUndefined("competing lengths " + std::to_string(lam_r) + " and " +
                            std::to_string(lam_d) + " are equal to relative " +
                            std::to_string(tie_tol));

  const Permutation& pi = iet.permutation();
  Vec<double> nl(r);
  Permutation np;
  np.images.assign(static_cast<std::size_t>(r), 0);
  IncidenceMatrix m = IncidenceMatrix::Zero(r, r);
  char type;

  if (lam_r < lam_d) {
    // Type A: the last range interval is longer; cut interval d at lam_d-lam_r.
    type = 'A';
    for (int j = 1; j <= d - 1; ++j) nl[j - 1] = iet.lengths()[j - 1];
    nl[d - 1] = lam_d - lam_r;
    nl[d] = lam_r;
    for (int j = d + 2; j <= r; ++j) nl[j - 1] = iet.lengths()[j - 2];
    for (int j = 1; j <= d - 1; ++j) np.images[j - 1] = pi(j);
    np.images[d - 1] = r;
    np.images[d] = pi(r);
    for (int j = d + 2; j <= r; ++j) np.images[j - 1] = pi(j - 1);
    for (int j = 1; j <= d; ++j) m(j - 1, j - 1) = 1;     // column j = e_j
    m(d - 1, d) = 1;                                       // column d+1 = e_d + e_r
    m(r - 1, d) = 1;
    for (int j = d + 2; j <= r; ++j) m(j - 2, j - 1) = 1;  // column j = e_{j-1}
  } else {
    // Type B: the last domain interval is longer; it loses lam_d on the right.
    type = 'B';
    nl = iet.lengths();
    nl[r - 1] = lam_r - lam_d;
    const int pr = pi(r);
    for (int j = 1; j <= r; ++j) {
      if (j == d) np.images[j - 1] = pr + 1;
      else if (j == r) np.images[j - 1] = pr;
      else np.images[j - 1] = pi(j) < pr ? pi(j) : pi(j) + 1;
    }
    for (int j = 1; j <= r; ++j) m(j - 1, j - 1) = 1;
    m(r - 1, d - 1) = 1;                                   // column d = e_d + e_r
  }

  InductionStep step{type, d,
                     AdmissibleInterval{0.0, iet.total() - std::min(lam_r, lam_d)},
                     std::move(m), IET(std::move(nl), std::move(np))};
  return step;
}

namespace {

FlankState advance_flanks(const FlankState& f, const InductionStep& step,
                          const Vec<Int>& old_heights) {
  const int r = step.induced.rank();
  const int d = step.d;
  const Int& hd = old_heights[d - 1];
  FlankState out = f;
  if (step.type == 'A') {
    // Tower d splits (left part keeps index d, right part becomes d+1);
    // tower r is absorbed on top of the right part; towers above d shift up.
    auto map_left = [&](int i, const Int& k) -> std::pair<int, Int> {
      if (i <= d - 1) return {i, k};
      if (i == d) return {d + 1, k};      // right endpoint stays: right part
      if (i == r) return {d + 1, hd + k};
      return {i + 1, k};
    };
    auto map_right = [&](int i, const Int& k) -> std::pair<int, Int> {
      if (i <= d - 1) return {i, k};
      if (i == d) return {d, k};          // left endpoint stays: left part
      if (i == r) return {d + 1, hd + k};
      return {i + 1, k};
    };
    auto l = map_left(f.left_tower, f.left_floor);
    auto rr = map_right(f.right_tower, f.right_floor);
    out = {l.first, l.second, rr.first, rr.second};
  } else {
    // Tower r splits: its left part keeps index r, its right part (length
    // lambda_d) is stacked on top of tower d.
    if (f.left_tower == r) out.left_tower = d, out.left_floor = hd + f.left_floor;
    if (f.right_tower == r) out.right_tower = r, out.right_floor = f.right_floor;
  }
  return out;
}

int detect_grouping(const std::vector<InductionStep>& steps) {
  const int n = static_cast<int>(steps.size());
  for (int p = 1; p <= 8 && 2 * p <= n; ++p) {
    bool ok = true;
    for (int i = 0; i + p < n && ok; ++i)
      ok = steps[static_cast<std::size_t>(i)].type ==
               steps[static_cast<std::size_t>(i + p)].type &&
           steps[static_cast<std::size_t>(i)].d == steps[static_cast<std::size_t>(i + p)].d;
    if (ok) return p;
  }
  return 1;
}

double observed_contraction(const std::vector<InductionStep>& steps) {
  if (steps.size() < 2) return 0.0;
  const double g1 = steps.front().gamma.length();
  double c = 0.0;
  for (std::size_t n = 2; n <= steps.size(); ++n) {
    const double gn = steps[n - 1].gamma.length();
    if (!(gn < g1)) continue;
    c = std::max(c, static_cast<double>(n - 1) / std::log2(g1 / gn));
  }
  return c;
}

void push_step(InductionTrace& trace, InductionStep&& step) {
  const int r = trace.initial.rank();
  const Vec<Int> old_heights =
      trace.heights.empty() ? Vec<Int>(Vec<Int>::Ones(r)) : trace.heights.back();
  const Mat<Int> me = to_exact(step.matrix);
  const Mat<Int> product =
      trace.products.empty() ? me : exact_product(trace.products.back(), me);
  Vec<Int> heights(r);
  for (int j = 0; j < r; ++j) {
    Int h = 0;
    for (int i = 0; i < r; ++i) h += product(i, j);
    heights[j] = h;
  }
  const FlankState flanks =
      advance_flanks(trace.flanks.empty()
                         ? FlankState{1, Int(0), 2, Int(0)}
                         : trace.flanks.back(),
                     step, old_heights);

  const Vec<double>& nl = step.induced.lengths();
  step.gamma = AdmissibleInterval{
      trace.marked_point - nl[flanks.left_tower - 1],
      trace.marked_point + nl[flanks.right_tower - 1]};

  // Telescoping residual lambda - P_n * lambda^(n).
  double resid = 0.0;
  for (int i = 0; i < r; ++i) {
    double v = 0.0;
    for (int j = 0; j < r; ++j) v += to_double(product(i, j)) * nl[j];
    resid = std::max(resid, std::abs(trace.initial.lengths()[i] - v));
  }

  trace.steps.push_back(std::move(step));
  trace.products.push_back(product);
  trace.heights.push_back(heights);
  trace.flanks.push_back(flanks);
  trace.residuals.push_back(resid);
}

}  // namespace

InductionTrace induce(const IET& iet, int n, double tie_tol) {
  if (n < 1) throw std::invalid_argument("induce: n must be >= 1");
  InductionTrace trace{iet, iet.domain_start(2), {}, {}, {}, {}, {}, 1, 0.0};
  extend_trace(trace, n, tie_tol);
  return trace;
}

void extend_trace(InductionTrace& trace, int extra, double tie_tol) {
  if (extra < 0) throw std::invalid_argument("extend_trace: extra must be >= 0");
  for (int t = 0; t < extra; ++t) {
    const IET& current = trace.steps.empty() ? trace.initial : trace.steps.back().induced;
    try {
      push_step(trace, rauzy_step(current, tie_tol));
    } catch (const TieBreakUndefined& e) {
      throw TieBreakUndefined("step " + std::to_string(trace.depth() + 1) + ": " + e.what());
    }
  }
  trace.grouping = detect_grouping(trace.steps);
  trace.contraction_constant = observed_contraction(trace.steps);
}

ThetaPoint theta_point(const InductionTrace& trace, double threshold) {
  if (trace.depth() < 2)
    throw NotContracted("trace has " + std::to_string(trace.depth()) +
                        " steps; need at least 2");
  const AdmissibleInterval& last = trace.steps.back().gamma;
  if (!(last.length() < threshold))
    throw NotContracted("last interval has length " + std::to_string(last.length()) +
                        ", not below threshold " + std::to_string(threshold));
  return ThetaPoint{0.5 * (last.xi + last.eta), 0.5 * last.length()};
}

KeaneReport keane_probe(const IET& iet, long depth, double tol) {
  struct OrbitPoint {
    double value;
    int disc;
    long iterate;
  };
  std::vector<OrbitPoint> points;
  points.reserve(static_cast<std::size_t>((iet.rank() - 1) * (2 * depth + 1)));
  for (int i = 2; i <= iet.rank(); ++i) {
    const double d0 = iet.domain_start(i);
    double x = d0;
    points.push_back({x, i, 0});
    for (long s = 1; s <= depth; ++s) {
      x = iet.apply(x);
      points.push_back({x, i, s});
    }
    x = d0;
    for (long s = 1; s <= depth; ++s) {
      x = iet.inverse_apply(x);
      points.push_back({x, i, -s});
    }
  }
  std::sort(points.begin(), points.end(),
            [](const OrbitPoint& a, const OrbitPoint& b) { return a.value < b.value; });
  for (std::size_t t = 1; t < points.size(); ++t) {
    const OrbitPoint& a = points[t - 1];
    const OrbitPoint& b = points[t];
    const double gap = b.value - a.value;
    if (gap <= tol)
      return KeaneReport{KeaneVerdict::DegenerateDetected,
                         KeaneCollision{a.disc, a.iterate, b.disc, b.iterate, gap}};
  }
  return KeaneReport{KeaneVerdict::GenericLikely, std::nullopt};
}

}  // namespace lamination
