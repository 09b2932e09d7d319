#include "lac/multiplier.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace lac {

double clamped_h_minus(const ConvexCost& cost, double lo, double hi, double eta) {
  if (eta <= cost.right_derivative(lo)) return lo;
  if (eta > cost.left_derivative(hi)) return hi;
  return std::clamp(cost.inverse_minus(eta), lo, hi);
}

double clamped_h_plus(const ConvexCost& cost, double lo, double hi, double eta) {
  if (eta < cost.right_derivative(lo)) return lo;
  if (eta >= cost.left_derivative(hi)) return hi;
  return std::clamp(cost.inverse_plus(eta), lo, hi);
}

namespace {

double band_lo(std::span<const double> lo, size_t e) {
  return lo.empty() ? 0.0 : lo[e];
}

double sum_h_plus(std::span<const ConvexCost> costs, std::span<const double> lo,
                  std::span<const double> hi, double eta) {
  KahanSum acc;
  for (size_t e = 0; e < costs.size(); ++e)
    acc.add(clamped_h_plus(costs[e], band_lo(lo, e), hi[e], eta));
  return acc.value();
}

double sum_h_minus(std::span<const ConvexCost> costs, std::span<const double> lo,
                   std::span<const double> hi, double eta) {
  KahanSum acc;
  for (size_t e = 0; e < costs.size(); ++e)
    acc.add(clamped_h_minus(costs[e], band_lo(lo, e), hi[e], eta));
  return acc.value();
}

}  // namespace

MultiplierSolution solve_multiplier(std::span<const ConvexCost> costs,
                                    std::span<const double> lo,
                                    std::span<const double> hi, double target,
                                    double tol, int window_lo, int window_hi) {
  MultiplierSolution out;
  KahanSum lo_acc, hi_acc;
  for (size_t e = 0; e < costs.size(); ++e) {
    lo_acc.add(band_lo(lo, e));
    hi_acc.add(hi[e]);
  }
  const double band_floor = lo_acc.value();
  const double band_ceil = hi_acc.value();
  const double slack = 1e-12 * (1.0 + std::abs(target));
  if (target < band_floor - slack || target > band_ceil + slack) return out;
  out.exists = true;
  if (target <= band_floor) {
    // Every η gives Σ Hc⁺ ≥ Σ lo ≥ target, so the minimum is unbounded below.
    out.eta = -kInf;
    return out;
  }

  bool smooth = true;
  for (const auto& c : costs) smooth = smooth && c.derivative_continuous();

  double seg_lo, seg_hi;
  if (smooth) {
    seg_lo = kInf;
    seg_hi = -kInf;
    for (size_t e = 0; e < costs.size(); ++e) {
      seg_lo = std::min(seg_lo, costs[e].right_derivative(band_lo(lo, e)));
      seg_hi = std::max(seg_hi, costs[e].left_derivative(hi[e]));
    }
  } else {
    std::vector<double> bps;
    for (size_t e = 0; e < costs.size(); ++e) {
      const double l = band_lo(lo, e);
      if (!(l < hi[e])) continue;  // degenerate band pins the coordinate
      const auto etas = costs[e].derivative_breakpoints(l, hi[e]);
      bps.insert(bps.end(), etas.begin(), etas.end());
    }
    std::sort(bps.begin(), bps.end());
    bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
    // First breakpoint where Σ Hc⁺ reaches the target (binary search over
    // the monotone predicate).
    size_t k_lo = 0, k_hi = bps.size();
    while (k_lo < k_hi) {
      const size_t mid = (k_lo + k_hi) / 2;
      if (sum_h_plus(costs, lo, hi, bps[mid]) < target) {
        k_lo = mid + 1;
      } else {
        k_hi = mid;
      }
    }
    const size_t k = k_lo;
    if (k >= bps.size()) {
      // Σ Hc⁺ at the last breakpoint is Σ hi ≥ target; only reachable through
      // rounding at the very top. Pin to the last breakpoint.
      out.eta = bps.back();
      return out;
    }
    if (k == 0) {
      out.eta = bps.front();
      return out;
    }
    if (sum_h_minus(costs, lo, hi, bps[k]) < target) {
      // The jump at this breakpoint covers the target.
      out.eta = bps[k];
      return out;
    }
    seg_lo = bps[k - 1];
    seg_hi = bps[k];
  }

  // Continuous segment: bisect for the smallest η with Σ Hc⁺(η) ≥ target.
  int iter = 0;
  while (seg_hi - seg_lo > tol) {
    if (++iter > 200)
      throw NumericalError("eta bisection failed to converge", window_lo, window_hi);
    const double mid = 0.5 * (seg_lo + seg_hi);
    if (sum_h_plus(costs, lo, hi, mid) >= target) {
      seg_hi = mid;
    } else {
      seg_lo = mid;
    }
  }
  out.eta = seg_hi;
  return out;
}

}  // namespace lac
