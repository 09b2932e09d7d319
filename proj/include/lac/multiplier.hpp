#pragma once

#include <span>

#include "lac/costs.hpp"
#include "lac/util.hpp"

namespace lac {

// H⁻/H⁺ with the saturation band generalized from [0, β] to [lo, hi]; used
// both by the decomposition solver (lo = 0) and the RAP subsolver.
double clamped_h_minus(const ConvexCost& cost, double lo, double hi, double eta);
double clamped_h_plus(const ConvexCost& cost, double lo, double hi, double eta);

struct MultiplierSolution {
  double eta = 0.0;
  bool exists = false;
};

// Smallest η with Σ_e Hc⁻_e(η) ≤ target ≤ Σ_e Hc⁺_e(η) over the window, or
// exists = false when target ∉ [Σ lo, Σ hi]. The minimum is −inf when the
// target equals Σ lo. Exact on breakpoints; bisection (absolute tolerance
// `tol` on η, 200-step cap) only inside a smooth segment. `lo` may be empty,
// meaning all zeros. Throws NumericalError on non-convergence, tagging the
// window [window_lo, window_hi] it was given.
MultiplierSolution solve_multiplier(std::span<const ConvexCost> costs,
                                    std::span<const double> lo,
                                    std::span<const double> hi, double target,
                                    double tol, int window_lo = 0,
                                    int window_hi = 0);

}  // namespace lac
