#pragma once

#include <vector>

#include "lac/problem.hpp"

namespace lac {
namespace decomp {

// Window indices below follow the chain convention: l and s are 1-based, a
// window [l, s_prev - 1] covers coordinates l..s_prev-1 inclusive.

struct EtaSolution {
  int l = 0;
  double eta = 0.0;
  bool exists = false;
};

struct IterationRecord {
  int j = 0;
  double gamma = 0.0;
  int s = 0;                // s(j)
  std::vector<int> tied;    // indices attaining Γ_j, descending
};

struct DecompTrace {
  std::vector<IterationRecord> records;
  Allocation allocation;
  long eta_solve_count = 0;
};

// Smallest η with Σ H⁻(η) ≤ Σα ≤ Σ H⁺(η) over coordinates [l, hi];
// exists = false when the window demand exceeds Σβ.
EtaSolution solve_eta(const Instance& inst, int l, int hi, double tol);

// Resolves which tied index becomes s(j); `tied` must be descending.
int subroutine1(const Instance& inst, int s_prev, const std::vector<int>& tied,
                double gamma);

// Assigns x(e) for e in [s_j, s_prev - 1] within the [H⁻(Γ), H⁺(Γ)] bands;
// `tied_above` are the tied indices strictly between s_j and s_prev.
void subroutine2(const Instance& inst, int s_j, int s_prev, double gamma,
                 const std::vector<int>& tied_above, std::vector<double>& x);

DecompTrace solve(const Instance& inst, double tol = 1e-10);

// Post-hoc verification of the appendix invariants on a finished trace:
// strictly increasing Γ chain, prefix equality at every chain point, and band
// membership of every assigned coordinate.
struct TraceCheck {
  bool gamma_strictly_increasing = true;
  bool prefix_equality = true;
  bool band_membership = true;
  double worst_prefix_defect = 0.0;
  double worst_band_defect = 0.0;

  bool all_hold() const {
    return gamma_strictly_increasing && prefix_equality && band_membership;
  }
};

TraceCheck check_trace_invariants(const Instance& inst, const DecompTrace& trace,
                                  double prefix_tol = 1e-8,
                                  double band_tol = 1e-8);

}  // namespace decomp
}  // namespace lac
