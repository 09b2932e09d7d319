#pragma once

#include <vector>

#include "lac/problem.hpp"

namespace lac {
namespace greedy {

// The greedy solvers work on an integer grid: allocations are unit counts,
// with unit size 1 for integer instances and `eps` for the scaled-continuous
// variant. α must sit exactly on the grid; β is floored onto it.

// Suffix slacks S(l) = Σ_{e≥l}(α(e) − x(e)) for a fixed partial allocation,
// with prefix minima precomputed: one O(n) build, O(1) per capacity query.
class SaturationOracle {
 public:
  SaturationOracle(const Instance& inst, const std::vector<long long>& x);

  // ĉ(x, k): the largest feasible single-coordinate increment at k.
  long long capacity(int k) const;

  long long build_comparisons() const { return build_comparisons_; }
  long long query_comparisons() const { return query_comparisons_; }

 private:
  std::vector<long long> beta_units_;
  std::vector<long long> x_;
  std::vector<long long> prefix_min_slack_;  // min_{l ≤ k} S(l)
  long long build_comparisons_ = 0;
  mutable long long query_comparisons_ = 0;
};

long long saturation_capacity(const Instance& inst,
                              const std::vector<long long>& x, int k);

struct PassResult {
  std::vector<long long> x;
  std::vector<long long> delta;
  long long increments = 0;          // add operations performed
  long long feasibility_checks = 0;  // slack-oracle invocations
};

// One scaled greedy sweep from the allocation `lower`.
PassResult greedy_pass(const Instance& inst, long long scale,
                       const std::vector<long long>& lower);

struct PassSnapshot {
  long long scale = 0;
  std::vector<long long> x;
  std::vector<long long> delta;
};

struct GapTrace {
  Allocation allocation;
  std::vector<long long> final_units;
  double unit = 1.0;
  int passes = 0;
  long long increments = 0;
  long long feasibility_checks = 0;
  std::vector<PassSnapshot> snapshots;
};

// Exact integer optimum via halving scales; α must be integer-valued.
GapTrace gap_solve(const Instance& inst);

// ε-grid solve of the continuous problem: rescale by 1/eps, run the integer
// machinery, map back. α/eps must be integral within 1e-9.
GapTrace gap_solve_eps(const Instance& inst, double eps);

}  // namespace greedy
}  // namespace lac
