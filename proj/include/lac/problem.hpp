#pragma once

#include <cstdint>
#include <vector>

#include "lac/costs.hpp"
#include "lac/util.hpp"

namespace lac {

// A problem instance: minimize Σ w_e(x(e)) subject to 0 ≤ x ≤ β and the
// ascending prefix constraints Σ_{e≤l} x(e) ≥ Σ_{e≤l} α(e) (equality at l=n).
// Coordinates are 0-based throughout the library; "prefix l" always means the
// first l coordinates, so l runs 1..n.
struct Instance {
  std::vector<double> alpha;
  std::vector<double> beta;
  std::vector<ConvexCost> costs;

  Instance(std::vector<double> alpha_in, std::vector<double> beta_in,
           std::vector<ConvexCost> costs_in);

  int n() const { return static_cast<int>(alpha.size()); }
  // Σ_{e<count} α(e), compensated.
  double alpha_prefix(int count) const;
};

struct Allocation {
  std::vector<double> x;
  double objective = 0.0;
};

struct ConstraintReport {
  double box_violation = 0.0;
  int box_index = -1;  // 0-based coordinate, -1 when clean
  double prefix_violation = 0.0;
  int prefix_index = -1;  // prefix length l in 1..n-1, -1 when clean
  double equality_violation = 0.0;

  bool satisfied(double tol) const {
    return box_violation <= tol && prefix_violation <= tol &&
           equality_violation <= tol;
  }
};

struct CertificateReport {
  bool pass = true;
  long pairs_checked = 0;
  // Worst exchangeable pair (u, e) and its margin w_e⁺(x(e)) − w_u⁻(x(u));
  // negative margin below −tol means the optimality condition fails.
  int worst_u = -1;
  int worst_e = -1;
  double worst_margin = kInf;
};

// Largest n for which the exhaustive polymatroid-view operations are allowed.
inline constexpr int kOracleScaleLimit = 20;

double objective_value(const Instance& inst, const std::vector<double>& x);

bool is_feasible(const Instance& inst);
// 1-based length of the first violated prefix, or 0 when feasible.
int first_violated_prefix(const Instance& inst);

// The constructive feasible point: β up to the pivot coordinate, the
// remainder there, zero beyond. Throws InfeasibleError when infeasible.
Allocation construct_feasible_point(const Instance& inst);

ConstraintReport check_constraints(const Instance& inst,
                                   const std::vector<double>& x);

// --- Exhaustive polymatroid view (certification/testing only, n ≤ 20) ---

// Rank f(A) of the ascending-constraint polymatroid; A is a bitmask over
// coordinates 0..n-1.
double rank(const Instance& inst, std::uint32_t subset);
// Truncated rank f_β(A) = min_{D ⊆ A} f(D) + β(A−D), by subset enumeration.
double rank_beta(const Instance& inst, std::uint32_t subset);
// f_β for every subset at once (dynamic program over masks).
std::vector<double> rank_beta_table(const Instance& inst);

// Smallest tight set containing e (intersection of all tight sets); returns
// the full-ground-set mask when no tight set contains e. Throws when x is not
// independent, naming a violating subset in the message.
std::uint32_t dep_set(const Instance& inst, const std::vector<double>& x, int e,
                      bool use_beta, double tight_tol = 1e-9);

// Checks Groenevelt's optimality condition w_e⁺(x(e)) ≥ w_u⁻(x(u)) over all
// exchangeable pairs of the base x in (E, f_β).
CertificateReport groenevelt_certificate(const Instance& inst,
                                         const std::vector<double>& x,
                                         double tol = 1e-7,
                                         double tight_tol = 1e-9);

}  // namespace lac
