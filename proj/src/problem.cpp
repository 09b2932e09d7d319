#include "lac/problem.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

namespace lac {

namespace {

void gate_oracle_scale(const Instance& inst, const char* op) {
  if (inst.n() > kOracleScaleLimit)
    throw CapabilityError(std::string(op) +
                          ": exhaustive polymatroid queries are limited to n <= " +
                          std::to_string(kOracleScaleLimit));
}

// Sum of x over the bits of `subset`, tabulated for all subsets.
std::vector<double> subset_sum_table(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> table(std::size_t{1} << n, 0.0);
  for (std::uint32_t mask = 1; mask < table.size(); ++mask) {
    const int low = std::countr_zero(mask);
    table[mask] = table[mask & (mask - 1)] + x[low];
  }
  return table;
}

}  // namespace

Instance::Instance(std::vector<double> alpha_in, std::vector<double> beta_in,
                   std::vector<ConvexCost> costs_in)
    : alpha(std::move(alpha_in)), beta(std::move(beta_in)), costs(std::move(costs_in)) {
  if (alpha.empty()) throw Error("instance: n must be at least 1");
  if (alpha.size() != beta.size() || alpha.size() != costs.size())
    throw Error("instance: alpha, beta, costs lengths differ");
  for (size_t e = 0; e < alpha.size(); ++e) {
    if (!(alpha[e] >= 0.0) || !std::isfinite(alpha[e]))
      throw Error("instance: alpha(" + std::to_string(e + 1) + ") must be finite and >= 0");
    if (!(beta[e] > 0.0) || !std::isfinite(beta[e]))
      throw Error("instance: beta(" + std::to_string(e + 1) + ") must be finite and > 0");
    if (beta[e] > costs[e].domain_upper())
      throw Error("instance: beta(" + std::to_string(e + 1) + ") exceeds the cost domain");
  }
}

double Instance::alpha_prefix(int count) const {
  KahanSum acc;
  for (int e = 0; e < count; ++e) acc.add(alpha[e]);
  return acc.value();
}

double objective_value(const Instance& inst, const std::vector<double>& x) {
  KahanSum acc;
  for (int e = 0; e < inst.n(); ++e) {
    const double w = inst.costs[e].evaluate(x[e]);
    if (!std::isfinite(w)) return kInf;
    acc.add(w);
  }
  return acc.value();
}

int first_violated_prefix(const Instance& inst) {
  KahanSum a, b;
  for (int l = 1; l <= inst.n(); ++l) {
    a.add(inst.alpha[l - 1]);
    b.add(inst.beta[l - 1]);
    if (a.value() > b.value()) return l;
  }
  return 0;
}

bool is_feasible(const Instance& inst) { return first_violated_prefix(inst) == 0; }

Allocation construct_feasible_point(const Instance& inst) {
  const int bad = first_violated_prefix(inst);
  if (bad != 0)
    throw InfeasibleError("infeasible instance: prefix constraint violated at l=" +
                              std::to_string(bad),
                          bad);
  const int n = inst.n();
  const double total = inst.alpha_prefix(n);
  // Pivot: the smallest l whose β-prefix covers the full demand.
  int pivot = n;
  KahanSum bsum;
  double below_pivot = 0.0;
  for (int l = 1; l <= n; ++l) {
    const double prev = bsum.value();
    bsum.add(inst.beta[l - 1]);
    if (bsum.value() >= total) {
      pivot = l;
      below_pivot = prev;
      break;
    }
  }
  Allocation out;
  out.x.assign(n, 0.0);
  for (int e = 0; e < pivot - 1; ++e) out.x[e] = inst.beta[e];
  out.x[pivot - 1] = std::max(0.0, total - below_pivot);
  out.objective = objective_value(inst, out.x);
  return out;
}

ConstraintReport check_constraints(const Instance& inst, const std::vector<double>& x) {
  if (static_cast<int>(x.size()) != inst.n())
    throw Error("check_constraints: x has wrong length");
  ConstraintReport rep;
  for (int e = 0; e < inst.n(); ++e) {
    const double v = std::max(-x[e], x[e] - inst.beta[e]);
    if (v > rep.box_violation) {
      rep.box_violation = v;
      rep.box_index = e;
    }
  }
  KahanSum xs, as;
  for (int l = 1; l <= inst.n(); ++l) {
    xs.add(x[l - 1]);
    as.add(inst.alpha[l - 1]);
    if (l < inst.n()) {
      const double v = as.value() - xs.value();
      if (v > rep.prefix_violation) {
        rep.prefix_violation = v;
        rep.prefix_index = l;
      }
    }
  }
  rep.equality_violation = std::abs(xs.value() - as.value());
  return rep;
}

double rank(const Instance& inst, std::uint32_t subset) {
  gate_oracle_scale(inst, "rank");
  const int n = inst.n();
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1u);
  if (subset & ~full) throw Error("rank: subset has bits beyond the ground set");
  // ζ(E−A) = c(j*) with j* the longest prefix disjoint from A.
  const std::uint32_t complement = full & ~subset;
  int j = 0;
  while (j < n && (complement & (1u << j))) ++j;
  return inst.alpha_prefix(n) - inst.alpha_prefix(j);
}

double rank_beta(const Instance& inst, std::uint32_t subset) {
  gate_oracle_scale(inst, "rank_beta");
  if (subset == 0) return 0.0;
  double best = kInf;
  // Iterate every D ⊆ subset, including D = subset and D = ∅.
  std::uint32_t d = subset;
  while (true) {
    KahanSum acc;
    acc.add(rank(inst, d));
    std::uint32_t rest = subset & ~d;
    while (rest) {
      const int e = std::countr_zero(rest);
      acc.add(inst.beta[e]);
      rest &= rest - 1;
    }
    best = std::min(best, acc.value());
    if (d == 0) break;
    d = (d - 1) & subset;
  }
  return best;
}

std::vector<double> rank_beta_table(const Instance& inst) {
  gate_oracle_scale(inst, "rank_beta_table");
  const int n = inst.n();
  const std::size_t size = std::size_t{1} << n;
  // f(A) depends only on the longest prefix disjoint from A.
  std::vector<double> table(size, 0.0);
  const double total = inst.alpha_prefix(n);
  for (std::uint32_t mask = 1; mask < size; ++mask) {
    const std::uint32_t complement = static_cast<std::uint32_t>(size - 1) & ~mask;
    int j = 0;
    while (j < n && (complement & (1u << j))) ++j;
    double best = total - inst.alpha_prefix(j);  // D = A term
    std::uint32_t rest = mask;
    while (rest) {
      const int e = std::countr_zero(rest);
      best = std::min(best, table[mask & ~(1u << e)] + inst.beta[e]);
      rest &= rest - 1;
    }
    table[mask] = best;
  }
  return table;
}

std::uint32_t dep_set(const Instance& inst, const std::vector<double>& x, int e,
                      bool use_beta, double tight_tol) {
  gate_oracle_scale(inst, "dep_set");
  const int n = inst.n();
  if (e < 0 || e >= n) throw Error("dep_set: coordinate out of range");
  const std::size_t size = std::size_t{1} << n;
  const std::vector<double> xsum = subset_sum_table(x);
  std::vector<double> ranks;
  if (use_beta) {
    ranks = rank_beta_table(inst);
  } else {
    ranks.resize(size);
    for (std::uint32_t mask = 0; mask < size; ++mask) ranks[mask] = rank(inst, mask);
  }
  std::uint32_t dep = static_cast<std::uint32_t>(size - 1);
  bool found_tight = false;
  for (std::uint32_t mask = 1; mask < size; ++mask) {
    if (xsum[mask] > ranks[mask] + tight_tol)
      throw Error("dep_set: x is not independent (violated on subset mask " +
                  std::to_string(mask) + ")");
    if ((mask & (1u << e)) && xsum[mask] >= ranks[mask] - tight_tol) {
      dep &= mask;
      found_tight = true;
    }
  }
  if (!found_tight) return static_cast<std::uint32_t>(size - 1);
  return dep;
}

CertificateReport groenevelt_certificate(const Instance& inst,
                                         const std::vector<double>& x, double tol,
                                         double tight_tol) {
  gate_oracle_scale(inst, "groenevelt_certificate");
  const int n = inst.n();
  if (static_cast<int>(x.size()) != n)
    throw Error("groenevelt_certificate: x has wrong length");
  const std::size_t size = std::size_t{1} << n;
  const std::vector<double> ranks = rank_beta_table(inst);
  const std::vector<double> xsum = subset_sum_table(x);
  for (std::uint32_t mask = 1; mask < size; ++mask) {
    if (xsum[mask] > ranks[mask] + tol)
      throw Error("groenevelt_certificate: x is not independent in (E, f_beta)");
  }
  if (std::abs(xsum[size - 1] - ranks[size - 1]) > tol)
    throw Error("groenevelt_certificate: x is not a base of (E, f_beta)");

  // dep(x, e, f_β) for every coordinate in one sweep over the tight sets.
  std::vector<std::uint32_t> dep(n, static_cast<std::uint32_t>(size - 1));
  for (std::uint32_t mask = 1; mask < size; ++mask) {
    if (xsum[mask] < ranks[mask] - tight_tol) continue;
    std::uint32_t rest = mask;
    while (rest) {
      const int e = std::countr_zero(rest);
      dep[e] &= mask;
      rest &= rest - 1;
    }
  }

  CertificateReport rep;
  for (int e = 0; e < n; ++e) {
    const double xe = std::clamp(x[e], 0.0, inst.beta[e]);
    std::uint32_t others = dep[e] & ~(1u << e);
    if (others == 0) continue;
    const double we_plus = inst.costs[e].right_derivative(xe);
    while (others) {
      const int u = std::countr_zero(others);
      others &= others - 1;
      const double xu = std::clamp(x[u], 0.0, inst.beta[u]);
      const double wu_minus = inst.costs[u].left_derivative(xu);
      const double margin = we_plus - wu_minus;
      ++rep.pairs_checked;
      if (margin < rep.worst_margin) {
        rep.worst_margin = margin;
        rep.worst_u = u;
        rep.worst_e = e;
      }
    }
  }
  rep.pass = rep.worst_margin >= -tol;
  return rep;
}

}  // namespace lac
