#include "lac/solver_decomp.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

#include "lac/multiplier.hpp"

namespace lac {
namespace decomp {

namespace {

constexpr double kTieTol = 1e-9;  // η-tie detection width

// Σ α(e) for e in [a, b), 1-based a, exclusive b.
double alpha_window(const Instance& inst, int a, int b) {
  KahanSum acc;
  for (int e = a; e < b; ++e) acc.add(inst.alpha[e - 1]);
  return acc.value();
}

double h_plus_window(const Instance& inst, int a, int b, double eta) {
  KahanSum acc;
  for (int e = a; e < b; ++e)
    acc.add(clamped_h_plus(inst.costs[e - 1], 0.0, inst.beta[e - 1], eta));
  return acc.value();
}

double h_minus_window(const Instance& inst, int a, int b, double eta) {
  KahanSum acc;
  for (int e = a; e < b; ++e)
    acc.add(clamped_h_minus(inst.costs[e - 1], 0.0, inst.beta[e - 1], eta));
  return acc.value();
}

double sum_slack(double reference) { return 1e-9 * (1.0 + std::abs(reference)); }

}  // namespace

EtaSolution solve_eta(const Instance& inst, int l, int hi, double tol) {
  if (l < 1 || hi < l || hi > inst.n())
    throw Error("solve_eta: window [" + std::to_string(l) + ", " +
                std::to_string(hi) + "] out of range");
  const size_t off = static_cast<size_t>(l - 1);
  const size_t len = static_cast<size_t>(hi - l + 1);
  const double target = alpha_window(inst, l, hi + 1);
  const MultiplierSolution sol = solve_multiplier(
      std::span<const ConvexCost>(inst.costs).subspan(off, len), {},
      std::span<const double>(inst.beta).subspan(off, len), target, tol, l, hi);
  return EtaSolution{l, sol.eta, sol.exists};
}

int subroutine1(const Instance& inst, int s_prev, const std::vector<int>& tied,
                double gamma) {
  if (tied.empty()) throw Error("subroutine1: no tied indices");
  for (size_t i = 0; i + 1 < tied.size(); ++i) {
    if (tied[i] <= tied[i + 1]) throw Error("subroutine1: tied not descending");
  }
  if (tied.back() < 1 || tied.front() >= s_prev)
    throw Error("subroutine1: tied indices out of window");
  if (tied.size() == 1) return tied.front();

  size_t i = 0, t = tied.size() - 1;
  while (i != t) {
    const int k = tied[i];
    const int m = tied[t];
    const double demand = alpha_window(inst, m, k);
    if (h_plus_window(inst, m, k, gamma) >= demand - sum_slack(demand)) {
      ++i;
    } else {
      --t;
    }
  }
  return tied[i];
}

void subroutine2(const Instance& inst, int s_j, int s_prev, double gamma,
                 const std::vector<int>& tied_above, std::vector<double>& x) {
  for (int l : tied_above) {
    if (l <= s_j || l >= s_prev) throw Error("subroutine2: tied index out of range");
  }
  std::vector<int> pool = tied_above;  // descending, strictly inside (s_j, s_prev)
  int l0 = s_prev;
  while (true) {
    // Step 2: γ as the minimum of Σα − ΣH⁻ over the candidate left ends,
    // candidates being the pool plus s(j) itself.
    std::vector<int> candidates = pool;
    candidates.push_back(s_j);
    double gamma_min = kInf;
    std::vector<double> values(candidates.size());
    for (size_t i = 0; i < candidates.size(); ++i) {
      values[i] = alpha_window(inst, candidates[i], l0) -
                  h_minus_window(inst, candidates[i], l0, gamma);
      gamma_min = std::min(gamma_min, values[i]);
    }
    size_t t_idx = 0;
    for (size_t i = 0; i < candidates.size(); ++i) {
      if (values[i] <= gamma_min + sum_slack(gamma_min)) t_idx = i;
    }
    const int l_t = candidates[t_idx];
    if (gamma_min < -sum_slack(gamma_min))
      throw Error("subroutine2: negative fill mass gamma=" + std::to_string(gamma_min));
    double fill = std::max(gamma_min, 0.0);

    // Step 3: distribute the fill over [l_1, l_0 - 1] inside the bands,
    // highest index first; pin H⁻ on [l_t, l_1 - 1].
    const int l1 = pool.empty() ? s_j : pool.front();
    for (int e = l0 - 1; e >= l1; --e) {
      const double lo_band =
          clamped_h_minus(inst.costs[e - 1], 0.0, inst.beta[e - 1], gamma);
      const double hi_band =
          clamped_h_plus(inst.costs[e - 1], 0.0, inst.beta[e - 1], gamma);
      const double add = std::clamp(fill, 0.0, hi_band - lo_band);
      x[e - 1] = lo_band + add;
      fill -= add;
    }
    if (fill > sum_slack(gamma_min))
      throw Error("subroutine2: band capacity too small for fill mass");
    for (int e = l1 - 1; e >= l_t; --e) {
      x[e - 1] = clamped_h_minus(inst.costs[e - 1], 0.0, inst.beta[e - 1], gamma);
    }

    // Step 4.
    if (l_t == s_j) return;

    // Step 5: survivors below l_t whose H⁺ partial sums still cover α.
    std::vector<int> next;
    for (int l : tied_above) {
      if (l >= l_t) continue;
      const double demand = alpha_window(inst, l, l_t);
      if (h_plus_window(inst, l, l_t, gamma) >= demand - sum_slack(demand))
        next.push_back(l);
    }
    pool = std::move(next);
    l0 = l_t;
  }
}

DecompTrace solve(const Instance& inst, double tol) {
  const int bad = first_violated_prefix(inst);
  if (bad != 0)
    throw InfeasibleError(
        "solve: infeasible instance (prefix l=" + std::to_string(bad) + ")", bad);

  const int n = inst.n();
  DecompTrace trace;
  std::vector<double> x(n, 0.0);
  int s_prev = n + 1;
  int j = 0;
  while (s_prev > 1) {
    ++j;
    double gamma = kInf;
    bool any = false;
    std::vector<EtaSolution> etas;
    etas.reserve(s_prev - 1);
    for (int l = 1; l < s_prev; ++l) {
      EtaSolution sol = solve_eta(inst, l, s_prev - 1, tol);
      ++trace.eta_solve_count;
      if (sol.exists) {
        any = true;
        gamma = std::min(gamma, sol.eta);
      }
      etas.push_back(sol);
    }
    if (!any)
      throw Error("solve: no candidate eta in iteration " + std::to_string(j));

    std::vector<int> tied;
    for (auto it = etas.rbegin(); it != etas.rend(); ++it) {
      if (it->exists && it->eta <= gamma + kTieTol) tied.push_back(it->l);
    }
    const int s_j =
        tied.size() == 1 ? tied.front() : subroutine1(inst, s_prev, tied, gamma);

    std::vector<int> tied_above;
    for (int l : tied) {
      if (l > s_j) tied_above.push_back(l);
    }
    subroutine2(inst, s_j, s_prev, gamma, tied_above, x);
    trace.records.push_back(IterationRecord{j, gamma, s_j, tied});
    s_prev = s_j;
  }

  trace.allocation.x = std::move(x);
  trace.allocation.objective = objective_value(inst, trace.allocation.x);
  return trace;
}

TraceCheck check_trace_invariants(const Instance& inst, const DecompTrace& trace,
                                  double prefix_tol, double band_tol) {
  TraceCheck check;
  const auto& x = trace.allocation.x;
  double prev_gamma = -kInf;
  int s_prev = inst.n() + 1;
  for (const auto& rec : trace.records) {
    if (!(rec.gamma > prev_gamma)) check.gamma_strictly_increasing = false;
    prev_gamma = rec.gamma;

    // Σ_{e=s(j)}^{n} x(e) must equal Σ_{e=s(j)}^{n} α(e).
    KahanSum xs;
    for (int e = rec.s; e <= inst.n(); ++e) xs.add(x[e - 1]);
    const double defect =
        std::abs(xs.value() - alpha_window(inst, rec.s, inst.n() + 1));
    check.worst_prefix_defect = std::max(check.worst_prefix_defect, defect);
    if (defect > prefix_tol) check.prefix_equality = false;

    for (int e = rec.s; e < s_prev; ++e) {
      const double lo =
          clamped_h_minus(inst.costs[e - 1], 0.0, inst.beta[e - 1], rec.gamma);
      const double hi =
          clamped_h_plus(inst.costs[e - 1], 0.0, inst.beta[e - 1], rec.gamma);
      const double band_defect = std::max(lo - x[e - 1], x[e - 1] - hi);
      check.worst_band_defect = std::max(check.worst_band_defect, band_defect);
      if (band_defect > band_tol) check.band_membership = false;
    }
    s_prev = rec.s;
  }
  return check;
}

}  // namespace decomp
}  // namespace lac
