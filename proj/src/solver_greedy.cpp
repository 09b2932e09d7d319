#include "lac/solver_greedy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <tuple>

namespace lac {
namespace greedy {

namespace {

// Lazy segment tree over the suffix slacks S(l): adding mass at coordinate k
// subtracts from S(0..k), feasibility asks for min S(0..k).
class SlackTree {
 public:
  explicit SlackTree(const std::vector<long long>& values) {
    n_ = values.size();
    size_t sz = 1;
    while (sz < n_) sz <<= 1;
    size_ = sz;
    min_.assign(2 * size_, std::numeric_limits<long long>::max());
    lazy_.assign(2 * size_, 0);
    for (size_t i = 0; i < n_; ++i) min_[size_ + i] = values[i];
    for (size_t i = size_ - 1; i >= 1; --i)
      min_[i] = std::min(min_[2 * i], min_[2 * i + 1]);
  }

  void add_prefix(size_t k, long long delta) { add(1, 0, size_, 0, k + 1, delta); }
  long long min_prefix(size_t k) const { return query(1, 0, size_, 0, k + 1); }

 private:
  void push(size_t node) const {
    if (lazy_[node] != 0) {
      for (size_t child : {2 * node, 2 * node + 1}) {
        min_[child] += lazy_[node];
        lazy_[child] += lazy_[node];
      }
      lazy_[node] = 0;
    }
  }
  void add(size_t node, size_t lo, size_t hi, size_t a, size_t b, long long d) {
    if (b <= lo || hi <= a) return;
    if (a <= lo && hi <= b) {
      min_[node] += d;
      lazy_[node] += d;
      return;
    }
    push(node);
    const size_t mid = (lo + hi) / 2;
    add(2 * node, lo, mid, a, b, d);
    add(2 * node + 1, mid, hi, a, b, d);
    min_[node] = std::min(min_[2 * node], min_[2 * node + 1]);
  }
  long long query(size_t node, size_t lo, size_t hi, size_t a, size_t b) const {
    if (b <= lo || hi <= a) return std::numeric_limits<long long>::max();
    if (a <= lo && hi <= b) return min_[node];
    push(node);
    const size_t mid = (lo + hi) / 2;
    return std::min(query(2 * node, lo, mid, a, b),
                    query(2 * node + 1, mid, hi, a, b));
  }

  size_t n_ = 0, size_ = 0;
  mutable std::vector<long long> min_;
  mutable std::vector<long long> lazy_;
};

// Integer-grid view of an instance.
struct UnitProblem {
  const Instance* inst = nullptr;
  double unit = 1.0;
  std::vector<long long> alpha;
  std::vector<long long> beta;

  int n() const { return static_cast<int>(alpha.size()); }
  double cost(int e, long long u) const { return inst->costs[e].evaluate(unit * u); }
  double marginal(int e, long long u) const { return cost(e, u + 1) - cost(e, u); }
};

long long to_grid(double value, double unit, const char* what) {
  const double scaled = value / unit;
  const double rounded = std::nearbyint(scaled);
  if (std::abs(scaled - rounded) > 1e-9 * std::max(1.0, std::abs(scaled)))
    throw CapabilityError(std::string(what) +
                          " is not representable on the chosen grid; pass an eps "
                          "that divides every alpha value");
  return static_cast<long long>(rounded);
}

UnitProblem make_unit_problem(const Instance& inst, double unit) {
  UnitProblem up;
  up.inst = &inst;
  up.unit = unit;
  up.alpha.reserve(inst.n());
  up.beta.reserve(inst.n());
  for (int e = 0; e < inst.n(); ++e) {
    up.alpha.push_back(to_grid(inst.alpha[e], unit, "alpha"));
    up.beta.push_back(static_cast<long long>(std::floor(inst.beta[e] / unit + 1e-9)));
  }
  long long asum = 0, bsum = 0;
  for (int l = 0; l < inst.n(); ++l) {
    asum += up.alpha[l];
    bsum += up.beta[l];
    if (asum > bsum)
      throw CapabilityError(
          "integer grid too coarse: prefix " + std::to_string(l + 1) +
          " infeasible after flooring beta; pass a finer eps");
  }
  return up;
}

std::vector<long long> suffix_slacks(const UnitProblem& up,
                                     const std::vector<long long>& x) {
  std::vector<long long> s(up.n());
  long long acc = 0;
  for (int l = up.n() - 1; l >= 0; --l) {
    acc += up.alpha[l] - x[l];
    s[l] = acc;
  }
  return s;
}

PassResult run_pass(const UnitProblem& up, long long scale,
                    const std::vector<long long>& lower) {
  const int n = up.n();
  if (static_cast<int>(lower.size()) != n)
    throw Error("greedy_pass: lower has wrong length");
  PassResult res;
  res.x = lower;
  res.delta.assign(n, 0);

  std::vector<long long> slacks = suffix_slacks(up, res.x);
  long long budget = slacks[0];  // B̃ = B − Σ lower
  for (int l = 0; l < n; ++l) {
    if (slacks[l] < 0)
      throw Error("greedy_pass: lower violates the suffix constraint at l=" +
                  std::to_string(l + 1));
    if (res.x[l] < 0 || res.x[l] > up.beta[l])
      throw Error("greedy_pass: lower outside the box at coordinate " +
                  std::to_string(l + 1));
  }
  SlackTree tree(slacks);

  // Min-heap of (unit marginal, coordinate, x-stamp); stale stamps are
  // skipped on pop. Ties break toward the lowest coordinate.
  using Entry = std::tuple<double, int, long long>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
  std::vector<bool> active(n, true);
  for (int e = 0; e < n; ++e) heap.push({up.marginal(e, res.x[e]), e, res.x[e]});
  int active_count = n;

  while (budget > 0 && active_count > 0) {
    if (heap.empty()) throw Error("greedy_pass: heap exhausted with budget left");
    const auto [marg, k, stamp] = heap.top();
    heap.pop();
    if (!active[k] || stamp != res.x[k]) continue;  // stale entry

    const long long box_slack = up.beta[k] - res.x[k];
    const long long prefix_slack = tree.min_prefix(k);
    ++res.feasibility_checks;
    const long long cap = std::min(box_slack, prefix_slack);
    if (cap < 1) {
      active[k] = false;
      --active_count;
      res.delta[k] = scale;
    } else if (cap < scale) {
      res.x[k] += cap;
      tree.add_prefix(k, -cap);
      budget -= cap;
      active[k] = false;
      --active_count;
      res.delta[k] = cap;
      ++res.increments;
    } else {
      res.x[k] += scale;
      tree.add_prefix(k, -scale);
      budget -= scale;
      res.delta[k] = scale;
      ++res.increments;
      heap.push({up.marginal(k, res.x[k]), k, res.x[k]});
    }
  }
  return res;
}

GapTrace run_gap(const UnitProblem& up) {
  const int n = up.n();
  GapTrace trace;
  trace.unit = up.unit;

  long long total = 0;
  for (long long a : up.alpha) total += a;

  std::vector<long long> lower(n, 0);
  if (total > 0) {
    long long scale = (total + 2 * n - 1) / (2 * n);  // ⌈B / 2n⌉
    while (true) {
      PassResult pass = run_pass(up, scale, lower);
      ++trace.passes;
      trace.increments += pass.increments;
      trace.feasibility_checks += pass.feasibility_checks;
      trace.snapshots.push_back(PassSnapshot{scale, pass.x, pass.delta});
      if (scale == 1) {
        lower = pass.x;
        break;
      }
      for (int e = 0; e < n; ++e)
        lower[e] = std::max(lower[e], pass.x[e] - scale);
      scale = (scale + 1) / 2;
    }
  } else {
    ++trace.passes;
    trace.snapshots.push_back(PassSnapshot{1, lower, std::vector<long long>(n, 0)});
  }

  long long placed = 0;
  for (long long v : lower) placed += v;
  if (placed != total)
    throw Error("gap: final pass left " + std::to_string(total - placed) +
                " units unallocated");

  trace.final_units = lower;
  trace.allocation.x.resize(n);
  for (int e = 0; e < n; ++e)
    trace.allocation.x[e] = static_cast<double>(lower[e]) * up.unit;
  trace.allocation.objective = objective_value(*up.inst, trace.allocation.x);
  return trace;
}

}  // namespace

SaturationOracle::SaturationOracle(const Instance& inst,
                                   const std::vector<long long>& x)
    : x_(x) {
  const int n = inst.n();
  if (static_cast<int>(x.size()) != n)
    throw Error("saturation oracle: x has wrong length");
  UnitProblem up = make_unit_problem(inst, 1.0);
  beta_units_ = up.beta;
  std::vector<long long> slacks = suffix_slacks(up, x);
  for (int l = 0; l < n; ++l) {
    ++build_comparisons_;
    if (slacks[l] < 0)
      throw Error("saturation oracle: x violates the suffix constraint at l=" +
                  std::to_string(l + 1));
    if (x[l] < 0 || x[l] > beta_units_[l])
      throw Error("saturation oracle: x outside the box at coordinate " +
                  std::to_string(l + 1));
  }
  prefix_min_slack_.resize(n);
  long long run = slacks[0];
  for (int l = 0; l < n; ++l) {
    ++build_comparisons_;
    run = std::min(run, slacks[l]);
    prefix_min_slack_[l] = run;
  }
}

long long SaturationOracle::capacity(int k) const {
  if (k < 0 || k >= static_cast<int>(x_.size()))
    throw Error("saturation oracle: coordinate out of range");
  query_comparisons_ += 1;
  return std::min(beta_units_[k] - x_[k], prefix_min_slack_[k]);
}

long long saturation_capacity(const Instance& inst,
                              const std::vector<long long>& x, int k) {
  return SaturationOracle(inst, x).capacity(k);
}

PassResult greedy_pass(const Instance& inst, long long scale,
                       const std::vector<long long>& lower) {
  if (scale < 1) throw Error("greedy_pass: scale must be >= 1");
  return run_pass(make_unit_problem(inst, 1.0), scale, lower);
}

GapTrace gap_solve(const Instance& inst) {
  const int bad = first_violated_prefix(inst);
  if (bad != 0)
    throw InfeasibleError(
        "gap_solve: infeasible instance (prefix l=" + std::to_string(bad) + ")", bad);
  return run_gap(make_unit_problem(inst, 1.0));
}

GapTrace gap_solve_eps(const Instance& inst, double eps) {
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw Error("gap_solve_eps: eps must be positive and finite");
  const int bad = first_violated_prefix(inst);
  if (bad != 0)
    throw InfeasibleError(
        "gap_solve_eps: infeasible instance (prefix l=" + std::to_string(bad) + ")",
        bad);
  return run_gap(make_unit_problem(inst, eps));
}

}  // namespace greedy
}  // namespace lac
