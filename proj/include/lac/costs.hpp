#pragma once

#include <utility>
#include <vector>

#include "lac/util.hpp"

namespace lac {

enum class CostKind { kQuadratic, kPowerP, kPiecewiseLinear, kDSeparable };

enum class PhiKind { kSquare, kHypot };

// One per-coordinate convex cost w_e on [0, b_e), carrying exact closed forms
// for the one-sided derivatives w⁺/w⁻ and their generalized inverses i⁻/i⁺.
// Values are immutable after construction; every member is a pure function.
class ConvexCost {
 public:
  static ConvexCost quadratic(double a, double b, double domain_upper = kInf);
  static ConvexCost power(double lambda, double p, double domain_upper = kInf);
  // Breakpoints are (abscissa, slope) pairs: slope m_i applies on
  // [x_i, x_{i+1}). Abscissae must start at 0 and strictly increase; slopes
  // must be nondecreasing. w(0) = 0 by convention.
  static ConvexCost piecewise_linear(std::vector<std::pair<double, double>> points,
                                     double domain_upper = kInf);
  static ConvexCost d_separable(double d, PhiKind phi);

  CostKind kind() const { return kind_; }
  double domain_upper() const { return domain_upper_; }
  // True when w⁺ = w⁻ on the open domain, i.e. H has no jumps.
  bool derivative_continuous() const { return kind_ != CostKind::kPiecewiseLinear; }

  // w(ζ); defined on the closure [0, b_e], +inf outside.
  double evaluate(double zeta) const;
  // w⁺(ζ); requires 0 ≤ ζ < b_e (also accepts ζ = b_e when finite).
  double right_derivative(double zeta) const;
  // w⁻(ζ); −inf at ζ = 0, requires ζ ≤ b_e.
  double left_derivative(double zeta) const;

  // i⁻(η) = inf{ζ : w⁺(ζ) ≥ η}, +inf when no such ζ exists in the domain.
  double inverse_minus(double eta) const;
  // i⁺(η) = sup{ζ : w⁻(ζ) ≤ η}; always ≥ 0 since w⁻(0) = −inf.
  double inverse_plus(double eta) const;

  // Saturated truncations over the band [0, β_e]. H⁻ is nondecreasing and
  // left-continuous, H⁺ its right-continuous counterpart; H⁻ ≤ H⁺.
  double h_minus(double beta, double eta) const;
  double h_plus(double beta, double eta) const;

  // Ordered η values at which H⁻/H⁺ over [lo, hi] jump or change slope,
  // including w⁺(lo) and w⁻(hi). Just the two endpoints for smooth kinds.
  std::vector<double> derivative_breakpoints(double lo, double hi) const;
  std::vector<double> derivative_breakpoints(double beta) const {
    return derivative_breakpoints(0.0, beta);
  }

  // Parameter access (only valid for the matching kind).
  double quad_a() const { return a_; }
  double quad_b() const { return b_; }
  double power_lambda() const { return a_; }
  double power_p() const { return b_; }
  double dsep_weight() const { return a_; }
  PhiKind phi() const { return phi_; }
  const std::vector<std::pair<double, double>>& pwl_points() const { return points_; }

 private:
  ConvexCost() = default;

  CostKind kind_ = CostKind::kQuadratic;
  double domain_upper_ = kInf;
  double a_ = 0.0;  // quadratic a / power λ / dsep d
  double b_ = 0.0;  // quadratic b / power p
  PhiKind phi_ = PhiKind::kSquare;
  std::vector<std::pair<double, double>> points_;
};

}  // namespace lac
