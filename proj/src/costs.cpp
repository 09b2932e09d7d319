#include "lac/costs.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace lac {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw Error("invalid cost: " + msg);
}

}  // namespace

ConvexCost ConvexCost::quadratic(double a, double b, double domain_upper) {
  require(std::isfinite(a) && a > 0.0, "quadratic needs a > 0");
  require(std::isfinite(b), "quadratic needs finite b");
  require(domain_upper > 0.0, "domain upper bound must be positive");
  ConvexCost c;
  c.kind_ = CostKind::kQuadratic;
  c.a_ = a;
  c.b_ = b;
  c.domain_upper_ = domain_upper;
  return c;
}

ConvexCost ConvexCost::power(double lambda, double p, double domain_upper) {
  require(std::isfinite(lambda) && lambda > 0.0, "power needs lambda > 0");
  require(std::isfinite(p) && p > 1.0, "power needs p > 1");
  require(domain_upper > 0.0, "domain upper bound must be positive");
  ConvexCost c;
  c.kind_ = CostKind::kPowerP;
  c.a_ = lambda;
  c.b_ = p;
  c.domain_upper_ = domain_upper;
  return c;
}

ConvexCost ConvexCost::piecewise_linear(std::vector<std::pair<double, double>> points,
                                        double domain_upper) {
  require(!points.empty(), "pwl needs at least one (abscissa, slope) pair");
  require(points.front().first == 0.0, "pwl abscissae must start at 0");
  for (size_t i = 0; i < points.size(); ++i) {
    require(std::isfinite(points[i].first) && std::isfinite(points[i].second),
            "pwl points must be finite");
    if (i > 0) {
      require(points[i].first > points[i - 1].first,
              "pwl abscissae must be strictly increasing");
      require(points[i].second >= points[i - 1].second,
              "pwl slopes must be nondecreasing");
    }
  }
  require(domain_upper > points.back().first,
          "pwl domain upper bound must exceed the last breakpoint");
  ConvexCost c;
  c.kind_ = CostKind::kPiecewiseLinear;
  c.points_ = std::move(points);
  c.domain_upper_ = domain_upper;
  return c;
}

ConvexCost ConvexCost::d_separable(double d, PhiKind phi) {
  require(std::isfinite(d) && d > 0.0, "d-separable needs d > 0");
  ConvexCost c;
  c.kind_ = CostKind::kDSeparable;
  c.a_ = d;
  c.phi_ = phi;
  c.domain_upper_ = kInf;
  return c;
}

double ConvexCost::evaluate(double zeta) const {
  if (zeta < 0.0 || zeta > domain_upper_) return kInf;
  switch (kind_) {
    case CostKind::kQuadratic:
      return a_ * zeta * zeta + b_ * zeta;
    case CostKind::kPowerP:
      return a_ * std::pow(zeta, b_);
    case CostKind::kDSeparable:
      if (phi_ == PhiKind::kSquare) return zeta * zeta / a_;
      return std::sqrt(zeta * zeta + a_ * a_);
    case CostKind::kPiecewiseLinear: {
      double value = 0.0;
      for (size_t i = 0; i < points_.size(); ++i) {
        const double seg_lo = points_[i].first;
        if (zeta <= seg_lo) break;
        const double seg_hi =
            (i + 1 < points_.size()) ? points_[i + 1].first : domain_upper_;
        value += points_[i].second * (std::min(zeta, seg_hi) - seg_lo);
      }
      return value;
    }
  }
  return kInf;
}

double ConvexCost::right_derivative(double zeta) const {
  if (zeta < 0.0 || zeta > domain_upper_)
    throw Error("right_derivative: argument outside [0, b_e]");
  switch (kind_) {
    case CostKind::kQuadratic:
      return 2.0 * a_ * zeta + b_;
    case CostKind::kPowerP:
      return zeta == 0.0 ? 0.0 : a_ * b_ * std::pow(zeta, b_ - 1.0);
    case CostKind::kDSeparable:
      if (phi_ == PhiKind::kSquare) return 2.0 * zeta / a_;
      return zeta / std::sqrt(zeta * zeta + a_ * a_);
    case CostKind::kPiecewiseLinear: {
      // Slope of the segment containing ζ; segments are left-closed.
      size_t i = points_.size();
      while (i > 0 && points_[i - 1].first > zeta) --i;
      if (i == 0) return points_.front().second;
      return points_[i - 1].second;
    }
  }
  return 0.0;
}

double ConvexCost::left_derivative(double zeta) const {
  if (zeta <= 0.0) return -kInf;
  if (zeta > domain_upper_) throw Error("left_derivative: argument above b_e");
  if (kind_ == CostKind::kPiecewiseLinear) {
    // At a kink the slope of the segment to the left applies.
    size_t i = points_.size();
    while (i > 0 && points_[i - 1].first >= zeta) --i;
    if (i == 0) return points_.front().second;
    return points_[i - 1].second;
  }
  return right_derivative(zeta);
}

double ConvexCost::inverse_minus(double eta) const {
  switch (kind_) {
    case CostKind::kQuadratic: {
      const double z = (eta - b_) / (2.0 * a_);
      return std::clamp(z, 0.0, kInf);
    }
    case CostKind::kPowerP: {
      if (eta <= 0.0) return 0.0;
      return std::pow(eta / (a_ * b_), 1.0 / (b_ - 1.0));
    }
    case CostKind::kDSeparable: {
      if (eta <= 0.0) return 0.0;
      if (phi_ == PhiKind::kSquare) return a_ * eta / 2.0;
      if (eta >= 1.0) return kInf;  // w⁺ < 1 everywhere
      return a_ * eta / std::sqrt(1.0 - eta * eta);
    }
    case CostKind::kPiecewiseLinear: {
      for (const auto& [x, m] : points_) {
        if (m >= eta) return x;
      }
      return kInf;
    }
  }
  return 0.0;
}

double ConvexCost::inverse_plus(double eta) const {
  if (kind_ == CostKind::kPiecewiseLinear) {
    // First abscissa whose left slope exceeds η; beyond the last segment the
    // supremum is the domain edge.
    for (size_t i = 1; i < points_.size(); ++i) {
      if (points_[i].second > eta) return points_[i].first;
    }
    return domain_upper_;
  }
  // Smooth kinds: w⁻ = w⁺ on (0, b_e), so i⁺ = i⁻ except on the flat start.
  if (kind_ == CostKind::kDSeparable && phi_ == PhiKind::kHypot && eta >= 1.0)
    return kInf;
  const double z = inverse_minus(eta);
  return std::min(z, domain_upper_);
}

double ConvexCost::h_minus(double beta, double eta) const {
  if (!(beta > 0.0) || beta > domain_upper_)
    throw Error("h_minus: beta must lie in (0, b_e]");
  if (eta <= right_derivative(0.0)) return 0.0;
  if (eta > left_derivative(beta)) return beta;
  return std::clamp(inverse_minus(eta), 0.0, beta);
}

double ConvexCost::h_plus(double beta, double eta) const {
  if (!(beta > 0.0) || beta > domain_upper_)
    throw Error("h_plus: beta must lie in (0, b_e]");
  if (eta < right_derivative(0.0)) return 0.0;
  if (eta >= left_derivative(beta)) return beta;
  return std::clamp(inverse_plus(eta), 0.0, beta);
}

std::vector<double> ConvexCost::derivative_breakpoints(double lo, double hi) const {
  if (!(lo >= 0.0) || !(hi > lo) || hi > domain_upper_)
    throw Error("derivative_breakpoints: need 0 <= lo < hi <= b_e");
  std::vector<double> etas;
  etas.push_back(right_derivative(lo));
  if (kind_ == CostKind::kPiecewiseLinear) {
    for (const auto& [x, m] : points_) {
      if (x > lo && x < hi) etas.push_back(m);
    }
  }
  etas.push_back(left_derivative(hi));
  std::sort(etas.begin(), etas.end());
  etas.erase(std::unique(etas.begin(), etas.end()), etas.end());
  return etas;
}

}  // namespace lac
