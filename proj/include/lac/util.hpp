#pragma once

#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace lac {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Neumaier-compensated accumulator. Prefix-sum comparisons against the
// constraint right-hand sides decide control flow in every solver, so all
// window sums go through this instead of naive +=.
class KahanSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> values) {
  KahanSum acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The instance violates the prefix feasibility condition.
class InfeasibleError : public Error {
 public:
  InfeasibleError(std::string msg, int violated_prefix)
      : Error(std::move(msg)), violated_prefix_(violated_prefix) {}
  int violated_prefix() const { return violated_prefix_; }

 private:
  int violated_prefix_;
};

// Operation requested outside its supported regime (oracle scale limits,
// taut-string with binding upper bounds, ...).
class CapabilityError : public Error {
 public:
  using Error::Error;
};

// A numeric search failed to converge; carries the window it was solving.
class NumericalError : public Error {
 public:
  NumericalError(std::string msg, int lo, int hi)
      : Error(std::move(msg)), lo_(lo), hi_(hi) {}
  int window_lo() const { return lo_; }
  int window_hi() const { return hi_; }

 private:
  int lo_ = 0, hi_ = 0;
};

// Problem-file parse failure, anchored to the offending field.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace lac
