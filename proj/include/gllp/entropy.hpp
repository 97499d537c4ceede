#ifndef GLLP_ENTROPY_HPP
#define GLLP_ENTROPY_HPP

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace gllp {

/// Binary entropy in bits. Endpoints return 0 exactly (the p log p limit).
inline double h2(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error("h2: p outside [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

namespace detail {

struct Bisection {
  double root = 0.0;
  int iterations = 0;
};

// Unique p in [0,1/2] with h2(p) = y, by bracketed bisection to 1e-12 on the
// argument. h2'(1/2) = 0, so Newton steps are unreliable near the top; the
// bracket is not.
inline Bisection h2_inv_low_impl(double y) {
  if (!(y >= 0.0 && y <= 1.0))
    throw std::domain_error("h2_inv_low: y outside [0,1]");
  if (y == 0.0) return {0.0, 0};
  if (y == 1.0) return {0.5, 0};
  double lo = 0.0, hi = 0.5;
  int it = 0;
  while (hi - lo > 1e-12 && it < 200) {
    const double mid = 0.5 * (lo + hi);
    (h2(mid) < y ? lo : hi) = mid;
    ++it;
  }
  return {0.5 * (lo + hi), it};
}

}  // namespace detail

/// Inverse of h2 restricted to [0, 1/2].
inline double h2_inv_low(double y) { return detail::h2_inv_low_impl(y).root; }

/// Solution of the balance equation h2(1/2 - f) + h2(delta) = 1.
struct BalanceResult {
  double f_value = 0.0;   // in [0, 1/2]
  double residual = 0.0;  // defect h2(1/2 - f_value) + h2(delta) - 1
  int iterations = 0;
};

/// Balance function f(delta): the unique f in [0,1/2] satisfying
/// h2(1/2 - f) + h2(delta) = 1. Defined for delta in [0,1/2] only; beyond
/// 1/2 the equation has no solution and callers must fold first.
inline BalanceResult f_of_delta(double delta) {
  if (!(delta >= 0.0 && delta <= 0.5))
    throw std::domain_error("f_of_delta: delta outside [0,1/2]");
  const auto b = detail::h2_inv_low_impl(1.0 - h2(delta));
  BalanceResult r;
  r.f_value = 0.5 - b.root;
  r.iterations = b.iterations;
  r.residual = h2(0.5 - r.f_value) + h2(delta) - 1.0;
  return r;
}

struct FBounds {
  double quadratic = 0.0;  // sqrt((ln2/2) h2(delta))
  double sqrt_form = 0.0;  // sqrt((delta/2) ln(e/delta))
};

/// Closed-form upper bounds dominating f(delta) on (0, 1/2]. The delta -> 0
/// limit of both is 0, returned directly at delta = 0.
inline FBounds f_upper_bounds(double delta) {
  if (!(delta >= 0.0 && delta <= 0.5))
    throw std::domain_error("f_upper_bounds: delta outside [0,1/2]");
  if (delta == 0.0) return {0.0, 0.0};
  return {std::sqrt(0.5 * std::numbers::ln2 * h2(delta)),
          std::sqrt(0.5 * delta * std::log(std::numbers::e / delta))};
}

/// Largest Delta with 2 f(Delta) <= 1/2. Every rate of the form
/// 1 - h2(d) - h2(d + 2 f(Delta)) is zero beyond it even at d = 0.
/// f(D) = 1/4 is equivalent to h2(D) = 1 - h2(1/4).
inline double balance_threshold() { return h2_inv_low(1.0 - h2(0.25)); }

}  // namespace gllp

#endif
