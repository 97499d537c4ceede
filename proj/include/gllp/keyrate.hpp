#ifndef GLLP_KEYRATE_HPP
#define GLLP_KEYRATE_HPP

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>

#include "gllp/entropy.hpp"
#include "gllp/prob.hpp"

namespace gllp {

// Device-flaw scenarios, one per achievable-rate result. `delta` is always
// the bit error rate found in the verification test; the second field is the
// flaw strength in whatever parametrization the scenario is stated in.
struct BasisIndependent {
  double delta = 0.0;
};
struct DeltaBalanced {
  double delta = 0.0;
  double Delta = 0.0;
};
struct SourceFlaw {
  double delta = 0.0;
  double eps_source = 0.0;  // fidelity defect: sqrt(F) > 1 - 2 eps_source
};
struct ObliviousIndividual {
  double delta = 0.0;
  double eps = 0.0;  // (1/4)||U0 - U1||_sup^2 per signal
};
struct Misalignment {
  double delta = 0.0;
  double theta = 0.0;  // radians, in [0, pi/4]
};
struct GenericIndividual {
  double delta = 0.0;
  double eps = 0.0;  // common source/detector flaw strength
};
struct TaggingSimple {
  double delta = 0.0;
  double Delta = 0.0;  // tagged fraction
};
struct Tagging {
  double delta = 0.0;
  double Delta = 0.0;  // tagged fraction
};
struct CoherentTagging {
  double delta = 0.0;
  double Delta = 0.0;  // weight bound of the tagged superposition
};
struct TrojanPony {
  double delta = 0.0;
  double Delta = 0.0;     // adversarially suppressed fraction
  double f_random = 0.0;  // randomly lost fraction; affects efficiency only
};
struct DoubleClick {
  double delta = 0.0;
  double Delta = 0.0;  // double-click fraction, key bit assigned at random
};
enum class RefinedMode { biased_efficiency, pure_refined };
struct RefinedBias {
  double delta_x = 0.0;
  double delta_z = 0.0;
  double p_x = 0.5;  // fraction of sifted key generated in the X basis
  RefinedMode mode = RefinedMode::biased_efficiency;
};

using FlawModel =
    std::variant<BasisIndependent, DeltaBalanced, SourceFlaw,
                 ObliviousIndividual, Misalignment, GenericIndividual,
                 TaggingSimple, Tagging, CoherentTagging, TrojanPony,
                 DoubleClick, RefinedBias>;

/// Result of a rate formula. `raw` is the formula value; `clamped` is
/// max(raw, 0) and is forced to 0 whenever the theorem's side condition
/// fails (then feasible = false). `effective_delta` is the balance/tag
/// fraction actually used and `effective_phase_rate` the phase error rate
/// fed to privacy amplification, both clamped into [0,1] for reporting.
struct KeyRate {
  double raw = 0.0;
  double clamped = 0.0;
  bool feasible = false;
  Probability effective_delta;
  Probability effective_phase_rate;
};

namespace detail {

inline void check01(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw std::domain_error(std::string(name) + " outside [0,1]");
}

inline KeyRate make_rate(double raw, bool feasible, double delta_eff,
                         double phase) {
  KeyRate r;
  r.raw = raw;
  r.feasible = feasible;
  r.clamped = feasible ? std::max(raw, 0.0) : 0.0;
  r.effective_delta = Probability(std::clamp(delta_eff, 0.0, 1.0));
  r.effective_phase_rate = Probability(std::clamp(phase, 0.0, 1.0));
  return r;
}

}  // namespace detail

/// R = 1 - 2 h2(delta), the rate against basis-independent attacks.
inline KeyRate rate_basis_independent(double delta) {
  detail::check01(delta, "delta");
  return detail::make_rate(1.0 - 2.0 * h2(delta), delta < 0.5, 0.0, delta);
}

/// R = 1 - h2(delta) - h2(delta + 2 f(Delta)) for a Delta-balanced attack.
/// Feasible iff the phase rate delta + 2 f(Delta) stays below 1/2; past 1
/// the entropy argument is folded to 1 (the value is already infeasible
/// there, only `raw` reporting is affected).
inline KeyRate rate_delta_balanced(double delta, double Delta) {
  detail::check01(delta, "delta");
  const double phase = delta + 2.0 * f_of_delta(Delta).f_value;
  const double raw = 1.0 - h2(delta) - h2(std::min(phase, 1.0));
  return detail::make_rate(raw, phase < 0.5, Delta, std::min(phase, 1.0));
}

/// R = 1 - h2(delta) - h2(delta + Delta): tagging, single privacy-
/// amplification pass over all sifted bits.
inline KeyRate rate_tagging_simple(double delta, double Delta) {
  detail::check01(delta, "delta");
  detail::check01(Delta, "Delta");
  const double phase = delta + Delta;
  const double raw = 1.0 - h2(delta) - h2(std::min(phase, 1.0));
  return detail::make_rate(raw, phase <= 0.5, Delta, std::min(phase, 1.0));
}

/// R = (1-Delta) - h2(delta) - (1-Delta) h2(delta/(1-Delta)): tagging with
/// privacy amplification charged to the untagged bits only. Dominates
/// rate_tagging_simple wherever both are feasible.
inline KeyRate rate_tagging(double delta, double Delta) {
  detail::check01(delta, "delta");
  detail::check01(Delta, "Delta");
  if (Delta == 1.0)
    return detail::make_rate(-h2(delta), false, Delta, 1.0);
  const double ratio = delta / (1.0 - Delta);
  const double folded = std::min(ratio, 1.0);
  const double raw = (1.0 - Delta) - h2(delta) - (1.0 - Delta) * h2(folded);
  return detail::make_rate(raw, ratio < 0.5, Delta, folded);
}

/// R = 1 - h2(delta) - h2(delta + Delta/(1-Delta)): detector suppression of
/// up to a fraction Delta of the detection events.
inline KeyRate rate_trojan_pony(double delta, double Delta) {
  detail::check01(delta, "delta");
  detail::check01(Delta, "Delta");
  if (Delta == 1.0)
    return detail::make_rate(-h2(delta), false, Delta, 1.0);
  const double phase = delta + Delta / (1.0 - Delta);
  const double folded = std::min(phase, 1.0);
  const double raw = 1.0 - h2(delta) - h2(folded);
  return detail::make_rate(raw, phase < 0.5, Delta, folded);
}

/// Overall detector efficiency for the suppression model: a fraction
/// f_random lost at random, a fraction Delta of the rest adversarially.
inline double overall_efficiency(const TrojanPony& m) {
  return (1.0 - m.f_random) * (1.0 - m.Delta);
}

/// R = 1 - 2 h2((1-Delta) delta + Delta/2): double clicks kept in the sifted
/// key with a random key bit. Throughput comparisons against the suppression
/// model multiply by 1/(1-Delta), since here nothing is discarded.
inline KeyRate rate_double_click(double delta, double Delta) {
  detail::check01(delta, "delta");
  detail::check01(Delta, "Delta");
  const double m = (1.0 - Delta) * delta + 0.5 * Delta;
  const double folded = std::min(m, 1.0);
  return detail::make_rate(1.0 - 2.0 * h2(folded), m <= 0.5, Delta, folded);
}

/// Refined (per-basis) error analysis. biased_efficiency combines the two
/// observed rates into delta = pX dX + pZ dZ and the crossed phase estimate
/// delta_p = pX dZ + pZ dX; pure_refined is R = 1 - h2(dZ) - h2(dX).
inline KeyRate rate_refined(double delta_x, double delta_z, double p_x,
                            RefinedMode mode) {
  detail::check01(delta_x, "delta_x");
  detail::check01(delta_z, "delta_z");
  detail::check01(p_x, "p_x");
  const double p_z = 1.0 - p_x;
  if (mode == RefinedMode::biased_efficiency) {
    const double d = p_x * delta_x + p_z * delta_z;
    const double dp = p_x * delta_z + p_z * delta_x;
    const double raw = 1.0 - h2(d) - h2(dp);
    return detail::make_rate(raw, d < 0.5 && dp < 0.5, 0.0, dp);
  }
  const double raw = 1.0 - h2(delta_z) - h2(delta_x);
  return detail::make_rate(raw, delta_z < 0.5 && delta_x < 0.5, 0.0, delta_x);
}

/// Worst-case post-selection amplification Delta -> Delta/(1-f_loss) when a
/// fraction f_loss of the signals is lost. Clamped to 1/2 (and flagged
/// infeasible) beyond, where no balanced-rate formula applies.
struct AmplifiedDelta {
  Probability value;
  bool feasible = false;
};

inline AmplifiedDelta loss_amplified_delta(double Delta, double f_loss) {
  detail::check01(Delta, "Delta");
  detail::check01(f_loss, "f_loss");
  if (f_loss == 1.0) return {Probability(0.5), false};
  const double v = Delta / (1.0 - f_loss);
  if (v > 0.5) return {Probability(0.5), false};
  return {Probability(v), true};
}

/// Effective balance parameter of the scenarios that reduce to a
/// Delta-balanced attack. Scenarios carrying a dedicated rate formula
/// (Tagging, TrojanPony, DoubleClick, RefinedBias) do not reduce and are
/// rejected.
inline double effective_delta(const FlawModel& model) {
  return std::visit(
      [](const auto& m) -> double {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, BasisIndependent>) {
          return 0.0;
        } else if constexpr (std::is_same_v<T, DeltaBalanced>) {
          detail::check01(m.Delta, "Delta");
          return m.Delta;
        } else if constexpr (std::is_same_v<T, SourceFlaw>) {
          detail::check01(m.eps_source, "eps_source");
          return m.eps_source;
        } else if constexpr (std::is_same_v<T, ObliviousIndividual>) {
          detail::check01(m.eps, "eps");
          return std::numbers::e * m.eps;
        } else if constexpr (std::is_same_v<T, Misalignment>) {
          if (!(m.theta >= 0.0 && m.theta <= std::numbers::pi / 4.0))
            throw std::domain_error("theta outside [0, pi/4]");
          const double s = std::sin(m.theta);
          return std::numbers::e * s * s;
        } else if constexpr (std::is_same_v<T, GenericIndividual>) {
          detail::check01(m.eps, "eps");
          return 8.0 * std::sqrt(m.eps) + 4.0 * m.eps;
        } else if constexpr (std::is_same_v<T, TaggingSimple> ||
                             std::is_same_v<T, CoherentTagging>) {
          detail::check01(m.Delta, "Delta");
          return 0.5 * m.Delta;
        } else {
          throw std::invalid_argument(
              "effective_delta: model has a dedicated rate formula");
        }
      },
      model);
}

/// effective_delta with channel loss applied afterwards. Composing the loss
/// amplification last is the conservative order.
inline AmplifiedDelta effective_delta_after_loss(const FlawModel& model,
                                                 double f_loss) {
  const double d = effective_delta(model);
  return loss_amplified_delta(std::min(d, 1.0), f_loss);
}

namespace detail {

// Balanced rate with the caller-side fold of Delta into [0,1/2]. Beyond the
// fold f(1/2) = 1/2 already drives the phase rate past 1/2, so feasibility
// comes out false without a separate flag.
inline KeyRate rate_delta_balanced_folded(double delta, double Delta_raw) {
  KeyRate r = rate_delta_balanced(delta, std::min(Delta_raw, 0.5));
  r.effective_delta = Probability(std::clamp(Delta_raw, 0.0, 1.0));
  return r;
}

}  // namespace detail

/// Rate of the given flaw scenario. `slack` is an optional additive margin
/// applied to the bit error rate and the flaw parameter before evaluation
/// (the asymptotic formulas themselves carry no slack).
inline KeyRate rate(const FlawModel& model, double slack = 0.0) {
  if (!(slack >= 0.0 && slack <= 1.0))
    throw std::domain_error("slack outside [0,1]");
  const auto pad = [slack](double p) { return std::min(p + slack, 1.0); };
  return std::visit(
      [&](const auto& m) -> KeyRate {
        using T = std::decay_t<decltype(m)>;
        if constexpr (std::is_same_v<T, BasisIndependent>) {
          return rate_basis_independent(pad(m.delta));
        } else if constexpr (std::is_same_v<T, Tagging>) {
          return rate_tagging(pad(m.delta), pad(m.Delta));
        } else if constexpr (std::is_same_v<T, TaggingSimple>) {
          return rate_tagging_simple(pad(m.delta), pad(m.Delta));
        } else if constexpr (std::is_same_v<T, TrojanPony>) {
          return rate_trojan_pony(pad(m.delta), pad(m.Delta));
        } else if constexpr (std::is_same_v<T, DoubleClick>) {
          return rate_double_click(pad(m.delta), pad(m.Delta));
        } else if constexpr (std::is_same_v<T, RefinedBias>) {
          return rate_refined(pad(m.delta_x), pad(m.delta_z), m.p_x, m.mode);
        } else {
          detail::check01(m.delta, "delta");
          const double d_eff = effective_delta(model) + slack;
          return detail::rate_delta_balanced_folded(pad(m.delta), d_eff);
        }
      },
      model);
}

}  // namespace gllp

#endif
