#ifndef GLLP_EDP_MC_HPP
#define GLLP_EDP_MC_HPP

#include <array>
#include <cstdint>
#include <numbers>
#include <sstream>
#include <variant>
#include <vector>

#include "gllp/entropy.hpp"
#include "gllp/parallel.hpp"
#include "gllp/quantum.hpp"
#include "gllp/rng.hpp"
#include "gllp/verify_report.hpp"

namespace gllp::mc {

using qm::cplx;
using qm::Ket;
using qm::Mat;

// Attack scenarios act pair by pair. Correlated strategies that gamble on
// revealing every basis at once have no representation here; their failure
// probability does not concentrate, so no per-pair tally would bound them.
struct NullAttack {
  double q = 0.0;  // symmetric per-pair error probability
};
struct TaggingAttack {
  double Delta = 0.0;       // tagged fraction
  double q_untagged = 0.0;  // symmetric error probability off the tags
};
struct PonyAttack {
  double p = 0.0;      // pre-removal symmetric error probability
  double Delta = 0.0;  // removable fraction; needs Delta <= p <= 1 - Delta
};
struct MisalignAttack {
  double theta = 0.0;      // radians, [0, pi/4]
  double q_channel = 0.0;  // symmetric channel noise
};

using AttackScenario =
    std::variant<NullAttack, TaggingAttack, PonyAttack, MisalignAttack>;

inline void validate(const AttackScenario& sc) {
  const auto in01 = [](double v, const char* what) {
    if (!(v >= 0.0 && v <= 1.0))
      throw std::domain_error(std::string(what) + " outside [0,1]");
  };
  std::visit(
      [&](const auto& s) {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, NullAttack>) {
          in01(s.q, "q");
        } else if constexpr (std::is_same_v<T, TaggingAttack>) {
          in01(s.Delta, "Delta");
          in01(s.q_untagged, "q_untagged");
        } else if constexpr (std::is_same_v<T, PonyAttack>) {
          in01(s.p, "p");
          in01(s.Delta, "Delta");
          if (!(s.Delta <= s.p && s.p <= 1.0 - s.Delta))
            throw std::domain_error("pony: need Delta <= p <= 1 - Delta");
        } else {
          in01(s.q_channel, "q_channel");
          if (!(s.theta >= 0.0 && s.theta <= std::numbers::pi / 4.0))
            throw std::domain_error("misalign: theta outside [0, pi/4]");
        }
      },
      sc);
}

struct Tally {
  std::uint64_t n_pairs = 0;
  std::uint64_t n_sifted = 0;
  std::uint64_t n_bit_err = 0;
  std::uint64_t n_phase_err = 0;
  std::uint64_t n_bit_only = 0;  // bit error and no phase error
  std::uint64_t n_tagged = 0;
  std::uint64_t n_untagged = 0;
  std::uint64_t n_untagged_bit_err = 0;
  double delta_hat = 0.0;
  double delta_p_hat = 0.0;
  double gap_hat = 0.0;
  double ci_half_width = 0.0;  // two-sided 99% Hoeffding
};

/// Two-sided Hoeffding half width sqrt(ln(2/alpha) / 2n) at the given
/// confidence level (alpha = 1 - confidence). Zero confidence needs no
/// interval at all.
inline double mc_confidence(std::uint64_t n, double confidence) {
  if (n < 1) throw std::domain_error("mc_confidence: n must be >= 1");
  if (!(confidence >= 0.0 && confidence < 1.0))
    throw std::domain_error("mc_confidence: confidence outside [0,1)");
  const double alpha = 1.0 - confidence;
  if (alpha >= 1.0) return 0.0;
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

namespace detail {

// Bell-outcome index order: phi+ (no flip), psi+ (bit flip), phi- (phase
// flip), psi- (both). ZZ = -1 on the psi states, XX = -1 on the minus states.
constexpr int kPhiPlus = 0, kPsiPlus = 1, kPhiMinus = 2, kPsiMinus = 3;

inline std::array<Ket, 4> bell_basis() {
  const double r = 1.0 / std::sqrt(2.0);
  return {Ket{r, 0, 0, r},    // phi+
          Ket{0, r, r, 0},    // psi+
          Ket{r, 0, 0, -r},   // phi-
          Ket{0, r, -r, 0}};  // psi-
}

inline Mat apply_kraus(const Mat& rho, const std::vector<Mat>& ks) {
  Mat out(rho.rows(), rho.cols());
  for (const Mat& k : ks) out = out + k * rho * k.dagger();
  return out;
}

// Independent bit and phase flips at rate q on Bob's qubit.
inline std::vector<Mat> symmetric_noise_on_bob(double q) {
  const Mat i2 = Mat::identity(2);
  Mat x(2, 2), z(2, 2);
  x(0, 1) = 1.0;
  x(1, 0) = 1.0;
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  std::vector<Mat> ks;
  ks.push_back(std::sqrt((1 - q) * (1 - q)) * qm::kron(i2, i2));
  ks.push_back(std::sqrt(q * (1 - q)) * qm::kron(i2, x));
  ks.push_back(std::sqrt((1 - q) * q) * qm::kron(i2, z));
  ks.push_back(std::sqrt(q * q) * qm::kron(i2, x * z));
  return ks;
}

inline std::array<double, 4> bell_probs(const Mat& rho) {
  const auto basis = bell_basis();
  std::array<double, 4> p{};
  for (int k = 0; k < 4; ++k)
    p[k] = std::real(qm::vdot(basis[k], qm::act(rho, basis[k])));
  return p;
}

// Cumulative distribution for O(1) sampling; last entry forced to 1.
struct OutcomeCdf {
  std::array<double, 4> cum{};
  explicit OutcomeCdf(const std::array<double, 4>& p) {
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
      acc += std::max(p[i], 0.0);
      cum[i] = acc;
    }
    cum[3] = 1.0;
  }
  int sample(double u) const {
    for (int i = 0; i < 3; ++i)
      if (u < cum[i]) return i;
    return 3;
  }
};

inline Mat phi_plus_state() {
  const auto b = bell_basis();
  return qm::outer(b[kPhiPlus], b[kPhiPlus]);
}

// One class of pairs: its Bell distribution conditioned on the basis.
struct PairClass {
  OutcomeCdf by_basis[2];
};

// Per-scenario sampler: selection between classes plus the class tables.
struct Sampler {
  double tag_prob = 0.0;  // probability of the second class (tagging only)
  std::vector<PairClass> classes;
  bool is_pony = false;
  bool is_tagging = false;
  double pony_Delta = 0.0;
};

inline PairClass class_from_rho(const Mat& rho_z, const Mat& rho_x) {
  return PairClass{
      {OutcomeCdf(bell_probs(rho_z)), OutcomeCdf(bell_probs(rho_x))}};
}

// Measurement by Eve in the declared basis: the pair decoheres to a
// classical correlation in that basis, which kills bit errors there and
// randomizes the conjugate observable.
inline Mat tagged_state(int basis) {
  const Mat i2 = Mat::identity(2);
  std::vector<Mat> proj;
  if (basis == 0) {
    for (int b = 0; b < 2; ++b) {
      Mat p(2, 2);
      p(b, b) = 1.0;
      proj.push_back(qm::kron(i2, p));
    }
  } else {
    for (int sgn : {+1, -1}) {
      Mat p(2, 2);
      p(0, 0) = 0.5;
      p(1, 1) = 0.5;
      p(0, 1) = 0.5 * sgn;
      p(1, 0) = 0.5 * sgn;
      proj.push_back(qm::kron(i2, p));
    }
  }
  return apply_kraus(phi_plus_state(), proj);
}

inline Sampler build_sampler(const AttackScenario& sc) {
  Sampler s;
  const Mat phi = phi_plus_state();
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, NullAttack>) {
          const Mat rho = apply_kraus(phi, symmetric_noise_on_bob(a.q));
          s.classes.push_back(class_from_rho(rho, rho));
        } else if constexpr (std::is_same_v<T, TaggingAttack>) {
          const Mat rho = apply_kraus(phi, symmetric_noise_on_bob(a.q_untagged));
          s.classes.push_back(class_from_rho(rho, rho));
          s.classes.push_back(class_from_rho(tagged_state(0), tagged_state(1)));
          s.tag_prob = a.Delta;
          s.is_tagging = true;
        } else if constexpr (std::is_same_v<T, PonyAttack>) {
          const Mat rho = apply_kraus(phi, symmetric_noise_on_bob(a.p));
          s.classes.push_back(class_from_rho(rho, rho));
          s.is_pony = true;
          s.pony_Delta = a.Delta;
        } else {
          const Mat noisy = apply_kraus(phi, symmetric_noise_on_bob(a.q_channel));
          const cplx ei(std::cos(a.theta), std::sin(a.theta));
          Mat u0(2, 2), u1(2, 2);
          u0(0, 0) = ei;
          u0(1, 1) = std::conj(ei);
          u1(0, 0) = std::conj(ei);
          u1(1, 1) = ei;
          const Mat i2 = Mat::identity(2);
          const Mat w0 = qm::kron(i2, u0), w1 = qm::kron(i2, u1);
          s.classes.push_back(class_from_rho(w0 * noisy * w0.dagger(),
                                             w1 * noisy * w1.dagger()));
        }
      },
      sc);
  return s;
}

// Extremal rotation pair supplied by the caller: the strategy hook for
// misalignment studies beyond the diagonal form.
inline Sampler build_sampler_with_unitaries(const Mat& u0, const Mat& u1,
                                            double q_channel) {
  Sampler s;
  const Mat noisy =
      apply_kraus(phi_plus_state(), symmetric_noise_on_bob(q_channel));
  const Mat i2 = Mat::identity(2);
  const Mat w0 = qm::kron(i2, u0), w1 = qm::kron(i2, u1);
  s.classes.push_back(
      class_from_rho(w0 * noisy * w0.dagger(), w1 * noisy * w1.dagger()));
  return s;
}

constexpr std::uint64_t kChunk = 1u << 16;

inline Tally run_chunks(const Sampler& s, std::uint64_t n_pairs,
                        std::uint64_t seed) {
  const std::uint64_t nchunks = (n_pairs + kChunk - 1) / kChunk;
  std::vector<Tally> parts(nchunks);
  parallel_for(nchunks, [&](std::size_t c) {
    SplitMix64 rng(derive_seed(seed, c));
    const std::uint64_t lo = c * kChunk;
    const std::uint64_t hi = std::min(n_pairs, lo + kChunk);
    Tally t;
    for (std::uint64_t i = lo; i < hi; ++i) {
      const int basis = rng.uniform01() < 0.5 ? 0 : 1;
      std::size_t cls = 0;
      if (s.is_tagging) cls = rng.uniform01() < s.tag_prob ? 1 : 0;
      const int outcome = s.classes[cls].by_basis[basis].sample(rng.uniform01());
      const bool zz_minus = outcome == kPsiPlus || outcome == kPsiMinus;
      const bool xx_minus = outcome == kPhiMinus || outcome == kPsiMinus;
      const bool bit_err = basis == 0 ? zz_minus : xx_minus;
      const bool phase_err = basis == 0 ? xx_minus : zz_minus;
      ++t.n_pairs;
      t.n_bit_err += bit_err;
      t.n_phase_err += phase_err;
      t.n_bit_only += bit_err && !phase_err;
      if (s.is_tagging) {
        t.n_tagged += cls == 1;
        t.n_untagged += cls == 0;
        t.n_untagged_bit_err += cls == 0 && bit_err;
      }
    }
    parts[c] = t;
  });

  Tally total;
  for (const Tally& t : parts) {
    total.n_pairs += t.n_pairs;
    total.n_bit_err += t.n_bit_err;
    total.n_phase_err += t.n_phase_err;
    total.n_bit_only += t.n_bit_only;
    total.n_tagged += t.n_tagged;
    total.n_untagged += t.n_untagged;
    total.n_untagged_bit_err += t.n_untagged_bit_err;
  }
  total.n_sifted = total.n_pairs;

  if (s.is_pony) {
    // Fred spends his removal budget on bit-error-only pairs; counts are
    // adjusted after the merge so the result is chunking-independent.
    const auto budget =
        static_cast<std::uint64_t>(s.pony_Delta * static_cast<double>(n_pairs));
    const std::uint64_t removed = std::min(budget, total.n_bit_only);
    total.n_sifted -= removed;
    total.n_bit_err -= removed;
    total.n_bit_only -= removed;
  }

  if (total.n_sifted > 0) {
    const double ns = static_cast<double>(total.n_sifted);
    total.delta_hat = static_cast<double>(total.n_bit_err) / ns;
    total.delta_p_hat = static_cast<double>(total.n_phase_err) / ns;
    total.gap_hat = total.delta_p_hat - total.delta_hat;
    total.ci_half_width = mc_confidence(total.n_sifted, 0.99);
  }
  return total;
}

}  // namespace detail

/// Simulate n_pairs of the entanglement-based protocol under the given
/// attack. Deterministic in (scenario, n_pairs, seed): trials are split in
/// fixed-size chunks with counter-derived streams, so the thread count
/// never changes the outcome.
inline Tally simulate(const AttackScenario& scenario, std::uint64_t n_pairs,
                      std::uint64_t seed) {
  if (n_pairs < 1) throw std::domain_error("simulate: n_pairs must be >= 1");
  validate(scenario);
  return detail::run_chunks(detail::build_sampler(scenario), n_pairs, seed);
}

/// Strategy hook: like simulate(MisalignAttack...) but with caller-chosen
/// per-basis unitaries on Bob's qubit.
inline Tally simulate_with_unitaries(const Mat& u0, const Mat& u1,
                                     double q_channel, std::uint64_t n_pairs,
                                     std::uint64_t seed) {
  if (n_pairs < 1) throw std::domain_error("simulate: n_pairs must be >= 1");
  return detail::run_chunks(
      detail::build_sampler_with_unitaries(u0, u1, q_channel), n_pairs, seed);
}

/// Check the balanced-attack gap bound |delta_p - delta| < 2 f(Delta)
/// against an empirical tally, with 4 Hoeffding half-widths of statistical
/// slack (a failing run at that slack is a < 1e-4 probability event).
inline VerifyReport check_gap_bound(const Tally& tally, double Delta) {
  if (!(Delta >= 0.0 && Delta <= 1.0))
    throw std::domain_error("check_gap_bound: Delta outside [0,1]");
  const double f = f_of_delta(std::min(Delta, 0.5)).f_value;
  const double bound = 2.0 * f + 4.0 * tally.ci_half_width;
  std::ostringstream os;
  os << "n=" << tally.n_pairs << ";Delta=" << Delta;
  return make_report_le("gap_bound", os.str(), std::abs(tally.gap_hat), bound,
                        0.0);
}

}  // namespace gllp::mc

#endif
