#ifndef GLLP_WCP_HPP
#define GLLP_WCP_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "gllp/keyrate.hpp"

namespace gllp::wcp {

/// Phase-randomized weak-coherent-pulse source. Phase-coherent (nonrandom
/// phase) sources are outside the model and have no representation here.
struct WcpSource {
  double mu = 0.1;   // mean photon number per pulse
  double nu = 1e6;   // repetition frequency, Hz
};

struct Link {
  double eta_det = 1.0;          // detector efficiency, [0,1]
  double alpha_db_per_km = 0.0;  // fiber attenuation
  double length_km = 0.0;
  double dark_prob = 0.0;        // per-gate dark-count probability, [0,1)
  double delta_intrinsic = 0.0;  // baseline bit error rate, [0,1/2]
  // When set, replaces the modeled detection probability everywhere it is
  // used (the tag fraction divides by the measured quantity in practice).
  std::optional<double> measured_pd;

  double eta() const {
    return eta_det * std::pow(10.0, -alpha_db_per_km * length_km / 10.0);
  }
};

inline void validate(const WcpSource& s) {
  if (!(s.mu > 0.0)) throw std::domain_error("wcp: mu must be > 0");
  if (!(s.nu > 0.0)) throw std::domain_error("wcp: nu must be > 0");
}

inline void validate(const Link& l) {
  if (!(l.eta_det >= 0.0 && l.eta_det <= 1.0))
    throw std::domain_error("wcp: eta_det outside [0,1]");
  if (!(l.alpha_db_per_km >= 0.0))
    throw std::domain_error("wcp: alpha_db_per_km must be >= 0");
  if (!(l.length_km >= 0.0))
    throw std::domain_error("wcp: length_km must be >= 0");
  if (!(l.dark_prob >= 0.0 && l.dark_prob < 1.0))
    throw std::domain_error("wcp: dark_prob outside [0,1)");
  if (!(l.delta_intrinsic >= 0.0 && l.delta_intrinsic <= 0.5))
    throw std::domain_error("wcp: delta_intrinsic outside [0,1/2]");
  if (l.measured_pd && !(*l.measured_pd >= 0.0 && *l.measured_pd <= 1.0))
    throw std::domain_error("wcp: measured_pd outside [0,1]");
}

struct PhotonStats {
  double p0 = 0.0;  // vacuum
  double p1 = 0.0;  // single photon
  double pM = 0.0;  // multiphoton
};

/// Exact Poisson photon-number split. p0 + p1 + pM = 1 to rounding.
inline PhotonStats photon_stats(double mu) {
  if (!(mu > 0.0)) throw std::domain_error("photon_stats: mu must be > 0");
  const double e = std::exp(-mu);
  return {e, mu * e, 1.0 - e * (1.0 + mu)};
}

/// Modeled detection probability: nonvacuum signals fire with probability
/// eta, dark counts fire on vacuum gates.
inline double detection_prob(double mu, const Link& link) {
  if (!(mu > 0.0)) throw std::domain_error("detection_prob: mu must be > 0");
  const double e = std::exp(-mu);
  return link.eta() * (1.0 - e) + link.dark_prob * e;
}

namespace detail {
inline double effective_pd(double mu, const Link& link) {
  return link.measured_pd ? *link.measured_pd : detection_prob(mu, link);
}
}  // namespace detail

struct TagFraction {
  double Delta = 0.0;
  bool feasible = false;  // false when pM/pD exceeds 1 (clamped)
};

/// Tag fraction Delta = pM / pD: every multiphoton among the detected
/// signals is pessimistically counted as tagged.
inline TagFraction tag_fraction(double mu, const Link& link) {
  const double pd = detail::effective_pd(mu, link);
  if (!(pd > 0.0))
    throw std::runtime_error("tag_fraction: detection probability is zero");
  const double d = photon_stats(mu).pM / pd;
  if (d > 1.0) return {1.0, false};
  return {d, true};
}

struct WcpBudget {
  double p0 = 0.0, p1 = 0.0, pM = 0.0;
  double pD = 0.0;
  double delta_tag = 0.0;  // pM/pD, clamped to 1
  bool tag_feasible = false;
  double delta_bits = 0.0;  // intrinsic + dark-count error floor
  double sifted_rate_hz = 0.0;
  KeyRate final_rate;
  double throughput_hz = 0.0;
};

/// Full link budget: photon statistics, detection, tag fraction, sifted
/// rate nu pD / 2, tagging rate on the error rate with the dark-count floor
/// (a dark count yields a random bit, hence the factor 1/2).
inline WcpBudget budget(const WcpSource& src, const Link& link) {
  validate(src);
  validate(link);
  WcpBudget b;
  const PhotonStats ps = photon_stats(src.mu);
  b.p0 = ps.p0;
  b.p1 = ps.p1;
  b.pM = ps.pM;
  b.pD = detail::effective_pd(src.mu, link);
  if (!(b.pD > 0.0)) {
    // No detections at all: nothing to tag, nothing to key.
    b.delta_tag = 1.0;
    b.tag_feasible = false;
    b.delta_bits = link.delta_intrinsic;
    b.final_rate = gllp::detail::make_rate(0.0, false, 1.0, 1.0);
    return b;
  }
  const TagFraction tf = tag_fraction(src.mu, link);
  b.delta_tag = tf.Delta;
  b.tag_feasible = tf.feasible;
  const double dark_floor =
      0.5 * link.dark_prob * std::exp(-src.mu) / b.pD;
  b.delta_bits = std::min(link.delta_intrinsic + dark_floor, 1.0);
  b.sifted_rate_hz = 0.5 * src.nu * b.pD;
  b.final_rate = rate_tagging(b.delta_bits, b.delta_tag);
  if (!tf.feasible) {
    b.final_rate.feasible = false;
    b.final_rate.clamped = 0.0;
  }
  b.throughput_hz = b.sifted_rate_hz * b.final_rate.clamped;
  return b;
}

struct MuOptimum {
  double mu_star = 0.0;
  WcpBudget at_star;
  bool feasible = false;   // false when throughput vanishes on the bracket
  bool unimodal = true;    // coarse scan saw a single local maximum
};

/// Intensity choice maximizing throughput on [mu_lo, mu_hi]: coarse
/// log-spaced scan for the global maximum (and a unimodality check), then
/// golden-section refinement to relative tolerance 1e-6 on mu.
inline MuOptimum optimize_mu(double nu, const Link& link, double mu_lo = 1e-4,
                             double mu_hi = 1.0) {
  if (!(mu_lo > 0.0 && mu_hi > mu_lo))
    throw std::domain_error("optimize_mu: need 0 < mu_lo < mu_hi");
  validate(link);
  const auto throughput = [&](double mu) {
    return budget(WcpSource{mu, nu}, link).throughput_hz;
  };

  constexpr int kScan = 128;
  std::vector<double> mus(kScan), t(kScan);
  const double lr = std::log(mu_hi / mu_lo);
  for (int i = 0; i < kScan; ++i) {
    mus[i] = mu_lo * std::exp(lr * i / (kScan - 1));
    t[i] = throughput(mus[i]);
  }
  int best = 0;
  int maxima = 0;
  for (int i = 0; i < kScan; ++i) {
    if (t[i] > t[best]) best = i;
    if (i > 0 && i + 1 < kScan && t[i] > t[i - 1] && t[i] > t[i + 1])
      ++maxima;
  }

  MuOptimum out;
  out.unimodal = maxima <= 1;
  if (!(t[best] > 0.0)) {
    out.mu_star = mus[best];
    out.at_star = budget(WcpSource{mus[best], nu}, link);
    out.feasible = false;
    return out;
  }

  double a = mus[std::max(best - 1, 0)];
  double b = mus[std::min(best + 1, kScan - 1)];
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = throughput(x1), f2 = throughput(x2);
  while (b - a > 1e-6 * b) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = throughput(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = throughput(x1);
    }
  }
  out.mu_star = 0.5 * (a + b);
  out.at_star = budget(WcpSource{out.mu_star, nu}, link);
  out.feasible = out.at_star.throughput_hz > 0.0;
  return out;
}

struct DistanceRow {
  double length_km = 0.0;
  double eta = 0.0;
  double mu = 0.0;
  WcpBudget b;
};

/// One budget per link length, optionally re-optimizing mu at each length.
inline std::vector<DistanceRow> rate_vs_distance(
    const WcpSource& src, const Link& link_template,
    const std::vector<double>& lengths_km, bool optimize_intensity = false) {
  validate(src);
  for (std::size_t i = 0; i < lengths_km.size(); ++i) {
    if (!(lengths_km[i] >= 0.0))
      throw std::domain_error("rate_vs_distance: negative length");
    if (i > 0 && lengths_km[i] < lengths_km[i - 1])
      throw std::domain_error("rate_vs_distance: lengths must be sorted");
  }
  std::vector<DistanceRow> rows;
  rows.reserve(lengths_km.size());
  for (double L : lengths_km) {
    Link link = link_template;
    link.length_km = L;
    DistanceRow row;
    row.length_km = L;
    row.eta = link.eta();
    if (optimize_intensity) {
      const MuOptimum opt = optimize_mu(src.nu, link);
      row.mu = opt.mu_star;
      row.b = opt.at_star;
    } else {
      row.mu = src.mu;
      row.b = budget(src, link);
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace gllp::wcp

#endif
