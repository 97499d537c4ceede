#ifndef GLLP_LEMMA_VERIFY_HPP
#define GLLP_LEMMA_VERIFY_HPP

#include <bit>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "gllp/entropy.hpp"
#include "gllp/quantum.hpp"
#include "gllp/verify_report.hpp"

namespace gllp::verify {

using qm::cplx;
using qm::DensityOp;
using qm::Isometry;
using qm::Ket;
using qm::Mat;

namespace detail {

inline std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

inline Mat pauli_x() {
  Mat m(2, 2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  return m;
}

inline Mat pauli_z() {
  Mat m(2, 2);
  m(0, 0) = 1.0;
  m(1, 1) = -1.0;
  return m;
}

// CNOT on `qubits` qubits, as a basis permutation. Qubit 0 owns the most
// significant bit of the index.
inline Mat cnot(int qubits, int control, int target) {
  const std::size_t dim = std::size_t{1} << qubits;
  Mat m(dim, dim);
  for (std::size_t in = 0; in < dim; ++in) {
    const std::size_t cbit = (in >> (qubits - 1 - control)) & 1u;
    std::size_t out = in;
    if (cbit) out ^= std::size_t{1} << (qubits - 1 - target);
    m(out, in) = 1.0;
  }
  return m;
}

// Residuals of the two conjugation identities behind the gap observable
// reduction, with the option of dropping Bob's controlled-NOT (the negative
// control: then Z x Z x Z maps to I x Z x Z instead of I x I x Z).
inline std::pair<double, double> gap_reduction_residuals(bool with_bob_cnot) {
  const Mat i2 = Mat::identity(2);
  const Mat x = pauli_x(), z = pauli_z();
  Mat v = cnot(3, 0, 2);  // Alice controls the coin
  if (with_bob_cnot) v = cnot(3, 1, 2) * v;
  const Mat vdag = v.dagger();

  const Mat zzz = qm::kron(qm::kron(z, z), z);
  const Mat iiz = qm::kron(qm::kron(i2, i2), z);
  const Mat iix = qm::kron(qm::kron(i2, i2), x);
  const double r1 = (v * zzz * vdag - iiz).max_abs();
  const double r2 = (v * iix * vdag - iix).max_abs();
  return {r1, r2};
}

}  // namespace detail

/// Conjugating by the two pair-to-coin controlled-NOTs turns the bit-error
/// gap observable into a coin-only observable and leaves the coin X count
/// alone. Both operator identities are checked exactly on the 8-dimensional
/// space.
inline VerifyReport verify_gap_reduction() {
  const auto [r1, r2] = detail::gap_reduction_residuals(true);
  return make_report_le("gap_reduction", "dim=8", std::max(r1, r2), 0.0,
                        1e-12);
}

/// Extremal-tail problem on n quantum coins: states confined to X-weight
/// <= k, probability that the Z-basis count deviates from n/2 by at least t.
struct CoinSubspaceSpec {
  int n = 1;  // coins, <= 24
  int k = 0;  // maximum X-weight
  int t = 0;  // deviation threshold (absolute count), 2t <= n
};

struct TailResult {
  double value = 0.0;
  int iterations = 0;
  bool converged = false;
  double last_delta = 0.0;  // final change of the eigenvalue estimate
};

namespace detail {

// In-place orthonormal fast Walsh-Hadamard transform.
inline void fwht(std::vector<double>& a) {
  const std::size_t n = a.size();
  for (std::size_t h = 1; h < n; h <<= 1)
    for (std::size_t i = 0; i < n; i += h << 1)
      for (std::size_t j = i; j < i + h; ++j) {
        const double u = a[j], v = a[j + h];
        a[j] = u + v;
        a[j + h] = u - v;
      }
  double scale = 1.0;
  for (std::size_t h = 1; h < n; h <<= 1) scale *= 0.5;
  scale = std::sqrt(scale);
  for (auto& x : a) x *= scale;
}

}  // namespace detail

/// Largest eigenvalue of P_x P_dev P_x by power iteration, where P_x keeps
/// X-weight <= k (applied through the Walsh-Hadamard transform) and P_dev
/// keeps Z strings with |n/2 - weight| >= t. This is the worst-case
/// deviation probability over admissible coin states.
inline TailResult coin_extremal_tail(const CoinSubspaceSpec& spec,
                                     int max_iterations = 100000) {
  if (spec.n < 1 || spec.n > 24)
    throw std::domain_error("coin_extremal_tail: n outside [1,24]");
  if (spec.k < 0 || spec.k > spec.n)
    throw std::domain_error("coin_extremal_tail: k outside [0,n]");
  if (spec.t < 0 || 2 * spec.t > spec.n)
    throw std::domain_error("coin_extremal_tail: need 0 <= 2t <= n");
  const std::size_t dim = std::size_t{1} << spec.n;

  std::vector<std::uint8_t> dev(dim), low_weight(dim);
  bool dev_nonempty = false;
  for (std::size_t z = 0; z < dim; ++z) {
    const int w = std::popcount(z);
    dev[z] = std::abs(spec.n - 2 * w) >= 2 * spec.t;
    low_weight[z] = std::popcount(z) <= spec.k;
    dev_nonempty = dev_nonempty || dev[z];
  }
  if (!dev_nonempty) return {0.0, 0, true, 0.0};

  const auto project_x = [&](std::vector<double>& v) {
    detail::fwht(v);
    for (std::size_t i = 0; i < dim; ++i)
      if (!low_weight[i]) v[i] = 0.0;
    detail::fwht(v);
  };

  std::vector<double> v(dim);
  SplitMix64 rng(derive_seed(0x7A11C0DEull, (std::uint64_t(spec.n) << 10) ^
                                                (std::uint64_t(spec.k) << 5) ^
                                                std::uint64_t(spec.t)));
  for (auto& x : v) x = rng.uniform01() - 0.5;
  project_x(v);
  double nv = 0.0;
  for (double x : v) nv += x * x;
  if (nv == 0.0) {
    // Random start annihilated; the uniform vector always lies in range.
    const double c = 1.0 / std::sqrt(double(dim));
    for (auto& x : v) x = c;
  } else {
    nv = std::sqrt(nv);
    for (auto& x : v) x /= nv;
  }

  TailResult out;
  double prev = -1.0;
  for (int it = 1; it <= max_iterations; ++it) {
    // v is normalized and in the X-weight subspace, so the Rayleigh
    // quotient is just the deviation mass of v.
    double lambda = 0.0;
    for (std::size_t i = 0; i < dim; ++i)
      if (dev[i]) lambda += v[i] * v[i];
    out.iterations = it;
    out.last_delta = std::abs(lambda - prev);
    out.value = lambda;
    if (it > 1 && out.last_delta < 1e-10) {
      out.converged = true;
      return out;
    }
    prev = lambda;

    for (std::size_t i = 0; i < dim; ++i)
      if (!dev[i]) v[i] = 0.0;
    project_x(v);
    double nn = 0.0;
    for (double x : v) nn += x * x;
    if (nn == 0.0) {
      out.value = 0.0;
      out.converged = true;
      return out;
    }
    nn = std::sqrt(nn);
    for (auto& x : v) x /= nn;
  }
  out.converged = false;
  return out;
}

/// Exact symmetric binomial deviation tail Pr[|n/2 - B(n,1/2)| >= t].
inline double binomial_tail(int n, int t) {
  std::vector<double> c(std::size_t(n) + 1, 0.0);
  c[0] = 1.0;
  for (int i = 1; i <= n; ++i)
    for (int j = i; j >= 1; --j) c[j] += c[j - 1];
  double sum = 0.0, total = std::ldexp(1.0, n);
  for (int j = 0; j <= n; ++j)
    if (std::abs(n - 2 * j) >= 2 * t) sum += c[j];
  return sum / total;
}

/// Subspace spec at flaw strength delta and slack eps: X-weight cap
/// floor(n delta) and deviation threshold floor(n (f(delta)+eps)). The
/// floor on t makes the deviation event a superset of the exact one, so a
/// small tail here is the conservative reading of the claim.
inline CoinSubspaceSpec coin_spec_for(int n, double delta, double slack) {
  CoinSubspaceSpec s;
  s.n = n;
  s.k = static_cast<int>(n * delta + 1e-9);
  const double f = f_of_delta(delta).f_value;
  s.t = static_cast<int>(n * (f + slack) + 1e-9);
  return s;
}

// ---- outcome-weight bound over the coin register --------------------------

struct IsometryPair {
  Isometry u0, u1;
};

struct OutcomeBoundResult {
  VerifyReport report;
  double eps = 0.0;           // max over coins of (1/4)||U0-U1||_sup^2
  double total_prob = 0.0;    // sum of P(x), must be 1
  double max_ratio = 0.0;     // max over x of P(x) / eps^|x|
  std::vector<double> p;      // all 2^n outcome probabilities
};

namespace detail {

// Apply a site operator to one tensor factor, in-place product state layout
// (site 0 major). Dims are updated to the operator's output dimension.
inline Ket apply_site(const Ket& state, std::vector<std::size_t>& dims,
                      std::size_t site, const Mat& op) {
  std::size_t pre = 1, post = 1;
  for (std::size_t i = 0; i < site; ++i) pre *= dims[i];
  for (std::size_t i = site + 1; i < dims.size(); ++i) post *= dims[i];
  const std::size_t din = dims[site];
  if (op.cols() != din)
    throw std::invalid_argument("apply_site: operator does not fit site");
  const std::size_t dout = op.rows();
  Ket out(pre * dout * post, 0.0);
  for (std::size_t p = 0; p < pre; ++p)
    for (std::size_t r = 0; r < dout; ++r)
      for (std::size_t c = 0; c < din; ++c) {
        const cplx o = op(r, c);
        if (o == 0.0) continue;
        const std::size_t src = (p * din + c) * post;
        const std::size_t dst = (p * dout + r) * post;
        for (std::size_t q = 0; q < post; ++q) out[dst + q] += o * state[src + q];
      }
  dims[site] = dout;
  return out;
}

}  // namespace detail

/// Exact X-basis outcome distribution of n coins attacked by per-coin
/// controlled isometries, checked against P(x) <= eps^|x| for every string
/// x. `phi` is the joint signal input (dimension = product of the pair
/// input dims); coins start in the X = +1 state.
inline OutcomeBoundResult verify_outcome_weight_bound(
    const std::vector<IsometryPair>& pairs, const Ket& phi) {
  const int n = static_cast<int>(pairs.size());
  if (n < 1 || n > 8)
    throw std::domain_error("outcome_weight_bound: n outside [1,8]");
  std::size_t din_total = 1, dout_total = 1;
  for (const auto& pr : pairs) {
    if (pr.u0.d_in() != pr.u1.d_in() || pr.u0.d_out() != pr.u1.d_out())
      throw std::invalid_argument("outcome_weight_bound: pair shape mismatch");
    din_total *= pr.u0.d_in();
    dout_total *= pr.u0.d_out();
  }
  if (phi.size() != din_total)
    throw std::invalid_argument("outcome_weight_bound: phi has wrong size");
  if (std::abs(qm::norm(phi) - 1.0) > 1e-9)
    throw std::invalid_argument("outcome_weight_bound: phi not normalized");
  const std::size_t branches = std::size_t{1} << n;
  if (branches * dout_total > (std::size_t{1} << 22))
    throw std::length_error("outcome_weight_bound: state too large");

  double eps = 0.0;
  for (const auto& pr : pairs) {
    const double d = qm::sup_norm(pr.u0.mat() - pr.u1.mat());
    eps = std::max(eps, 0.25 * d * d);
  }

  // Branch a carries U_a |phi> = (tensor over sites of U_{a_i}) |phi>.
  std::vector<Ket> branch(branches);
  for (std::size_t a = 0; a < branches; ++a) {
    Ket s = phi;
    std::vector<std::size_t> dims(n);
    for (int i = 0; i < n; ++i) dims[i] = pairs[i].u0.d_in();
    for (int i = 0; i < n; ++i) {
      const bool bit = (a >> (n - 1 - i)) & 1u;
      s = detail::apply_site(s, dims, i,
                             bit ? pairs[i].u1.mat() : pairs[i].u0.mat());
    }
    branch[a] = std::move(s);
  }

  // Hadamard over the branch index: A_x = 2^{-n} sum_a (-1)^{a.x} U_a |phi>.
  for (std::size_t h = 1; h < branches; h <<= 1)
    for (std::size_t i = 0; i < branches; i += h << 1)
      for (std::size_t j = i; j < i + h; ++j)
        for (std::size_t m = 0; m < dout_total; ++m) {
          const cplx u = branch[j][m], v = branch[j + h][m];
          branch[j][m] = u + v;
          branch[j + h][m] = u - v;
        }
  const double scale = 1.0 / static_cast<double>(branches);

  OutcomeBoundResult out;
  out.eps = eps;
  out.p.resize(branches);
  double max_ratio = 0.0, worst_nonzero = 0.0;
  for (std::size_t x = 0; x < branches; ++x) {
    double px = 0.0;
    for (const cplx& c : branch[x]) px += std::norm(c) * scale * scale;
    out.p[x] = px;
    out.total_prob += px;
    const int w = std::popcount(x);
    if (w > 0) worst_nonzero = std::max(worst_nonzero, px);
    if (eps > 0.0) max_ratio = std::max(max_ratio, px / std::pow(eps, w));
  }
  out.max_ratio = eps > 0.0 ? max_ratio : worst_nonzero;

  std::string params = "n=" + std::to_string(n) + ";eps=" + detail::fmt(eps) +
                       ";sum=" + detail::fmt(out.total_prob);
  VerifyReport r =
      eps > 0.0 ? make_report_le("outcome_weight_bound", params, out.max_ratio,
                                 1.0, 1e-9)
                : make_report_le("outcome_weight_bound", params, worst_nonzero,
                                 0.0, 1e-10);
  r.pass = r.pass && std::abs(out.total_prob - 1.0) <= 1e-10;
  out.report = std::move(r);
  return out;
}

// ---- dilation chain --------------------------------------------------------

/// Verify the closeness chain for two channels given as Kraus lists:
/// trace-distance premise on the unnormalized Choi states, purification
/// overlap, per-state overlap of the dilations, and the sup-norm
/// conclusion, plus consistency of the aligned overlap with the root
/// fidelity. eps is taken as the measured trace distance divided by d (the
/// quantity every subsequent step of the chain actually consumes).
inline std::vector<VerifyReport> verify_dilation_chain(
    const std::vector<Mat>& e0, const std::vector<Mat>& e1, int trials,
    SplitMix64& rng) {
  if (qm::kraus_completeness_defect(e0) > 1e-10 ||
      qm::kraus_completeness_defect(e1) > 1e-10)
    throw std::invalid_argument("dilation_chain: channel not trace preserving");
  const std::size_t d = e0.front().cols();
  const std::size_t dp = e0.front().rows();
  if (e1.front().cols() != d || e1.front().rows() != dp)
    throw std::invalid_argument("dilation_chain: channel shapes differ");

  const DensityOp rho0 = qm::choi_of_kraus(e0);
  const DensityOp rho1 = qm::choi_of_kraus(e1);
  const double tdist = qm::trace_norm(rho0.mat() - rho1.mat());
  const double eps = tdist / static_cast<double>(d);
  const std::string base = "d=" + std::to_string(d) +
                           ";dp=" + std::to_string(dp) +
                           ";eps=" + detail::fmt(eps);

  std::vector<VerifyReport> reports;
  reports.push_back(make_report_le("dilation_premise", base, tdist,
                                   static_cast<double>(d) * eps, 1e-12));

  const std::size_t env = d * dp;
  const auto [k0, k1] = qm::uhlmann_pair(rho0, rho1, env);
  const double overlap = std::real(qm::vdot(k1, k0));
  const double fid = qm::fidelity_root(rho0, rho1);
  reports.push_back(make_report_ge("dilation_overlap", base, overlap,
                                   static_cast<double>(d) * (1.0 - eps / 2.0),
                                   1e-9));
  reports.push_back(make_report_le("dilation_uhlmann", base,
                                   std::abs(overlap - fid), 0.0, 1e-8));

  // Read off the dilations: U[(t,e), r] = purification[(r, t), e].
  const auto dilation = [&](const Ket& k) {
    Mat u(dp * env, d);
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t t = 0; t < dp; ++t)
        for (std::size_t e = 0; e < env; ++e)
          u(t * env + e, r) = k[(r * dp + t) * env + e];
    return u;
  };
  const Mat u0 = dilation(k0);
  const Mat u1 = dilation(k1);
  const Mat g = u1.dagger() * u0;

  double min_re = 1.0;
  const Mat basis = qm::random_unitary(d, rng);
  for (std::size_t j = 0; j < d; ++j) {
    Ket v(d);
    for (std::size_t i = 0; i < d; ++i) v[i] = basis(i, j);
    min_re = std::min(min_re, std::real(qm::vdot(v, qm::act(g, v))));
  }
  for (int tr = 0; tr < trials; ++tr) {
    const Ket v = qm::random_ket(d, rng);
    min_re = std::min(min_re, std::real(qm::vdot(v, qm::act(g, v))));
  }
  reports.push_back(make_report_ge("dilation_perstate", base, min_re,
                                   1.0 - static_cast<double>(d) * eps / 2.0,
                                   1e-9));

  const double sup = qm::sup_norm(u0 - u1);
  reports.push_back(make_report_le("dilation_supnorm", base, sup * sup,
                                   static_cast<double>(d) * eps, 1e-9));
  return reports;
}

// ---- coin leak from a basis-dependent source -------------------------------

struct CoinLeakResult {
  VerifyReport report;
  double p_minus = 0.0;  // Pr[X = -1] on the coin
  double eps_s = 0.0;    // (1 - sqrt F)/2, the tightest hypothesis
};

/// Build Uhlmann-aligned purifications of the two source states, entangle a
/// coin with the branch choice, trace everything but the coin and measure X.
/// The X = -1 probability must not exceed eps_s. `env_twist`, when given, is
/// applied to the environment of the second purification; a generic twist
/// breaks the alignment and can push the leak past the bound, which is why
/// the purification freedom matters.
inline CoinLeakResult verify_coin_leak(const DensityOp& rho0,
                                       const DensityOp& rho1,
                                       const Mat* env_twist = nullptr) {
  if (std::abs(rho0.trace() - 1.0) > 1e-8 || std::abs(rho1.trace() - 1.0) > 1e-8)
    throw std::invalid_argument("coin_leak: states must have unit trace");
  const std::size_t d = rho0.dim();
  const double fid = qm::fidelity_root(rho0, rho1);
  const double eps_s = 0.5 * (1.0 - fid);

  auto [k0, k1] = qm::uhlmann_pair(rho0, rho1, d);
  if (env_twist) {
    if (env_twist->rows() != d || env_twist->cols() != d)
      throw std::invalid_argument("coin_leak: twist has wrong dimension");
    Ket twisted(k1.size(), 0.0);
    for (std::size_t s = 0; s < d; ++s)
      for (std::size_t e = 0; e < d; ++e) {
        const cplx amp = k1[s * d + e];
        if (amp == 0.0) continue;
        for (std::size_t e2 = 0; e2 < d; ++e2)
          twisted[s * d + e2] += (*env_twist)(e2, e) * amp;
      }
    k1 = std::move(twisted);
  }

  // (|psi0>|0> + |psi1>|1>)/sqrt(2) on system x environment x coin.
  const std::size_t sd = d * d;
  Ket full(sd * 2, 0.0);
  for (std::size_t i = 0; i < sd; ++i) {
    full[2 * i] = k0[i] / std::sqrt(2.0);
    full[2 * i + 1] = k1[i] / std::sqrt(2.0);
  }
  const Mat rho_full = qm::outer(full, full);
  const Mat coin = qm::partial_trace(rho_full, {d, d, 2}, {2});
  const double p_minus =
      0.5 * std::real(coin(0, 0) + coin(1, 1) - coin(0, 1) - coin(1, 0));

  CoinLeakResult out;
  out.p_minus = p_minus;
  out.eps_s = eps_s;
  out.report = make_report_le(
      "coin_leak", "d=" + std::to_string(d) + ";fid=" + detail::fmt(fid),
      p_minus, eps_s, 1e-9);
  return out;
}

// ---- suite runner ----------------------------------------------------------

/// Desk-scale verification suite. `which` selects a group or "all"; the
/// heavy acceptance loops live in the test suite, this keeps the CLI quick.
inline std::vector<VerifyReport> run_verify_suite(const std::string& which,
                                                  std::uint64_t seed) {
  std::vector<VerifyReport> all;
  const bool everything = which == "all";

  if (everything || which == "gap_reduction")
    all.push_back(verify_gap_reduction());

  if (everything || which == "coin_tail") {
    for (int n : {8, 14, 20}) {
      const int t = n / 4;
      const TailResult tail = coin_extremal_tail({n, 0, t});
      all.push_back(make_report_le(
          "coin_tail_binomial",
          "n=" + std::to_string(n) + ";t=" + std::to_string(t),
          std::abs(tail.value - binomial_tail(n, t)), 0.0, 1e-10));
    }
    double worst_ratio = 0.0, prev = -1.0;
    for (int n : {8, 12, 16, 20}) {
      const TailResult tail = coin_extremal_tail(coin_spec_for(n, 0.1, 0.05));
      if (prev > 0.0) worst_ratio = std::max(worst_ratio, tail.value / prev);
      prev = tail.value;
    }
    VerifyReport decay = make_report_le(
        "coin_tail_decay", "delta=0.1;slack=0.05;n=8..20", worst_ratio, 1.0, 0.0);
    decay.pass = worst_ratio < 1.0;
    all.push_back(decay);
  }

  if (everything || which == "outcome_bound") {
    // Saturating single coin: U1 = e^{i phi} U0 puts all the disturbance in
    // the phase, P(1) = eps exactly.
    const double eps = 0.01;
    const double phi = std::acos(1.0 - 2.0 * eps);
    Mat u0m = Mat::identity(2);
    Mat u1m = (cplx(std::cos(phi), std::sin(phi))) * Mat::identity(2);
    std::vector<IsometryPair> one;
    one.push_back({Isometry(u0m), Isometry(u1m)});
    Ket phi_in = {1.0, 0.0};
    const OutcomeBoundResult sat = verify_outcome_weight_bound(one, phi_in);
    all.push_back(make_report_le("outcome_saturation", "n=1;eps=0.01",
                                 std::abs(sat.p[1] - eps), 0.0, 1e-10));
    all.push_back(sat.report);

    SplitMix64 rng(derive_seed(seed, 0x0B5E55ull));
    for (int inst = 0; inst < 20; ++inst) {
      std::vector<IsometryPair> pairs;
      std::size_t din_total = 1;
      for (int i = 0; i < 4; ++i) {
        const Mat base = qm::random_isometry_mat(4, 2, rng);
        const double angle = 0.05 + 0.3 * rng.uniform01();
        Mat gen(4, 4);
        const Ket g = qm::random_ket(4, rng);
        for (std::size_t a = 0; a < 4; ++a)
          for (std::size_t b = 0; b < 4; ++b)
            gen(a, b) = g[a] * std::conj(g[b]);
        // exp(i angle P) for a rank-1 projector P.
        Mat rot = Mat::identity(4);
        const cplx phase = cplx(std::cos(angle), std::sin(angle)) - 1.0;
        rot = rot + phase * gen;
        pairs.push_back({Isometry(base), Isometry(rot * base)});
        din_total *= 2;
      }
      const Ket input = qm::random_ket(din_total, rng);
      all.push_back(verify_outcome_weight_bound(pairs, input).report);
    }
  }

  if (everything || which == "dilation") {
    SplitMix64 rng(derive_seed(seed, 0xD11A7E0Full));
    for (double q : {0.01, 0.05, 0.1}) {
      const Mat i2 = Mat::identity(2);
      const Mat x = detail::pauli_x(), z = detail::pauli_z();
      Mat y(2, 2);
      y(0, 1) = cplx(0.0, -1.0);
      y(1, 0) = cplx(0.0, 1.0);
      std::vector<Mat> dep = {std::sqrt(1.0 - q) * i2, std::sqrt(q / 3.0) * x,
                              std::sqrt(q / 3.0) * y, std::sqrt(q / 3.0) * z};
      for (auto& r : verify_dilation_chain({i2}, dep, 100, rng))
        all.push_back(r);
    }
    for (int inst = 0; inst < 25; ++inst) {
      const auto c0 = qm::random_kraus_channel(2, 2, 2, rng);
      const auto c1 = qm::random_kraus_channel(2, 2, 2, rng);
      for (auto& r : verify_dilation_chain(c0, c1, 100, rng)) all.push_back(r);
    }
  }

  if (everything || which == "coin_leak") {
    SplitMix64 rng(derive_seed(seed, 0xC01Cull));
    // Pure pair with overlap 0.99: the bound is met with equality.
    Ket a = {1.0, 0.0};
    Ket b = {0.99, std::sqrt(1.0 - 0.99 * 0.99)};
    all.push_back(
        verify_coin_leak(DensityOp(qm::outer(a, a)), DensityOp(qm::outer(b, b)))
            .report);
    for (int inst = 0; inst < 10; ++inst) {
      const DensityOp r0 = qm::random_density(2, 2, rng);
      const DensityOp r1 = qm::random_density(2, 2, rng);
      all.push_back(verify_coin_leak(r0, r1).report);
    }
  }

  if (all.empty())
    throw std::invalid_argument("unknown verify suite: " + which);
  return all;
}

}  // namespace gllp::verify

#endif
