#ifndef GLLP_QUANTUM_HPP
#define GLLP_QUANTUM_HPP

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "gllp/linalg.hpp"
#include "gllp/rng.hpp"

namespace gllp::qm {

/// Hermitian positive-semidefinite operator. The trace is whatever the
/// construction gives (trace-d conventions are carried as-is, never
/// renormalized); Hermiticity and the PSD floor are checked on entry.
class DensityOp {
 public:
  explicit DensityOp(Mat m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols())
      throw std::invalid_argument("DensityOp: non-square matrix");
    const double scale = std::max(1.0, m_.max_abs());
    for (std::size_t i = 0; i < m_.rows(); ++i)
      for (std::size_t j = 0; j < m_.cols(); ++j)
        if (std::abs(m_(i, j) - std::conj(m_(j, i))) > 1e-12 * scale)
          throw std::invalid_argument("DensityOp: not Hermitian");
    const Eig e = hermitian_eig(m_);
    const double top = e.values.empty() ? 0.0 : std::max(e.values.front(), 0.0);
    if (!e.values.empty() && e.values.back() < -1e-10 * std::max(1.0, top))
      throw std::invalid_argument("DensityOp: negative eigenvalue");
    trace_ = std::real(m_.trace());
  }

  const Mat& mat() const { return m_; }
  std::size_t dim() const { return m_.rows(); }
  double trace() const { return trace_; }

 private:
  Mat m_;
  double trace_ = 0.0;
};

/// Isometric embedding: columns orthonormal within 1e-10.
class Isometry {
 public:
  explicit Isometry(Mat m) : m_(std::move(m)) {
    if (m_.rows() < m_.cols())
      throw std::invalid_argument("Isometry: more columns than rows");
    const Mat g = m_.dagger() * m_;
    for (std::size_t i = 0; i < g.rows(); ++i)
      for (std::size_t j = 0; j < g.cols(); ++j) {
        const cplx want = i == j ? cplx(1.0) : cplx(0.0);
        if (std::abs(g(i, j) - want) > 1e-10)
          throw std::invalid_argument("Isometry: columns not orthonormal");
      }
  }
  const Mat& mat() const { return m_; }
  std::size_t d_in() const { return m_.cols(); }
  std::size_t d_out() const { return m_.rows(); }

 private:
  Mat m_;
};

/// Partial trace over the subsystems NOT listed in `keep`. `dims` are the
/// subsystem dimensions in tensor order, their product must match the
/// operator dimension.
inline Mat partial_trace(const Mat& rho, const std::vector<std::size_t>& dims,
                         const std::vector<std::size_t>& keep) {
  std::size_t total = 1;
  for (std::size_t d : dims) total *= d;
  if (rho.rows() != total || rho.cols() != total)
    throw std::invalid_argument("partial_trace: dims do not match operator");
  std::vector<bool> kept(dims.size(), false);
  for (std::size_t k : keep) {
    if (k >= dims.size())
      throw std::invalid_argument("partial_trace: keep index out of range");
    kept[k] = true;
  }

  std::size_t dim_keep = 1, dim_tr = 1;
  for (std::size_t i = 0; i < dims.size(); ++i)
    (kept[i] ? dim_keep : dim_tr) *= dims[i];

  // Strides of each subsystem in the full index.
  std::vector<std::size_t> stride(dims.size(), 1);
  for (std::size_t i = dims.size(); i-- > 1;)
    stride[i - 1] = stride[i] * dims[i];

  // Map a (kept, traced) pair of sub-indices to the full index.
  const auto full_index = [&](std::size_t ik, std::size_t it) {
    std::size_t idx = 0;
    for (std::size_t i = dims.size(); i-- > 0;) {
      std::size_t digit;
      if (kept[i]) {
        digit = ik % dims[i];
        ik /= dims[i];
      } else {
        digit = it % dims[i];
        it /= dims[i];
      }
      idx += digit * stride[i];
    }
    return idx;
  };

  Mat out(dim_keep, dim_keep);
  for (std::size_t r = 0; r < dim_keep; ++r)
    for (std::size_t c = 0; c < dim_keep; ++c) {
      cplx acc = 0.0;
      for (std::size_t t = 0; t < dim_tr; ++t)
        acc += rho(full_index(r, t), full_index(c, t));
      out(r, c) = acc;
    }
  return out;
}

/// Root fidelity ||sqrt(rho0) sqrt(rho1)||_tr. Inputs must carry the same
/// trace normalization (conventional or not).
inline double fidelity_root(const DensityOp& rho0, const DensityOp& rho1) {
  if (rho0.dim() != rho1.dim())
    throw std::invalid_argument("fidelity_root: dimension mismatch");
  if (std::abs(rho0.trace() - rho1.trace()) >
      1e-8 * std::max(1.0, rho0.trace()))
    throw std::invalid_argument("fidelity_root: trace normalizations differ");
  return trace_norm(sqrt_psd(rho0.mat()) * sqrt_psd(rho1.mat()));
}

/// Purification of rho on system x environment (system index major):
/// |psi> = sum_k sqrt(lambda_k) |v_k> |e_k>. Needs env_dim >= rank(rho).
inline Ket purify(const DensityOp& rho, std::size_t env_dim) {
  const Eig e = hermitian_eig(rho.mat());
  const double top = e.values.empty() ? 0.0 : std::max(e.values.front(), 0.0);
  const double cut = 1e-12 * std::max(1.0, top);
  std::size_t rank = 0;
  for (double v : e.values)
    if (v > cut) ++rank;
  if (env_dim < rank)
    throw std::invalid_argument("purify: environment smaller than rank");
  const std::size_t d = rho.dim();
  Ket psi(d * env_dim, 0.0);
  for (std::size_t k = 0; k < rank; ++k) {
    const double s = std::sqrt(std::max(e.values[k], 0.0));
    for (std::size_t i = 0; i < d; ++i) psi[i * env_dim + k] += s * e.vectors(i, k);
  }
  return psi;
}

/// Purifications of rho0 and rho1 with environments aligned so that
/// Re<psi1|psi0> equals the root fidelity (its maximum over purifications).
/// Environments of dimension >= dim(rho) are required; the alignment is the
/// polar unitary of the cross operator sqrt(rho1) sqrt(rho0).
inline std::pair<Ket, Ket> uhlmann_pair(const DensityOp& rho0,
                                        const DensityOp& rho1,
                                        std::size_t env_dim) {
  const std::size_t d = rho0.dim();
  if (rho1.dim() != d)
    throw std::invalid_argument("uhlmann_pair: dimension mismatch");
  if (env_dim < d)
    throw std::invalid_argument("uhlmann_pair: environment smaller than dim");
  if (std::abs(rho0.trace() - rho1.trace()) >
      1e-8 * std::max(1.0, rho0.trace()))
    throw std::invalid_argument("uhlmann_pair: trace normalizations differ");
  const Mat s0 = sqrt_psd(rho0.mat());
  const Mat s1 = sqrt_psd(rho1.mat());
  const Mat u = polar_unitary(s1 * s0);
  const Mat s1u = s1 * u;
  Ket k0(d * env_dim, 0.0), k1(d * env_dim, 0.0);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      k0[i * env_dim + j] = s0(i, j);
      k1[i * env_dim + j] = s1u(i, j);
    }
  return {std::move(k0), std::move(k1)};
}

/// Choi operator of an isometry d_in -> d_out x env (environment traced
/// out), on reference x output with the reference index major. The trace is
/// d_in exactly for any trace-preserving embedding.
inline DensityOp choi_of_isometry(const Isometry& u, std::size_t env_dim = 1) {
  const std::size_t din = u.d_in();
  if (env_dim == 0 || u.d_out() % env_dim != 0)
    throw std::invalid_argument("choi_of_isometry: bad environment split");
  const std::size_t dout = u.d_out() / env_dim;
  Mat rho(din * dout, din * dout);
  for (std::size_t e = 0; e < env_dim; ++e)
    for (std::size_t r = 0; r < din; ++r)
      for (std::size_t t = 0; t < dout; ++t) {
        const cplx x = u.mat()(t * env_dim + e, r);
        if (x == 0.0) continue;
        for (std::size_t r2 = 0; r2 < din; ++r2)
          for (std::size_t t2 = 0; t2 < dout; ++t2)
            rho(r * dout + t, r2 * dout + t2) +=
                x * std::conj(u.mat()(t2 * env_dim + e, r2));
      }
  return DensityOp(std::move(rho));
}

/// Sum of |K_k><K_k| over vectorized Kraus operators: the (unnormalized)
/// Choi operator of the channel, trace = d_in when trace preserving.
inline DensityOp choi_of_kraus(const std::vector<Mat>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("choi_of_kraus: no terms");
  const std::size_t din = kraus.front().cols();
  const std::size_t dout = kraus.front().rows();
  Mat rho(din * dout, din * dout);
  for (const Mat& k : kraus) {
    if (k.cols() != din || k.rows() != dout)
      throw std::invalid_argument("choi_of_kraus: inconsistent shapes");
    for (std::size_t r = 0; r < din; ++r)
      for (std::size_t t = 0; t < dout; ++t) {
        const cplx x = k(t, r);
        if (x == 0.0) continue;
        for (std::size_t r2 = 0; r2 < din; ++r2)
          for (std::size_t t2 = 0; t2 < dout; ++t2)
            rho(r * dout + t, r2 * dout + t2) += x * std::conj(k(t2, r2));
      }
  }
  return DensityOp(std::move(rho));
}

/// Kraus completeness defect max |sum K^dag K - I|.
inline double kraus_completeness_defect(const std::vector<Mat>& kraus) {
  if (kraus.empty()) throw std::invalid_argument("kraus: no terms");
  Mat s(kraus.front().cols(), kraus.front().cols());
  for (const Mat& k : kraus) s = s + k.dagger() * k;
  return (s - Mat::identity(s.rows())).max_abs();
}

/// Probability of the X = -1 coin outcome for the coin entangled with two
/// signal branches: (1/4)|||k0> - |k1>||^2. The equivalent inner-product
/// form (1 - Re<k1|k0>)/2 is evaluated too and both must agree to 1e-12.
/// Inputs are renormalized exactly after the gate so the two forms differ
/// by rounding only, not by the caller's normalization slack.
inline double coin_x_minus_prob(const Ket& k0, const Ket& k1) {
  const double n0 = norm(k0), n1 = norm(k1);
  if (std::abs(n0 - 1.0) > 1e-8 || std::abs(n1 - 1.0) > 1e-8)
    throw std::invalid_argument("coin_x_minus_prob: kets must be normalized");
  Ket diff(k0.size());
  for (std::size_t i = 0; i < k0.size(); ++i) diff[i] = k0[i] / n0 - k1[i] / n1;
  const double q_norm = 0.25 * std::real(vdot(diff, diff));
  const double q_overlap = 0.5 * (1.0 - std::real(vdot(k1, k0)) / (n0 * n1));
  if (std::abs(q_norm - q_overlap) > 1e-12)
    throw std::runtime_error("coin_x_minus_prob: cross-check failed");
  return std::min(std::max(q_norm, 0.0), 1.0);
}

// ---- seeded random objects for the verification suites -------------------

inline Ket random_ket(std::size_t dim, SplitMix64& rng) {
  Ket v(dim);
  for (auto& x : v) x = cplx(rng.normal(), rng.normal());
  const double n = norm(v);
  for (auto& x : v) x /= n;
  return v;
}

/// Haar-ish isometry from Gram-Schmidt on Gaussian columns; exact
/// distribution does not matter here, orthonormality does.
inline Mat random_isometry_mat(std::size_t rows, std::size_t cols,
                               SplitMix64& rng) {
  if (rows < cols)
    throw std::invalid_argument("random_isometry: rows < cols");
  std::vector<Ket> basis;
  while (basis.size() < cols) {
    Ket v(rows);
    for (auto& x : v) x = cplx(rng.normal(), rng.normal());
    for (int pass = 0; pass < 2; ++pass)
      for (const Ket& u : basis) {
        const cplx ov = vdot(u, v);
        for (std::size_t i = 0; i < rows; ++i) v[i] -= ov * u[i];
      }
    const double n = norm(v);
    if (n < 1e-6) continue;  // resample a degenerate draw
    for (auto& x : v) x /= n;
    basis.push_back(std::move(v));
  }
  Mat m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = basis[j][i];
  return m;
}

inline Mat random_unitary(std::size_t n, SplitMix64& rng) {
  return random_isometry_mat(n, n, rng);
}

/// Random rank-r density operator with unit trace.
inline DensityOp random_density(std::size_t dim, std::size_t rank,
                                SplitMix64& rng) {
  Mat rho(dim, dim);
  double weight_sum = 0.0;
  std::vector<double> w(rank);
  for (auto& x : w) {
    x = rng.uniform01() + 1e-3;
    weight_sum += x;
  }
  for (std::size_t k = 0; k < rank; ++k) {
    const Ket v = random_ket(dim, rng);
    const double p = w[k] / weight_sum;
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        rho(i, j) += p * v[i] * std::conj(v[j]);
  }
  return DensityOp(std::move(rho));
}

/// Random channel d_in -> d_out with `terms` Kraus operators, carved out of
/// a random isometry (hence exactly trace preserving up to round-off).
inline std::vector<Mat> random_kraus_channel(std::size_t d_in,
                                             std::size_t d_out,
                                             std::size_t terms,
                                             SplitMix64& rng) {
  const Mat v = random_isometry_mat(d_out * terms, d_in, rng);
  std::vector<Mat> ks(terms, Mat(d_out, d_in));
  for (std::size_t e = 0; e < terms; ++e)
    for (std::size_t t = 0; t < d_out; ++t)
      for (std::size_t s = 0; s < d_in; ++s) ks[e](t, s) = v(t * terms + e, s);
  return ks;
}

}  // namespace gllp::qm

#endif
