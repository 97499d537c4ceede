#ifndef GLLP_LINALG_HPP
#define GLLP_LINALG_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace gllp::qm {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Everything here is desk scale (dims up
/// to a few dozen for spectral work), so the arithmetic is plain loops.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols) {}

  static Mat identity(std::size_t n) {
    Mat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const {
    return a_[i * cols_ + j];
  }

  Mat dagger() const {
    Mat m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        m(j, i) = std::conj((*this)(i, j));
    return m;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double max_abs() const {
    double m = 0.0;
    for (const cplx& v : a_) m = std::max(m, std::abs(v));
    return m;
  }

  double frobenius() const {
    double s = 0.0;
    for (const cplx& v : a_) s += std::norm(v);
    return std::sqrt(s);
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    Mat r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] += b.a_[i];
    return r;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    Mat r = a;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] -= b.a_[i];
    return r;
  }
  friend Mat operator*(const cplx& s, const Mat& a) {
    Mat r = a;
    for (auto& v : r.a_) v *= s;
    return r;
  }
  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Mat: shape mismatch");
    Mat r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const cplx aik = a(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> a_;
};

using Ket = std::vector<cplx>;

inline cplx vdot(const Ket& a, const Ket& b) {
  if (a.size() != b.size()) throw std::invalid_argument("vdot: size mismatch");
  cplx s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

inline double norm(const Ket& a) { return std::sqrt(std::real(vdot(a, a))); }

inline Ket act(const Mat& m, const Ket& v) {
  if (m.cols() != v.size()) throw std::invalid_argument("act: size mismatch");
  Ket r(m.rows(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] += m(i, j) * v[j];
  return r;
}

/// Kronecker products. Index convention: (i_a, i_b) -> i_a * dim_b + i_b.
inline Mat kron(const Mat& a, const Mat& b) {
  const std::size_t r = a.rows() * b.rows();
  const std::size_t c = a.cols() * b.cols();
  if (r / std::max<std::size_t>(b.rows(), 1) != a.rows() || r > (1u << 24))
    throw std::length_error("kron: dimension product too large");
  Mat m(r, c);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == 0.0) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return m;
}

inline Ket kron(const Ket& a, const Ket& b) {
  if (a.size() * b.size() > (1u << 24))
    throw std::length_error("kron: dimension product too large");
  Ket r(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i * b.size() + j] = a[i] * b[j];
  return r;
}

inline Mat outer(const Ket& a, const Ket& b) {
  Mat m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

struct Eig {
  std::vector<double> values;  // descending
  Mat vectors;                 // unitary, columns matched to values
};

/// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations,
/// iterated until the off-diagonal Frobenius norm falls below 1e-13 of the
/// matrix scale. Input asymmetric beyond round-off is rejected.
inline Eig hermitian_eig(const Mat& h) {
  if (h.rows() != h.cols())
    throw std::invalid_argument("hermitian_eig: non-square input");
  const std::size_t n = h.rows();
  const double scale = std::max(1.0, h.max_abs());
  Mat a = h;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const cplx d = a(i, j) - std::conj(a(j, i));
      if (std::abs(d) > 1e-9 * scale)
        throw std::invalid_argument("hermitian_eig: input not Hermitian");
    }
  // Symmetrize round-off before rotating.
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = std::real(a(i, i));
    for (std::size_t j = i + 1; j < n; ++j) {
      const cplx v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      a(i, j) = v;
      a(j, i) = std::conj(v);
    }
  }

  Mat v = Mat::identity(n);
  const double tol = 1e-13 * std::max(1.0, a.frobenius());
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += 2.0 * std::norm(a(p, q));
    if (std::sqrt(off) < tol) break;

    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double absb = std::abs(apq);
        if (absb < 1e-300) continue;
        const double app = std::real(a(p, p));
        const double aqq = std::real(a(q, q));
        const double tau = (app - aqq) / (2.0 * absb);
        const double t = tau >= 0.0
                             ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                             : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const cplx s = (t * c) * (std::conj(apq) / absb);

        // A <- J^dag A J with the rotation in the (p,q) plane:
        // columns first, then rows.
        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp + s * akq;
          a(k, q) = -std::conj(s) * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk + std::conj(s) * aqk;
          a(q, k) = -s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp + s * vkq;
          v(k, q) = -std::conj(s) * vkp + c * vkq;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
      }
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return std::real(a(i, i)) > std::real(a(j, j));
  });
  Eig e;
  e.values.resize(n);
  e.vectors = Mat(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    e.values[j] = std::real(a(order[j], order[j]));
    for (std::size_t i = 0; i < n; ++i) e.vectors(i, j) = v(i, order[j]);
  }
  return e;
}

/// Singular values via the eigenvalues of M^dag M. Eigenvalues of exact-zero
/// singular directions surface as round-off noise of order 1e-16 of the top
/// one; taking their square root would pollute trace norms at the 1e-8
/// level, so everything below the noise floor is zeroed.
inline std::vector<double> singular_values(const Mat& m) {
  const Eig e = hermitian_eig(m.dagger() * m);
  const double top = e.values.empty() ? 0.0 : std::max(e.values.front(), 0.0);
  const double floor = 1e-14 * top;
  std::vector<double> s(e.values.size());
  for (std::size_t i = 0; i < s.size(); ++i)
    s[i] = e.values[i] > floor ? std::sqrt(e.values[i]) : 0.0;
  return s;
}

/// Largest singular value.
inline double sup_norm(const Mat& m) {
  const auto s = singular_values(m);
  return s.empty() ? 0.0 : s.front();
}

/// Sum of singular values.
inline double trace_norm(const Mat& m) {
  const auto s = singular_values(m);
  double t = 0.0;
  for (double v : s) t += v;
  return t;
}

/// PSD square root. Eigenvalues below -1e-10 of the top eigenvalue scale are
/// rejected; anything between that floor and the round-off noise level is
/// treated as an exact zero (sqrt of eigenvalue noise would otherwise show
/// up at the 1e-8 scale).
inline Mat sqrt_psd(const Mat& m) {
  const Eig e = hermitian_eig(m);
  const double top = e.values.empty() ? 0.0 : std::max(e.values.front(), 0.0);
  const double floor = -1e-10 * std::max(1.0, top);
  const double zero_cut = 1e-13 * std::max(1.0, top);
  Mat r(m.rows(), m.rows());
  for (std::size_t k = 0; k < e.values.size(); ++k) {
    if (e.values[k] < floor)
      throw std::domain_error("sqrt_psd: input not positive semidefinite");
    if (e.values[k] <= zero_cut) continue;
    const double s = std::sqrt(e.values[k]);
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.rows(); ++j)
        r(i, j) += s * e.vectors(i, k) * std::conj(e.vectors(j, k));
  }
  return r;
}

/// Unitary factor of the polar decomposition M = U H of a square matrix.
/// Directions whose singular value sits at or below the eigenvalue noise
/// floor are treated as null space and completed with canonical vectors;
/// the retained columns are re-orthonormalized so the result is unitary to
/// machine precision even when singular values nearly collide. tr(U^dag M)
/// = sum of singular values is preserved either way.
inline Mat polar_unitary(const Mat& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("polar_unitary: non-square input");
  const std::size_t n = m.rows();
  const Eig e = hermitian_eig(m.dagger() * m);
  const double lmax = std::max(e.values.empty() ? 0.0 : e.values.front(), 0.0);
  const double cut = 1e-13 * std::max(lmax, 1.0);

  const auto orthonormalize = [&](Ket& col, const std::vector<Ket>& basis) {
    for (int pass = 0; pass < 2; ++pass)
      for (const Ket& u : basis) {
        const cplx ov = vdot(u, col);
        for (std::size_t i = 0; i < n; ++i) col[i] -= ov * u[i];
      }
    const double nn = norm(col);
    if (nn < 0.5) return false;
    for (auto& x : col) x /= nn;
    return true;
  };

  std::vector<Ket> w;
  std::vector<std::size_t> order, deficient;
  for (std::size_t k = 0; k < n; ++k) {
    bool ok = false;
    if (e.values[k] > cut) {
      const double s = std::sqrt(e.values[k]);
      Ket col(n);
      for (std::size_t i = 0; i < n; ++i) {
        cplx acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += m(i, j) * e.vectors(j, k);
        col[i] = acc / s;
      }
      if (orthonormalize(col, w)) {
        w.push_back(std::move(col));
        order.push_back(k);
        ok = true;
      }
    }
    if (!ok) deficient.push_back(k);
  }
  // Null space: canonical vectors orthogonalized against what we have.
  for (std::size_t cand = 0; cand < n && w.size() < n; ++cand) {
    Ket col(n, 0.0);
    col[cand] = 1.0;
    if (orthonormalize(col, w)) w.push_back(std::move(col));
  }
  if (w.size() != n)
    throw std::runtime_error("polar_unitary: basis completion failed");
  order.insert(order.end(), deficient.begin(), deficient.end());

  Mat u(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        u(i, j) += w[k][i] * std::conj(e.vectors(j, order[k]));

  const Mat defect = u.dagger() * u - Mat::identity(n);
  if (defect.max_abs() > 1e-9)
    throw std::runtime_error("polar_unitary: result not unitary");
  return u;
}

}  // namespace gllp::qm

#endif
