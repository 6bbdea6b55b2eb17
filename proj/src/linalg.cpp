#include "chanfactor/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "chanfactor/error.hpp"

namespace chanfactor::linalg {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) throw Error(Errc::dimension_mismatch, "matrix dimension must be >= 1");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> row_major)
    : dim_(dim), data_(std::move(row_major)) {
  if (dim == 0) throw Error(Errc::dimension_mismatch, "matrix dimension must be >= 1");
  if (data_.size() != dim * dim)
    throw Error(Errc::dimension_mismatch, "expected " + std::to_string(dim * dim) + " entries");
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> u, std::span<const cplx> v) {
  if (u.size() != v.size()) throw Error(Errc::dimension_mismatch, "outer product of unequal lengths");
  ComplexMatrix m(u.size());
  for (std::size_t r = 0; r < u.size(); ++r)
    for (std::size_t c = 0; c < v.size(); ++c) m(r, c) = u[r] * std::conj(v[c]);
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  return out;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::hermitian_defect() const {
  double m = 0.0;
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = r; c < dim_; ++c)
      m = std::max(m, std::abs((*this)(r, c) - std::conj((*this)(c, r))));
  return m;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  if (o.dim_ != dim_) throw Error(Errc::dimension_mismatch, "matrix sum");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  if (o.dim_ != dim_) throw Error(Errc::dimension_mismatch, "matrix difference");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim_ != b.dim_) throw Error(Errc::dimension_mismatch, "matrix product");
  const std::size_t n = a.dim_;
  ComplexMatrix out(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx ark = a(r, k);
      if (ark == cplx{}) continue;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
    }
  return out;
}

ComplexVector operator*(const ComplexMatrix& a, std::span<const cplx> v) {
  if (a.dim_ != v.size()) throw Error(Errc::dimension_mismatch, "matrix-vector product");
  ComplexVector out(v.size());
  for (std::size_t r = 0; r < a.dim_; ++r)
    for (std::size_t c = 0; c < a.dim_; ++c) out[r] += a(r, c) * v[c];
  return out;
}

ComplexVector HermitianEigen::vector(std::size_t k) const {
  ComplexVector v(vectors.dim());
  for (std::size_t r = 0; r < v.size(); ++r) v[r] = vectors(r, k);
  return v;
}

ComplexMatrix HermitianEigen::reconstruct() const {
  const std::size_t n = vectors.dim();
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        out(r, c) += values[k] * vectors(r, k) * std::conj(vectors(c, k));
  return out;
}

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = r + 1; c < a.dim(); ++c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// One unitary rotation J in the (p, q) plane zeroing a(p, q):
// J = diag(1, e^{-i theta}) * [[c, s], [-s, c]], theta = arg a(p, q).
void rotate(ComplexMatrix& a, ComplexMatrix& v, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double mag = std::abs(apq);
  if (mag == 0.0) return;
  const cplx phase = apq / mag;  // e^{i theta}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * mag);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const cplx conj_phase = std::conj(phase);
  const std::size_t n = a.dim();

  // A <- A J
  for (std::size_t k = 0; k < n; ++k) {
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = c * akp - s * conj_phase * akq;
    a(k, q) = s * akp + c * conj_phase * akq;
  }
  // A <- J^dagger A
  for (std::size_t k = 0; k < n; ++k) {
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = c * apk - s * phase * aqk;
    a(q, k) = s * apk + c * phase * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();

  for (std::size_t k = 0; k < n; ++k) {
    const cplx vkp = v(k, p);
    const cplx vkq = v(k, q);
    v(k, p) = c * vkp - s * conj_phase * vkq;
    v(k, q) = s * vkp + c * conj_phase * vkq;
  }
}

}  // namespace

HermitianEigen eig_hermitian(const ComplexMatrix& m) {
  const double defect = m.hermitian_defect();
  if (defect > kHermitianTol)
    throw Error(Errc::not_hermitian, "max asymmetry " + std::to_string(defect));

  const std::size_t n = m.dim();
  ComplexMatrix a = (m + m.adjoint()) * cplx{0.5};
  ComplexMatrix v = ComplexMatrix::identity(n);

  const double scale = std::max(a.max_abs(), 1e-300);
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= 1e-17 * scale) break;
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        // Skip rotations that cannot change the diagonal at working precision.
        const double mag = std::abs(a(p, q));
        if (mag <= 1e-300) continue;
        if (sweep > 3 && std::abs(a(p, p).real()) + 100.0 * mag == std::abs(a(p, p).real()) &&
            std::abs(a(q, q).real()) + 100.0 * mag == std::abs(a(q, q).real())) {
          a(p, q) = 0.0;
          a(q, p) = 0.0;
          continue;
        }
        rotate(a, v, p, q);
      }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return a(i, i).real() > a(j, j).real();
  });

  HermitianEigen out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

std::vector<double> eigenvalues_hermitian(const ComplexMatrix& m) {
  return eig_hermitian(m).values;
}

ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
  HermitianEigen e = eig_hermitian(m);
  for (double& lambda : e.values) {
    if (lambda < -kNegativeEigenTol)
      throw Error(Errc::not_psd, "eigenvalue " + std::to_string(lambda));
    lambda = std::sqrt(std::max(lambda, 0.0));
  }
  return e.reconstruct();
}

double purity(const ComplexMatrix& m) {
  // tr(m m) = sum_ij m_ij m_ji = sum_ij |m_ij|^2 for Hermitian m
  double s = 0.0;
  for (const auto& z : m.data()) s += std::norm(z);
  return s;
}

cplx determinant(const ComplexMatrix& m) {
  ComplexMatrix a = m;
  const std::size_t n = a.dim();
  cplx det = 1.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (a(pivot, col) == cplx{}) return 0.0;
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) std::swap(a(pivot, c), a(col, c));
      det = -det;
    }
    det *= a(col, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      const cplx f = a(r, col) / a(col, col);
      for (std::size_t c = col; c < n; ++c) a(r, c) -= f * a(col, c);
    }
  }
  return det;
}

cplx inner(std::span<const cplx> u, std::span<const cplx> v) {
  if (u.size() != v.size()) throw Error(Errc::dimension_mismatch, "inner product of unequal lengths");
  cplx s = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) s += std::conj(u[i]) * v[i];
  return s;
}

double norm(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

double entropy_term(double x) {
  if (x <= 0.0) return 0.0;
  return -x * std::log2(x);
}

double spectral_entropy(std::span<const double> spectrum) {
  double s = 0.0;
  for (double lambda : spectrum) s += entropy_term(lambda);
  return s;
}

}  // namespace chanfactor::linalg
