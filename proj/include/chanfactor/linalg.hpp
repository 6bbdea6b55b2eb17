#pragma once

// Dense complex linear algebra for the small Hilbert spaces used here
// (dimension <= 16). Row-major storage, value semantics throughout.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace chanfactor::linalg {

using cplx = std::complex<double>;
using ComplexVector = std::vector<cplx>;

class ComplexMatrix {
 public:
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<cplx> row_major);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  // |u><v|
  static ComplexMatrix outer(std::span<const cplx> u, std::span<const cplx> v);
  static ComplexMatrix projector(std::span<const cplx> psi) { return outer(psi, psi); }

  std::size_t dim() const noexcept { return dim_; }
  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }
  std::span<const cplx> data() const noexcept { return data_; }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  // max_{ij} |a_ij|
  double max_abs() const;
  // max_{ij} |a_ij - conj(a_ji)|
  double hermitian_defect() const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexVector operator*(const ComplexMatrix& a, std::span<const cplx> v);

 private:
  std::size_t dim_;
  std::vector<cplx> data_;
};

// Eigenvalues sorted descending; eigenvectors are the matching columns of
// `vectors` (orthonormal).
struct HermitianEigen {
  std::vector<double> values;
  ComplexMatrix vectors;

  ComplexVector vector(std::size_t k) const;
  ComplexMatrix reconstruct() const;
};

inline constexpr double kHermitianTol = 1e-8;
inline constexpr double kClampTol = 1e-10;
inline constexpr double kNegativeEigenTol = 1e-8;

// Cyclic Jacobi. Throws Error{not_hermitian} when the max asymmetry exceeds
// kHermitianTol; the input is symmetrized before rotating.
HermitianEigen eig_hermitian(const ComplexMatrix& m);

// Eigenvalues only, same ordering as eig_hermitian.
std::vector<double> eigenvalues_hermitian(const ComplexMatrix& m);

// Principal square root of a PSD matrix. Eigenvalues in [-kNegativeEigenTol, 0)
// are clamped to zero; anything lower throws Error{not_psd}.
ComplexMatrix psd_sqrt(const ComplexMatrix& m);

// tr(m^2) for Hermitian m.
double purity(const ComplexMatrix& m);

// LU with partial pivoting.
cplx determinant(const ComplexMatrix& m);

cplx inner(std::span<const cplx> u, std::span<const cplx> v);  // <u|v>
double norm(std::span<const cplx> v);

// -x log2 x with 0 log 0 = 0 and x clamped at zero for |x| <= kClampTol.
double entropy_term(double x);

// -sum lambda log2 lambda over a spectrum.
double spectral_entropy(std::span<const double> spectrum);

}  // namespace chanfactor::linalg
