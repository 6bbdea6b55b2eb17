#include "chanfactor/casestudy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "chanfactor/error.hpp"

namespace chanfactor::sic {

namespace {

constexpr double kHalfSqrt3 = 0.86602540378443864676372317075293618;  // sqrt(3)/2
constexpr double kInvSqrt2 = 0.70710678118654752440084436210484904;   // 1/sqrt(2)

// e^{+-2 pi i / 3} / sqrt(2)
const cplx kOmegaOverSqrt2{-0.5 * kInvSqrt2, kHalfSqrt3 * kInvSqrt2};
const cplx kOmegaBarOverSqrt2{-0.5 * kInvSqrt2, -kHalfSqrt3 * kInvSqrt2};

POVM make_m8(const std::array<PureState, 9>& r) {
  const ComplexMatrix folded = r[0].projector() * cplx{1.0 / 24.0};
  std::vector<ComplexMatrix> elements;
  for (std::size_t i = 1; i < 9; ++i) elements.push_back(r[i].projector() * cplx{1.0 / 3.0} + folded);
  return POVM(std::move(elements));
}

}  // namespace

SicFamily build_sic_family() {
  std::array<PureState, 9> r{
      PureState({1.0, 0.0, 0.0}),
      PureState({0.5, cplx{0.0, kHalfSqrt3}, 0.0}),
      PureState({0.5, cplx{0.0, -kHalfSqrt3}, 0.0}),
      PureState({0.5, 0.5, kInvSqrt2}),
      PureState({0.5, 0.5, kOmegaOverSqrt2}),
      PureState({0.5, 0.5, kOmegaBarOverSqrt2}),
      PureState({0.5, -0.5, kInvSqrt2}),
      PureState({0.5, -0.5, kOmegaOverSqrt2}),
      PureState({0.5, -0.5, kOmegaBarOverSqrt2}),
  };
  POVM m8 = make_m8(r);
  return SicFamily{std::move(r), std::move(m8), DensityMatrix(PureState::basis(3, 2))};
}

DensityMatrix rho_a(double t) {
  if (!(t >= kTMin && t <= kTMax))
    throw Error(Errc::t_out_of_range, "t = " + std::to_string(t) + " outside [-0.5, 1]");
  const double mixed = (1.0 - t) / 3.0;
  const std::array<double, 3> diag{mixed + t, mixed, mixed};
  return DensityMatrix(ComplexMatrix::diagonal(diag));
}

DensityMatrix rho_t(const SicFamily& f, double t) {
  return DensityMatrix((rho_a(t).matrix() + f.rho_b.matrix()) * cplx{0.5});
}

Channel family_channel(const SicFamily& f, double t) {
  const DensityMatrix a = rho_a(t);
  std::vector<std::string> outputs;
  for (std::size_t i = 0; i < f.m8.size(); ++i) outputs.push_back(std::to_string(i));
  return Channel({"A", "B"}, std::move(outputs), {f.m8.distribution(a), f.m8.distribution(f.rho_b)});
}

QFactorization family_qfactorization(const SicFamily& f, double t) {
  return QFactorization{Partition::singletons(2), {rho_a(t), f.rho_b}, std::nullopt, f.m8};
}

CurveSummary entropy_purity_curve(const SicFamily& f, std::size_t n_points) {
  if (n_points < 3) throw Error(Errc::invalid_argument, "need at least 3 curve points");
  CurveSummary out;
  const double span = kTMax - kTMin;
  for (std::size_t i = 0; i < n_points; ++i) {
    double t = kTMin + span * static_cast<double>(i) / static_cast<double>(n_points - 1);
    if (i == n_points - 1) t = kTMax;
    const DensityMatrix rt = rho_t(f, t);
    out.points.push_back({t, von_neumann_entropy(rt), rt.purity(), von_neumann_entropy(rho_a(t))});
  }

  const auto& p = out.points;
  for (std::size_t i = 1; i < p.size(); ++i)
    if (p[i].entropy_rho_t < p[out.global_min_index].entropy_rho_t) out.global_min_index = i;

  for (std::size_t i = 0; i < p.size(); ++i) {
    const bool left_ok = i == 0 || p[i].entropy_rho_t <= p[i - 1].entropy_rho_t;
    const bool right_ok = i + 1 == p.size() || p[i].entropy_rho_t <= p[i + 1].entropy_rho_t;
    if (left_ok && right_ok) out.local_min_indices.push_back(i);
  }

  std::size_t begin = 0;
  int dir = 0;
  for (std::size_t i = 1; i < p.size(); ++i) {
    const double d = p[i].entropy_rho_t - p[i - 1].entropy_rho_t;
    const int step_dir = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (dir == 0) {
      dir = step_dir;
    } else if (step_dir != dir) {
      out.segments.push_back({begin, i - 1, dir});
      begin = i - 1;
      dir = step_dir;
    }
  }
  out.segments.push_back({begin, p.size() - 1, dir});
  return out;
}

ConstraintRank constraint_rank(const SicFamily& f, double tol) {
  // Orthonormal (Hilbert-Schmidt) basis of trace-zero Hermitian 3x3 matrices.
  std::vector<ComplexMatrix> basis;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      ComplexMatrix sym(3), asym(3);
      sym(i, j) = sym(j, i) = kInvSqrt2;
      asym(i, j) = cplx{0.0, -kInvSqrt2};
      asym(j, i) = cplx{0.0, kInvSqrt2};
      basis.push_back(sym);
      basis.push_back(asym);
    }
  const std::array<double, 3> d1{kInvSqrt2, -kInvSqrt2, 0.0};
  const double s6 = 1.0 / std::sqrt(6.0);
  const std::array<double, 3> d2{s6, s6, -2.0 * s6};
  basis.push_back(ComplexMatrix::diagonal(d1));
  basis.push_back(ComplexMatrix::diagonal(d2));

  const std::size_t rows = f.m8.size();
  const std::size_t cols = basis.size();
  std::vector<std::vector<double>> a(rows, std::vector<double>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t b = 0; b < cols; ++b) {
      cplx t = 0.0;
      for (std::size_t r = 0; r < 3; ++r)
        for (std::size_t c = 0; c < 3; ++c) t += f.m8[i](r, c) * basis[b](c, r);
      a[i][b] = t.real();
    }

  // Singular values via the spectrum of A^T A.
  ComplexMatrix ata(cols);
  for (std::size_t p = 0; p < cols; ++p)
    for (std::size_t q = 0; q < cols; ++q) {
      double s = 0.0;
      for (std::size_t i = 0; i < rows; ++i) s += a[i][p] * a[i][q];
      ata(p, q) = s;
    }
  const auto eig = linalg::eig_hermitian(ata);
  // Thresholds act on squared singular values; their round-off is ~eps.
  const double top = std::max(eig.values.front(), 0.0);

  ConstraintRank out;
  for (double v : eig.values)
    if (v > tol * std::max(top, 1.0)) ++out.rank;
  out.kernel_dim = cols - out.rank;
  if (out.kernel_dim > 0) {
    auto v = eig.vector(cols - 1);
    // Fix the arbitrary eigenvector phase so the coefficients are real.
    const auto peak = *std::max_element(v.begin(), v.end(),
                                        [](cplx x, cplx y) { return std::abs(x) < std::abs(y); });
    const cplx unphase = std::conj(peak) / std::abs(peak);
    ComplexMatrix dir(3);
    for (std::size_t b = 0; b < cols; ++b) dir += basis[b] * cplx{(v[b] * unphase).real()};
    out.kernel_direction = dir;
  }
  return out;
}

}  // namespace chanfactor::sic
