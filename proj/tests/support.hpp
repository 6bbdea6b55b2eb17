#pragma once

// Seeded generators and independent oracles shared by the unit and
// acceptance suites. Oracles here deliberately avoid the library's own
// computational paths (no Jacobi, no causal_partition).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "chanfactor/channel.hpp"
#include "chanfactor/linalg.hpp"
#include "chanfactor/qfactor.hpp"

namespace testsupport {

using chanfactor::Channel;
using chanfactor::DensityMatrix;
using chanfactor::PureState;
using chanfactor::Row;
using chanfactor::linalg::ComplexMatrix;
using chanfactor::linalg::ComplexVector;
using chanfactor::linalg::cplx;

using Rng = std::mt19937_64;

inline std::vector<double> random_simplex(std::size_t n, Rng& rng, double floor = 0.0) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> v(n);
  double s = 0.0;
  for (auto& x : v) {
    x = expo(rng) + floor;
    s += x;
  }
  for (auto& x : v) x /= s;
  return v;
}

// Random row-stochastic matrix; with probability `sparse` an entry is zeroed
// before normalization (at least one entry survives).
inline Row random_row(std::size_t m, Rng& rng, double sparse = 0.0) {
  std::bernoulli_distribution drop(sparse);
  std::exponential_distribution<double> expo(1.0);
  Row r(m);
  double s = 0.0;
  for (auto& x : r) {
    x = drop(rng) ? 0.0 : expo(rng);
    s += x;
  }
  if (s == 0.0) {
    r[std::uniform_int_distribution<std::size_t>(0, m - 1)(rng)] = 1.0;
    return r;
  }
  for (auto& x : r) x /= s;
  return r;
}

struct PlantedChannel {
  Channel channel;
  std::size_t planted_classes;
  std::vector<std::size_t> truth;  // class id per input, ids in first-appearance order
};

// `distinct` distinct rows, each copied into several inputs in shuffled order.
inline PlantedChannel planted_channel(std::size_t inputs, std::size_t distinct, std::size_t outputs,
                                      Rng& rng, double sparse = 0.0) {
  std::vector<Row> base;
  while (base.size() < distinct) {
    Row r = random_row(outputs, rng, sparse);
    bool dup = false;
    for (const auto& b : base) {
      double d = 0.0;
      for (std::size_t y = 0; y < outputs; ++y) d = std::max(d, std::abs(b[y] - r[y]));
      if (d < 1e-6) dup = true;
    }
    if (!dup) base.push_back(std::move(r));
  }
  std::vector<std::size_t> assign(inputs);
  for (std::size_t x = 0; x < inputs; ++x) assign[x] = x < distinct ? x : rng() % distinct;
  std::shuffle(assign.begin(), assign.end(), rng);
  std::vector<Row> rows;
  for (std::size_t x = 0; x < inputs; ++x) rows.push_back(base[assign[x]]);

  std::vector<std::size_t> relabel(distinct, distinct), truth(inputs);
  std::size_t next = 0;
  for (std::size_t x = 0; x < inputs; ++x) {
    if (relabel[assign[x]] == distinct) relabel[assign[x]] = next++;
    truth[x] = relabel[assign[x]];
  }
  return {Channel::from_rows(std::move(rows)), distinct, truth};
}

// Random channel with up to `max_in` inputs and `max_out` outputs, with some
// planted duplicate rows.
inline Channel random_channel(Rng& rng, std::size_t max_in = 8, std::size_t max_out = 8) {
  std::uniform_int_distribution<std::size_t> nin(1, max_in), nout(1, max_out);
  const std::size_t n = nin(rng);
  const std::size_t m = nout(rng);
  const std::size_t distinct = std::uniform_int_distribution<std::size_t>(1, n)(rng);
  // With one output every row equals (1); only one distinct row exists.
  return planted_channel(n, m == 1 ? 1 : distinct, m, rng, 0.2).channel;
}

// Brute-force oracle: x ~ x' iff rows equal within tol; classes numbered by
// first appearance.
inline std::vector<std::size_t> brute_force_classes(const Channel& c, double tol) {
  const std::size_t n = c.num_inputs();
  std::vector<std::size_t> label(n, n);
  std::size_t next = 0;
  for (std::size_t x = 0; x < n; ++x) {
    if (label[x] != n) continue;
    label[x] = next;
    for (std::size_t x2 = x + 1; x2 < n; ++x2) {
      bool same = true;
      for (std::size_t y = 0; y < c.num_outputs(); ++y)
        if (std::abs(c(x, y) - c(x2, y)) > tol) same = false;
      if (same) label[x2] = next;
    }
    ++next;
  }
  return label;
}

inline ComplexVector random_complex_vector(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g;
  ComplexVector v(n);
  for (auto& z : v) z = cplx{g(rng), g(rng)};
  return v;
}

inline PureState random_pure(std::size_t n, Rng& rng) {
  return PureState::normalized(random_complex_vector(n, rng));
}

inline PureState random_rebit(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g;
  ComplexVector v(n);
  for (auto& z : v) z = g(rng);
  return PureState::normalized(std::move(v));
}

inline ComplexMatrix random_matrix(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix m(n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = cplx{g(rng), g(rng)};
  return m;
}

inline ComplexMatrix random_hermitian(std::size_t n, Rng& rng) {
  ComplexMatrix a = random_matrix(n, rng);
  return (a + a.adjoint()) * cplx{0.5};
}

// Gram-Schmidt on Gaussian columns.
inline ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
  ComplexMatrix a = random_matrix(n, rng);
  ComplexMatrix q(n);
  for (std::size_t c = 0; c < n; ++c) {
    ComplexVector v(n);
    for (std::size_t r = 0; r < n; ++r) v[r] = a(r, c);
    for (std::size_t k = 0; k < c; ++k) {
      cplx d = 0.0;
      for (std::size_t r = 0; r < n; ++r) d += std::conj(q(r, k)) * v[r];
      for (std::size_t r = 0; r < n; ++r) v[r] -= d * q(r, k);
    }
    double nrm = 0.0;
    for (const auto& z : v) nrm += std::norm(z);
    nrm = std::sqrt(nrm);
    for (std::size_t r = 0; r < n; ++r) q(r, c) = v[r] / nrm;
  }
  return q;
}

// B^dagger B / tr, optionally rank-deficient.
inline DensityMatrix random_density(std::size_t n, Rng& rng, std::size_t rank = 0) {
  if (rank == 0) rank = n;
  ComplexMatrix b(n);
  std::normal_distribution<double> g;
  for (std::size_t r = 0; r < rank; ++r)
    for (std::size_t c = 0; c < n; ++c) b(r, c) = cplx{g(rng), g(rng)};
  ComplexMatrix m = b.adjoint() * b;
  m *= cplx{1.0 / m.trace().real()};
  return DensityMatrix(m);
}

// Roots of the 2x2 Hermitian characteristic polynomial, descending.
inline std::pair<double, double> eig2_closed_form(const ComplexMatrix& m) {
  const double a = m(0, 0).real();
  const double d = m(1, 1).real();
  const double off = std::norm(m(0, 1));
  const double mean = 0.5 * (a + d);
  const double rad = std::sqrt(0.25 * (a - d) * (a - d) + off);
  return {mean + rad, mean - rad};
}

inline cplx det2(const ComplexMatrix& m) { return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0); }

inline double entropy_of(const std::vector<double>& spectrum) {
  double s = 0.0;
  for (double l : spectrum)
    if (l > 0.0) s -= l * std::log2(l);
  return s;
}

// OPWO ensemble in `dim` dims: `pairs` nonorthogonal pairs each living in its
// own 2D coordinate subspace, then `singles` states on the remaining axes.
// Returns the overlap magnitudes of each pair in `overlaps`.
struct OpwoSpec {
  std::vector<double> weights;
  std::vector<double> overlaps;  // per pair, in (0, 1)
  std::vector<double> phases;    // per pair relative phase
  std::size_t pairs;
  std::size_t singles;
};

inline OpwoSpec random_opwo_spec(Rng& rng, std::size_t max_pairs = 3, std::size_t max_singles = 2) {
  OpwoSpec s;
  s.pairs = std::uniform_int_distribution<std::size_t>(1, max_pairs)(rng);
  s.singles = std::uniform_int_distribution<std::size_t>(0, max_singles)(rng);
  s.weights = random_simplex(2 * s.pairs + s.singles, rng, 0.05);
  std::uniform_real_distribution<double> ov(0.05, 0.6), ph(0.0, 2.0 * M_PI);
  for (std::size_t k = 0; k < s.pairs; ++k) {
    s.overlaps.push_back(ov(rng));
    s.phases.push_back(ph(rng));
  }
  return s;
}

inline chanfactor::PureEnsemble build_opwo(const OpwoSpec& s) {
  const std::size_t dim = 2 * s.pairs + s.singles;
  std::vector<PureState> states;
  for (std::size_t k = 0; k < s.pairs; ++k) {
    ComplexVector u(dim), v(dim);
    u[2 * k] = 1.0;
    const double c = s.overlaps[k];
    v[2 * k] = c * std::polar(1.0, s.phases[k]);
    v[2 * k + 1] = std::sqrt(1.0 - c * c);
    states.emplace_back(u);
    states.push_back(PureState::normalized(v));
  }
  for (std::size_t k = 0; k < s.singles; ++k) states.push_back(PureState::basis(dim, 2 * s.pairs + k));
  return chanfactor::PureEnsemble(s.weights, std::move(states));
}

}  // namespace testsupport
