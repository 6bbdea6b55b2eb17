#include "chanfactor/qfactor.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "chanfactor/error.hpp"

namespace chanfactor {

PureState::PureState(ComplexVector amplitudes) : amp_(std::move(amplitudes)) {
  if (amp_.empty()) throw Error(Errc::invalid_state, "empty state vector");
  const double n = linalg::norm(amp_);
  if (std::abs(n - 1.0) > kNormTol)
    throw Error(Errc::invalid_state, "state norm " + std::to_string(n));
}

PureState PureState::normalized(ComplexVector amplitudes) {
  const double n = linalg::norm(amplitudes);
  if (!(n > 0.0)) throw Error(Errc::invalid_state, "cannot normalize the zero vector");
  for (auto& z : amplitudes) z /= n;
  return PureState(std::move(amplitudes));
}

PureState PureState::basis(std::size_t dim, std::size_t k) {
  if (k >= dim) throw Error(Errc::index_out_of_range, "basis index");
  ComplexVector v(dim);
  v[k] = 1.0;
  return PureState(std::move(v));
}

cplx overlap(const PureState& a, const PureState& b) {
  return linalg::inner(a.amplitudes(), b.amplitudes());
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  const double defect = m_.hermitian_defect();
  if (defect > kNormTol)
    throw Error(Errc::invalid_state, "not Hermitian (asymmetry " + std::to_string(defect) + ")");
  const cplx tr = m_.trace();
  if (std::abs(tr - 1.0) > kTraceTol)
    throw Error(Errc::invalid_state, "trace " + std::to_string(tr.real()));
  const auto spec = linalg::eigenvalues_hermitian(m_);
  if (spec.back() < -kNormTol)
    throw Error(Errc::invalid_state, "negative eigenvalue " + std::to_string(spec.back()));
}

DensityMatrix::DensityMatrix(const PureState& psi) : m_(psi.projector()) {}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(ComplexMatrix::identity(dim) * cplx{1.0 / static_cast<double>(dim)});
}

POVM::POVM(std::vector<ComplexMatrix> elements) : elements_(std::move(elements)) {
  if (elements_.empty()) throw Error(Errc::invalid_povm, "no elements");
  const std::size_t d = elements_.front().dim();
  ComplexMatrix sum(d);
  for (std::size_t y = 0; y < elements_.size(); ++y) {
    const auto& e = elements_[y];
    if (e.dim() != d) throw Error(Errc::invalid_povm, "elements of different dimension");
    if (e.hermitian_defect() > kPovmTol)
      throw Error(Errc::invalid_povm, "element " + std::to_string(y) + " not Hermitian");
    if (linalg::eigenvalues_hermitian(e).back() < -kPovmTol)
      throw Error(Errc::invalid_povm, "element " + std::to_string(y) + " not PSD");
    sum += e;
  }
  const double defect = (sum - ComplexMatrix::identity(d)).max_abs();
  if (defect > kPovmTol)
    throw Error(Errc::invalid_povm, "elements sum to identity only within " + std::to_string(defect));
}

POVM POVM::computational(std::size_t dim) {
  std::vector<ComplexMatrix> elements;
  for (std::size_t y = 0; y < dim; ++y) elements.push_back(PureState::basis(dim, y).projector());
  return POVM(std::move(elements));
}

double POVM::probability(std::size_t y, const DensityMatrix& rho) const {
  const ComplexMatrix& e = elements_.at(y);
  if (e.dim() != rho.dim()) throw Error(Errc::dimension_mismatch, "POVM and state dimensions differ");
  // tr(E rho) = sum_ij E_ij rho_ji
  cplx t = 0.0;
  for (std::size_t i = 0; i < e.dim(); ++i)
    for (std::size_t j = 0; j < e.dim(); ++j) t += e(i, j) * rho.matrix()(j, i);
  return t.real();
}

std::vector<double> POVM::distribution(const DensityMatrix& rho) const {
  std::vector<double> out(elements_.size());
  for (std::size_t y = 0; y < out.size(); ++y) out[y] = probability(y, rho);
  return out;
}

namespace {

void check_weights(const std::vector<double>& weights) {
  if (weights.empty()) throw Error(Errc::invalid_distribution, "empty ensemble");
  double sum = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0 || w > 1.0)
      throw Error(Errc::invalid_distribution, "weight outside [0,1]");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kTraceTol)
    throw Error(Errc::invalid_distribution, "weights sum to " + std::to_string(sum));
}

PureState sqrt_amplitudes(const Row& row) {
  ComplexVector amp(row.size());
  for (std::size_t y = 0; y < row.size(); ++y) amp[y] = std::sqrt(row[y]);
  return PureState::normalized(std::move(amp));
}

}  // namespace

Ensemble::Ensemble(std::vector<double> weights, std::vector<DensityMatrix> states)
    : weights_(std::move(weights)), states_(std::move(states)) {
  if (weights_.size() != states_.size())
    throw Error(Errc::dimension_mismatch, "weights and states differ in count");
  check_weights(weights_);
  for (const auto& s : states_)
    if (s.dim() != states_.front().dim())
      throw Error(Errc::dimension_mismatch, "ensemble states of different dimension");
}

PureEnsemble::PureEnsemble(std::vector<double> weights, std::vector<PureState> states)
    : weights_(std::move(weights)), states_(std::move(states)) {
  if (weights_.size() != states_.size())
    throw Error(Errc::dimension_mismatch, "weights and states differ in count");
  check_weights(weights_);
  for (const auto& s : states_)
    if (s.dim() != states_.front().dim())
      throw Error(Errc::dimension_mismatch, "ensemble states of different dimension");
}

Ensemble PureEnsemble::mixed() const {
  std::vector<DensityMatrix> states(states_.begin(), states_.end());
  return Ensemble(weights_, std::move(states));
}

QFactorization g0_construct(const Channel& c, const Partition& p) {
  if (p.num_elements() != c.num_inputs())
    throw Error(Errc::invalid_partition, "partition does not cover the channel inputs");
  std::vector<PureState> pure;
  std::vector<DensityMatrix> signals;
  for (std::size_t k = 0; k < p.num_classes(); ++k) {
    pure.push_back(sqrt_amplitudes(c.row(p.representative(k))));
    signals.emplace_back(pure.back());
  }
  return QFactorization{p, std::move(signals), std::move(pure), POVM::computational(c.num_outputs())};
}

QFactorization g0_construct(const Channel& c, double tol) {
  return g0_construct(c, causal_partition(c, tol));
}

QFactorReport verify_qfactorization(const Channel& c, const QFactorization& q, double tol) {
  QFactorReport report;
  if (q.partition.num_elements() != c.num_inputs() ||
      q.signals.size() != q.partition.num_classes() || q.povm.size() != c.num_outputs()) {
    report.ok = report.shape_ok = false;
    return report;
  }
  for (const auto& s : q.signals)
    if (s.dim() != q.povm.dim()) {
      report.ok = report.shape_ok = false;
      return report;
    }
  for (std::size_t x = 0; x < c.num_inputs(); ++x) {
    const auto produced = q.povm.distribution(q.signal_of_input(x));
    for (std::size_t y = 0; y < c.num_outputs(); ++y) {
      if (std::abs(produced[y] - c(x, y)) > tol)
        report.violations.push_back({x, y, c(x, y), produced[y]});
    }
  }
  report.ok = report.violations.empty();
  return report;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return linalg::spectral_entropy(rho.spectrum());
}

DensityMatrix average_state(const Ensemble& e) {
  ComplexMatrix sum(e.dim());
  for (std::size_t i = 0; i < e.size(); ++i) sum += e.states()[i].matrix() * cplx{e.weights()[i]};
  return DensityMatrix(std::move(sum));
}

DensityMatrix average_state(const PureEnsemble& e) {
  ComplexMatrix sum(e.dim());
  for (std::size_t i = 0; i < e.size(); ++i) sum += e.states()[i].projector() * cplx{e.weights()[i]};
  return DensityMatrix(std::move(sum));
}

DensityMatrix average_signal_state(const QFactorization& q, const Distribution& d) {
  if (d.size() != q.partition.num_elements())
    throw Error(Errc::alphabet_mismatch, "distribution does not match the input alphabet");
  const Distribution z = pushforward(d, q.partition);
  ComplexMatrix sum(q.signals.front().dim());
  for (std::size_t k = 0; k < q.signals.size(); ++k) sum += q.signals[k].matrix() * cplx{z[k]};
  return DensityMatrix(std::move(sum));
}

namespace {

constexpr double kPureDetectTol = 1e-12;

// sqrt(<psi|s|psi>) where psi is the dominant eigenvector of a pure `p`.
double pure_fidelity(const DensityMatrix& p, const DensityMatrix& s) {
  const auto e = linalg::eig_hermitian(p.matrix());
  const ComplexVector psi = e.vector(0);
  const ComplexVector s_psi = s.matrix() * std::span<const cplx>(psi);
  return std::sqrt(std::max(0.0, linalg::inner(psi, s_psi).real()));
}

}  // namespace

double quantum_fidelity(const DensityMatrix& s1, const DensityMatrix& s2) {
  if (s1.dim() != s2.dim()) throw Error(Errc::dimension_mismatch, "fidelity of different dimensions");
  double f = 0.0;
  if (std::abs(s1.purity() - 1.0) <= kPureDetectTol) {
    f = pure_fidelity(s1, s2);
  } else if (std::abs(s2.purity() - 1.0) <= kPureDetectTol) {
    f = pure_fidelity(s2, s1);
  } else {
    const ComplexMatrix r = linalg::psd_sqrt(s1.matrix());
    const ComplexMatrix inner = r * s2.matrix() * r;
    f = linalg::psd_sqrt(inner).trace().real();
  }
  return std::clamp(f, 0.0, 1.0);
}

double quantum_fidelity(const PureState& a, const PureState& b) {
  return std::min(1.0, std::abs(overlap(a, b)));
}

MergeResult merge(const Ensemble& e, std::size_t j, std::size_t k) {
  if (j >= e.size() || k >= e.size())
    throw Error(Errc::index_out_of_range, "merge index beyond ensemble size " + std::to_string(e.size()));
  if (j == k) throw Error(Errc::invalid_argument, "merge requires two distinct states");

  auto moved = [&](std::size_t from, std::size_t to) {
    std::vector<double> w;
    std::vector<DensityMatrix> s;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i == from) continue;
      // Two weights that sum to 1 can round just past it.
      w.push_back(i == to ? std::min(1.0, e.weights()[from] + e.weights()[to]) : e.weights()[i]);
      s.push_back(e.states()[i]);
    }
    return Ensemble(std::move(w), std::move(s));
  };
  return MergeResult{moved(j, k), moved(k, j)};
}

namespace {

std::vector<std::vector<std::size_t>> overlap_graph(const PureEnsemble& e, double tol) {
  std::vector<std::vector<std::size_t>> adj(e.size());
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j)
      if (std::abs(overlap(e.states()[i], e.states()[j])) > tol) {
        adj[i].push_back(j);
        adj[j].push_back(i);
      }
  return adj;
}

}  // namespace

bool is_opwo(const PureEnsemble& e, double tol) {
  const auto adj = overlap_graph(e, tol);
  return std::all_of(adj.begin(), adj.end(), [](const auto& n) { return n.size() <= 1; });
}

std::vector<std::size_t> opwo_block_order(const PureEnsemble& e, double tol) {
  const auto adj = overlap_graph(e, tol);
  std::vector<bool> placed(e.size(), false);
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (placed[i]) continue;
    placed[i] = true;
    order.push_back(i);
    for (std::size_t j : adj[i])
      if (!placed[j]) {
        placed[j] = true;
        order.push_back(j);
      }
  }
  return order;
}

ComplexMatrix gram_matrix(const PureEnsemble& e) {
  ComplexMatrix g(e.size());
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = 0; j < e.size(); ++j)
      g(i, j) = std::sqrt(e.weights()[i] * e.weights()[j]) * overlap(e.states()[i], e.states()[j]);
  return g;
}

FidelityReport fidelity_bound_check(const Channel& c, const QFactorization& q) {
  FidelityReport report;
  const std::size_t n = q.signals.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double fq = q.pure_signals
                            ? quantum_fidelity((*q.pure_signals)[i], (*q.pure_signals)[j])
                            : quantum_fidelity(q.signals[i], q.signals[j]);
      const double fc = classical_fidelity(c.row(q.partition.representative(i)),
                                           c.row(q.partition.representative(j)));
      const double slack = fc - fq;
      const PairFidelity pf{i, j, fq, fc, slack, std::abs(slack) < kSaturationTol};
      report.bound_holds = report.bound_holds && slack >= -kSaturationTol;
      report.all_saturated = report.all_saturated && pf.saturated;
      report.pairs.push_back(pf);
    }
  return report;
}

namespace {

// Haar-ish random orthogonal matrix via Gram-Schmidt on Gaussian columns.
std::vector<std::vector<double>> random_orthogonal(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  std::vector<std::vector<double>> cols;
  while (cols.size() < n) {
    std::vector<double> v(n);
    for (auto& x : v) x = gauss(rng);
    for (const auto& u : cols) {
      double d = 0.0;
      for (std::size_t i = 0; i < n; ++i) d += u[i] * v[i];
      for (std::size_t i = 0; i < n; ++i) v[i] -= d * u[i];
    }
    double nrm = 0.0;
    for (double x : v) nrm += x * x;
    nrm = std::sqrt(nrm);
    if (nrm < 1e-8) continue;
    for (auto& x : v) x /= nrm;
    cols.push_back(std::move(v));
  }
  return cols;
}

}  // namespace

TwoClassSearchReport two_class_rebit_search(const Channel& c, const Distribution& d,
                                            std::size_t samples, std::uint64_t seed) {
  const QFactorization g0 = g0_construct(c);
  if (g0.partition.num_classes() != 2)
    throw Error(Errc::invalid_argument, "two-class search needs exactly two causal classes");
  const Distribution z = pushforward(d, g0.partition);
  const std::size_t m = c.num_outputs();

  TwoClassSearchReport report;
  report.g0_entropy = von_neumann_entropy(average_signal_state(g0, d));
  report.best_alternative_entropy = report.g0_entropy;
  report.samples = samples;

  for (std::size_t s = 0; s < samples; ++s) {
    // One independent stream per sample keeps results independent of any
    // later work splitting.
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(s >> 32)};
    std::mt19937_64 rng(seq);
    std::bernoulli_distribution coin;
    const auto rot = random_orthogonal(m, rng);

    std::vector<PureState> states;
    for (std::size_t k = 0; k < 2; ++k) {
      const Row& row = c.row(g0.partition.representative(k));
      std::vector<double> signed_amp(m);
      for (std::size_t y = 0; y < m; ++y) signed_amp[y] = (coin(rng) ? 1.0 : -1.0) * std::sqrt(row[y]);
      ComplexVector rotated(m);
      for (std::size_t y = 0; y < m; ++y)
        for (std::size_t col = 0; col < m; ++col) rotated[y] += rot[col][y] * signed_amp[col];
      states.push_back(PureState::normalized(std::move(rotated)));
    }
    std::vector<ComplexMatrix> povm;
    for (std::size_t col = 0; col < m; ++col) {
      ComplexVector u(rot[col].begin(), rot[col].end());
      povm.push_back(ComplexMatrix::projector(u));
    }
    std::vector<DensityMatrix> signals(states.begin(), states.end());
    QFactorization alt{g0.partition, std::move(signals), states, POVM(std::move(povm))};
    if (verify_qfactorization(c, alt, 1e-9).ok) ++report.verified_samples;

    const double s_alt = von_neumann_entropy(average_state(PureEnsemble({z[0], z[1]}, states)));
    report.best_alternative_entropy = std::min(report.best_alternative_entropy, s_alt);
  }
  report.g0_minimal = report.best_alternative_entropy >= report.g0_entropy - 1e-9;
  return report;
}

}  // namespace chanfactor
