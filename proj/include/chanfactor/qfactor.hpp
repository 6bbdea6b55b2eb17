#pragma once

// Quantum factorizations X -> rho = g(X) -> Y: states, POVMs, the canonical
// square-root-amplitude construction (G0), entropies, fidelities, ensemble
// merging, and the pairwise-overlap (OPWO) analysis.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chanfactor/channel.hpp"
#include "chanfactor/linalg.hpp"

namespace chanfactor {

using linalg::ComplexMatrix;
using linalg::ComplexVector;
using linalg::cplx;

inline constexpr double kNormTol = 1e-10;
inline constexpr double kTraceTol = 1e-9;
inline constexpr double kPovmTol = 1e-9;
inline constexpr double kOverlapTol = 1e-9;
inline constexpr double kSaturationTol = 1e-9;

class PureState {
 public:
  // Throws Error{invalid_state} unless ||amplitudes|| = 1 within kNormTol.
  explicit PureState(ComplexVector amplitudes);
  // Normalizes first; throws on the zero vector.
  static PureState normalized(ComplexVector amplitudes);
  static PureState basis(std::size_t dim, std::size_t k);

  std::size_t dim() const noexcept { return amp_.size(); }
  std::span<const cplx> amplitudes() const noexcept { return amp_; }
  const cplx& operator[](std::size_t i) const { return amp_.at(i); }
  ComplexMatrix projector() const { return ComplexMatrix::projector(amp_); }

 private:
  ComplexVector amp_;
};

cplx overlap(const PureState& a, const PureState& b);  // <a|b>

class DensityMatrix {
 public:
  // Throws Error{invalid_state} unless Hermitian within kNormTol, trace 1
  // within kTraceTol and eigenvalues >= -kNormTol.
  explicit DensityMatrix(ComplexMatrix m);
  DensityMatrix(const PureState& psi);  // NOLINT(google-explicit-constructor)
  static DensityMatrix maximally_mixed(std::size_t dim);

  std::size_t dim() const noexcept { return m_.dim(); }
  const ComplexMatrix& matrix() const noexcept { return m_; }
  std::vector<double> spectrum() const { return linalg::eigenvalues_hermitian(m_); }
  double purity() const { return linalg::purity(m_); }

 private:
  ComplexMatrix m_;
};

class POVM {
 public:
  // Throws Error{invalid_povm} unless every element is Hermitian PSD and the
  // elements sum to the identity within kPovmTol.
  explicit POVM(std::vector<ComplexMatrix> elements);
  // { |y><y| : y = 0..dim-1 }
  static POVM computational(std::size_t dim);

  std::size_t size() const noexcept { return elements_.size(); }
  std::size_t dim() const noexcept { return elements_.front().dim(); }
  const std::vector<ComplexMatrix>& elements() const noexcept { return elements_; }
  const ComplexMatrix& operator[](std::size_t y) const { return elements_.at(y); }

  // tr(E_y rho)
  double probability(std::size_t y, const DensityMatrix& rho) const;
  std::vector<double> distribution(const DensityMatrix& rho) const;

 private:
  std::vector<ComplexMatrix> elements_;
};

// Signal state per partition class (g = phi o f) plus the measurement.
struct QFactorization {
  Partition partition;
  std::vector<DensityMatrix> signals;
  // Present when every signal is pure; amplitudes of signals[k].
  std::optional<std::vector<PureState>> pure_signals;
  POVM povm;

  const DensityMatrix& signal_of_input(std::size_t x) const {
    return signals.at(partition.class_of(x));
  }
};

class Ensemble {
 public:
  // Throws Error{invalid_distribution} when weights do not sum to 1 within
  // kTraceTol, Error{dimension_mismatch} on mixed dimensions.
  Ensemble(std::vector<double> weights, std::vector<DensityMatrix> states);

  std::size_t size() const noexcept { return weights_.size(); }
  std::size_t dim() const noexcept { return states_.front().dim(); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<DensityMatrix>& states() const noexcept { return states_; }

 private:
  std::vector<double> weights_;
  std::vector<DensityMatrix> states_;
};

class PureEnsemble {
 public:
  PureEnsemble(std::vector<double> weights, std::vector<PureState> states);

  std::size_t size() const noexcept { return weights_.size(); }
  std::size_t dim() const noexcept { return states_.front().dim(); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<PureState>& states() const noexcept { return states_; }
  Ensemble mixed() const;

 private:
  std::vector<double> weights_;
  std::vector<PureState> states_;
};

struct QViolation {
  std::size_t input;
  std::size_t output;
  double expected;
  double produced;
};

struct QFactorReport {
  bool ok = true;
  bool shape_ok = true;
  std::vector<QViolation> violations;
};

// Signal |psi_z> = sum_j sqrt(P(y_j|z)) |y_j> per class of the causal
// partition, measured in the computational basis.
QFactorization g0_construct(const Channel& c, double tol = kDefaultRowTol);

// Same construction over an explicit partition, using each class
// representative's row. A partition that is not a factorization partition
// yields a QFactorization that fails verification.
QFactorization g0_construct(const Channel& c, const Partition& p);

QFactorReport verify_qfactorization(const Channel& c, const QFactorization& q, double tol);

double von_neumann_entropy(const DensityMatrix& rho);

DensityMatrix average_state(const Ensemble& e);
DensityMatrix average_state(const PureEnsemble& e);

// Average signal state rho_g = sum_x P(x) g(x).
DensityMatrix average_signal_state(const QFactorization& q, const Distribution& d);

// Uhlmann fidelity tr sqrt(sqrt(s1) s2 sqrt(s1)). When either argument is
// pure (purity within 1e-12 of 1) the exact form sqrt(<psi|s|psi>) is used.
double quantum_fidelity(const DensityMatrix& s1, const DensityMatrix& s2);
double quantum_fidelity(const PureState& a, const PureState& b);

struct MergeResult {
  // rho^{j->k}: weight of j moved onto state k; state j dropped.
  Ensemble j_into_k;
  // rho^{k->j}
  Ensemble k_into_j;
};

MergeResult merge(const Ensemble& e, std::size_t j, std::size_t k);

bool is_opwo(const PureEnsemble& e, double tol = kOverlapTol);

// Orders states so that every overlapping pair is adjacent. Only meaningful
// for OPWO ensembles.
std::vector<std::size_t> opwo_block_order(const PureEnsemble& e, double tol = kOverlapTol);

// G_ij = sqrt(pi_i pi_j) <psi_i|psi_j>
ComplexMatrix gram_matrix(const PureEnsemble& e);

struct PairFidelity {
  std::size_t class_i;
  std::size_t class_j;
  double quantum;
  double classical;
  double slack;  // classical - quantum
  bool saturated;
};

struct FidelityReport {
  bool bound_holds = true;
  bool all_saturated = true;
  std::vector<PairFidelity> pairs;
};

FidelityReport fidelity_bound_check(const Channel& c, const QFactorization& q);

// Random search over alternative pure-rebit signal pairs for a channel with
// two causal classes: each sample applies random signs to the G0 amplitudes
// and rotates signals and measurement basis by a random real orthogonal
// matrix, which keeps the pair a Q-factorization under a pure projective
// measurement. The result is numerical evidence only.
struct TwoClassSearchReport {
  double g0_entropy = 0.0;
  double best_alternative_entropy = 0.0;
  std::size_t samples = 0;
  std::size_t verified_samples = 0;
  bool g0_minimal = true;
};

TwoClassSearchReport two_class_rebit_search(const Channel& c, const Distribution& d,
                                            std::size_t samples, std::uint64_t seed);

}  // namespace chanfactor
