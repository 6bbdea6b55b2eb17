#pragma once

// Entropy of N pure qubit signals a_j|0> + b_j e^{i phi_j}|1> measured in the
// computational basis, as a function of the relative phases.

#include <cstddef>
#include <vector>

#include "chanfactor/qfactor.hpp"

namespace chanfactor::phase {

class PhasedQubitEnsemble {
 public:
  // Throws Error{invalid_state} for negative magnitudes or a_j^2 + b_j^2 != 1
  // beyond kNormTol, Error{invalid_distribution} for bad weights and
  // Error{dimension_mismatch} on length mismatch. An empty `phases` means all
  // zero.
  PhasedQubitEnsemble(std::vector<double> weights, std::vector<double> a, std::vector<double> b,
                      std::vector<double> phases = {});

  std::size_t size() const noexcept { return weights_.size(); }
  const std::vector<double>& weights() const noexcept { return weights_; }
  const std::vector<double>& a() const noexcept { return a_; }
  const std::vector<double>& b() const noexcept { return b_; }
  const std::vector<double>& phases() const noexcept { return phases_; }

  PhasedQubitEnsemble with_phases(std::vector<double> phases) const;

  PureEnsemble states() const;

 private:
  std::vector<double> weights_;
  std::vector<double> a_;
  std::vector<double> b_;
  std::vector<double> phases_;
};

// det(rho) = sum_{j != k} pi_j pi_k (a_j^2 b_k^2 - a_j b_j a_k b_k cos(phi_k - phi_j))
double delta(const PhasedQubitEnsemble& e);

// -sum lambda log2 lambda with lambda = (1 +- sqrt(1 - 4 delta)) / 2.
double entropy_from_delta(double delta);
double entropy_closed_form(const PhasedQubitEnsemble& e);

// d(delta)/d(phi_i) = 2 sum_{j != i} pi_i pi_j a_i b_i a_j b_j sin(phi_i - phi_j)
std::vector<double> phase_gradient(const PhasedQubitEnsemble& e);

struct PhaseOptimum {
  std::vector<double> phases;
  double delta = 0.0;
  double entropy = 0.0;
};

// All-equal phases with the canonical global phase 0. Throws
// Error{degenerate_magnitudes} when any weight, a_j or b_j is zero.
PhaseOptimum optimal_phases(const PhasedQubitEnsemble& e);

struct GridScan {
  double min_entropy = 0.0;
  std::vector<double> argmin_phases;
  std::size_t resolution = 0;
  std::size_t evaluations = 0;
};

// Exhaustive scan with phi_1 = 0 and phi_j in {2 pi k / resolution}. Supports
// N <= 3; larger ensembles throw Error{invalid_argument}.
GridScan grid_scan(const PhasedQubitEnsemble& e, std::size_t resolution);

// Minimum of delta over phi_1 = 0, phi_j in {0, pi} (2^{N-1} sign patterns).
struct SignPatternScan {
  double min_delta = 0.0;
  std::vector<int> best_pattern;  // n_j mod 2
  double all_equal_delta = 0.0;
  std::size_t patterns = 0;
};

SignPatternScan sign_pattern_scan(const PhasedQubitEnsemble& e);

// Full check used by the CLI: equal-phase optimum against a grid scan (N <= 3)
// or the sign-pattern enumeration (N > 3).
struct PhaseScanReport {
  PhaseOptimum optimum;
  double grid_min_entropy = 0.0;
  std::size_t grid_resolution = 0;
  bool sign_enumeration = false;
  bool pass = false;
};

PhaseScanReport phase_scan(const PhasedQubitEnsemble& e, std::size_t resolution,
                           double tol = 1e-9);

}  // namespace chanfactor::phase
