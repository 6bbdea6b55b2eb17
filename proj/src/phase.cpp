#include "chanfactor/phase.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "chanfactor/error.hpp"
#include "chanfactor/linalg.hpp"

namespace chanfactor::phase {

PhasedQubitEnsemble::PhasedQubitEnsemble(std::vector<double> weights, std::vector<double> a,
                                         std::vector<double> b, std::vector<double> phases)
    : weights_(std::move(weights)), a_(std::move(a)), b_(std::move(b)), phases_(std::move(phases)) {
  const std::size_t n = weights_.size();
  if (n == 0) throw Error(Errc::invalid_distribution, "empty ensemble");
  if (phases_.empty()) phases_.assign(n, 0.0);
  if (a_.size() != n || b_.size() != n || phases_.size() != n)
    throw Error(Errc::dimension_mismatch, "weights, a, b and phases must have equal length");
  double sum = 0.0;
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0 || w > 1.0)
      throw Error(Errc::invalid_distribution, "weight outside [0,1]");
    sum += w;
  }
  if (std::abs(sum - 1.0) > kTraceTol)
    throw Error(Errc::invalid_distribution, "weights sum to " + std::to_string(sum));
  for (std::size_t j = 0; j < n; ++j) {
    if (!(a_[j] >= 0.0) || !(b_[j] >= 0.0))
      throw Error(Errc::invalid_state, "magnitudes must be nonnegative");
    if (std::abs(a_[j] * a_[j] + b_[j] * b_[j] - 1.0) > kNormTol)
      throw Error(Errc::invalid_state, "state " + std::to_string(j) + " is not normalized");
  }
}

PhasedQubitEnsemble PhasedQubitEnsemble::with_phases(std::vector<double> phases) const {
  return PhasedQubitEnsemble(weights_, a_, b_, std::move(phases));
}

PureEnsemble PhasedQubitEnsemble::states() const {
  std::vector<PureState> s;
  for (std::size_t j = 0; j < size(); ++j)
    s.push_back(PureState::normalized({a_[j], b_[j] * std::polar(1.0, phases_[j])}));
  return PureEnsemble(weights_, std::move(s));
}

double delta(const PhasedQubitEnsemble& e) {
  const auto& w = e.weights();
  const auto& a = e.a();
  const auto& b = e.b();
  const auto& phi = e.phases();
  double d = 0.0;
  for (std::size_t j = 0; j < e.size(); ++j)
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (j == k) continue;
      d += w[j] * w[k] * (a[j] * a[j] * b[k] * b[k] - a[j] * b[j] * a[k] * b[k] * std::cos(phi[k] - phi[j]));
    }
  return std::clamp(d, 0.0, 0.25);
}

double entropy_from_delta(double delta) {
  const double root = std::sqrt(std::max(0.0, 1.0 - 4.0 * std::clamp(delta, 0.0, 0.25)));
  const double l1 = 0.5 * (1.0 + root);
  // (1 - root)/2 rewritten to avoid cancellation for small delta.
  const double l2 = delta > 0.0 ? delta / l1 : 0.0;
  return linalg::entropy_term(l1) + linalg::entropy_term(l2);
}

double entropy_closed_form(const PhasedQubitEnsemble& e) { return entropy_from_delta(delta(e)); }

std::vector<double> phase_gradient(const PhasedQubitEnsemble& e) {
  const auto& w = e.weights();
  const auto& a = e.a();
  const auto& b = e.b();
  const auto& phi = e.phases();
  std::vector<double> g(e.size(), 0.0);
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (i == j) continue;
      g[i] += 2.0 * w[i] * w[j] * a[i] * b[i] * a[j] * b[j] * std::sin(phi[i] - phi[j]);
    }
  return g;
}

namespace {

void require_nondegenerate(const PhasedQubitEnsemble& e) {
  for (std::size_t j = 0; j < e.size(); ++j) {
    if (e.weights()[j] == 0.0)
      throw Error(Errc::degenerate_magnitudes, "weight " + std::to_string(j) + " is zero");
    if (e.a()[j] == 0.0 || e.b()[j] == 0.0)
      throw Error(Errc::degenerate_magnitudes,
                  "state " + std::to_string(j) + " has a zero magnitude; its phase is irrelevant");
  }
}

}  // namespace

PhaseOptimum optimal_phases(const PhasedQubitEnsemble& e) {
  require_nondegenerate(e);
  PhaseOptimum out;
  out.phases.assign(e.size(), 0.0);
  const auto canonical = e.with_phases(out.phases);
  out.delta = delta(canonical);
  out.entropy = entropy_from_delta(out.delta);
  return out;
}

GridScan grid_scan(const PhasedQubitEnsemble& e, std::size_t resolution) {
  if (resolution == 0) throw Error(Errc::invalid_argument, "grid resolution must be positive");
  const std::size_t n = e.size();
  if (n > 3) throw Error(Errc::invalid_argument, "grid scans support at most 3 states");

  const double step = 2.0 * std::numbers::pi / static_cast<double>(resolution);
  std::size_t free = n - 1;
  std::size_t total = 1;
  for (std::size_t i = 0; i < free; ++i) total *= resolution;

  GridScan out;
  out.resolution = resolution;
  out.min_entropy = std::numeric_limits<double>::infinity();
  std::vector<double> phases(n, 0.0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rem = idx;
    for (std::size_t j = 1; j < n; ++j) {
      phases[j] = step * static_cast<double>(rem % resolution);
      rem /= resolution;
    }
    const double s = entropy_closed_form(e.with_phases(phases));
    ++out.evaluations;
    if (s < out.min_entropy) {
      out.min_entropy = s;
      out.argmin_phases = phases;
    }
  }
  return out;
}

SignPatternScan sign_pattern_scan(const PhasedQubitEnsemble& e) {
  const std::size_t n = e.size();
  if (n > 20) throw Error(Errc::invalid_argument, "sign enumeration limited to 20 states");
  SignPatternScan out;
  out.patterns = std::size_t{1} << (n - 1);
  out.min_delta = std::numeric_limits<double>::infinity();
  std::vector<double> phases(n, 0.0);
  for (std::size_t mask = 0; mask < out.patterns; ++mask) {
    std::vector<int> pattern(n, 0);
    for (std::size_t j = 1; j < n; ++j) {
      pattern[j] = static_cast<int>((mask >> (j - 1)) & 1U);
      phases[j] = pattern[j] ? std::numbers::pi : 0.0;
    }
    const double d = delta(e.with_phases(phases));
    if (mask == 0) out.all_equal_delta = d;
    if (d < out.min_delta) {
      out.min_delta = d;
      out.best_pattern = pattern;
    }
  }
  return out;
}

PhaseScanReport phase_scan(const PhasedQubitEnsemble& e, std::size_t resolution, double tol) {
  PhaseScanReport r;
  r.optimum = optimal_phases(e);
  if (e.size() <= 3) {
    const GridScan g = grid_scan(e, resolution);
    r.grid_min_entropy = g.min_entropy;
    r.grid_resolution = resolution;
  } else {
    const SignPatternScan s = sign_pattern_scan(e);
    r.sign_enumeration = true;
    r.grid_min_entropy = entropy_from_delta(s.min_delta);
    r.grid_resolution = 2;
  }
  r.pass = r.optimum.entropy <= r.grid_min_entropy + tol;
  return r;
}

}  // namespace chanfactor::phase
