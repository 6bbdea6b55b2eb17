#pragma once

// Subcommands behind the `chanfactor` executable. Each returns its full
// output as text so tests can diff it byte for byte.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "chanfactor/casestudy.hpp"
#include "chanfactor/channel.hpp"
#include "chanfactor/phase.hpp"
#include "chanfactor/qfactor.hpp"

namespace chanfactor::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitParse = 3;

struct RunConfig {
  std::string subcommand;
  std::string input;   // channel or ensemble file
  std::string output;  // empty: stdout
  double tol = kDefaultRowTol;
  std::uint64_t seed = 0;
  std::optional<std::size_t> points;
  std::size_t p_steps = 101;
  std::size_t alpha_steps = 101;
  std::size_t states = 3;                 // phase-scan without an input file
  std::optional<std::string> distribution;  // "0.25,0.25,..."
  std::optional<std::string> partition;     // "0,2;1,3"
  std::optional<std::string> check;         // q-factorization JSON to verify
};

struct CommandOutput {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

json factorize_report(const Channel& c, const std::optional<Distribution>& d, double tol);

// G0 over the causal partition, or over `partition` when given. Entropies
// use `d`, defaulting to the uniform input distribution.
json qfactorize_report(const Channel& c, const std::optional<Distribution>& d,
                       const std::optional<Partition>& partition, double tol);

json check_report(const Channel& c, const QFactorization& q, double tol, bool& ok);

struct HeatmapCell {
  double p;
  double alpha;
  double h_z;
  double s_rho;
  double advantage;
};

// Redundant binary symmetric channel factored through Z = {0,2} / {1,3} with
// P(Z = 0) = alpha; G0 signal states on the same map.
HeatmapCell rbsc_advantage(double p, double alpha);

// Row-major over p (outer) then alpha, both uniform on [0, 1].
std::vector<HeatmapCell> advantage_heatmap(std::size_t p_steps, std::size_t alpha_steps);
std::string heatmap_csv(const std::vector<HeatmapCell>& cells);

json phase_scan_json(const phase::PhaseScanReport& r);

// Random magnitudes bounded away from 0 and 1 and random weights.
phase::PhasedQubitEnsemble random_phase_ensemble(std::size_t n, std::uint64_t seed);

std::string casestudy_csv(const sic::CurveSummary& s);
std::string casestudy_summary(const sic::CurveSummary& s);

// {(3/6, |0>), (2/6, |1>), (1/6, |+>)}
Ensemble pure_merge_example();
// Equal weights on two states near I/2 and one near |0><0|; eps = 0 is the
// idealized limit.
Ensemble mixed_merge_example(double eps = 0.0);
json merge_demo_report();

CommandOutput run(const RunConfig& cfg);

}  // namespace chanfactor::cli
