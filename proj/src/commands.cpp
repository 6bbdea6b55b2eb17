#include "chanfactor/commands.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "chanfactor/error.hpp"
#include "chanfactor/io.hpp"

namespace chanfactor::cli {

namespace {

json partition_json(const Channel& c, const Partition& p) {
  json out = json::array();
  for (const auto& cls : p.classes()) {
    json labels = json::array();
    for (std::size_t x : cls) labels.push_back(io::label_to_json(c.inputs()[x]));
    out.push_back(std::move(labels));
  }
  return out;
}

}  // namespace

json factorize_report(const Channel& c, const std::optional<Distribution>& d, double tol) {
  const Factorization f = causal_factorization(c, tol);
  json report{
      {"partition", partition_json(c, f.partition)},
      {"num_classes", f.partition.num_classes()},
      {"num_inputs", c.num_inputs()},
      {"reduced_channel", io::channel_to_json(f.reduced)},
      {"verified", verify_factorization(c, f, tol).ok},
  };
  if (d) {
    if (d->size() != c.num_inputs())
      throw Error(Errc::alphabet_mismatch, "distribution length differs from input alphabet");
    report["entropy"] = json{{"H_X", shannon_entropy(*d)},
                             {"H_Z", shannon_entropy(pushforward(*d, f.partition))}};
  }
  return report;
}

json qfactorize_report(const Channel& c, const std::optional<Distribution>& d,
                       const std::optional<Partition>& partition, double tol) {
  const QFactorization q = partition ? g0_construct(c, *partition) : g0_construct(c, tol);
  const Distribution dist = d ? *d : Distribution::uniform(c.num_inputs());
  if (dist.size() != c.num_inputs())
    throw Error(Errc::alphabet_mismatch, "distribution length differs from input alphabet");

  const QFactorReport verification = verify_qfactorization(c, q, tol);
  const FidelityReport fid = fidelity_bound_check(c, q);
  json pairs = json::array();
  for (const auto& pf : fid.pairs)
    pairs.push_back(json{{"classes", {pf.class_i, pf.class_j}},
                         {"quantum", pf.quantum},
                         {"classical", pf.classical},
                         {"slack", pf.slack},
                         {"saturated", pf.saturated}});

  const double h_x = shannon_entropy(dist);
  const double h_z = shannon_entropy(pushforward(dist, q.partition));
  const double s_rho = von_neumann_entropy(average_signal_state(q, dist));
  return json{
      {"qfactorization", io::qfactorization_to_json(c, q)},
      {"num_signal_states", q.signals.size()},
      {"causal_classes", causal_partition(c, tol).num_classes()},
      {"verified", verification.ok},
      {"fidelity", json{{"bound_holds", fid.bound_holds},
                        {"all_saturated", fid.all_saturated},
                        {"pairs", std::move(pairs)}}},
      {"entropy", json{{"distribution", std::vector<double>(dist.values().begin(), dist.values().end())},
                       {"H_X", h_x},
                       {"H_Z", h_z},
                       {"S_rho", s_rho},
                       {"advantage", h_z - s_rho}}},
  };
}

json check_report(const Channel& c, const QFactorization& q, double tol, bool& ok) {
  const QFactorReport r = verify_qfactorization(c, q, tol);
  ok = r.ok;
  json violations = json::array();
  for (const auto& v : r.violations)
    violations.push_back(json{{"input", io::label_to_json(c.inputs()[v.input])},
                              {"output", io::label_to_json(c.outputs()[v.output])},
                              {"expected", v.expected},
                              {"produced", v.produced}});
  return json{{"verified", r.ok}, {"shape_ok", r.shape_ok}, {"violations", std::move(violations)}};
}

HeatmapCell rbsc_advantage(double p, double alpha) {
  const Channel c = rbsc(p);
  const Partition z(4, {{0, 2}, {1, 3}});
  const QFactorization q = g0_construct(c, z);
  const Distribution d({alpha / 2.0, (1.0 - alpha) / 2.0, alpha / 2.0, (1.0 - alpha) / 2.0});
  const double h_z = shannon_entropy(pushforward(d, z));
  const double s_rho = von_neumann_entropy(average_signal_state(q, d));
  return HeatmapCell{p, alpha, h_z, s_rho, h_z - s_rho};
}

std::vector<HeatmapCell> advantage_heatmap(std::size_t p_steps, std::size_t alpha_steps) {
  if (p_steps < 2 || alpha_steps < 2) throw Error(Errc::invalid_argument, "heatmap needs >= 2 steps per axis");
  std::vector<HeatmapCell> cells;
  cells.reserve(p_steps * alpha_steps);
  for (std::size_t i = 0; i < p_steps; ++i) {
    const double p = static_cast<double>(i) / static_cast<double>(p_steps - 1);
    for (std::size_t j = 0; j < alpha_steps; ++j) {
      const double alpha = static_cast<double>(j) / static_cast<double>(alpha_steps - 1);
      cells.push_back(rbsc_advantage(p, alpha));
    }
  }
  return cells;
}

std::string heatmap_csv(const std::vector<HeatmapCell>& cells) {
  std::string out = "p,alpha,h_z,s_rho,advantage\n";
  for (const auto& c : cells) {
    out += io::format_shortest(c.p) + ',' + io::format_shortest(c.alpha) + ',' +
           io::format_shortest(c.h_z) + ',' + io::format_shortest(c.s_rho) + ',' +
           io::format_shortest(c.advantage) + '\n';
  }
  return out;
}

json phase_scan_json(const phase::PhaseScanReport& r) {
  return json{
      {"phases", r.optimum.phases},
      {"delta", r.optimum.delta},
      {"entropy", r.optimum.entropy},
      {"grid_min_entropy", r.grid_min_entropy},
      {"grid_resolution", r.grid_resolution},
      {"scan", r.sign_enumeration ? "sign-patterns" : "grid"},
      {"pass", r.pass},
  };
}

phase::PhasedQubitEnsemble random_phase_ensemble(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw Error(Errc::invalid_argument, "need at least one state");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  std::uniform_real_distribution<double> angle(0.05, std::numbers::pi / 2.0 - 0.05);
  std::vector<double> w(n), a(n), b(n);
  double total = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    w[j] = weight(rng);
    total += w[j];
    const double theta = angle(rng);
    a[j] = std::cos(theta);
    b[j] = std::sin(theta);
  }
  for (auto& x : w) x /= total;
  return phase::PhasedQubitEnsemble(std::move(w), std::move(a), std::move(b));
}

std::string casestudy_csv(const sic::CurveSummary& s) {
  std::string out = "t,entropy_rho_t,purity_rho_t,entropy_rho_At\n";
  for (const auto& p : s.points)
    out += io::format_sig12(p.t) + ',' + io::format_sig12(p.entropy_rho_t) + ',' +
           io::format_sig12(p.purity_rho_t) + ',' + io::format_sig12(p.entropy_rho_at) + '\n';
  return out;
}

std::string casestudy_summary(const sic::CurveSummary& s) {
  std::ostringstream os;
  const auto& first = s.points.front();
  const auto& last = s.points.back();
  const auto& best = s.points[s.global_min_index];
  os << "endpoint t=" << io::format_sig12(first.t) << " S(rho_t)=" << io::format_sig12(first.entropy_rho_t)
     << " purity=" << io::format_sig12(first.purity_rho_t) << '\n';
  os << "endpoint t=" << io::format_sig12(last.t) << " S(rho_t)=" << io::format_sig12(last.entropy_rho_t)
     << " purity=" << io::format_sig12(last.purity_rho_t) << '\n';
  os << "global minimum at t=" << io::format_sig12(best.t) << " S(rho_t)=" << io::format_sig12(best.entropy_rho_t)
     << '\n';
  os << "local minima at t=";
  for (std::size_t i = 0; i < s.local_min_indices.size(); ++i)
    os << (i ? "," : "") << io::format_sig12(s.points[s.local_min_indices[i]].t);
  os << '\n';
  return os.str();
}

Ensemble pure_merge_example() {
  const double h = std::numbers::sqrt2 / 2.0;
  return PureEnsemble({3.0 / 6.0, 2.0 / 6.0, 1.0 / 6.0},
                      {PureState({1.0, 0.0}), PureState({0.0, 1.0}), PureState({h, h})})
      .mixed();
}

Ensemble mixed_merge_example(double eps) {
  const DensityMatrix near_mixed(
      ComplexMatrix::diagonal(std::vector<double>{0.5 + eps / 2.0, 0.5 - eps / 2.0}));
  const DensityMatrix near_pure(ComplexMatrix::diagonal(std::vector<double>{1.0 - eps / 2.0, eps / 2.0}));
  return Ensemble({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, {near_mixed, near_mixed, near_pure});
}

json merge_demo_report() {
  const Ensemble pure = pure_merge_example();
  const MergeResult bc = merge(pure, 1, 2);
  const Ensemble mixed = mixed_merge_example();
  const MergeResult m23 = merge(mixed, 1, 2);
  return json{
      {"pure_example",
       json{{"weights", pure.weights()},
            {"states", "|0>, |1>, |+>"},
            {"entropy", von_neumann_entropy(average_state(pure))},
            {"merge_B_into_C", von_neumann_entropy(average_state(bc.j_into_k))},
            {"merge_C_into_B", von_neumann_entropy(average_state(bc.k_into_j))}}},
      {"mixed_example",
       json{{"weights", mixed.weights()},
            {"states", "I/2, I/2, |0><0|"},
            {"entropy", von_neumann_entropy(average_state(mixed))},
            {"merge_2_into_3", von_neumann_entropy(average_state(m23.j_into_k))},
            {"merge_3_into_2", von_neumann_entropy(average_state(m23.k_into_j))}}},
  };
}

namespace {

std::optional<Distribution> distribution_of(const RunConfig& cfg) {
  if (!cfg.distribution) return std::nullopt;
  return io::parse_distribution(*cfg.distribution);
}

CommandOutput dispatch(const RunConfig& cfg) {
  CommandOutput r;
  const std::string& cmd = cfg.subcommand;
  if (cmd == "factorize") {
    const Channel c = io::read_channel_file(cfg.input);
    r.out = factorize_report(c, distribution_of(cfg), cfg.tol).dump(2) + '\n';
  } else if (cmd == "qfactorize") {
    const Channel c = io::read_channel_file(cfg.input);
    if (cfg.check) {
      const QFactorization q = io::qfactorization_from_json(io::read_json_file(*cfg.check), c);
      bool ok = false;
      r.out = check_report(c, q, cfg.tol, ok).dump(2) + '\n';
      if (!ok) r.exit_code = kExitValidation;
    } else {
      std::optional<Partition> p;
      if (cfg.partition) p = io::parse_partition(*cfg.partition, c);
      r.out = qfactorize_report(c, distribution_of(cfg), p, cfg.tol).dump(2) + '\n';
    }
  } else if (cmd == "heatmap") {
    r.out = heatmap_csv(advantage_heatmap(cfg.p_steps, cfg.alpha_steps));
  } else if (cmd == "phase-scan") {
    const phase::PhasedQubitEnsemble e = cfg.input.empty()
                                             ? random_phase_ensemble(cfg.states, cfg.seed)
                                             : io::phase_ensemble_from_json(io::read_json_file(cfg.input));
    const std::size_t default_res = e.size() <= 2 ? 360 : 72;
    const auto report = phase::phase_scan(e, cfg.points.value_or(default_res));
    json j = phase_scan_json(report);
    j["weights"] = e.weights();
    j["a"] = e.a();
    j["b"] = e.b();
    r.out = j.dump(2) + '\n';
    if (!report.pass) r.exit_code = kExitValidation;
  } else if (cmd == "casestudy") {
    const auto summary = sic::entropy_purity_curve(sic::build_sic_family(),
                                                   cfg.points.value_or(sic::kDefaultCurvePoints));
    r.out = casestudy_csv(summary);
    r.err = casestudy_summary(summary);
  } else if (cmd == "merge-demo") {
    r.out = merge_demo_report().dump(2) + '\n';
  } else {
    throw Error(Errc::invalid_argument, "unknown subcommand " + cmd);
  }
  return r;
}

}  // namespace

CommandOutput run(const RunConfig& cfg) {
  CommandOutput r;
  try {
    r = dispatch(cfg);
  } catch (const Error& e) {
    r.out.clear();
    r.err = std::string(e.what()) + '\n';
    r.exit_code = e.code() == Errc::parse_error ? kExitParse : kExitValidation;
    return r;
  }
  if (!cfg.output.empty()) {
    std::ofstream file(cfg.output, std::ios::binary);
    if (!file) {
      r.err += "cannot write " + cfg.output + '\n';
      r.exit_code = kExitValidation;
      return r;
    }
    file << r.out;
    r.out.clear();
  }
  return r;
}

}  // namespace chanfactor::cli
