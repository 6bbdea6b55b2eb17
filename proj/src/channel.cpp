#include "chanfactor/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "chanfactor/error.hpp"
#include "chanfactor/linalg.hpp"

namespace chanfactor {

namespace {

std::vector<std::string> index_labels(std::size_t n) {
  std::vector<std::string> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = std::to_string(i);
  return labels;
}

void check_unique(const std::vector<std::string>& labels, const char* what) {
  std::vector<std::string> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(Errc::invalid_channel, std::string("duplicate ") + what + " label");
}

}  // namespace

Channel::Channel(std::vector<std::string> inputs, std::vector<std::string> outputs,
                 std::vector<Row> rows)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)), rows_(std::move(rows)) {
  if (inputs_.empty()) throw Error(Errc::invalid_channel, "empty input alphabet");
  if (outputs_.empty()) throw Error(Errc::invalid_channel, "empty output alphabet");
  if (rows_.size() != inputs_.size())
    throw Error(Errc::invalid_channel, "row count does not match input alphabet");
  check_unique(inputs_, "input");
  check_unique(outputs_, "output");
  for (std::size_t x = 0; x < rows_.size(); ++x) {
    const Row& r = rows_[x];
    if (r.size() != outputs_.size())
      throw Error(Errc::invalid_channel, "row " + std::to_string(x) + " has wrong length");
    double sum = 0.0;
    for (double v : r) {
      if (!std::isfinite(v) || v < 0.0 || v > 1.0)
        throw Error(Errc::invalid_channel, "row " + std::to_string(x) + " has entry outside [0,1]");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRowSumTol)
      throw Error(Errc::invalid_channel,
                  "row " + std::to_string(x) + " sums to " + std::to_string(sum));
  }
}

Channel Channel::from_rows(std::vector<Row> rows) {
  // Labels first: argument evaluation order is unspecified.
  auto inputs = index_labels(rows.size());
  auto outputs = index_labels(rows.empty() ? 0 : rows.front().size());
  return Channel(std::move(inputs), std::move(outputs), std::move(rows));
}

std::size_t Channel::input_index(const std::string& label) const {
  auto it = std::find(inputs_.begin(), inputs_.end(), label);
  if (it == inputs_.end()) throw Error(Errc::index_out_of_range, "unknown input label " + label);
  return static_cast<std::size_t>(it - inputs_.begin());
}

Channel rbsc(double p) {
  return Channel::from_rows({{1.0 - p, p}, {p, 1.0 - p}, {1.0 - p, p}, {p, 1.0 - p}});
}

Partition::Partition(std::size_t n, std::vector<std::vector<std::size_t>> classes)
    : classes_(std::move(classes)), class_of_(n, n) {
  for (auto& cls : classes_) {
    if (cls.empty()) throw Error(Errc::invalid_partition, "empty class");
    std::sort(cls.begin(), cls.end());
  }
  std::sort(classes_.begin(), classes_.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  for (std::size_t k = 0; k < classes_.size(); ++k)
    for (std::size_t x : classes_[k]) {
      if (x >= n) throw Error(Errc::invalid_partition, "element " + std::to_string(x) + " out of range");
      if (class_of_[x] != n)
        throw Error(Errc::invalid_partition, "element " + std::to_string(x) + " in two classes");
      class_of_[x] = k;
    }
  for (std::size_t x = 0; x < n; ++x)
    if (class_of_[x] == n)
      throw Error(Errc::invalid_partition, "element " + std::to_string(x) + " not covered");
}

Partition Partition::singletons(std::size_t n) {
  std::vector<std::vector<std::size_t>> classes(n);
  for (std::size_t i = 0; i < n; ++i) classes[i] = {i};
  return Partition(n, std::move(classes));
}

bool Partition::refines(const Partition& coarser) const {
  if (coarser.num_elements() != num_elements()) return false;
  for (const auto& cls : classes_) {
    const std::size_t target = coarser.class_of(cls.front());
    for (std::size_t x : cls)
      if (coarser.class_of(x) != target) return false;
  }
  return true;
}

Distribution::Distribution(std::vector<double> probabilities) : p_(std::move(probabilities)) {
  if (p_.empty()) throw Error(Errc::invalid_distribution, "empty distribution");
  double sum = 0.0;
  for (double v : p_) {
    if (!std::isfinite(v) || v < 0.0 || v > 1.0)
      throw Error(Errc::invalid_distribution, "entry outside [0,1]");
    sum += v;
  }
  if (std::abs(sum - 1.0) > kRowSumTol)
    throw Error(Errc::invalid_distribution, "sums to " + std::to_string(sum));
}

Distribution Distribution::uniform(std::size_t n) {
  return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

bool Distribution::full_support() const {
  return std::all_of(p_.begin(), p_.end(), [](double v) { return v > 0.0; });
}

double row_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(Errc::alphabet_mismatch, "rows of unequal length");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

Partition causal_partition(const Channel& c, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::invalid_argument, "tolerance must be positive");
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t x = 0; x < c.num_inputs(); ++x) {
    auto match = std::find_if(classes.begin(), classes.end(), [&](const auto& cls) {
      return row_distance(c.row(cls.front()), c.row(x)) <= tol;
    });
    if (match != classes.end())
      match->push_back(x);
    else
      classes.push_back({x});
  }
  return Partition(c.num_inputs(), std::move(classes));
}

Factorization factorization_from_partition(const Channel& c, const Partition& p) {
  if (p.num_elements() != c.num_inputs())
    throw Error(Errc::invalid_partition, "partition does not cover the channel inputs");
  std::vector<std::string> labels;
  std::vector<Row> rows;
  for (std::size_t k = 0; k < p.num_classes(); ++k) {
    labels.push_back(c.inputs()[p.representative(k)]);
    rows.push_back(c.row(p.representative(k)));
  }
  return Factorization{p, Channel(std::move(labels), c.outputs(), std::move(rows))};
}

Factorization causal_factorization(const Channel& c, double tol) {
  return factorization_from_partition(c, causal_partition(c, tol));
}

FactorReport verify_factorization(const Channel& c, const Factorization& f, double tol) {
  if (f.partition.num_elements() != c.num_inputs())
    throw Error(Errc::invalid_partition, "partition does not cover the channel inputs");
  if (f.reduced.num_outputs() != c.num_outputs() ||
      f.reduced.num_inputs() != f.partition.num_classes())
    throw Error(Errc::alphabet_mismatch, "reduced channel shape does not match");
  FactorReport report;
  for (std::size_t x = 0; x < c.num_inputs(); ++x) {
    const Row& reduced = f.reduced.row(f.partition.class_of(x));
    for (std::size_t y = 0; y < c.num_outputs(); ++y) {
      const double delta = std::abs(reduced[y] - c(x, y));
      if (delta > tol) report.violations.push_back({x, y, delta});
    }
  }
  report.ok = report.violations.empty();
  return report;
}

double shannon_entropy(std::span<const double> p) {
  double h = 0.0;
  for (double v : p) h += linalg::entropy_term(v);
  return h;
}

double binary_entropy(double p) {
  return linalg::entropy_term(p) + linalg::entropy_term(1.0 - p);
}

Distribution pushforward(const Distribution& d, const Partition& p) {
  if (p.num_elements() != d.size())
    throw Error(Errc::alphabet_mismatch, "partition and distribution sizes differ");
  std::vector<double> out(p.num_classes(), 0.0);
  for (std::size_t x = 0; x < d.size(); ++x) out[p.class_of(x)] += d[x];
  // Summation can push a total of 1 a few ulps above 1.
  for (double& v : out) v = std::min(v, 1.0);
  return Distribution(std::move(out));
}

double classical_fidelity(std::span<const double> q1, std::span<const double> q2) {
  if (q1.size() != q2.size())
    throw Error(Errc::alphabet_mismatch, "distributions over different alphabets");
  double f = 0.0;
  for (std::size_t k = 0; k < q1.size(); ++k) f += std::sqrt(q1[k] * q2[k]);
  return std::min(f, 1.0);
}

}  // namespace chanfactor
