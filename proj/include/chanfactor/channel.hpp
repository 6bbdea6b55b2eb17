#pragma once

// Classical channels P(Y|X) over finite alphabets, their causal partition,
// and deterministic-first factorizations X -> Z = f(X) -> Y.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace chanfactor {

inline constexpr double kRowSumTol = 1e-9;
inline constexpr double kDefaultRowTol = 1e-9;

using Row = std::vector<double>;

class Channel {
 public:
  // Validates: rows.size() == inputs.size(), each row has outputs.size()
  // entries in [0, 1] summing to 1 within kRowSumTol. Throws
  // Error{invalid_channel}.
  Channel(std::vector<std::string> inputs, std::vector<std::string> outputs,
          std::vector<Row> rows);

  // Labels "0", "1", ... for both alphabets.
  static Channel from_rows(std::vector<Row> rows);

  std::size_t num_inputs() const noexcept { return inputs_.size(); }
  std::size_t num_outputs() const noexcept { return outputs_.size(); }
  const std::vector<std::string>& inputs() const noexcept { return inputs_; }
  const std::vector<std::string>& outputs() const noexcept { return outputs_; }
  const std::vector<Row>& rows() const noexcept { return rows_; }
  const Row& row(std::size_t x) const { return rows_.at(x); }
  double operator()(std::size_t x, std::size_t y) const { return rows_.at(x).at(y); }

  // Index of an input label; throws Error{index_out_of_range}.
  std::size_t input_index(const std::string& label) const;

 private:
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  std::vector<Row> rows_;
};

// Redundant binary symmetric channel: inputs 0..3, rows alternate
// (1-p, p) and (p, 1-p).
Channel rbsc(double p);

// Disjoint cover of {0, ..., n-1}. Classes are stored sorted and ordered by
// their lowest member, which is the class representative.
class Partition {
 public:
  // Throws Error{invalid_partition} unless `classes` is a disjoint cover of
  // {0, ..., n-1} by nonempty sets.
  Partition(std::size_t n, std::vector<std::vector<std::size_t>> classes);

  static Partition singletons(std::size_t n);

  std::size_t num_elements() const noexcept { return class_of_.size(); }
  std::size_t num_classes() const noexcept { return classes_.size(); }
  const std::vector<std::vector<std::size_t>>& classes() const noexcept { return classes_; }
  const std::vector<std::size_t>& members(std::size_t cls) const { return classes_.at(cls); }
  std::size_t class_of(std::size_t x) const { return class_of_.at(x); }
  std::size_t representative(std::size_t cls) const { return classes_.at(cls).front(); }

  // True when every class of *this lies inside a class of `coarser`.
  bool refines(const Partition& coarser) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<std::vector<std::size_t>> classes_;
  std::vector<std::size_t> class_of_;
};

// Probability vector over a finite alphabet. Entries in [0, 1], sum 1 within
// kRowSumTol; throws Error{invalid_distribution}.
class Distribution {
 public:
  explicit Distribution(std::vector<double> probabilities);
  static Distribution uniform(std::size_t n);

  std::size_t size() const noexcept { return p_.size(); }
  double operator[](std::size_t i) const { return p_.at(i); }
  std::span<const double> values() const noexcept { return p_; }
  bool full_support() const;

 private:
  std::vector<double> p_;
};

struct Factorization {
  Partition partition;
  // Inputs are the class representatives' labels.
  Channel reduced;
};

struct FactorViolation {
  std::size_t input;
  std::size_t output;
  double delta;
};

struct FactorReport {
  bool ok = true;
  std::vector<FactorViolation> violations;
};

// max_y |P(y|x) - P(y|x')|
double row_distance(std::span<const double> a, std::span<const double> b);

// Inputs are scanned in order; each joins the first existing class whose
// representative row lies within `tol` in max-norm, otherwise opens a new one.
Partition causal_partition(const Channel& c, double tol = kDefaultRowTol);

// Reduced channel built from the representative row of each class. No check
// that the partition is a factorization partition; see verify_factorization.
Factorization factorization_from_partition(const Channel& c, const Partition& p);

Factorization causal_factorization(const Channel& c, double tol = kDefaultRowTol);

FactorReport verify_factorization(const Channel& c, const Factorization& f,
                                  double tol = kDefaultRowTol);

// Shannon entropy in bits.
double shannon_entropy(std::span<const double> p);
inline double shannon_entropy(const Distribution& d) { return shannon_entropy(d.values()); }

double binary_entropy(double p);

Distribution pushforward(const Distribution& d, const Partition& p);

// Bhattacharyya coefficient sum_k sqrt(q1_k q2_k). Throws
// Error{alphabet_mismatch} on size mismatch.
double classical_fidelity(std::span<const double> q1, std::span<const double> q2);

}  // namespace chanfactor
