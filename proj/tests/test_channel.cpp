#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "chanfactor/channel.hpp"
#include "chanfactor/error.hpp"
#include "support.hpp"

using namespace chanfactor;

namespace {

std::vector<std::vector<std::size_t>> classes_of(const Partition& p) { return p.classes(); }

// Merge two random classes of p.
Partition coarsen(const Partition& p, testsupport::Rng& rng) {
  auto classes = p.classes();
  std::uniform_int_distribution<std::size_t> pick(0, classes.size() - 1);
  const std::size_t a = pick(rng);
  std::size_t b = pick(rng);
  while (b == a) b = pick(rng);
  classes[a].insert(classes[a].end(), classes[b].begin(), classes[b].end());
  classes.erase(classes.begin() + static_cast<std::ptrdiff_t>(b));
  return Partition(p.num_elements(), std::move(classes));
}

Partition random_partition(std::size_t n, testsupport::Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  std::vector<std::vector<std::size_t>> classes(n);
  for (std::size_t x = 0; x < n; ++x) classes[pick(rng)].push_back(x);
  std::erase_if(classes, [](const auto& c) { return c.empty(); });
  return Partition(n, std::move(classes));
}

}  // namespace

TEST_CASE("Channel validation") {
  CHECK_NOTHROW(Channel::from_rows({{1.0}}));
  CHECK_THROWS_AS(Channel::from_rows({{0.6, 0.3}}), Error);
  CHECK_THROWS_AS(Channel::from_rows({{1.2, -0.2}}), Error);
  CHECK_THROWS_AS(Channel({"a", "a"}, {"y"}, {{1.0}, {1.0}}), Error);
  CHECK_THROWS_AS(Channel({"a"}, {"y", "z"}, {{1.0}}), Error);
  try {
    (void)Channel::from_rows({{0.5, 0.4}});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_channel);
  }
}

TEST_CASE("Partition validation and refinement") {
  CHECK_THROWS_AS(Partition(3, {{0, 1}}), Error);
  CHECK_THROWS_AS(Partition(3, {{0, 1}, {1, 2}}), Error);
  CHECK_THROWS_AS(Partition(2, {{0, 1}, {}}), Error);
  const Partition p(4, {{3, 1}, {2, 0}});
  CHECK(p.representative(0) == 0);
  CHECK(p.members(1) == std::vector<std::size_t>{1, 3});
  CHECK(Partition::singletons(4).refines(p));
  CHECK(p.refines(p));
  CHECK_FALSE(p.refines(Partition::singletons(4)));
}

TEST_CASE("causal_partition: RBSC p = 0.3") {
  const Partition p = causal_partition(rbsc(0.3));
  CHECK(classes_of(p) == std::vector<std::vector<std::size_t>>{{0, 2}, {1, 3}});
}

TEST_CASE("causal_partition: identical rows and permutation matrix") {
  const Channel same = Channel::from_rows({{0.2, 0.8}, {0.2, 0.8}, {0.2, 0.8}});
  CHECK(causal_partition(same).num_classes() == 1);
  const Channel perm = Channel::from_rows({{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  CHECK(causal_partition(perm) == Partition::singletons(3));
}

TEST_CASE("causal_partition: degenerate alphabets") {
  CHECK(causal_partition(Channel::from_rows({{0.1, 0.9}})).num_classes() == 1);
  CHECK(causal_partition(Channel::from_rows({{1.0}, {1.0}, {1.0}})).num_classes() == 1);
}

TEST_CASE("causal_partition: tolerance and first-match transitivity repair") {
  // rows 0 and 1 differ by 0.6e-9, rows 1 and 2 by 0.6e-9, rows 0 and 2 by 1.2e-9.
  const Channel c = Channel::from_rows({{0.5, 0.5}, {0.5 + 6e-10, 0.5 - 6e-10}, {0.5 + 1.2e-9, 0.5 - 1.2e-9}});
  const Partition p = causal_partition(c, 1e-9);
  CHECK(classes_of(p) == std::vector<std::vector<std::size_t>>{{0, 1}, {2}});
  CHECK(causal_partition(c, 1e-8).num_classes() == 1);
  CHECK_THROWS_AS((void)causal_partition(c, 0.0), Error);
}

TEST_CASE("causal_partition agrees with brute-force pairwise comparison") {
  testsupport::Rng rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial % 9;
    const std::size_t distinct = 1 + rng() % n;
    const auto planted = testsupport::planted_channel(n, distinct, 2 + trial % 4, rng, 0.2);
    const Partition p = causal_partition(planted.channel);
    const auto oracle = testsupport::brute_force_classes(planted.channel, 1e-9);
    CHECK(p.num_classes() == planted.planted_classes);
    for (std::size_t x = 0; x < n; ++x) {
      CHECK(p.class_of(x) == oracle[x]);
      CHECK(p.class_of(x) == planted.truth[x]);
    }
  }
}

TEST_CASE("causal_partition is an equivalence relation on planted channels") {
  testsupport::Rng rng(77);
  for (int trial = 0; trial < 100; ++trial) {
    const auto planted = testsupport::planted_channel(7, 1 + trial % 7, 3, rng);
    const Partition p = causal_partition(planted.channel);
    const std::size_t n = planted.channel.num_inputs();
    auto rel = [&](std::size_t a, std::size_t b) { return p.class_of(a) == p.class_of(b); };
    for (std::size_t a = 0; a < n; ++a) {
      CHECK(rel(a, a));
      for (std::size_t b = 0; b < n; ++b) {
        CHECK(rel(a, b) == rel(b, a));
        // related iff rows equal
        CHECK(rel(a, b) == (row_distance(planted.channel.row(a), planted.channel.row(b)) <= 1e-9));
        for (std::size_t c = 0; c < n; ++c)
          if (rel(a, b) && rel(b, c)) CHECK(rel(a, c));
      }
    }
  }
}

TEST_CASE("causal_factorization") {
  const Factorization f = causal_factorization(rbsc(0.3));
  REQUIRE(f.reduced.num_inputs() == 2);
  CHECK(f.reduced.rows() == std::vector<Row>{{0.7, 0.3}, {0.3, 0.7}});
  CHECK(f.reduced.inputs() == std::vector<std::string>{"0", "1"});

  const Channel causal = Channel::from_rows({{0.1, 0.9}, {0.9, 0.1}});
  const Factorization g = causal_factorization(causal);
  CHECK(g.partition == Partition::singletons(2));
  CHECK(g.reduced.rows() == causal.rows());

  testsupport::Rng rng(6);
  const auto planted = testsupport::planted_channel(6, 3, 4, rng);
  CHECK(causal_factorization(planted.channel).partition.num_classes() == 3);
}

TEST_CASE("causal_factorization: three rows each duplicated twice") {
  testsupport::Rng rng(31);
  std::vector<Row> base{testsupport::random_row(4, rng), testsupport::random_row(4, rng),
                        testsupport::random_row(4, rng)};
  std::vector<Row> rows{base[0], base[1], base[2], base[0], base[1], base[2]};
  std::shuffle(rows.begin(), rows.end(), rng);
  const Channel c = Channel::from_rows(rows);
  const auto oracle = testsupport::brute_force_classes(c, 1e-9);
  const Factorization f = causal_factorization(c);
  CHECK(f.partition.num_classes() == 3);
  CHECK(*std::max_element(oracle.begin(), oracle.end()) + 1 == 3);
  for (const auto& cls : f.partition.classes()) CHECK(cls.size() == 2);
}

TEST_CASE("verify_factorization") {
  const Channel c = rbsc(0.3);
  CHECK(verify_factorization(c, causal_factorization(c)).ok);

  const Factorization merged = factorization_from_partition(c, Partition(4, {{0, 1}, {2, 3}}));
  const FactorReport r = verify_factorization(c, merged);
  CHECK_FALSE(r.ok);
  REQUIRE_FALSE(r.violations.empty());
  const auto v = std::find_if(r.violations.begin(), r.violations.end(),
                              [](const FactorViolation& v) { return v.input == 1 && v.output == 0; });
  REQUIRE(v != r.violations.end());
  CHECK(v->delta == doctest::Approx(0.4).epsilon(1e-12));

  CHECK(verify_factorization(c, factorization_from_partition(c, Partition(4, {{0}, {2}, {1, 3}}))).ok);
  CHECK(verify_factorization(c, factorization_from_partition(c, Partition::singletons(4))).ok);
}

TEST_CASE("every valid factorization refines the causal partition") {
  testsupport::Rng rng(404);
  for (int trial = 0; trial < 200; ++trial) {
    const Channel c = testsupport::random_channel(rng, 7, 4);
    const Partition causal = causal_partition(c);
    const Partition p = random_partition(c.num_inputs(), rng);
    const bool valid = verify_factorization(c, factorization_from_partition(c, p)).ok;
    CHECK(valid == p.refines(causal));
  }
}

TEST_CASE("shannon_entropy") {
  CHECK(shannon_entropy(Distribution({0.5, 0.5})) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(shannon_entropy(Distribution({1.0, 0.0})) == 0.0);
  CHECK(std::abs(shannon_entropy(Distribution({3.0 / 6, 2.0 / 6, 1.0 / 6})) - 1.4591479170272448) < 1e-14);
  CHECK(binary_entropy(0.25) == doctest::Approx(0.8112781244591328).epsilon(1e-14));
}

TEST_CASE("Distribution validation") {
  CHECK_THROWS_AS(Distribution({0.5, 0.4}), Error);
  CHECK_THROWS_AS(Distribution({1.5, -0.5}), Error);
  CHECK_THROWS_AS(Distribution({}), Error);
  CHECK(Distribution({0.5, 0.5}).full_support());
  CHECK_FALSE(Distribution({1.0, 0.0}).full_support());
}

TEST_CASE("pushforward") {
  const Partition rbsc_p = causal_partition(rbsc(0.3));
  const Distribution z = pushforward(Distribution::uniform(4), rbsc_p);
  CHECK(z[0] == doctest::Approx(0.5));
  CHECK(z[1] == doctest::Approx(0.5));

  const double alpha = 0.37;
  const Distribution d({alpha / 2, (1 - alpha) / 2, alpha / 2, (1 - alpha) / 2});
  const Distribution za = pushforward(d, rbsc_p);
  CHECK(std::abs(za[0] - alpha) < 1e-15);
  CHECK(std::abs(za[1] - (1 - alpha)) < 1e-15);

  const Distribution same = pushforward(d, Partition::singletons(4));
  for (std::size_t i = 0; i < 4; ++i) CHECK(same[i] == d[i]);
}

TEST_CASE("merging classes strictly lowers entropy for full-support inputs") {
  testsupport::Rng rng(5150);
  int checked = 0;
  while (checked < 150) {
    const std::size_t n = 2 + rng() % 7;
    const Distribution d(testsupport::random_simplex(n, rng, 0.01));
    const Partition fine = random_partition(n, rng);
    if (fine.num_classes() < 2) continue;
    const Partition coarse = coarsen(fine, rng);
    REQUIRE(fine.refines(coarse));
    CHECK(shannon_entropy(pushforward(d, fine)) > shannon_entropy(pushforward(d, coarse)));
    ++checked;
  }
}

TEST_CASE("H(causal pushforward) <= H(X), equality iff all singletons") {
  testsupport::Rng rng(88);
  for (int trial = 0; trial < 200; ++trial) {
    const Channel c = testsupport::random_channel(rng);
    const Distribution d(testsupport::random_simplex(c.num_inputs(), rng, 0.01));
    const Partition p = causal_partition(c);
    const double hz = shannon_entropy(pushforward(d, p));
    const double hx = shannon_entropy(d);
    if (p.num_classes() == c.num_inputs()) {
      CHECK(std::abs(hz - hx) < 1e-12);
    } else {
      CHECK(hz < hx);
    }
  }
}

TEST_CASE("classical_fidelity") {
  const std::vector<double> q{0.2, 0.3, 0.5};
  CHECK(classical_fidelity(q, q) == doctest::Approx(1.0).epsilon(1e-15));
  const std::vector<double> a{0.5, 0.5, 0.0, 0.0};
  const std::vector<double> b{0.0, 0.0, 0.1, 0.9};
  CHECK(classical_fidelity(a, b) == 0.0);
  const std::vector<double> r0{0.7, 0.3};
  const std::vector<double> r1{0.3, 0.7};
  CHECK(std::abs(classical_fidelity(r0, r1) - 0.916515138991168) < 1e-15);
  try {
    (void)classical_fidelity(r0, q);
    FAIL("expected AlphabetMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::alphabet_mismatch);
  }
}
