#include <doctest.h>

#include <random>

#include "fgamp/oracle.hpp"
#include "fgamp/probability.hpp"
#include "test_helpers.hpp"

using namespace fgamp;
using fgamp::testing::random_basis;
using fgamp::testing::random_spins;

TEST_SUITE("probability") {

TEST_CASE("vacuum in the z basis: all-minus outcome is certain") {
  const auto state = make_state(SkewMatrix::Zero(4));
  const PauliBasisSpec z = PauliBasisSpec::Uniform(4, 0.0, 0.0, 0.0);
  CHECK(probability(state, z, parse_configuration("----"),
                    ProbabilityPath::AmplitudeSquared) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(probability(state, z, parse_configuration("+---"),
                    ProbabilityPath::AmplitudeSquared) ==
        doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("det ratio equals amplitude squared on random instances") {
  std::mt19937_64 rng(601);
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index L = 2 + static_cast<Eigen::Index>(rng() % 6);
    const auto state = random_state(L, rng(), 1.0);
    const auto basis = random_basis(rng, L, true);
    const auto outcome = random_spins(rng, L);
    const double p1 = probability(state, basis, outcome,
                                  ProbabilityPath::AmplitudeSquared);
    const double p2 =
        probability(state, basis, outcome, ProbabilityPath::DetRatio);
    CHECK(std::abs(p1 - p2) <= 1e-9 * std::max(1.0, p1));
  }
}

TEST_CASE("det ratio refuses the singular theta band") {
  const auto state = make_state(SkewMatrix::Zero(2));
  const PauliBasisSpec z = PauliBasisSpec::Uniform(2, 0.0, 0.0, 0.0);
  CHECK_THROWS_AS(probability(state, z, parse_configuration("--"),
                              ProbabilityPath::DetRatio),
                  guard_error);
}

TEST_CASE("probability is bit-identical under alpha changes") {
  std::mt19937_64 rng(607);
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  for (int t = 0; t < 25; ++t) {
    const Eigen::Index L = 2 + static_cast<Eigen::Index>(rng() % 5);
    const auto state = random_state(L, rng(), 1.0);
    PauliBasisSpec basis = random_basis(rng, L, true);
    const auto outcome = random_spins(rng, L);
    for (const auto path :
         {ProbabilityPath::AmplitudeSquared, ProbabilityPath::DetRatio}) {
      const double ref = probability(state, basis, outcome, path);
      PauliBasisSpec randomized = basis;
      for (Eigen::Index j = 0; j < L; ++j) randomized.site(j).alpha = u(rng);
      CHECK(probability(state, randomized, outcome, path) == ref);
    }
  }
}

TEST_CASE("enumeration sums to 1 for both paths") {
  std::mt19937_64 rng(613);
  for (Eigen::Index L : {3, 6, 9}) {
    const auto state = random_state(L, rng(), 1.0);
    const auto basis = random_basis(rng, L, true);
    for (const auto path :
         {ProbabilityPath::AmplitudeSquared, ProbabilityPath::DetRatio}) {
      const auto table = enumerate_probabilities(state, basis, path);
      CHECK(table.total() == doctest::Approx(1.0).epsilon(1e-9));
    }
  }
}

TEST_CASE("threaded enumeration is bit-identical to sequential") {
  std::mt19937_64 rng(617);
  const auto state = random_state(8, rng(), 1.0);
  const auto basis = random_basis(rng, 8);
  const auto seq = enumerate_probabilities(
      state, basis, ProbabilityPath::AmplitudeSquared, false, 1);
  const auto par = enumerate_probabilities(
      state, basis, ProbabilityPath::AmplitudeSquared, false, 4);
  REQUIRE(seq.rows() == par.rows());
  for (Eigen::Index i = 0; i < seq.rows(); ++i) {
    CHECK(seq.probability_at(i) == par.probability_at(i));
  }
  CHECK(seq.total() == par.total());
}

TEST_CASE("enumeration guard refuses L > 24 without force") {
  CHECK_THROWS_AS(enumerate_probabilities(make_state(SkewMatrix::Zero(25)),
                                          PauliBasisSpec::Uniform(25, 0, 0, 0)),
                  guard_error);
}

TEST_CASE("marginal over all sites is the plain probability") {
  std::mt19937_64 rng(619);
  const auto state = random_state(5, rng(), 1.0);
  const auto basis = random_basis(rng, 5);
  const auto outcome = random_spins(rng, 5);
  SubregionOutcome all;
  for (Eigen::Index j = 0; j < 5; ++j) {
    all.sites.push_back(j);
    all.signs.push_back(outcome.sign(j));
  }
  CHECK(marginal_probability(state, basis, all) ==
        doctest::Approx(probability(state, basis, outcome,
                                    ProbabilityPath::AmplitudeSquared))
            .epsilon(1e-12));
}

TEST_CASE("marginals over B sum to 1") {
  std::mt19937_64 rng(631);
  const auto state = random_state(7, rng(), 1.0);
  const auto basis = random_basis(rng, 7);
  const std::vector<Eigen::Index> b_sites{1, 3, 4};
  double total = 0.0;
  for (int mask = 0; mask < 8; ++mask) {
    SubregionOutcome outcome;
    outcome.sites = b_sites;
    for (int k = 0; k < 3; ++k) {
      outcome.signs.push_back((mask >> (2 - k)) & 1 ? 1 : -1);
    }
    total += marginal_probability(state, basis, outcome);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("re-marginalizing a subset of B matches the direct marginal") {
  std::mt19937_64 rng(641);
  const auto state = random_state(6, rng(), 1.0);
  const auto basis = random_basis(rng, 6);
  SubregionOutcome direct;
  direct.sites = {2, 5};
  direct.signs = {1, -1};
  const double lhs = marginal_probability(state, basis, direct);
  double rhs = 0.0;
  for (int s1 : {1, -1}) {
    SubregionOutcome wider;
    wider.sites = {1, 2, 5};
    wider.signs = {s1, 1, -1};
    rhs += marginal_probability(state, basis, wider);
  }
  CHECK(std::abs(lhs - rhs) <= 1e-10);
}

TEST_CASE("vacuum, theta = 0, B = {0}: the minus outcome is certain") {
  const auto state = make_state(SkewMatrix::Zero(4));
  const PauliBasisSpec z = PauliBasisSpec::Uniform(4, 0.0, 0.0, 0.0);
  SubregionOutcome outcome;
  outcome.sites = {0};
  outcome.signs = {-1};
  CHECK(marginal_probability(state, z, outcome) ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("entropy of a deterministic distribution is 0") {
  const auto state = make_state(SkewMatrix::Zero(4));
  const PauliBasisSpec z = PauliBasisSpec::Uniform(4, 0.0, 0.0, 0.0);
  for (double alpha : {0.5, 1.0, 2.0, 3.5}) {
    CHECK(std::abs(shannon_renyi_entropy(state, z, alpha)) <= 1e-12);
  }
}

TEST_CASE("vacuum measured in the x basis is uniform: H = L ln 2") {
  const Eigen::Index L = 6;
  const auto state = make_state(SkewMatrix::Zero(L));
  const PauliBasisSpec x = PauliBasisSpec::Uniform(L, 0.0, kPi / 2.0, 0.0);
  for (double alpha : {0.5, 1.0, 2.0}) {
    CHECK(shannon_renyi_entropy(state, x, alpha) ==
          doctest::Approx(L * std::log(2.0)).epsilon(1e-9));
  }
}

TEST_CASE("alpha -> 1 limit approaches the Shannon sum") {
  std::mt19937_64 rng(653);
  const auto state = random_state(5, rng(), 1.0);
  const auto basis = random_basis(rng, 5);
  const double shannon = shannon_renyi_entropy(state, basis, 1.0);
  const double below = shannon_renyi_entropy(state, basis, 1.0 - 1e-4);
  const double above = shannon_renyi_entropy(state, basis, 1.0 + 1e-4);
  CHECK(std::abs(0.5 * (below + above) - shannon) <= 1e-8);
}

TEST_CASE("Renyi entropies are nonincreasing in alpha") {
  std::mt19937_64 rng(659);
  const auto state = random_state(5, rng(), 1.0);
  const auto basis = random_basis(rng, 5);
  double prev = shannon_renyi_entropy(state, basis, 0.25);
  for (double alpha : {0.5, 1.0, 2.0, 4.0}) {
    const double h = shannon_renyi_entropy(state, basis, alpha);
    CHECK(h <= prev + 1e-10);
    CHECK(h >= 0.0);
    prev = h;
  }
}

TEST_CASE("max-probability search on a product state finds certainty") {
  const auto state = make_state(SkewMatrix::Zero(3));
  const auto result = max_probability_search(state, 5, 1, 0);
  CHECK(result.probability == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(result.config.to_string() == "---");
  for (Eigen::Index j = 0; j < 3; ++j) {
    CHECK(std::abs(result.basis.site(j).theta) <= 1e-9);
  }
}

TEST_CASE("search is reproducible for a fixed seed") {
  std::mt19937_64 rng(661);
  const auto state = random_state(3, rng(), 1.0);
  const auto a = max_probability_search(state, 4, 2, 11);
  const auto b = max_probability_search(state, 4, 2, 11);
  CHECK(a.probability == b.probability);
  CHECK(a.config.to_string() == b.config.to_string());
}

TEST_CASE("search beats a fixed verification grid at L = 4") {
  std::mt19937_64 rng(673);
  const auto state = random_state(4, rng(), 1.0);
  const auto found = max_probability_search(state, 5, 2, 3);

  double grid_best = 0.0;
  for (int it = 0; it < 9; ++it) {
    for (int ip = 0; ip < 9; ++ip) {
      const auto basis = PauliBasisSpec::Uniform(
          4, 2.0 * kPi * ip / 9.0, kPi * it / 8.0, 0.0);
      const auto table = enumerate_probabilities(state, basis);
      for (Eigen::Index i = 0; i < table.rows(); ++i) {
        grid_best = std::max(grid_best, table.probability_at(i));
      }
    }
  }
  CHECK(found.probability >= grid_best - 1e-9);
}

}  // TEST_SUITE
