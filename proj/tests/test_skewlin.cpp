#include <doctest.h>

#include <random>

#include <Eigen/LU>

#include "fgamp/skewlin.hpp"
#include "test_helpers.hpp"

using namespace fgamp;
using fgamp::testing::random_skew;

namespace {

// Independent determinant route for the pf^2 = det oracle.
cxd lu_determinant(const SkewMatrix& m) {
  if (m.dim() == 0) return cxd(1.0, 0.0);
  return Eigen::PartialPivLU<Matrix>(m.matrix()).determinant();
}

// Brute-force side of the shifted-pfaffian sum rule: enumerate kept subsets
// and multiply the dropped weights.
cxd subset_sum(const SkewMatrix& m, const std::vector<cxd>& lambdas,
               bool even_subsets_only) {
  const Eigen::Index n = m.dim();
  cxd acc(0.0, 0.0);
  for (Eigen::Index mask = 0; mask < (Eigen::Index(1) << n); ++mask) {
    std::vector<Eigen::Index> kept;
    cxd weight(1.0, 0.0);
    for (Eigen::Index a = 0; a < n; ++a) {
      if ((mask >> a) & 1) {
        kept.push_back(a);
      } else {
        weight *= lambdas[static_cast<std::size_t>(a)];
      }
    }
    if (even_subsets_only && kept.size() % 2 != 0) continue;
    acc += weight * sub_pfaffian(m, IndexSubset(n, kept));
  }
  return acc;
}

}  // namespace

TEST_SUITE("skewlin") {

TEST_CASE("pfaffian of the empty matrix is exactly 1") {
  CHECK(pfaffian(SkewMatrix::Zero(0)) == cxd(1.0, 0.0));
}

TEST_CASE("pfaffian of odd dimension is exactly 0") {
  std::mt19937_64 rng(11);
  for (Eigen::Index n : {1, 3, 7}) {
    CHECK(pfaffian(random_skew(rng, n)) == cxd(0.0, 0.0));
  }
}

TEST_CASE("2x2 pfaffian is the upper entry") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = cxd(0.7, -1.3);
  m(1, 0) = -m(0, 1);
  CHECK(pfaffian(SkewMatrix(m)) == m(0, 1));
}

TEST_CASE("pf^2 = det against an independent LU determinant") {
  std::mt19937_64 rng(42);
  for (Eigen::Index n : {2, 4, 6, 8, 12, 20, 40, 60}) {
    for (int t = 0; t < 5; ++t) {
      const SkewMatrix m = random_skew(rng, n);
      const cxd pf = pfaffian(m);
      const cxd det = lu_determinant(m);
      CHECK(std::abs(pf * pf - det) <=
            1e-8 * std::max(1.0, std::abs(det)));
    }
  }
}

TEST_CASE("construction rejects non-skew input and symmetrizes tiny noise") {
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 1) = 1.0;
  bad(1, 0) = -0.5;
  CHECK_THROWS_AS(SkewMatrix{bad}, std::invalid_argument);

  Matrix noisy = Matrix::Zero(2, 2);
  noisy(0, 1) = cxd(1.0, 0.0);
  noisy(1, 0) = cxd(-1.0, 5e-13);
  const SkewMatrix s(noisy);
  CHECK(s(0, 1) == -s(1, 0));
}

TEST_CASE("sub_pfaffian: full subset, empty subset, odd subset") {
  std::mt19937_64 rng(7);
  const SkewMatrix m = random_skew(rng, 6);
  CHECK(sub_pfaffian(m, IndexSubset::All(6)) == pfaffian(m));
  CHECK(sub_pfaffian(m, IndexSubset(6, {})) == cxd(1.0, 0.0));
  CHECK(sub_pfaffian(m, IndexSubset(6, {0, 2, 5})) == cxd(0.0, 0.0));
}

TEST_CASE("IndexSubset validation") {
  CHECK_THROWS_AS(IndexSubset(4, {0, 4}), std::invalid_argument);
  CHECK_THROWS_AS(IndexSubset(4, {2, 1}), std::invalid_argument);
  CHECK_THROWS_AS(IndexSubset(4, {1, 1}), std::invalid_argument);
}

TEST_CASE("row expansion: 2x2 base case") {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 1) = cxd(2.5, 0.25);
  m(1, 0) = -m(0, 1);
  CHECK(pfaffian_expand_row(SkewMatrix(m), 0) == m(0, 1));
}

TEST_CASE("row expansion agrees with the pivoted pfaffian for every row") {
  std::mt19937_64 rng(21);
  for (Eigen::Index n : {4, 6, 8, 12}) {
    const SkewMatrix m = random_skew(rng, n);
    const cxd ref = pfaffian(m);
    for (Eigen::Index i = 0; i < n; ++i) {
      CHECK(std::abs(pfaffian_expand_row(m, i) - ref) <=
            1e-10 * std::max(1.0, std::abs(ref)));
    }
  }
}

TEST_CASE("row expansion on a 4x4 with a single nonzero pair") {
  // Only m(0,1) and m(2,3) nonzero: pf = m01 * m23, reproduced by expanding
  // along any row.
  Matrix m = Matrix::Zero(4, 4);
  m(0, 1) = cxd(2.0, 1.0);
  m(1, 0) = -m(0, 1);
  m(2, 3) = cxd(-0.5, 3.0);
  m(3, 2) = -m(2, 3);
  const SkewMatrix s(m);
  const cxd expected = m(0, 1) * m(2, 3);
  for (Eigen::Index i = 0; i < 4; ++i) {
    CHECK(std::abs(pfaffian_expand_row(s, i) - expected) <= 1e-12);
  }
}

TEST_CASE("row expansion rejects odd dimension") {
  std::mt19937_64 rng(3);
  CHECK_THROWS_AS(pfaffian_expand_row(random_skew(rng, 3), 0),
                  std::invalid_argument);
}

TEST_CASE("shifted pfaffian: zero weights reduce to the plain pfaffian") {
  std::mt19937_64 rng(5);
  const SkewMatrix m = random_skew(rng, 6);
  const std::vector<cxd> zeros(6, cxd(0.0, 0.0));
  CHECK(std::abs(lieb_shifted_pfaffian(m, zeros) - pfaffian(m)) <= 1e-12);
}

TEST_CASE("shifted pfaffian: 2x2 hand case pins the sign convention") {
  // m = 0, weights (a, b): the shifted entry is -(-1)^{0+1} a b = +ab, and
  // the subset sum gives pf(empty) * a b = ab.
  const SkewMatrix m = SkewMatrix::Zero(2);
  const cxd a(0.3, 0.1), b(-1.2, 0.7);
  const std::vector<cxd> lam{a, b};
  CHECK(std::abs(lieb_shifted_pfaffian(m, lam) - a * b) <= 1e-14);
}

TEST_CASE("shifted pfaffian equals the even-subset sum, dims 2..8") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (Eigen::Index n : {2, 4, 6, 8}) {
    for (int t = 0; t < 10; ++t) {
      const SkewMatrix m = random_skew(rng, n);
      std::vector<cxd> lam(static_cast<std::size_t>(n));
      for (auto& l : lam) l = cxd(gauss(rng), gauss(rng));
      const cxd lhs = lieb_shifted_pfaffian(m, lam);
      const cxd rhs = subset_sum(m, lam, true);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("odd extension: L=1 hand case") {
  const SkewMatrix m = SkewMatrix::Zero(1);
  const std::vector<cxd> lam{cxd(0.8, -0.4)};
  CHECK(std::abs(lieb_odd_extension(m, lam) - lam[0]) <= 1e-14);
}

TEST_CASE("odd extension: zero weights on 3 sites vanish") {
  std::mt19937_64 rng(17);
  const SkewMatrix m = random_skew(rng, 3);
  const std::vector<cxd> zeros(3, cxd(0.0, 0.0));
  CHECK(std::abs(lieb_odd_extension(m, zeros)) <= 1e-14);
}

TEST_CASE("odd extension equals the all-subset sum, dims 3..7") {
  std::mt19937_64 rng(19);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (Eigen::Index n : {3, 5, 7}) {
    for (int t = 0; t < 10; ++t) {
      const SkewMatrix m = random_skew(rng, n);
      std::vector<cxd> lam(static_cast<std::size_t>(n));
      for (auto& l : lam) l = cxd(gauss(rng), gauss(rng));
      const cxd lhs = lieb_odd_extension(m, lam);
      const cxd rhs = subset_sum(m, lam, false);
      CHECK(std::abs(lhs - rhs) <= 1e-9 * std::max(1.0, std::abs(rhs)));
    }
  }
}

TEST_CASE("weight-length mismatches are rejected") {
  std::mt19937_64 rng(23);
  const std::vector<cxd> lam(3, cxd(1.0, 0.0));
  CHECK_THROWS_AS(lieb_shifted_pfaffian(random_skew(rng, 4), lam),
                  std::invalid_argument);
  CHECK_THROWS_AS(lieb_odd_extension(random_skew(rng, 5), lam),
                  std::invalid_argument);
}

}  // TEST_SUITE
