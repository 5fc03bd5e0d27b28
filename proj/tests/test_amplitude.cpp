#include <doctest.h>

#include <random>

#include "fgamp/amplitude.hpp"
#include "fgamp/oracle.hpp"
#include "test_helpers.hpp"

using namespace fgamp;
using fgamp::testing::random_basis;
using fgamp::testing::random_skew;
using fgamp::testing::random_spins;

TEST_SUITE("amplitude") {

TEST_CASE("L = 2 vacuum, (+,+) outcome: sin(t1/2) sin(t2/2)") {
  const auto state = make_state(SkewMatrix::Zero(2));
  std::mt19937_64 rng(301);
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  for (int t = 0; t < 20; ++t) {
    const double t1 = u(rng), t2 = u(rng);
    const PauliBasisSpec basis(std::vector<SiteAngles>{
        {u(rng), t1, u(rng)}, {u(rng), t2, u(rng)}});
    const cxd a = amplitude(state, basis, parse_configuration("++"));
    CHECK(std::abs(a - std::sin(t1 / 2.0) * std::sin(t2 / 2.0)) <= 1e-12);
  }
}

TEST_CASE("theta -> 0 recovers computational amplitudes via the m form") {
  std::mt19937_64 rng(303);
  const auto state = random_state(6, rng(), 1.0);
  const PauliBasisSpec z = PauliBasisSpec::Uniform(6, 0.0, 0.0, 0.0);
  for (Eigen::Index idx = 0; idx < (1 << 6); ++idx) {
    const cxd via_theorem =
        amplitude_m_form(state, z, index_to_outcome(idx, 6));
    const cxd direct = computational_amplitude(state, index_to_config(idx, 6));
    CHECK(std::abs(via_theorem - direct) <= 1e-12);
  }
}

TEST_CASE("m form matches the dense oracle on every outcome, L = 2..7") {
  std::mt19937_64 rng(307);
  for (Eigen::Index L = 2; L <= 7; ++L) {
    for (int t = 0; t < 5; ++t) {
      const auto state = random_state(L, rng(), 1.0);
      const auto basis = random_basis(rng, L);
      const DenseState dense = dense_from_gaussian(state);
      const Vector ref = oracle_all_amplitudes(dense, basis);
      for (Eigen::Index idx = 0; idx < ref.size(); ++idx) {
        const cxd a = amplitude_m_form(state, basis, index_to_outcome(idx, L));
        CHECK(std::abs(a - ref(idx)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("tan form equals m form away from the singular band") {
  std::mt19937_64 rng(311);
  for (int t = 0; t < 100; ++t) {
    const Eigen::Index L = 2 + static_cast<Eigen::Index>(rng() % 7);
    const auto state = random_state(L, rng(), 1.0);
    const auto basis = random_basis(rng, L, true);
    const auto outcome = random_spins(rng, L);
    const cxd tan_v = amplitude_tan_form(state, basis, outcome);
    const cxd m_v = amplitude_m_form(state, basis, outcome);
    CHECK(std::abs(tan_v - m_v) <= 1e-10 * std::max(1.0, std::abs(m_v)));
  }
}

TEST_CASE("tan form rejects theta inside the singular band") {
  const auto state = make_state(SkewMatrix::Zero(2));
  const PauliBasisSpec z = PauliBasisSpec::Uniform(2, 0.0, 0.0, 0.0);
  CHECK_THROWS_WITH_AS(amplitude_tan_form(state, z, parse_configuration("++")),
                       doctest::Contains("m form"), guard_error);
}

TEST_CASE("auto path handles theta = 0 and equals the m form") {
  std::mt19937_64 rng(313);
  const auto state = random_state(4, rng(), 1.0);
  const PauliBasisSpec z = PauliBasisSpec::Uniform(4, 0.0, 0.0, 0.0);
  const auto outcome = parse_configuration("+-+-");
  CHECK(amplitude(state, z, outcome) == amplitude_m_form(state, z, outcome));
}

TEST_CASE("L = 1 closed forms from the padded problem") {
  std::mt19937_64 rng(317);
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  const auto state = make_state(SkewMatrix::Zero(1));
  for (int t = 0; t < 20; ++t) {
    const double phi = u(rng), theta = u(rng), alpha = u(rng);
    const PauliBasisSpec basis(std::vector<SiteAngles>{{phi, theta, alpha}});
    const cxd plus = amplitude(state, basis, parse_configuration("+"));
    const cxd minus = amplitude(state, basis, parse_configuration("-"));
    CHECK(std::abs(plus - std::sin(theta / 2.0)) <= 1e-12);
    const cxd expected_minus =
        -std::exp(cxd(0.0, -alpha)) * std::cos(theta / 2.0);
    CHECK(std::abs(minus - expected_minus) <= 1e-12);
  }
}

TEST_CASE("odd L matches the oracle (L = 3, 5)") {
  std::mt19937_64 rng(331);
  for (Eigen::Index L : {3, 5}) {
    for (int t = 0; t < 10; ++t) {
      const auto state = random_state(L, rng(), 1.0);
      const auto basis = random_basis(rng, L);
      const DenseState dense = dense_from_gaussian(state);
      const Vector ref = oracle_all_amplitudes(dense, basis);
      for (Eigen::Index idx = 0; idx < ref.size(); ++idx) {
        const cxd a = amplitude(state, basis, index_to_outcome(idx, L));
        CHECK(std::abs(a - ref(idx)) <= 1e-9);
      }
    }
  }
}

TEST_CASE("the ancilla's phi is immaterial") {
  std::mt19937_64 rng(337);
  const auto state = random_state(5, rng(), 1.0);
  const auto basis = random_basis(rng, 5);
  const auto outcome = random_spins(rng, 5);
  PaddedProblem p = build_padded(state, basis, outcome);
  const cxd reference = detail::even_sequence_b(p.r, p.angles, p.spins);
  for (double phi : {0.4, 1.9, 5.2}) {
    p.angles.back().phi = phi;
    CHECK(std::abs(detail::even_sequence_b(p.r, p.angles, p.spins) -
                   reference) <= 1e-12);
  }
}

TEST_CASE("Eq. a(R, phi) = a(-R, phi + pi/2) holds to machine precision") {
  std::mt19937_64 rng(347);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index L = 2 + static_cast<Eigen::Index>(rng() % 6);
    const auto state = random_state(L, rng(), 1.0);
    const auto neg =
        make_state(SkewMatrix::FromSkewParts(-state.r_matrix().matrix()));
    PauliBasisSpec basis = random_basis(rng, L);
    const auto outcome = random_spins(rng, L);
    const cxd lhs = amplitude(state, basis, outcome);
    PauliBasisSpec shifted = basis;
    for (Eigen::Index j = 0; j < L; ++j) shifted.site(j).phi += kPi / 2.0;
    const cxd rhs = amplitude(neg, shifted, outcome);
    CHECK(std::abs(lhs - rhs) <= 1e-12);
  }
}

TEST_CASE("spin flip against theta reflection: |a_{-S}(t)| = |a_S(pi - t)|") {
  std::mt19937_64 rng(349);
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index L = 2 + static_cast<Eigen::Index>(rng() % 6);
    const auto state = random_state(L, rng(), 1.0);
    const auto basis = random_basis(rng, L);
    const auto outcome = random_spins(rng, L);
    PauliBasisSpec reflected = basis;
    for (Eigen::Index j = 0; j < L; ++j) {
      reflected.site(j).theta = kPi - reflected.site(j).theta;
    }
    const double lhs = std::abs(amplitude(state, basis, outcome.flipped()));
    const double rhs = std::abs(amplitude(state, reflected, outcome));
    CHECK(std::abs(lhs - rhs) <= 1e-10);
  }
}

TEST_CASE("at theta = pi/2, |a_S| = |a_{-S}|") {
  std::mt19937_64 rng(353);
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  for (int t = 0; t < 20; ++t) {
    const Eigen::Index L = 2 + static_cast<Eigen::Index>(rng() % 6);
    const auto state = random_state(L, rng(), 1.0);
    const auto basis = PauliBasisSpec::Uniform(L, u(rng), kPi / 2.0, u(rng));
    const auto outcome = random_spins(rng, L);
    CHECK(std::abs(std::abs(amplitude(state, basis, outcome)) -
                   std::abs(amplitude(state, basis, outcome.flipped()))) <=
          1e-10);
  }
}

TEST_CASE("completeness: sum over outcomes of |a|^2 is 1") {
  std::mt19937_64 rng(359);
  for (Eigen::Index L : {3, 6}) {
    const auto state = random_state(L, rng(), 1.0);
    const auto basis = random_basis(rng, L);
    double total = 0.0;
    for (Eigen::Index idx = 0; idx < (Eigen::Index(1) << L); ++idx) {
      total += std::norm(amplitude(state, basis, index_to_outcome(idx, L)));
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("domain wall: all-plus outcome has no walls") {
  std::mt19937_64 rng(367);
  const auto state = random_state(4, rng(), 1.0);
  const cxd a = domain_wall_amplitude(state, 0.7, parse_configuration("++++"));
  // pf over the empty wall set is 1; only the transformed normalization and
  // the sqrt(2) remain.
  CHECK(std::abs(a) > 0.0);
  const cxd direct = amplitude(
      state, PauliBasisSpec::Uniform(4, 0.7, kPi / 2.0, 0.0),
      parse_configuration("++++"));
  CHECK(std::abs(a - direct) <= 1e-9);
}

TEST_CASE("domain wall: S and -S share the wall pattern") {
  std::mt19937_64 rng(373);
  const auto state = random_state(6, rng(), 1.0);
  const auto outcome = parse_configuration("++-+--");
  const cxd a = domain_wall_amplitude(state, 0.3, outcome);
  const cxd b = domain_wall_amplitude(state, 0.3, outcome.flipped());
  // Even ring: the sgn factors coincide, so the amplitudes are equal.
  CHECK(std::abs(a - b) <= 1e-12);
}

TEST_CASE("domain wall matches the general engine on random instances") {
  std::mt19937_64 rng(379);
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  for (Eigen::Index L : {4, 6, 8}) {
    for (int t = 0; t < 10; ++t) {
      const auto state = random_state(L, rng(), 1.0);
      const double phi = u(rng);
      const auto basis = PauliBasisSpec::Uniform(L, phi, kPi / 2.0, 0.0);
      const auto outcome = random_spins(rng, L);
      const cxd dw = domain_wall_amplitude(state, phi, outcome);
      const cxd direct = amplitude(state, basis, outcome);
      CHECK(std::abs(dw - direct) <= 1e-9);
    }
  }
}

TEST_CASE("dispatcher validates the domain-wall basis") {
  std::mt19937_64 rng(383);
  const auto state = random_state(4, rng(), 1.0);
  const auto bad = PauliBasisSpec::Uniform(4, 0.0, 1.2, 0.0);
  CHECK_THROWS_AS(amplitude(state, bad, parse_configuration("++--"),
                            AmplitudePath::DomainWall),
                  std::invalid_argument);
}

TEST_CASE("L = 4 product relations hold on random states") {
  std::mt19937_64 rng(389);
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  for (int t = 0; t < 20; ++t) {
    const auto state = random_state(4, rng(), 1.0);
    const auto basis = PauliBasisSpec::Uniform(4, u(rng), kPi / 2.0, 0.0);
    const auto report = amplitude_relations_check(state, basis);
    CHECK(report.checks.size() == 3);
    CHECK(report.max_residual <= 1e-10);
  }
}

TEST_CASE("L = 4 relations on the vacuum state degenerate to 0 = 0") {
  const auto state = make_state(SkewMatrix::Zero(4));
  const auto report = amplitude_relations_check(
      state, PauliBasisSpec::Uniform(4, 0.0, kPi / 2.0, 0.0));
  CHECK(report.max_residual <= 1e-12);
}

TEST_CASE("m-form entry reductions: sigma-x row of the pair table") {
  // b^{xx} = (r_nm - (-1)^{n+m} s_n s_m)/2 at theta = pi/2, phi = 0.
  std::mt19937_64 rng(397);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const SiteAngles x{0.0, kPi / 2.0, 0.0};
  for (int t = 0; t < 10; ++t) {
    const cxd r(gauss(rng), gauss(rng));
    for (int sn : {1, -1}) {
      for (int sm : {1, -1}) {
        for (int parity : {1, -1}) {
          const cxd b = detail::pair_b(r, parity, x, x, sn, sm);
          const cxd expected =
              0.5 * (r - static_cast<double>(parity * sn * sm));
          CHECK(std::abs(b - expected) <= 1e-12);
        }
      }
    }
  }
}

TEST_CASE("m-form (+,-) entry matches the printed closed form") {
  std::mt19937_64 rng(401);
  std::uniform_real_distribution<double> u(0.0, 2.0 * kPi);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int t = 0; t < 10; ++t) {
    const cxd r(gauss(rng), gauss(rng));
    const SiteAngles a1{u(rng), u(rng), u(rng)};
    const SiteAngles a2{u(rng), u(rng), u(rng)};
    const cxd b = detail::pair_b(r, -1, a1, a2, 1, -1);  // (n,m) = (1,2)
    const cxd expected =
        r * std::exp(cxd(0.0, a1.phi + a2.phi)) * std::cos(a1.theta / 2.0) *
            std::sin(a2.theta / 2.0) -
        std::sin(a1.theta / 2.0) * std::cos(a2.theta / 2.0);
    CHECK(std::abs(b - expected) <= 1e-12);
  }
}

TEST_CASE("all-up amplitude reduces to the printed special case") {
  std::mt19937_64 rng(409);
  const Eigen::Index L = 4;
  const auto state = random_state(L, rng(), 1.0);
  const auto basis = random_basis(rng, L);
  // Direct evaluation of the all-plus closed form: pf of the b^{++} matrix
  // over the full chain, divided by N_R.
  Matrix m = Matrix::Zero(L, L);
  for (Eigen::Index a = 0; a < L; ++a) {
    for (Eigen::Index b2 = a + 1; b2 < L; ++b2) {
      const SiteAngles& sa = basis.site(a);
      const SiteAngles& sb = basis.site(b2);
      const double parity = ((a + b2) % 2 == 0) ? 1.0 : -1.0;
      m(a, b2) = std::cos(sa.theta / 2.0) * std::cos(sb.theta / 2.0) *
                     state.r_matrix()(a, b2) *
                     std::exp(cxd(0.0, sa.phi + sb.phi)) -
                 parity * std::sin(sa.theta / 2.0) * std::sin(sb.theta / 2.0);
      m(b2, a) = -m(a, b2);
    }
  }
  const cxd closed =
      pfaffian(SkewMatrix::FromSkewParts(std::move(m))) / state.norm();
  const cxd engine = amplitude(
      state, basis,
      SpinConfiguration(std::vector<int>(static_cast<std::size_t>(L), 1)));
  CHECK(std::abs(closed - engine) <= 1e-12);
}

}  // TEST_SUITE
