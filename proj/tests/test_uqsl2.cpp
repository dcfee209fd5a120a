#include <gtest/gtest.h>

#include "bdw/bethe.hpp"
#include "bdw/uqsl2.hpp"
#include "oracles.hpp"

using namespace bdw;

namespace {

Eigen::VectorXd basis_vector(int N, SpinMask m) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(1 << N);
  v(static_cast<Eigen::Index>(m)) = 1;
  return v;
}

/// q^{C(p,2)} / [p]_{q^2}! K^{-p/2} F^p v with Pauli-built operators.
Eigen::VectorXd oracle_descendant(int N, double q, int p, const Eigen::VectorXd& v) {
  Eigen::MatrixXd F = oracle::pauli_F(N, q);
  Eigen::VectorXd w = v;
  for (int i = 0; i < p; ++i) w = F * w;
  double fact = 1;
  for (int k = 1; k <= p; ++k) fact *= (1 - std::pow(q * q, k)) / (1 - q * q);
  for (int s = 0; s < (1 << N); ++s) w(s) *= std::pow(q, -p * (N - 2 * std::popcount(static_cast<unsigned>(s))) / 2.0);
  return w * std::pow(q, p * (p - 1) / 2.0) / fact;
}

}  // namespace

TEST(Uqsl2, GeneratorsMatchKroneckerConstruction) {
  for (int N = 1; N <= 6; ++N) {
    const double q = 0.4;
    auto g = build_generators<double>(N, q);
    EXPECT_LT((to_dense(g.E) - oracle::pauli_E(N, q)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((to_dense(g.F) - oracle::pauli_F(N, q)).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LT((to_dense(g.K) - oracle::pauli_K(N, q)).cwiseAbs().maxCoeff(), 1e-14);
  }
}

TEST(Uqsl2, GeneratorsCommuteWithHamiltonian) {
  Eigen::MatrixXd H = oracle::pauli_hamiltonian(6, 0.5);
  auto g = build_generators<double>(6, 0.5);
  for (const auto* op : {&g.E, &g.F, &g.K}) {
    Eigen::MatrixXd X = to_dense(*op);
    EXPECT_LT((H * X - X * H).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Uqsl2, RelationsExact) {
  for (int N = 1; N <= 8; ++N) {
    auto g = build_generators<Rational>(N, Rational(1, 3));
    EXPECT_EQ(verify_algebra_relations(g).max(), 0.0) << N;
    for (int p = 0; p <= 3; ++p) EXPECT_EQ(verify_adjoints(g, p).max(), 0.0) << N << ' ' << p;
  }
}

TEST(Uqsl2, LemmaAgainstPauliPowers) {
  const double q = 0.6;
  for (int N = 2; N <= 6; N += 2)
    for (SpinMask x = 0; x < (SpinMask{1} << N); ++x) {
      const int m = std::popcount(x);
      for (int p = 1; m + p <= N && p <= 3; ++p) {
        Eigen::VectorXd ref = oracle_descendant(N, q, p, basis_vector(N, x));
        auto closed = f_power_closed_form(SpinBasisState::from_mask(N, x), p, q);
        for (int s = 0; s < (1 << N); ++s) ASSERT_NEAR(closed[s], ref(s), 1e-12 * std::max(1.0, std::abs(ref(s))));
      }
    }
}

TEST(Uqsl2, LemmaCalibrationExact) {
  const Rational q(1, 2);
  auto g = build_generators<Rational>(6, q);
  for (int m = 0; m <= 2; ++m)
    for (int p = 1; p <= 3; ++p) {
      SpinMask x = (SpinMask{1} << m) - 1;  // down spins on the left
      auto cal = calibrate_lemma_prefactor(g, SpinBasisState::from_mask(6, x), p);
      EXPECT_TRUE(cal.consistent);
      EXPECT_EQ(cal.prefactor_twice, lemma_prefactor_twice(p, m));
      EXPECT_EQ(cal.max_deviation, 0.0);
    }
  // the printed exponent agrees with the doubled prefactor only at p = 1
  for (int m = 0; m <= 3; ++m) {
    EXPECT_EQ(printed_lemma_exponent(1, m), lemma_prefactor_twice(1, m));
    for (int p = 2; p <= 3; ++p) EXPECT_NE(printed_lemma_exponent(p, m), lemma_prefactor_twice(p, m));
  }
  EXPECT_THROW(f_power_closed_form(SpinBasisState::from_mask(2, 3), 1, q), SectorOverflow);
}

TEST(Uqsl2, VacuumTowerNorms) {
  // (B_p, B_p) = [2p, p]_{q^2} for the tower over the all-up state at N = 2p
  for (int p = 1; p <= 4; ++p) {
    const double q = 0.7;
    Eigen::VectorXd b = oracle_descendant(2 * p, q, p, basis_vector(2 * p, 0));
    EXPECT_NEAR(b.squaredNorm(), to_double(oracle::box_generating_function(2 * p, p, Rational(49, 100))), 1e-11);
  }
}

TEST(Uqsl2, KacIdentityExact) {
  const Rational q(2, 3);
  for (int N = 2; N <= 6; N += 2) {
    auto g = build_generators<Rational>(N, q);
    StateVector<Rational> omega(SpinBasis(N).tag(), std::size_t{1} << N);
    omega[0] = 1;
    for (int p = 0; p <= N; ++p)
      for (int pp = 0; pp <= p; ++pp) EXPECT_EQ(verify_kac_identity(g, p, pp, omega), 0.0);
    StateVector<Rational> bad(SpinBasis(N).tag(), std::size_t{1} << N);
    bad[1] = 1;
    EXPECT_THROW(verify_kac_identity(g, 1, 1, bad), NotHighestWeight);
  }
}

TEST(Uqsl2, CoordinateChangeAndMarkers) {
  auto h = [](int t) { return HalfInt::from_twice(t); };
  auto cc = coordinate_change({h(-3), h(1)}, {h(3), h(-1), h(-5)});
  std::vector<int> u;
  for (auto x : cc.u) u.push_back(x.twice());
  EXPECT_EQ(u, (std::vector<int>{3, 1, -1, -3, -5}));
  EXPECT_EQ(cc.l, (std::vector<int>{2, 4}));
  EXPECT_THROW(coordinate_change({h(1)}, {h(1)}), OverlapError);
  // identity holds for every disjoint pair inside a 6-site window
  for (SpinMask xm = 0; xm < 64; ++xm)
    for (SpinMask ym = 0; ym < 64; ++ym) {
      if (xm & ym) continue;
      auto x = SpinBasisState::from_mask(6, xm).down(), y = SpinBasisState::from_mask(6, ym).down();
      auto [lhs, rhs] = marker_identity_sides(x, y);
      EXPECT_EQ(lhs, rhs);
      long long direct = 0;  // pairs with a y above an x
      for (HalfInt b : y)
        for (HalfInt a : x) direct += a < b;
      EXPECT_EQ(lhs, direct);
    }
}

TEST(Uqsl2, ScalarProductOneMagnon) {
  const double q = 0.5;
  for (int p = 0; p <= 3; ++p) {
    const int N = 2 * (p + 1);
    auto g = build_generators<Complex>(N, Complex(q));
    for (const auto& r : solve_bethe_m1(N, q)) {
      auto b = build_bethe_vector(N, r.z, q);
      auto s = verify_scalar_product(b, b, g, p, p);
      EXPECT_LT(std::abs(s.lhs - s.rhs) / std::abs(s.rhs), 1e-9);
      for (int pp = 0; pp < p; ++pp) EXPECT_LT(std::abs(inner(descendant(b, p, g), descendant(b, pp, g))), 1e-12);
    }
  }
}
