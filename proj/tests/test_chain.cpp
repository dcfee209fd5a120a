#include <gtest/gtest.h>

#include "bdw/chain.hpp"
#include "bdw/io.hpp"
#include "oracles.hpp"

using namespace bdw;

namespace {
Eigen::MatrixXd dense(const LinearOperator<double>& op) { return to_dense(op); }
}  // namespace

TEST(Chain, InvariantHamiltonianMatchesPauliForm) {
  for (int N = 2; N <= 8; N += 2)
    for (double q : {0.5, 0.3, 0.9}) {
      Eigen::MatrixXd ref = oracle::pauli_hamiltonian(N, q);
      Eigen::MatrixXd got = dense(build_invariant_hamiltonian<double>(N, q));
      EXPECT_LT((ref - got).cwiseAbs().maxCoeff(), 1e-13) << "N=" << N << " q=" << q;
    }
}

TEST(Chain, ExactModeAndSectors) {
  const Rational q(1, 3);
  auto H = build_invariant_hamiltonian<Rational>(6, q);
  EXPECT_EQ(H.symmetry(), Symmetry::hermitian);
  EXPECT_EQ(max_abs_difference(H, H.transpose()), 0.0);
  auto Hd = to_floating(H);
  Eigen::MatrixXd ref = oracle::pauli_hamiltonian(6, 1.0 / 3);
  for (int m = 0; m <= 6; ++m) {
    SpinBasis sector(6, m);
    auto Hm = build_invariant_hamiltonian<Rational>(6, q, m);
    ASSERT_EQ(Hm.dim(), sector.size());
    double worst = 0;
    Hm.for_each([&](std::size_t r, std::size_t c, const Rational& v) {
      worst = std::max(worst, std::abs(to_double(v) - ref(sector[r], sector[c])));
    });
    EXPECT_LT(worst, 1e-14);
    // spectrum of each sector: lowest eigenvalue is 0 (the U_q(sl2) tower of Omega)
    EXPECT_NEAR(dense_eigensolve(Hm).eigenvalues.front().real(), 0.0, 1e-10);
  }
  EXPECT_THROW(build_invariant_hamiltonian<double>(5, 0.5), DomainError);
  EXPECT_THROW(build_invariant_hamiltonian<double>(4, 1.5), DomainError);
  EXPECT_THROW(build_invariant_hamiltonian<double>(20, 0.5, std::nullopt, 1000), DimensionError);
}

TEST(Chain, DenseOracleAgreesWithEigen) {
  auto H = build_invariant_hamiltonian<double>(8, 0.5);
  auto ed = dense_eigensolve(H);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::pauli_hamiltonian(8, 0.5));
  ASSERT_EQ(ed.eigenvalues.size(), 256u);
  for (int k = 0; k < 256; ++k) EXPECT_NEAR(ed.eigenvalues[k].real(), es.eigenvalues()(k), 1e-10);
  EXPECT_LT(ed.max_residual, 1e-10);
}

TEST(Chain, DomainWallHamiltonianIsTheHalfFilledBlock) {
  // Inside the p-box, H_DW = P H P + q * (number of additions leaving the box).
  for (int p = 1; p <= 4; ++p) {
    const int N = 2 * p;
    const double q = 0.5;
    PartitionBasis box(Truncation::box(p));
    Eigen::MatrixXd ref = oracle::pauli_hamiltonian(N, q);
    auto H = build_dw_hamiltonian<double>(box, q);
    double worst = 0;
    for (std::size_t r = 0; r < box.size(); ++r)
      for (std::size_t c = 0; c < box.size(); ++c) {
        double expect = ref(dw_mask(N, box[r]), dw_mask(N, box[c]));
        if (r == c) expect += q * box.suppressed_additions(c);
        worst = std::max(worst, std::abs(H.entry(r, c) - expect));
      }
    EXPECT_LT(worst, 1e-13) << "p=" << p;
  }
}

TEST(Chain, GroundStateAndXxzOffset) {
  const Rational q(2, 5);
  PartitionBasis basis(Truncation::weight(14));
  auto H = build_dw_hamiltonian<Rational>(basis, q);
  auto v = H * dw_ground_state<Rational>(basis, q);
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis.is_interior(i)) {
      EXPECT_EQ(v[i], Rational(0)) << basis[i].str();
    }
  auto diff = H - build_dw_xxz_form<Rational>(basis, q);
  diff.for_each([&](std::size_t r, std::size_t c, const Rational& x) {
    if (r != c) {
      EXPECT_EQ(x, Rational(0));
    } else {
      EXPECT_EQ(x, (q - 1 / q) / 2);
    }
  });
  EXPECT_EQ(domain_wall_count(Partition{}), 1);
  EXPECT_EQ(domain_wall_count(Partition({2, 1})), 5);
}

TEST(Chain, MagnetizationOfGroundStateMatchesEnumeration) {
  const Rational q(1, 2);
  for (int p = 1; p <= 4; ++p) {
    PartitionBasis box(Truncation::box(p));
    auto g = dw_ground_state<Rational>(box, q);
    for (int i = 0; i < 2 * p; ++i) {
      HalfInt x = site_coordinate(2 * p, i);
      EXPECT_NEAR(magnetization(box, g, x), to_double(oracle::magnetization(p, q, i)), 1e-14);
      auto full = box_to_spin(2 * p, box, g);
      EXPECT_NEAR(magnetization(SpinBasis(2 * p), full, x), to_double(oracle::magnetization(p, q, i)), 1e-14);
    }
  }
}

TEST(Chain, TotalSpinAndSerialization) {
  SpinBasis b(4);
  auto S = total_sz<Rational>(b);
  auto H = build_invariant_hamiltonian<Rational>(4, Rational(1, 2));
  EXPECT_EQ(max_abs_difference(H * S, S * H), 0.0);
  EXPECT_EQ(S.entry(0, 0), Rational(4));  // N - 2m, unhalved
  EXPECT_EQ(S.entry(15, 15), Rational(-4));
  Json j = to_json(build_invariant_hamiltonian<double>(2, 0.5));
  EXPECT_EQ(j["basis"]["kind"], "spin");
  EXPECT_EQ(j["dim"], 4);
  EXPECT_EQ(j["symmetry"], "hermitian");
  EXPECT_EQ(j["entries"].size(), 4u);  // two diagonal, two hops
  auto s = SpinBasisState::from_mask(4, 0b0101);
  EXPECT_EQ(s.mask(), 0b0101u);
  EXPECT_EQ(s.magnons(), 2);
  EXPECT_THROW(SpinBasisState(4, {HalfInt::from_twice(5)}), DomainError);
}
