#include <gtest/gtest.h>

#include <random>

#include "bdw/bethe.hpp"
#include "bdw/io.hpp"
#include "bdw/spectrum.hpp"
#include "oracles.hpp"

using namespace bdw;

namespace {

Eigen::VectorXcd dense_vector(const StateVector<Complex>& v) {
  return Eigen::Map<const Eigen::VectorXcd>(v.amplitudes().data(), static_cast<Eigen::Index>(v.size()));
}

/// ||H v - E v|| / ||v|| with the Pauli Hamiltonian.
double pauli_residual(int N, double q, const StateVector<Complex>& v, Complex E) {
  Eigen::MatrixXcd H = oracle::pauli_hamiltonian(N, q).cast<Complex>();
  Eigen::VectorXcd x = dense_vector(v);
  return (H * x - E * x).norm() / x.norm();
}

}  // namespace

TEST(Bethe, OneMagnonRootsAndVectors) {
  for (int N : {2, 4, 6, 8})
    for (double q : {0.5, 0.25}) {
      auto roots = solve_bethe_m1(N, q);
      ASSERT_EQ(static_cast<int>(roots.size()), N - 1);
      Eigen::MatrixXd E = oracle::pauli_E(N, q);
      for (const auto& r : roots) {
        EXPECT_TRUE(r.on_shell);
        EXPECT_LT(bethe_equation_residual(N, q, r.z), 1e-12);
        EXPECT_NEAR(std::abs(r.z[0]), 1.0, 1e-14);
        auto v = build_bethe_vector(N, r.z, q);
        const Complex en = bethe_energy(r.z, anisotropy(q));
        EXPECT_NEAR(en.imag(), 0.0, 1e-12);
        EXPECT_LT(pauli_residual(N, q, v, en), 1e-10);
        Eigen::VectorXcd x = dense_vector(v);
        EXPECT_LT((E.cast<Complex>() * x).norm() / x.norm(), 1e-10);
      }
    }
}

TEST(Bethe, UnsignedReflectionsFail) {
  auto cal = calibrate_reflection_sign(4, 0.5);
  EXPECT_EQ(cal.chosen, ReflectionSign::alternating);
  EXPECT_LT(cal.residual_alternating, 1e-12);
  EXPECT_GT(cal.residual_plain, 1e-3);
}

TEST(Bethe, TwoMagnonSearchAtFourSites) {
  // half filling at N = 4: two highest-weight states, one of them bound
  const double q = 0.5;
  auto found = search_bethe_roots(4, 2, q, 400, 1);
  ASSERT_EQ(found.size(), 2u);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::pauli_hamiltonian(4, q));
  bool bound = false;
  for (const auto& r : found) {
    const Complex en = bethe_energy(r.z, anisotropy(q));
    auto v = build_bethe_vector(4, r.z, q);
    EXPECT_LT(pauli_residual(4, q, v, en), 1e-9);
    double gap = 1e9;
    for (int k = 0; k < 16; ++k) gap = std::min(gap, std::abs(es.eigenvalues()(k) - en.real()));
    EXPECT_LT(gap, 1e-9);
    for (Complex w : r.z) bound = bound || std::abs(std::abs(w) - 1) > 1e-3;
  }
  EXPECT_TRUE(bound);
  // same seed, same output
  auto again = search_bethe_roots(4, 2, q, 400, 1);
  ASSERT_EQ(again.size(), found.size());
  for (std::size_t i = 0; i < found.size(); ++i)
    EXPECT_NEAR(bethe_energy(again[i].z, anisotropy(q)).real(), bethe_energy(found[i].z, anisotropy(q)).real(), 0);
}

TEST(Bethe, SpectrumAccountedForSmallChains) {
  for (int N : {2, 4}) {
    auto acc = spectrum_accounting(N, 0.5, N / 2);
    EXPECT_TRUE(acc.complete()) << N;
    EXPECT_EQ(static_cast<int>(acc.entries.size()), 1 << N);
    EXPECT_LT(acc.max_residual, 1e-9);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle::pauli_hamiltonian(N, 0.5));
    std::vector<double> a(acc.dense), b(es.eigenvalues().data(), es.eigenvalues().data() + (1 << N));
    std::sort(a.begin(), a.end());
    for (std::size_t k = 0; k < a.size(); ++k) EXPECT_NEAR(a[k], b[k], 1e-10);
  }
  // N = 2: three m=0 states at E = 0 and one m=1 state at 2 Delta
  auto acc = spectrum_accounting(2, 0.5, 1);
  int zeros = 0;
  for (const auto& e : acc.entries) zeros += std::abs(e.energy) < 1e-12;
  EXPECT_EQ(zeros, 3);
}

TEST(Bethe, HalfFilledFormulaMatchesDescendant) {
  const double q = 0.5;
  for (int N : {4, 6, 8}) {
    auto g = build_generators<Complex>(N, Complex(q));
    PartitionBasis box(Truncation::box(N / 2));
    for (const auto& r : solve_bethe_m1(N, q)) {
      auto hf = half_filled_coefficients(N, r.z, q);
      auto ref = spin_to_box(N, box, descendant(build_bethe_vector(N, r.z, q), N / 2 - 1, g));
      std::size_t k = 0;
      while (std::abs(ref[k]) < 1e-12 * ref.max_abs()) ++k;
      const Complex c = hf[k] / ref[k];
      for (std::size_t i = 0; i < box.size(); ++i) EXPECT_LT(std::abs(hf[i] - c * ref[i]), 1e-10 * hf.max_abs());
    }
  }
  EXPECT_THROW(half_filled_coefficients(5, {Complex(1)}, q), DomainError);
}

TEST(Bethe, InfiniteDomainWallEigenvectors) {
  const double q = 0.5, delta = anisotropy(q);
  PartitionBasis basis(Truncation::weight(20));
  for (double a : {0.2, 1.1, 2.5}) {
    Complex z = std::polar(1.0, a);
    auto v = binf_vector(basis, {z}, q);
    EXPECT_LT(dw_interior_residual(basis, v, bethe_energy({z}, delta), q), 1e-8);
    // a wrong eigenvalue is detected
    EXPECT_GT(dw_interior_residual(basis, v, bethe_energy({z}, delta) + 0.1, q), 1e-3);
  }
  PartitionBasis small(Truncation::weight(14));
  auto v2 = binf_vector(small, {std::polar(1.0, 0.7), std::polar(1.0, 2.0)}, q);
  EXPECT_LT(dw_interior_residual(small, v2, bethe_energy({std::polar(1.0, 0.7), std::polar(1.0, 2.0)}, delta), q), 1e-9);
}

TEST(Bethe, TailSums) {
  const double q = 0.5;
  for (int r = 0; r <= 6; ++r) {
    Complex z = std::polar(3.0, 0.9);  // |1/(qz)| < 1: the direct sum converges
    EXPECT_LT(std::abs(regularized_tail_m1(r, z, q) - direct_tail_m1(r, z, q, 300)), 1e-12 * std::abs(direct_tail_m1(r, z, q, 300)));
    Complex u = std::polar(1.0, 0.9);
    EXPECT_LT(std::abs(regularized_tail_m1(r, u, q) - telescoped_tail_m1(r, u, q)), 1e-12);
  }
}

TEST(Bethe, FerromagneticScatteringAndBoundStates) {
  const double delta = 1.25;
  std::vector<Complex> z{std::polar(1.0, 0.4), std::polar(1.0, 1.9)};
  EXPECT_LT(ferro_eigen_residual(z, delta, 10), 1e-12);
  // a scattering factor that ignores the interaction fails
  auto free = [](const std::vector<Complex>&) { return Complex(1); };
  EXPECT_GT(ferro_eigen_residual(z, delta, 10, free), 1e-3);
  EXPECT_THROW(ferro_eigen_residual(z, delta, 3), WindowTooSmall);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> beta(-1.5, 1.5), eta(0.2, 2.0);
  for (int n = 1; n <= 5; ++n)
    for (int k = 0; k < 20; ++k) {
      BoundState bs{n, beta(rng), eta(rng)};
      auto r = bound_state_roots(bs);
      ASSERT_EQ(r.m(), n);
      EXPECT_LT(h_orbit_residual(r.z, bs.delta()), 1e-12);
      EXPECT_LT(product_formula_residual(bs, r.z), 1e-12);
      EXPECT_NEAR(bound_state_energy(bs), bethe_energy(r.z, bs.delta()).real(), 1e-12 * std::max(1.0, bound_state_energy(bs)));
      if (n >= 2 && n <= 3) {
        EXPECT_LT(ferro_eigen_residual(r.z, bs.delta(), n + 6), 1e-9);
      }
    }
}

TEST(Bethe, RootsJsonRoundTrip) {
  auto roots = solve_bethe_m1(6, 0.5);
  Json j = to_json(roots[2]);
  EXPECT_EQ(j["context"], "finite");
  EXPECT_EQ(j["m"], 1);
  auto back = roots_from_json(j);
  EXPECT_EQ(back.z, roots[2].z);
  EXPECT_EQ(back.N, 6);
}
