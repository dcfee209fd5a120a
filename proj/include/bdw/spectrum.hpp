#pragma once

// Accounts for the spectrum of the invariant chain by Bethe highest-weight
// vectors and their descendants, checked against the dense oracle.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "bdw/bethe.hpp"
#include "bdw/chain.hpp"
#include "bdw/linalg.hpp"
#include "bdw/uqsl2.hpp"

namespace bdw {

struct SpectrumEntry {
  int m = 0;                 // magnons in the highest-weight vector
  int p = 0;                 // descendant order
  std::vector<Complex> z;    // Bethe roots
  double energy = 0;         // sum (2 Delta - z - 1/z)
  double residual = 0;       // ||H B_p - E B_p|| / ||B_p||
  double highest_weight = 0; // ||E B|| / ||B|| of the parent
};

struct SpectrumAccounting {
  int N = 0;
  std::vector<SpectrumEntry> entries;
  std::vector<double> dense;        // eigenvalues from the dense oracle
  std::vector<int> match;           // entry index -> dense index, or -1
  int unmatched_dense = 0;
  int unmatched_entries = 0;
  double max_mismatch = 0;          // largest |entry energy - matched dense value|
  double max_residual = 0;
  bool complete() const { return unmatched_dense == 0 && unmatched_entries == 0; }
};

/// Collects every highest-weight Bethe vector with m <= max_m and all its
/// descendants, then matches the energies one-to-one with the dense
/// spectrum (tolerance 1e-8). One-magnon roots come from solve_bethe_m1,
/// more magnons from the seeded multistart search.
inline SpectrumAccounting spectrum_accounting(int N, double q, int max_m, int starts = 400, std::uint64_t seed = 1) {
  SpectrumAccounting acc;
  acc.N = N;
  const double delta = anisotropy(q);
  auto H = to_complex(build_invariant_hamiltonian<double>(N, q));
  auto g = build_generators<Complex>(N, Complex(q));

  std::vector<std::vector<Complex>> families;
  families.push_back({});
  if (max_m >= 1)
    for (const auto& r : solve_bethe_m1(N, q)) families.push_back(r.z);
  for (int m = 2; m <= std::min(max_m, N / 2); ++m)
    for (const auto& r : search_bethe_roots(N, m, q, starts, seed)) families.push_back(r.z);

  for (const auto& z : families) {
    const int m = static_cast<int>(z.size());
    StateVector<Complex> b = build_bethe_vector(N, z, q);
    const double hw = (g.E * b).norm() / b.norm();
    const Complex en = bethe_energy(z, delta);
    for (int p = 0; p <= N - 2 * m; ++p) {
      StateVector<Complex> v = descendant(b, p, g);
      SpectrumEntry e{m, p, z, en.real(), (H * v - en * v).norm() / v.norm(), hw};
      acc.max_residual = std::max({acc.max_residual, e.residual, hw});
      acc.entries.push_back(std::move(e));
    }
  }

  for (Complex ev : dense_eigensolve(H).eigenvalues) acc.dense.push_back(ev.real());
  std::vector<bool> used(acc.dense.size(), false);
  acc.match.assign(acc.entries.size(), -1);
  for (std::size_t i = 0; i < acc.entries.size(); ++i) {
    int best = -1;
    double gap = 1e-8;
    for (std::size_t j = 0; j < acc.dense.size(); ++j)
      if (!used[j] && std::abs(acc.dense[j] - acc.entries[i].energy) <= gap) {
        best = static_cast<int>(j);
        gap = std::abs(acc.dense[j] - acc.entries[i].energy);
      }
    if (best < 0) {
      ++acc.unmatched_entries;
      continue;
    }
    used[best] = true;
    acc.match[i] = best;
    acc.max_mismatch = std::max(acc.max_mismatch, gap);
  }
  acc.unmatched_dense = static_cast<int>(std::count(used.begin(), used.end(), false));
  return acc;
}

}  // namespace bdw
