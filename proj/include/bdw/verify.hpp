#pragma once

// Invariant suites run by `bdw verify`. Each suite returns named checks with
// their measured value and tolerance, plus the convention calibrations it
// relied on.

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "bdw/asep.hpp"
#include "bdw/bethe.hpp"
#include "bdw/chain.hpp"
#include "bdw/io.hpp"
#include "bdw/observables.hpp"
#include "bdw/partitions.hpp"
#include "bdw/qseries.hpp"
#include "bdw/spectrum.hpp"
#include "bdw/uqsl2.hpp"

namespace bdw {

struct RunConfig {
  std::string q_text = "1/2";
  double A = 1.0;
  int N = 6;
  int m = 1;
  int p = 3;
  Truncation trunc = Truncation::weight(24);
  int K = kDefaultSeriesTruncation;
  std::uint64_t seed = 7;
  int samples = 1;
  double t = 50.0;
  std::string format = "json";
  std::string out;
  bool mutate_rate_matrix = false;  // negative-control hook for the asep suite

  Rational q_exact() const { return parse_rational(q_text); }
  double q() const { return to_double(q_exact()); }

  /// Empty when the configuration is usable, otherwise the reason.
  std::string validate() const {
    Rational q;
    try {
      q = q_exact();
    } catch (const std::exception&) {
      return "cannot parse q = '" + q_text + "'";
    }
    if (!(q > 0 && q < 1)) return "q must lie in (0, 1)";
    if (!(A > 0)) return "A must be positive";
    if (N < 2 || N % 2 != 0) return "N must be even and >= 2";
    if (m < 0 || p < 0) return "m and p must be nonnegative";
    if (trunc.max_weight < 1 || trunc.max_part < 1 || trunc.max_length < 1) return "truncation bounds must be positive";
    if (K < 1) return "K must be positive";
    if (samples < 1) return "samples must be positive";
    if (!(t >= 0)) return "t must be nonnegative";
    if (format != "json" && format != "csv") return "format must be json or csv";
    return {};
  }
};

struct Check {
  std::string name;
  double value = 0;
  double tolerance = 0;
  bool pass = false;
};

struct SuiteReport {
  explicit SuiteReport(std::string name = {}) : suite(std::move(name)) {}

  std::string suite;
  std::vector<Check> checks;
  Json calibrations = Json::object();
  double seconds = 0;

  /// Passes when value <= tolerance.
  void expect_le(std::string name, double value, double tolerance) {
    checks.push_back({std::move(name), value, tolerance, value <= tolerance});
  }
  /// Exact checks: value is 0 for success.
  void expect_zero(std::string name, double value) { expect_le(std::move(name), value, 0.0); }
  void expect_true(std::string name, bool ok) { checks.push_back({std::move(name), ok ? 0.0 : 1.0, 0.0, ok}); }
  bool passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  Json to_json() const {
    Json arr = Json::array();
    for (const auto& c : checks)
      arr.push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
    return Json{{"suite", suite}, {"passed", passed()}, {"seconds", seconds}, {"calibrations", calibrations},
                {"checks", arr}};
  }
};

namespace detail {
inline double exact_gap(const Rational& a, const Rational& b) { return a == b ? 0.0 : std::abs(to_double(a - b)) + 1e-300; }
}  // namespace detail

inline SuiteReport verify_qseries(const RunConfig& cfg) {
  SuiteReport r{"qseries"};
  const Rational q = cfg.q_exact();
  const Rational q2 = q * q;
  double pascal = 0, symmetry = 0;
  for (int n = 0; n <= 12; ++n)
    for (int k = 0; k <= n; ++k) {
      symmetry = std::max(symmetry, detail::exact_gap(q_binomial(n, k, q), q_binomial(n, n - k, q)));
      if (n >= 1 && k >= 1)
        pascal = std::max(pascal, detail::exact_gap(q_binomial(n, k, q),
                                                    ipow(q, k) * q_binomial(n - 1, k, q) + q_binomial(n - 1, k - 1, q)));
    }
  r.expect_zero("qbinom symmetry n<=12 (exact)", symmetry);
  r.expect_zero("qbinom second Pascal rule n<=12 (exact)", pascal);
  double fact = 0;
  for (int n = 0; n <= 10; ++n)
    for (int k = 0; k <= n; ++k)
      fact = std::max(fact, detail::exact_gap(q_binomial(n, k, q) * q_factorial(k, q) * q_factorial(n - k, q), q_factorial(n, q)));
  r.expect_zero("qbinom * [k]! [n-k]! = [n]! (exact)", fact);
  r.expect_zero("[4 choose 2]_{1/4} = 1.39453125 (exact)", detail::exact_gap(q_binomial(4, 2, Rational(1, 4)), Rational(357, 256)));
  const double qd = cfg.q();
  const double ratio = to_double(q_binomial(80, 40, q2)) / euler_inverse_product(qd, 400);
  r.expect_le("qbinom(80,40;q^2) / euler(q,400) - 1", std::abs(ratio - 1), 1e-6);
  auto inf = q_pochhammer_inf(qd * qd, qd * qd, cfg.K);
  r.expect_le("(q^2;q^2)_inf tail bound", inf.tail_bound, 1e-12);
  return r;
}

inline SuiteReport verify_partitions(const RunConfig&) {
  SuiteReport r{"partitions"};
  // partition numbers p(0..12)
  const std::vector<int> pn{1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77};
  auto all = enumerate_partitions(Truncation::weight(12));
  std::vector<int> counts(13, 0);
  for (const auto& d : all) ++counts[static_cast<std::size_t>(d.weight())];
  r.expect_true("partition counts p(n), n<=12", counts == pn);
  bool frob = true, transpose = true, maya = true;
  for (const auto& d : all) {
    auto fc = frobenius_coords(d);
    int s = 0;
    for (int i = 0; i < fc.m; ++i) s += fc.v_twice[i] - fc.u_twice[i];
    frob = frob && s == 2 * d.weight();
    transpose = transpose && d.transpose().transpose() == d && d.transpose().weight() == d.weight();
    // the Maya diagram has exactly as many holes left of 0 as particles right of 0
    int right = 0, left = 0;
    for (int n = -d.length() - 1; n <= d.row(1); ++n) {
      bool down = is_down(d, HalfInt::above(n));
      if (n >= 0 && down) ++right;
      if (n < 0 && !down) ++left;
    }
    maya = maya && right == left && right == fc.m;
  }
  r.expect_true("sum (v_i - u_i) = |d|", frob);
  r.expect_true("transpose is an involution", transpose);
  r.expect_true("Maya charge balance", maya);
  bool boxes = true;
  for (int p = 0; p <= 6; ++p) {
    std::size_t n = enumerate_box(p).size();
    long long c = 1;
    for (int i = 1; i <= p; ++i) c = c * (p + i) / i;
    boxes = boxes && static_cast<long long>(n) == c;
  }
  r.expect_true("|p-box| = C(2p, p), p<=6", boxes);
  return r;
}

inline SuiteReport verify_chain(const RunConfig& cfg) {
  SuiteReport r{"chain"};
  const Rational q = cfg.q_exact();
  const int N = std::min(cfg.N, 10);
  auto H = build_invariant_hamiltonian<Rational>(N, q);
  SpinBasis full(N);
  auto S = total_sz<Rational>(full);
  r.expect_zero("[H, S3] = 0 (exact, N=" + std::to_string(N) + ")", max_abs_difference(H * S, S * H));
  r.expect_zero("H symmetric (exact)", H.hermiticity_defect());
  auto ed = dense_eigensolve(to_floating(H));
  double lowest = ed.eigenvalues.front().real();
  r.expect_le("dense oracle residual", ed.max_residual, 1e-10);
  r.expect_le("lowest eigenvalue 0", std::abs(lowest), 1e-10);

  const int w = std::min(cfg.trunc.max_weight, 20);
  PartitionBasis basis(Truncation::weight(w));
  auto Hdw = build_dw_hamiltonian<Rational>(basis, q);
  auto g = dw_ground_state<Rational>(basis, q);
  auto hg = Hdw * g;
  double worst = 0;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (basis.is_interior(i) && !(hg[i] == 0)) worst = std::max(worst, magnitude(hg[i]) + 1e-300);
  r.expect_zero("H_DW sum q^|d| |d> = 0 on interior rows (exact, weight<=" + std::to_string(w) + ")", worst);

  PartitionBasis small(Truncation::weight(8));
  auto diff = build_dw_hamiltonian<Rational>(small, q) - build_dw_xxz_form<Rational>(small, q);
  const Rational offset = (q - 1 / q) / 2;
  auto shifted = diff - LinearOperator<Rational>::identity(diff.basis(), diff.dim()).scaled(offset);
  r.expect_zero("H_DW - XXZ form = (q - 1/q)/2 (exact, weight<=8)", shifted.max_abs());
  r.calibrations["dw_offset"] = to_double(offset);
  return r;
}

inline SuiteReport verify_uqsl2(const RunConfig& cfg) {
  SuiteReport r{"uqsl2"};
  const Rational q = cfg.q_exact();
  double algebra = 0, adj = 0, kac = 0, lemma = 0;
  bool lemma_consistent = true;
  Json prefactors = Json::array();
  for (int N = 2; N <= std::min(cfg.N, 8); N += 2) {
    auto g = build_generators<Rational>(N, q);
    algebra = std::max(algebra, verify_algebra_relations(g).max());
    for (int p = 0; p <= 3; ++p) adj = std::max(adj, verify_adjoints(g, p).max());
    StateVector<Rational> omega(SpinBasis(N).tag(), std::size_t{1} << N);
    omega[0] = 1;
    for (int p = 0; p <= std::min(N, 3); ++p)
      for (int pp = 0; pp <= p; ++pp) kac = std::max(kac, verify_kac_identity(g, p, pp, omega));
    SpinBasis basis(N);
    for (int m = 0; m <= 2; ++m)
      for (int p = 1; p <= 3 && m + p <= N; ++p) {
        std::optional<int> c2;
        for (std::size_t i = 0; i < basis.size(); ++i) {
          if (std::popcount(basis[i]) != m) continue;
          auto x = SpinBasisState::from_mask(N, basis[i]);
          if (!c2) {
            auto cal = calibrate_lemma_prefactor(g, x, p);
            c2 = cal.prefactor_twice;
            lemma_consistent = lemma_consistent && cal.consistent && *c2 == lemma_prefactor_twice(p, m);
            prefactors.push_back({{"N", N}, {"m", m}, {"p", p}, {"c_twice", *c2}, {"printed", printed_lemma_exponent(p, m)}});
          }
          StateVector<Rational> om(basis.tag(), basis.size());
          om[i] = 1;
          auto d = descendant(om, p, g) - f_power_closed_form(x, p, q, c2);
          lemma = std::max(lemma, d.is_exact_zero() ? 0.0 : d.max_abs());
        }
      }
  }
  r.expect_zero("algebra relations (exact)", algebra);
  r.expect_zero("adjoint identities p<=3 (exact)", adj);
  r.expect_zero("Kac identity on Omega (exact)", kac);
  r.expect_zero("F^p closed form entrywise, m<=2, p<=3 (exact)", lemma);
  r.expect_true("one prefactor c = pm + p^2/2 per (N, m, p)", lemma_consistent);
  r.calibrations["lemma_prefactor"] = prefactors;

  // scalar products of descendants of m <= 1 Bethe vectors at N = 2(p + m)
  const double qd = cfg.q();
  double sp = 0, orth = 0;
  for (int m = 0; m <= 1; ++m)
    for (int p = 0; p <= 3; ++p) {
      const int N = 2 * (p + m);
      if (N < 2) continue;
      auto g = build_generators<Complex>(N, Complex(qd));
      std::vector<std::vector<Complex>> roots;
      if (m == 0) roots.push_back({});
      else
        for (const auto& br : solve_bethe_m1(N, qd)) roots.push_back(br.z);
      for (const auto& z : roots) {
        auto b = build_bethe_vector(N, z, qd);
        auto s = verify_scalar_product(b, b, g, p, p);
        sp = std::max(sp, std::abs(s.lhs - s.rhs) / std::abs(s.rhs));
        for (int pp = 0; pp <= p; ++pp)
          if (pp != p) orth = std::max(orth, std::abs(inner(descendant(b, p, g), descendant(b, pp, g))));
      }
    }
  r.expect_le("(B_p, B_p) = qbinom(2p,p;q^2)(B,B), p<=3, m<=1", sp, 1e-9);
  r.expect_zero("(B_p, B_p') = 0 for p != p'", orth);
  return r;
}

inline SuiteReport verify_bethe(const RunConfig& cfg) {
  SuiteReport r{"bethe"};
  const double q = cfg.q(), delta = anisotropy(q);
  auto refl = calibrate_reflection_sign(4, q);
  r.calibrations["reflection_sign"] = {
      {"chosen", refl.chosen == ReflectionSign::alternating ? "sign(pi)(-1)^reflections" : "sign(pi)"},
      {"residual_alternating", refl.residual_alternating},
      {"residual_plain", refl.residual_plain}};
  r.expect_true("alternating reflection sign gives eigenvectors", refl.chosen == ReflectionSign::alternating);

  double eig = 0, hw = 0, kw = 0, desc = 0, half = 0;
  bool counts = true;
  for (int N : {2, 4, 6, 8}) {
    auto H = to_complex(build_invariant_hamiltonian<double>(N, q));
    auto g = build_generators<Complex>(N, Complex(q));
    auto roots = solve_bethe_m1(N, q);
    counts = counts && static_cast<int>(roots.size()) == N - 1;
    std::vector<std::vector<Complex>> fam{{}};
    for (const auto& br : roots) fam.push_back(br.z);
    PartitionBasis box(Truncation::box(N / 2));
    for (const auto& z : fam) {
      auto b = build_bethe_vector(N, z, q);
      auto c = check_bethe_vector(b, z, q, H, g.E, g.K, N);
      eig = std::max(eig, c.eigen_residual);
      hw = std::max(hw, c.highest_weight);
      kw = std::max(kw, c.k_weight);
      const Complex en = bethe_energy(z, delta);
      for (int p = 0; p + 2 * static_cast<int>(z.size()) <= N; ++p) {
        auto v = descendant(b, p, g);
        desc = std::max(desc, (H * v - en * v).norm() / v.norm());
      }
      if (z.size() == 1) {
        auto hf = half_filled_coefficients(N, z, q);
        auto ref = spin_to_box(N, box, descendant(b, N / 2 - 1, g));
        std::size_t k = 0;
        while (k < ref.size() && std::abs(ref[k]) < 1e-12 * ref.max_abs()) ++k;
        Complex ratio = hf[k] / ref[k];
        for (std::size_t i = 0; i < ref.size(); ++i) half = std::max(half, std::abs(hf[i] - ratio * ref[i]) / hf.max_abs());
      }
    }
  }
  r.expect_true("N - 1 one-magnon root classes", counts);
  r.expect_le("Bethe eigen-residual, N<=8, m<=1", eig, 1e-10);
  r.expect_le("highest-weight residual", hw, 1e-10);
  r.expect_le("K-weight residual", kw, 1e-12);
  r.expect_le("descendant eigen-residual", desc, 1e-10);
  r.expect_le("half-filled formula vs descendant", half, 1e-10);

  for (int N : {2, 4}) {
    auto acc = spectrum_accounting(N, q, N / 2, 400, cfg.seed);
    r.expect_true("spectrum accounted for, N=" + std::to_string(N) + " (" + std::to_string(acc.entries.size()) + " states)",
                  acc.complete() && static_cast<int>(acc.entries.size()) == (1 << N));
  }

  const int w = std::min(cfg.trunc.max_weight, 24);
  PartitionBasis basis(Truncation::weight(w));
  double binf = 0;
  for (double a : {0.3, 1.0, kPi / 3, 2.0, 2.9}) {
    Complex z = std::polar(1.0, a);
    binf = std::max(binf, dw_interior_residual(basis, binf_vector(basis, {z}, q), bethe_energy({z}, delta), q));
  }
  r.expect_le("B_inf(z) m=1 interior residual, weight<=" + std::to_string(w), binf, 1e-8);
  auto ground = binf_vector(basis, {}, q);
  double g0 = 0;
  for (std::size_t i = 0; i < basis.size(); ++i) g0 = std::max(g0, std::abs(ground[i] - std::pow(q, basis[i].weight())));
  r.expect_zero("B_inf with m=0 is sum q^|d| |d>", g0);

  double tails = 0;
  for (int rr = 0; rr <= 10; ++rr)
    for (double a : {0.4, 1.3, 2.7}) {
      Complex z = std::polar(1.0, a);
      tails = std::max(tails, std::abs(regularized_tail_m1(rr, z, q) - telescoped_tail_m1(rr, z, q)));
      Complex big = 4.0 * z;
      tails = std::max(tails, std::abs(regularized_tail_m1(rr, big, q) - direct_tail_m1(rr, big, q, 200)) /
                                  std::abs(regularized_tail_m1(rr, big, q)));
    }
  r.expect_le("regularized tail vs telescoped and direct sums", tails, 1e-12);

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> beta(-1.5, 1.5), eta(0.2, 2.0);
  double bs = 0;
  for (int n = 1; n <= 5; ++n)
    for (int k = 0; k < 20; ++k) {
      BoundState st{n, beta(rng), eta(rng)};
      auto z = bound_state_roots(st).z;
      bs = std::max({bs, h_orbit_residual(z, st.delta()), product_formula_residual(st, z),
                     std::abs(bound_state_energy(st) - bethe_energy(z, st.delta()).real()) /
                         std::max(1.0, bound_state_energy(st))});
    }
  r.expect_le("bound states: h-orbit, product, energy (n<=5)", bs, 1e-12);
  return r;
}

inline SuiteReport verify_asep(const RunConfig& cfg) {
  SuiteReport r{"asep"};
  const Rational q = cfg.q_exact();
  const Rational A = parse_rational(std::to_string(cfg.A));
  const Truncation small = Truncation::weight(std::min(cfg.trunc.max_weight, 10));
  auto R = build_rate_matrix<Rational>(q, A, small);
  if (cfg.mutate_rate_matrix) {
    // negate the first off-diagonal entry
    std::size_t row = 0, col = 0;
    bool found = false;
    R.W.for_each([&](std::size_t i, std::size_t j, const Rational&) {
      if (!found && i != j) row = i, col = j, found = true;
    });
    R = mutate_negate_entry(R, row, col);
  }
  auto val = validate_rate_matrix(R);
  r.expect_true("rate matrix: positivity and interior column sums", val.ok());
  for (const auto& v : val.violations)
    r.checks.push_back({"violation: " + v.kind + " at (" + std::to_string(v.row) + "," + std::to_string(v.col) + ")", v.value, 0, false});
  double boundary = 0;
  for (const auto& b : val.boundary) boundary = std::max(boundary, std::abs(b.defect - to_double(A * q) * b.suppressed_additions));
  r.expect_le("boundary defect = A q x suppressed additions", boundary, 1e-12);
  auto H = build_dw_hamiltonian<Rational>(R.basis, q);
  auto U = u_conjugation(q, R.basis);
  auto sim = verify_similarity_and_db(R.W, H, U, A);
  r.expect_zero("W + A U H U^-1 (exact)", sim.get("W + A U H U^-1"));
  r.expect_zero("W U^2 symmetric (exact)", sim.get("W U^2 - (W U^2)^T"));
  r.expect_zero("W pi = 0 on interior rows (exact)", stationary_interior_residual(R, stationary_vector(q, R.basis)));

  const double qd = cfg.q();
  auto Rd = build_rate_matrix<double>(qd, cfg.A, Truncation::weight(std::min(cfg.trunc.max_weight, 20)));
  StateVector<double> p0(Rd.W.basis(), Rd.basis.size());
  p0[0] = 1;
  auto pi = stationary_vector(qd, Rd.basis);
  auto pt = Rd.basis.size() <= kDenseLimit ? evolve_dense(Rd, p0, 50 / cfg.A) : evolve_uniformized(Rd, p0, 50 / cfg.A);
  r.expect_le("TV(e^{tW} delta_0, pi) at t = 50/A", total_variation(pt, pi), 1e-6);
  auto pu = evolve_uniformized(Rd, p0, 50 / cfg.A);
  double gap = 0;
  for (std::size_t i = 0; i < pu.size(); ++i) gap = std::max(gap, std::abs(pu[i] - pt[i]));
  r.expect_le("uniformization vs dense exponential", gap, 1e-10);
  r.expect_le("spectral demo N=4", spectral_evolution_demo(4, qd, 1.0, cfg.A).deviation, 1e-8);

  const Truncation wide = Truncation::weight(30);
  auto tr = gillespie_sample(qd, cfg.A, wide, 1e4, cfg.seed);
  auto tr2 = gillespie_sample(qd, cfg.A, wide, 1e4, cfg.seed);
  bool same = tr.events.size() == tr2.events.size();
  for (std::size_t i = 0; same && i < tr.events.size(); ++i)
    same = tr.events[i].t == tr2.events[i].t && tr.events[i].row == tr2.events[i].row;
  r.expect_true("Gillespie reproducible for a fixed seed", same);
  PartitionBasis wb(wide);
  r.expect_le("Gillespie time-average TV over 1e4", total_variation(time_averaged_weight_histogram(tr, 30),
                                                                    stationary_weight_distribution(qd, wb)), 0.05);
  return r;
}

inline SuiteReport verify_observables(const RunConfig& cfg) {
  SuiteReport r{"observables"};
  const Rational q = cfg.q_exact();
  auto cals = calibrate_magnetization_labels(q);
  Json cj = Json::array();
  for (const auto& c : cals) cj.push_back(c.str());
  r.calibrations["magnetization_labels"] = cj;
  r.calibrations["magnetization_in_use"] = kMagnetizationCalibration.str();
  r.expect_true("calibrated labels include the one in use",
                !cals.empty() && cals.front() == kMagnetizationCalibration);
  bool mag = true, from_prob = true, anti = true;
  for (int p = 1; p <= 5; ++p)
    for (int i = 0; i < 2 * p; ++i) {
      HalfInt s = HalfInt::from_twice(2 * i - (2 * p - 1));
      Rational bf = brute_force_magnetization(p, q, s);
      mag = mag && magnetization_at_site(p, q, s) == bf;
      from_prob = from_prob && magnetization_from_probabilities(p, q, s) == bf;
      anti = anti && bf == -brute_force_magnetization(p, q, s.mirrored());
    }
  r.expect_true("closed-form magnetization = brute force, p<=5 (exact)", mag);
  r.expect_true("magnetization from displacement laws, p<=5 (exact)", from_prob);
  r.expect_true("m(s) = -m(-s)", anti);
  bool single = true, joint = true, norm = true;
  for (int p = 1; p <= 6; ++p)
    for (int l = 1; l <= p; ++l) {
      Rational total = 0;
      for (int d = 0; d <= p; ++d) {
        Rational v = prob_single(p, q, l, d);
        total += v;
        single = single && v == enumerate_prob_joint(p, q, {l}, {d});
        for (int l2 = l + 1; l2 <= p; ++l2)
          for (int d2 = 0; d2 <= d; ++d2) joint = joint && prob_joint(p, q, {l, l2}, {d, d2}) == enumerate_prob_joint(p, q, {l, l2}, {d, d2});
      }
      norm = norm && total == 1;
    }
  r.expect_true("prob_single = enumeration, p<=6 (exact)", single);
  r.expect_true("prob_joint (n=2) = enumeration, p<=6 (exact)", joint);
  r.expect_true("sum_d P(l,d) = 1 (exact)", norm);

  const double qd = cfg.q();
  double conv = 0;
  for (int l = 1; l <= 3; ++l)
    for (int d = 0; d <= 4; ++d) conv = std::max(conv, std::abs(prob_single(40, qd, l, d) - prob_single_infinite(qd, l, d, cfg.K)));
  conv = std::max(conv, std::abs(prob_joint(40, qd, {1, 3}, {2, 1}) - prob_joint_infinite(qd, {1, 3}, {2, 1}, cfg.K)));
  r.expect_le("finite p=40 vs infinite probabilities", conv, 1e-8);
  double prof = 0;
  for (int x = -5; x <= 5; ++x)
    prof = std::max(prof, std::abs(to_double(magnetization_closed_form(30, q, 2 * x)) - magnetization_infinite(qd, x, 40).value));
  r.expect_le("closed form p=30 vs infinite profile, |x|<=5", prof, 1e-10);
  const double e1 = scaled_profile_error(0.9), e2 = scaled_profile_error(0.95), e3 = scaled_profile_error(0.99);
  r.expect_true("scaled profile error decreases along q = 0.9, 0.95, 0.99", e1 > e2 && e2 > e3);
  r.calibrations["scaled_profile_errors"] = {e1, e2, e3};
  r.expect_le("mu' = -m by central differences", limit_shape_derivative_error({-3, -2, -1, 0, 1, 2, 3}), 1e-8);
  bool chain = true;
  for (int a = -2; a <= 2; ++a)
    for (int b = a; b <= a + 6; ++b)
      for (int m = 0; m <= b - a; ++m) {
        // direct enumeration over subsets of {a+1..b} of size m
        Rational direct = 0;
        const int n = b - a;
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
          if (std::popcount(mask) != m) continue;
          long long e = 0;
          for (int i = 0; i < n; ++i)
            if (mask >> i & 1u) e += a + 1 + i;
          direct += ipow(q, 2 * e);
        }
        chain = chain && direct == weighted_chain_sum(a, b, m, q);
      }
  r.expect_true("weighted chain sum = enumeration (exact)", chain);
  return r;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"qseries", "partitions", "chain", "uqsl2", "bethe", "asep", "observables"};
  return names;
}

inline SuiteReport run_suite(const std::string& name, const RunConfig& cfg) {
  static const std::map<std::string, std::function<SuiteReport(const RunConfig&)>> table{
      {"qseries", verify_qseries}, {"partitions", verify_partitions}, {"chain", verify_chain},
      {"uqsl2", verify_uqsl2},     {"bethe", verify_bethe},           {"asep", verify_asep},
      {"observables", verify_observables}};
  auto it = table.find(name);
  if (it == table.end()) throw DomainError("unknown suite '" + name + "'");
  auto t0 = std::chrono::steady_clock::now();
  SuiteReport rep = it->second(cfg);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace bdw
