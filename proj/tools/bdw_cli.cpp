// bdw: verification suites, spectra, observables, simulation and export.
//
// Exit codes: 0 success, 1 a check failed, 2 bad configuration.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "bdw/verify.hpp"

namespace {

using namespace bdw;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kConfig = 2;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// stdout unless --out is given.
class Output {
 public:
  explicit Output(const std::string& path) {
    if (path.empty() || path == "-") return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw ConfigError("cannot open '" + path + "' for writing");
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string roots_cell(const std::vector<Complex>& z) {
  std::string s;
  for (std::size_t i = 0; i < z.size(); ++i) s += (i ? " " : "") + fmt(z[i].real()) + (z[i].imag() < 0 ? "" : "+") + fmt(z[i].imag()) + "i";
  return s;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite) {
  std::vector<std::string> names;
  if (suite == "all") names = suite_names();
  else if (std::find(suite_names().begin(), suite_names().end(), suite) != suite_names().end()) names = {suite};
  else throw ConfigError("unknown suite '" + suite + "'");

  Output out(cfg.out);
  bool ok = true;
  Json reports = Json::array();
  std::unique_ptr<CsvWriter> csv;
  if (cfg.format == "csv")
    csv = std::make_unique<CsvWriter>(out.os(), std::vector<std::string>{"suite", "check", "value", "tolerance", "pass"});
  for (const auto& n : names) {
    SuiteReport r = run_suite(n, cfg);
    ok = ok && r.passed();
    reports.push_back(r.to_json());
    if (csv)
      for (const auto& c : r.checks) csv->row(r.suite, '"' + c.name + '"', c.value, c.tolerance, c.pass ? "PASS" : "FAIL");
    for (const auto& c : r.checks)
      if (!c.pass) std::cerr << "FAIL [" << n << "] " << c.name << ": " << c.value << " > " << c.tolerance << '\n';
  }
  if (cfg.format == "json")
    out.os() << Json{{"q", cfg.q_text}, {"A", cfg.A}, {"N", cfg.N}, {"seed", cfg.seed}, {"passed", ok}, {"suites", reports}}.dump(2)
             << '\n';
  return ok ? kOk : kFailed;
}

int cmd_spectrum(const RunConfig& cfg) {
  if (cfg.N > 10) throw ConfigError("spectrum needs N <= 10");
  const int max_m = cfg.N <= 4 ? cfg.N / 2 : 1;
  SpectrumAccounting acc = spectrum_accounting(cfg.N, cfg.q(), max_m, 400, cfg.seed);
  const int dim = 1 << cfg.N;
  const int accounted = dim - acc.unmatched_dense;
  const bool ok = acc.unmatched_entries == 0 && acc.max_residual < 1e-10 && (max_m < cfg.N / 2 || acc.complete());
  Output out(cfg.out);
  if (cfg.format == "csv") {
    CsvWriter w(out.os(), {"m", "p", "roots", "eigenvalue", "residual", "dense_index"});
    for (std::size_t i = 0; i < acc.entries.size(); ++i) {
      const auto& e = acc.entries[i];
      w.row(e.m, e.p, roots_cell(e.z), e.energy, e.residual, acc.match[i]);
    }
  } else {
    Json rows = Json::array();
    for (std::size_t i = 0; i < acc.entries.size(); ++i) {
      const auto& e = acc.entries[i];
      Json z = Json::array();
      for (Complex w : e.z) z.push_back({w.real(), w.imag()});
      rows.push_back({{"m", e.m}, {"p", e.p}, {"z", z}, {"eigenvalue", e.energy}, {"residual", e.residual},
                      {"dense_index", acc.match[i]}});
    }
    out.os() << Json{{"N", cfg.N},
                     {"q", cfg.q_text},
                     {"max_m", max_m},
                     {"dimension", dim},
                     {"states_accounted", accounted},
                     {"unmatched_entries", acc.unmatched_entries},
                     {"max_residual", acc.max_residual},
                     {"max_energy_mismatch", acc.max_mismatch},
                     {"passed", ok},
                     {"rows", rows}}
                    .dump(2)
             << '\n';
  }
  std::cerr << "states accounted: " << accounted << " / " << dim << '\n';
  return ok ? kOk : kFailed;
}

/// Finite window of 2p sites when p > 0, otherwise the infinite profile on
/// the sites -N+1/2 .. N-1/2.
int cmd_profile(const RunConfig& cfg) {
  Output out(cfg.out);
  std::vector<std::pair<HalfInt, double>> rows;
  if (cfg.p > 0) {
    const Rational q = cfg.q_exact();
    for (int i = 0; i < 2 * cfg.p; ++i) {
      HalfInt s = HalfInt::from_twice(2 * i - (2 * cfg.p - 1));
      rows.emplace_back(s, to_double(magnetization_at_site(cfg.p, q, s)));
    }
  } else {
    for (int i = 0; i < 2 * cfg.N; ++i) {
      HalfInt s = HalfInt::from_twice(2 * i - (2 * cfg.N - 1));
      rows.emplace_back(s, -magnetization_infinite(cfg.q(), (s.twice() + 1) / 2, std::max(cfg.K, 20)).value);
    }
  }
  if (cfg.format == "csv") {
    CsvWriter w(out.os(), {"site", "value"});
    for (auto& [s, v] : rows) w.row(s.value(), v);
  } else {
    for (auto& [s, v] : rows) out.os() << Json{{"site", s.value()}, {"value", v}}.dump() << '\n';
  }
  return kOk;
}

int cmd_shape(const RunConfig& cfg) {
  Output out(cfg.out);
  std::unique_ptr<CsvWriter> w;
  if (cfg.format == "csv") w = std::make_unique<CsvWriter>(out.os(), std::vector<std::string>{"u", "m", "mu"});
  for (int k = -60; k <= 60; ++k) {
    const double u = k / 10.0;
    ScaledProfile s = scaled_profile_and_limit_shape(u);
    if (w) w->row(u, s.m, s.mu);
    else out.os() << Json{{"u", u}, {"m", s.m}, {"mu", s.mu}}.dump() << '\n';
  }
  return kOk;
}

/// P(d_l = d) for l <= 3, d <= 4 on the p-box (p = 0: infinite volume).
/// Finite tables are exact and spot-checked against enumeration when p <= 8.
int cmd_prob(const RunConfig& cfg) {
  struct Row {
    int l, d;
    double value;
    std::string exact;
  };
  std::vector<Row> rows;
  Json spot = Json::array();
  bool ok = true;
  const Rational q = cfg.q_exact();
  for (int l = 1; l <= 3; ++l)
    for (int d = 0; d <= 4; ++d) {
      if (cfg.p > 0) {
        Rational v = prob_single(cfg.p, q, l, d);
        rows.push_back({l, d, to_double(v), scalar_json(v).get<std::string>()});
        if (cfg.p <= 8 && (l + d) % 2 == 0) {
          Rational ref = enumerate_prob_joint(cfg.p, q, {l}, {d});
          spot.push_back({{"l", l}, {"d", d}, {"table", to_double(v)}, {"enumeration", to_double(ref)}, {"equal", v == ref}});
          ok = ok && v == ref;
        }
      } else {
        rows.push_back({l, d, prob_single_infinite(cfg.q(), l, d, cfg.K), ""});
      }
    }
  Output out(cfg.out);
  if (cfg.format == "csv") {
    CsvWriter w(out.os(), {"l", "d", "P"});
    for (const auto& r : rows) w.row(r.l, r.d, r.value);
  } else {
    Json table = Json::array();
    for (const auto& r : rows) {
      Json j{{"l", r.l}, {"d", r.d}, {"P", r.value}};
      if (!r.exact.empty()) j["exact"] = r.exact;
      table.push_back(j);
    }
    out.os() << Json{{"p", cfg.p}, {"q", cfg.q_text}, {"table", table}, {"oracle_spot_checks", spot}, {"passed", ok}}.dump(2)
             << '\n';
  }
  return ok ? kOk : kFailed;
}

int cmd_simulate(const RunConfig& cfg) {
  if (!(cfg.t > 0)) throw ConfigError("simulate needs t > 0");
  Output out(cfg.out);
  for (int i = 0; i < cfg.samples; ++i) {
    Trajectory tr = gillespie_sample(cfg.q(), cfg.A, cfg.trunc, cfg.t, cfg.seed, static_cast<std::uint64_t>(i));
    if (cfg.format == "csv") write_trajectory_csv(out.os(), tr, i == 0);
    else write_trajectory_jsonl(out.os(), tr);
  }
  return kOk;
}

/// Law at time t started from the empty partition, by uniformization.
int cmd_evolve(const RunConfig& cfg) {
  auto R = build_rate_matrix<double>(cfg.q(), cfg.A, cfg.trunc);
  StateVector<double> p0(R.W.basis(), R.basis.size());
  p0[0] = 1;
  auto pt = evolve_uniformized(R, p0, cfg.t);
  Output out(cfg.out);
  if (cfg.format == "csv") {
    CsvWriter w(out.os(), {"partition", "probability"});
    for (std::size_t i = 0; i < pt.size(); ++i) w.row(partition_cell(R.basis[i]), pt[i]);
  } else {
    for (std::size_t i = 0; i < pt.size(); ++i)
      out.os() << Json{{"partition", to_json(R.basis[i])}, {"probability", pt[i]}}.dump() << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Domain-wall states of the XXZ chain: checks and data export"};
  app.require_subcommand(1);
  RunConfig cfg;
  int weight = 24, part = 0, len = 0;

  app.add_option("--q", cfg.q_text, "anisotropy q in (0,1), decimal or a/b")->envname("BDW_Q")->capture_default_str();
  app.add_option("--A", cfg.A, "rate scale")->envname("BDW_A")->capture_default_str();
  app.add_option("--N", cfg.N, "chain length (even)")->envname("BDW_N")->capture_default_str();
  app.add_option("--m", cfg.m, "magnon number")->envname("BDW_M")->capture_default_str();
  app.add_option("--p", cfg.p, "box size / descendant order")->envname("BDW_P")->capture_default_str();
  app.add_option("--cutoff-weight", weight, "max |d|")->envname("BDW_CUTOFF_WEIGHT")->capture_default_str();
  app.add_option("--cutoff-part", part, "max largest part (0: none)")->envname("BDW_CUTOFF_PART")->capture_default_str();
  app.add_option("--cutoff-len", len, "max number of parts (0: none)")->envname("BDW_CUTOFF_LEN")->capture_default_str();
  app.add_option("--K", cfg.K, "series truncation")->envname("BDW_K")->capture_default_str();
  app.add_option("--seed", cfg.seed, "RNG seed")->envname("BDW_SEED")->capture_default_str();
  app.add_option("--samples", cfg.samples, "trajectories")->envname("BDW_SAMPLES")->capture_default_str();
  app.add_option("--t", cfg.t, "time")->envname("BDW_T")->capture_default_str();
  app.add_option("--format", cfg.format, "json or csv")->envname("BDW_FORMAT")->capture_default_str();
  app.add_option("--out", cfg.out, "output file (default stdout)")->envname("BDW_OUT");
  app.add_flag("--mutate-rate-matrix", cfg.mutate_rate_matrix)->group("");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run invariant suites; JSON report, or CSV suite,check,value,tolerance,pass");
  verify->add_option("suite", suite, "qseries|partitions|chain|uqsl2|bethe|asep|observables|all")->capture_default_str();
  app.add_subcommand("spectrum", "Bethe states and descendants vs dense spectrum; CSV m,p,roots,eigenvalue,residual,dense_index");
  app.add_subcommand("profile", "magnetization; CSV site,value (p=0: infinite volume)");
  app.add_subcommand("shape", "scaled profile and limit shape on u in [-6,6]; CSV u,m,mu");
  app.add_subcommand("prob", "P(d_l = d), l<=3, d<=4; CSV l,d,P (p=0: infinite volume)");
  app.add_subcommand("simulate", "Gillespie trajectories from the empty partition; JSON lines or CSV traj,t,move,row,weight");
  app.add_subcommand("evolve", "law at time t from the empty partition; CSV partition,probability");
  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    cfg.trunc = Truncation{weight, part > 0 ? part : Truncation::kUnbounded, len > 0 ? len : Truncation::kUnbounded};
    if (std::string why = cfg.validate(); !why.empty()) throw ConfigError(why);
    const std::string name = app.get_subcommands().front()->get_name();
    if (name == "verify") return cmd_verify(cfg, suite);
    if (name == "spectrum") return cmd_spectrum(cfg);
    if (name == "profile") return cmd_profile(cfg);
    if (name == "shape") return cmd_shape(cfg);
    if (name == "prob") return cmd_prob(cfg);
    if (name == "simulate") return cmd_simulate(cfg);
    if (name == "evolve") return cmd_evolve(cfg);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const DomainError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const DimensionError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kFailed;
}
