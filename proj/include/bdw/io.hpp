#pragma once

// JSON and CSV emission for partitions, roots, operators, vectors,
// trajectories and tables.

#include <json.hpp>

#include <iomanip>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bdw/asep.hpp"
#include "bdw/bethe.hpp"
#include "bdw/linalg.hpp"
#include "bdw/partitions.hpp"
#include "bdw/report.hpp"
#include "bdw/scalar.hpp"

namespace bdw {

using Json = nlohmann::json;

inline Json to_json(const Partition& d) { return Json(d.parts()); }

inline Partition partition_from_json(const Json& j) { return Partition(j.get<std::vector<int>>()); }

inline Json to_json(const Truncation& t) {
  auto bound = [](int v) { return v >= Truncation::kUnbounded ? Json(nullptr) : Json(v); };
  return Json{{"max_weight", bound(t.max_weight)}, {"max_part", bound(t.max_part)}, {"max_length", bound(t.max_length)}};
}

inline Json to_json(const BasisTag& tag) {
  if (auto* s = std::get_if<SpinWindow>(&tag)) {
    Json j{{"kind", "spin"}, {"N", s->N}};
    if (s->sector) j["m"] = *s->sector;
    return j;
  }
  return Json{{"kind", "partitions"}, {"truncation", to_json(std::get<PartitionSpace>(tag).trunc)}};
}

inline Json scalar_json(double x) { return Json(x); }
inline Json scalar_json(const Rational& x) {
  std::ostringstream os;
  os << x;
  return Json(os.str());
}
inline Json scalar_json(const Complex& x) { return Json::array({x.real(), x.imag()}); }

inline Json to_json(const BetheRoots& r) {
  Json z = Json::array();
  for (Complex w : r.z) z.push_back({w.real(), w.imag()});
  return Json{{"context", r.context == RootContext::finite ? "finite" : "infinite"},
              {"N", r.N},
              {"m", r.m()},
              {"on_shell", r.on_shell},
              {"residual", r.residual},
              {"z", z}};
}

inline BetheRoots roots_from_json(const Json& j) {
  BetheRoots r;
  r.context = j.at("context").get<std::string>() == "finite" ? RootContext::finite : RootContext::infinite;
  r.N = j.value("N", 0);
  r.on_shell = j.value("on_shell", false);
  r.residual = j.value("residual", 0.0);
  for (const auto& w : j.at("z")) r.z.emplace_back(w.at(0).get<double>(), w.at(1).get<double>());
  return r;
}

inline const char* symmetry_name(Symmetry s) {
  switch (s) {
    case Symmetry::hermitian:
      return "hermitian";
    case Symmetry::rate_matrix:
      return "rate-matrix";
    default:
      return "none";
  }
}

/// {"basis": ..., "dim": n, "symmetry": ..., "entries": [[row, col, value], ...]}
template <class T>
Json to_json(const LinearOperator<T>& op) {
  Json entries = Json::array();
  op.for_each([&](std::size_t r, std::size_t c, const T& v) { entries.push_back({r, c, scalar_json(v)}); });
  return Json{{"basis", to_json(op.basis())}, {"dim", op.dim()}, {"symmetry", symmetry_name(op.symmetry())},
              {"entries", entries}};
}

/// Nonzero amplitudes only: {"basis": ..., "dim": n, "amplitudes": [[index, value], ...]}
template <class T>
Json to_json(const StateVector<T>& v) {
  Json amps = Json::array();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (!(v[i] == T(0))) amps.push_back({i, scalar_json(v[i])});
  return Json{{"basis", to_json(v.basis())}, {"dim", v.size()}, {"amplitudes", amps}};
}

inline Json to_json(const ResidualReport& r) {
  Json j = Json::object();
  for (const auto& item : r.items) j[item.name] = item.value;
  return j;
}

inline const char* move_name(Move m) { return m == Move::add ? "add" : "remove"; }

/// One JSON object per event: {"traj", "t", "move", "row", "weight"}.
inline void write_trajectory_jsonl(std::ostream& os, const Trajectory& tr) {
  for (const auto& e : tr.events)
    os << Json{{"traj", tr.index}, {"t", e.t}, {"move", move_name(e.move)}, {"row", e.row}, {"weight", e.weight}}.dump()
       << '\n';
}

inline void write_trajectory_csv(std::ostream& os, const Trajectory& tr, bool header) {
  if (header) os << "traj,t,move,row,weight\n";
  os << std::setprecision(17);
  for (const auto& e : tr.events)
    os << tr.index << ',' << e.t << ',' << move_name(e.move) << ',' << e.row << ',' << e.weight << '\n';
}

/// Plain CSV table; cells are written as given.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, const std::vector<std::string>& header) : os_(os) {
    os_ << std::setprecision(std::numeric_limits<double>::max_digits10);
    row_strings(header);
  }
  template <class... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((os_ << (first ? "" : ",") << cells, first = false), ...);
    os_ << '\n';
  }
  void row_strings(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os_ << (i ? "," : "") << cells[i];
    os_ << '\n';
  }

 private:
  std::ostream& os_;
};

/// Partition as a CSV-safe cell: parts joined by spaces, "0" for the empty one.
inline std::string partition_cell(const Partition& d) {
  if (d.empty()) return "0";
  std::string s;
  for (int i = 1; i <= d.length(); ++i) s += (i > 1 ? " " : "") + std::to_string(d.row(i));
  return s;
}

}  // namespace bdw
