#pragma once

// Named residuals returned by the verify_* functions.

#include <algorithm>
#include <string>
#include <vector>

namespace bdw {

struct Residual {
  std::string name;
  double value = 0.0;
};

struct ResidualReport {
  std::vector<Residual> items;

  void add(std::string name, double value) { items.push_back({std::move(name), value}); }
  double max() const {
    double m = 0;
    for (const auto& r : items) m = std::max(m, r.value);
    return m;
  }
  double get(const std::string& name) const {
    for (const auto& r : items)
      if (r.name == name) return r.value;
    return -1.0;
  }
};

}  // namespace bdw
