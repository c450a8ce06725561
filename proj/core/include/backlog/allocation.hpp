#pragma once

#include <map>

namespace backlog {

// Sparse nonnegative water assignment over cup ids.  The discrete game uses
// it for per-round pour amounts; the continuous engine reuses it for pour
// rates.  Absent ids receive nothing.
struct PourAllocation {
  std::map<int, double> amounts;

  double total() const {
    double s = 0.0;
    for (const auto& [id, a] : amounts) s += a;
    return s;
  }

  bool operator==(const PourAllocation&) const = default;
};

}  // namespace backlog
