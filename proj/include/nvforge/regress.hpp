#pragma once

#include <string>
#include <vector>

#include "nvforge/jsonout.hpp"

namespace nvforge {

struct RegressCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

// Regression checks of the model against the embedded dataset: full-series
// and leave-one-out prediction of the 2 MeV irradiation series, charge-curve
// anchors and monotonicity, coherence-model agreement, the
// sensitivity-improvement band, vacancy yields, optimal-fluence windows, and
// dataset integrity.
std::vector<RegressCheck> run_table_regressions();

Json regress_report(const std::vector<RegressCheck>& checks);

}  // namespace nvforge
