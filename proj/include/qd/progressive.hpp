#pragma once

#include <string>
#include <vector>

#include "qd/series.hpp"

namespace qd {

enum class ProgStatus { converged, sweeps_exhausted, breakdown };

struct ProgressiveResult {
  // Zero estimates sorted ascending; diagnostics keep the scheme's own
  // row order (decreasing modulus).
  std::vector<double> zeros;
  std::vector<double> zeros_row_order;
  ProgStatus status = ProgStatus::converged;
  int sweeps = 0;
  double final_max_e = 0.0;
  std::string message;
};

// Row-by-row qd scheme on a polynomial given leading-coefficient-first;
// the q rows converge to the zeros when their moduli are distinct.
// max_sweeps <= 0 selects the default cap of 10 * degree.
ProgressiveResult proqd(const PolyInput& poly, double tol, int max_sweeps = 0);

// Compensated variant; propagates residual planes through each sweep.
ProgressiveResult comp_proqd(const PolyInput& poly, double tol, int max_sweeps = 0);

}  // namespace qd
