#pragma once

#include <vector>

#include "qd/bigreal.hpp"
#include "qd/oracle.hpp"
#include "qd/table.hpp"

namespace qd::analysis {

inline BigReal unit_roundoff_exact() { return exact::pow2(-53); }

// gamma_n = n*u / (1 - n*u), exact.
BigReal gamma_exact(int n);

// gamma_n rounded so the returned double never under-reports the bound.
double gamma_up(int n);

// Condition numbers of every table cell, from the exact table. bar_* are
// the absolute-value recurrences; cond_* their ratios to the exact cell.
// Cells whose recurrence divides by an exact zero stay undefined.
struct ConditionTable {
  int degree = 0;
  std::vector<std::vector<BigReal>> bar_q, bar_e, cond_q, cond_e;
  std::vector<std::vector<std::uint8_t>> bar_q_ok, bar_e_ok, cond_q_ok, cond_e_ok;

  BigReal max_cond_q() const;
};

ConditionTable condition_table(const oracle::ExactQdTable& exact);

// Upper bound on max cond_q, running the bar recurrences in 256-bit
// directed rounding (numerators up, divisors down). Never under-reports;
// use for gates on deep tables where the exact recurrence rationals blow
// up. Returns the bound as an exact rational.
BigReal max_cond_q_upper(const oracle::ExactQdTable& exact);

// Empirical per-row stability factors. B/Phi are measured from the table
// values against the exact table; D/Psi additionally use the compensated
// residuals and are filled only for compqd tables. Index m runs from 0
// (initial factor 1) through the deepest e-row.
struct StabilityFactors {
  std::vector<BigReal> B, Phi;
  std::vector<BigReal> D, Psi;
  bool saturated = false;  // a computed divisor was exactly zero

  BigReal phi_max() const;
  BigReal psi_max() const;
};

StabilityFactors stability_factors(const QdTable& computed,
                                   const oracle::ExactQdTable& exact);

enum class CoeffKind { real, floating };

struct CellCheck {
  int m = 0, n = 0;
  char kind = 'q';
  double rel_err = 0.0;
  double cond = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct BoundReport {
  std::vector<CellCheck> cells;
  int checked = 0;
  int passed = 0;
  bool gate_ok = false;     // Phi/Psi applicability: factor * u < 1e-3
  double factor_max = 0.0;  // max Phi (qd) or Psi (compqd)

  double pass_fraction() const { return checked ? double(passed) / checked : 1.0; }
};

// Per-cell forward relative errors against their rounding-error bounds.
// `kind` selects the first-column bound (real vs binary64 coefficients).
BoundReport bound_check(const QdTable& computed, const oracle::ExactQdTable& exact,
                        const ConditionTable& conds, const StabilityFactors& factors,
                        CoeffKind kind);

// Forward relative errors of every cell, plus the maxima over cells whose
// exact value is nonzero.
struct TableErrors {
  std::vector<std::vector<double>> q_rel, e_rel;
  std::vector<std::vector<std::uint8_t>> q_def, e_def;
  double max_q_rel = 0.0;
  double max_e_rel = 0.0;
};

TableErrors table_errors(const QdTable& computed, const oracle::ExactQdTable& exact);

// Flop-count models for the cells feeding one e_m^(n) (target 'e') or
// q_{m+1}^(n) (target 'q'): m^2*F_e + m(m-1)*F_q + 2m*F_input and
// m^2*F_q + m(m+1)*F_e + (2m+1)*F_input.
struct FlopCosts {
  long long f_e = 0, f_q = 0, f_input = 0;
};

// First-column cost depends on how q1 is initialized: from split real
// coefficients (dd division) or from binary64 coefficients.
enum class InitCost { real, floating };

FlopCosts flop_costs(Algo a, InitCost ic = InitCost::real);

long long flop_model(Algo a, long long m, char target, InitCost ic = InitCost::real);

// Mean over the m-grid of per-m flop ratios algo/qd, averaged over both
// targets. Complexity-ratio tables are quoted for q1 initialized from
// binary64 coefficients, hence the floating init default here.
double flop_ratio_mean(Algo a, long long m0, long long step, long long m1,
                       InitCost ic = InitCost::floating);

}  // namespace qd::analysis
