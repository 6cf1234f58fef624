#pragma once

#include <string>
#include <vector>

#include "qd/bigreal.hpp"
#include "qd/oracle.hpp"
#include "qd/progressive.hpp"
#include "qd/table.hpp"

namespace qd::apps {

// Regular C-fraction coefficients a_0..a_L read off the first table row:
// a_0 = c0, a_1 = c1, a_{2k} = -q_k^(0), a_{2k+1} = -e_k^(0). The table
// must be built from the once-shifted series c1, c2, ... so that the
// expansion of the fraction reproduces c0 + c1 z + ... The fraction
// truncates at the first masked first-row cell.
struct CFraction {
  std::vector<double> a;
};

CFraction cfrac(const QdTable& table, double c0, double c1);

std::vector<BigReal> cfrac_exact(const oracle::ExactQdTable& table, const BigReal& c0,
                                 const BigReal& c1);

// Exact power-series re-expansion of the truncated C-fraction, used to
// verify the correspondence with the input coefficients.
std::vector<BigReal> cfrac_expand(const std::vector<BigReal>& a, int order);

struct PoleEstimate {
  double value = 0.0;
  int m = 0;           // q column the estimate came from
  int n = 0;           // superscript used
  bool converged = false;
};

struct PoleReport {
  std::string method;  // "direct" or "critical"
  std::vector<PoleEstimate> poles;
  std::string note;
};

// Pole m estimated as 1/q_m^(n*) at the deepest valid n of column m; the
// converged flag compares the deepest e of the column against the q value.
PoleReport poles_direct(const QdTable& table, const std::vector<int>& which,
                        double conv_tol = 1e-6);

std::vector<BigReal> poles_direct_exact(const oracle::ExactQdTable& table,
                                        const std::vector<int>& which);

// Critical-index method: builds p_j^(n) over q columns m+1..m+j and takes
// pole estimates as reciprocals of its real zeros. n < 0 selects the
// default n = N - 2(m+j) - 1.
PoleReport poles_critical(const QdTable& table, int m, int j, int n = -1);

std::vector<BigReal> poles_critical_exact(const oracle::ExactQdTable& table, int m,
                                          int j, int n = -1, int precision_bits = 200);

// Monic p_j^(n) coefficients (ascending) from the recurrence
// p_{k+1}^(i) = z p_k^(i+1) - q_{m+k+1}^(i) p_k^(i).
std::vector<double> critical_poly(const QdTable& table, int m, int j, int n);
std::vector<BigReal> critical_poly_exact(const oracle::ExactQdTable& table, int m,
                                         int j, int n);

enum class ZeroVariant { proqd, compproqd };

struct ZeroReport {
  ProgressiveResult run;
  std::vector<double> rel_errors;  // aligned with run.zeros when oracle given
  double max_rel_error = 0.0;
};

ZeroReport zeros(const PolyInput& poly, ZeroVariant variant, double tol,
                 int max_sweeps, const std::vector<BigReal>* oracle_zeros = nullptr);

}  // namespace qd::apps
