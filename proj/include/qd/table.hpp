#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qd/series.hpp"

namespace qd {

enum class Algo { qd, compqd, ddqd };

// First-column initialization for the compensated builder: `real_dd`
// divides the (hi, lo) coefficient pairs in double-double; `float_divrem`
// applies DivRem to the hi parts, for coefficients born in binary64.
enum class InitMode { real_dd, float_divrem };

const char* algo_name(Algo a);

struct Breakdown {
  int m = 0;
  int n = 0;
  char plane = 'q';   // which cell hit the bad divisor
  bool near = false;  // |divisor| below the near-breakdown threshold
};

// Divisors at or below this magnitude are treated as breakdowns before
// the division happens, so Inf/NaN never enter the table.
inline constexpr double kNearBreakdownThreshold = 0x1p-968;

// Triangular qd table for a degree-N series. Row m of q holds
// q_m^(n) for n = 0..N-2m+1 (m = 1..floor((N+1)/2), q[0] unused); row m
// of e holds e_m^(n) for n = 0..N-2m, with e[0] the all-zero boundary
// row. eps_* carry the compensated residuals (compqd), *_lo the low
// words (ddqd). *_flops record the instrumented per-cell flop counts.
struct QdTable {
  Algo algo = Algo::qd;
  int degree = 0;
  std::vector<std::vector<double>> q, e;
  std::vector<std::vector<double>> eps_q, eps_e;
  std::vector<std::vector<double>> q_lo, e_lo;
  std::vector<std::vector<std::uint8_t>> q_ok, e_ok;
  std::vector<std::vector<std::uint32_t>> q_flops, e_flops;
  std::vector<Breakdown> breakdowns;

  int rows() const { return (degree + 1) / 2; }
  int q_row_size(int m) const { return degree - 2 * m + 2; }
  int e_row_size(int m) const { return m == 0 ? degree : degree - 2 * m + 1; }
  bool has_q(int m, int n) const {
    return m >= 1 && m <= rows() && n >= 0 && n < q_row_size(m);
  }
  bool has_e(int m, int n) const {
    return m >= 0 && m <= rows() && n >= 0 && n < e_row_size(m);
  }
  bool q_valid(int m, int n) const { return has_q(m, n) && q_ok[m][n]; }
  bool e_valid(int m, int n) const { return has_e(m, n) && e_ok[m][n]; }
  // Deepest n with a valid q-cell in column m; -1 if none.
  int deepest_q(int m) const;
  int deepest_e(int m) const;
};

struct Q1Entry {
  double q = 0.0;
  double eps_q = 0.0;  // residual, value represented is q - eps_q
  bool ok = false;
};

// q1^(n) = c_{n+1}/c_n as a double-double division of the split pairs.
std::vector<Q1Entry> init_q1_real(const SeriesInput& series);

// q1^(n) via DivRem on the hi parts (binary64 coefficients).
std::vector<Q1Entry> init_q1_float(const SeriesInput& series);

QdTable build_qd(const SeriesInput& series);
QdTable build_compqd(const SeriesInput& series, InitMode init = InitMode::real_dd);
QdTable build_ddqd(const SeriesInput& series);

// All planes allocated to the right triangle, every cell masked.
QdTable empty_table(Algo a, int degree);

}  // namespace qd
