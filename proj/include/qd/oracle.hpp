#pragma once

#include <cstdint>
#include <vector>

#include "qd/bigreal.hpp"
#include "qd/series.hpp"

namespace qd::oracle {

// Exact qd table over the same triangle as QdTable. Cells become invalid
// only through exact-zero divisors (no rounding, no near-breakdowns).
struct ExactQdTable {
  int degree = 0;
  std::vector<std::vector<BigReal>> q, e;
  std::vector<std::vector<std::uint8_t>> q_ok, e_ok;

  int rows() const { return (degree + 1) / 2; }
  int q_row_size(int m) const { return degree - 2 * m + 2; }
  int e_row_size(int m) const { return m == 0 ? degree : degree - 2 * m + 1; }
  bool q_valid(int m, int n) const {
    return m >= 1 && m <= rows() && n >= 0 && n < q_row_size(m) && q_ok[m][n];
  }
  bool e_valid(int m, int n) const {
    return m >= 0 && m <= rows() && n >= 0 && n < e_row_size(m) && e_ok[m][n];
  }
  int deepest_q(int m) const;
};

// Exact Taylor coefficients of e^x * prod_i 1/(x - a_i) at x = 0.
std::vector<BigReal> gen_taylor_exp_rational(const std::vector<BigReal>& pole_factors,
                                             int degree);

// Exact coefficients of the Laguerre polynomial L_degree, ascending powers.
std::vector<BigReal> gen_laguerre(int degree);

// Reproducible random binary64 coefficients in (-1, 1), as exact dyadic
// rationals; zero draws are rejected so every quotient q1 exists.
std::vector<BigReal> gen_random_poly(int degree, std::uint64_t seed);

// Classical qd recurrence evaluated in exact rational arithmetic.
ExactQdTable exact_qd(const std::vector<BigReal>& series);

// m x m Hankel determinant det[c_{n+i+j}], 0 <= i,j < m; H_0 = 1.
BigReal hankel(const std::vector<BigReal>& series, int m, int n);

struct SplitPair {
  double hi = 0.0;
  double lo = 0.0;
  BigReal dropped;  // |x - hi - lo|, reported as a diagnostic
};

// Round x to a double-double pair: hi = fl(x), lo = fl(x - hi).
SplitPair real_to_dd(const BigReal& x);

SeriesInput split_series(const std::vector<BigReal>& exact);

// Splits ascending-power coefficients and reverses them into the
// leading-first layout the progressive scheme consumes.
PolyInput split_poly_ascending(const std::vector<BigReal>& ascending);

// All real zeros of the polynomial (ascending coefficients), isolated by
// Sturm sequences and bisected to interval width 2^-precision_bits.
// Returns them sorted ascending; complex zeros are simply not reported.
std::vector<BigReal> sturm_real_roots(const std::vector<BigReal>& ascending,
                                      int precision_bits);

// sturm_real_roots, but demands that every zero is real.
std::vector<BigReal> reference_zeros(const std::vector<BigReal>& ascending,
                                     int precision_bits);

struct RelError {
  double value = 0.0;
  bool exact_zero = false;  // exact == 0: value holds |approx| instead
};

// |approx - exact| / |exact| evaluated exactly, rounded once.
RelError rel_error(double approx, const BigReal& exact);

}  // namespace qd::oracle
