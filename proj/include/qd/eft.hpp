#pragma once

#include <cassert>
#include <cmath>

#include "qd/flops.hpp"

namespace qd {

inline constexpr double kUnitRoundoff = 0x1p-53;

// Unevaluated sum of two binary64 values with hi = fl(hi + lo) and
// |lo| <= u * |hi| whenever hi != 0.
struct TwoTerm {
  double hi = 0.0;
  double lo = 0.0;
};

// Quotient and remainder of a floating-point division: a == b * q + r.
struct QuotRem {
  double q = 0.0;
  double r = 0.0;
};

namespace eft {

// x + y == a + b exactly, x = fl(a + b). 6 flops.
inline TwoTerm two_sum(double a, double b) {
  flops::add(6);
  const double x = a + b;
  const double z = x - a;
  const double y = (a - (x - z)) + (b - z);
  return {x, y};
}

// The FastTwoSum formula with no ordering contract. The pair kernels and
// the compensated refresh steps apply it unconditionally; outside the
// ordering domain the pair may lose low-order bits, which is what the
// error analysis accounts for on ill-conditioned cells. 3 flops.
inline TwoTerm fast_two_sum_unchecked(double a, double b) {
  flops::add(3);
  const double x = a + b;
  const double y = (a - x) + b;
  return {x, y};
}

// two_sum under the ordering contract |a| >= |b| (or a == 0). 3 flops.
inline TwoTerm fast_two_sum(double a, double b) {
  assert((a == 0.0 || !(std::fabs(a) < std::fabs(b))) &&
         "fast_two_sum ordering violated");
  return fast_two_sum_unchecked(a, b);
}

// a == hi + lo with both halves on at most 27 significand bits. 4 flops.
inline TwoTerm split(double a) {
  assert(std::fabs(a) < 0x1p996 && "split overflow");
  flops::add(4);
  constexpr double factor = 0x1p27 + 1.0;
  const double c = factor * a;
  const double x = c - (c - a);
  const double y = a - x;
  return {x, y};
}

// x + y == a * b exactly, x = fl(a * b). Dekker form, 17 flops.
// QD_TWO_PROD_FMA selects the 2-flop fma form; it is excluded from the
// flop accounting checks, which assume the default.
inline TwoTerm two_prod(double a, double b) {
#ifdef QD_TWO_PROD_FMA
  flops::add(2);
  const double x = a * b;
  const double y = std::fma(a, b, -x);
  return {x, y};
#else
  flops::add(9);
  const double x = a * b;
  const TwoTerm as = split(a);
  const TwoTerm bs = split(b);
  const double y =
      as.lo * bs.lo - (((x - as.hi * bs.hi) - as.lo * bs.hi) - as.hi * bs.lo);
  return {x, y};
#endif
}

// q = fl(a / b) and a == b * q + r exactly, |r| <= u * |a|. 20 flops.
inline QuotRem div_rem(double a, double b) {
  assert(b != 0.0 && "division by zero");
  flops::add(3);
  const double q = a / b;
  const TwoTerm p = two_prod(q, b);
  const double r = (a - p.hi) - p.lo;
  return {q, r};
}

}  // namespace eft
}  // namespace qd
