#pragma once

#include "qd/eft.hpp"

namespace qd {

// Double-double value hi + lo, normalized: hi = fl(hi + lo).
struct DD {
  double hi = 0.0;
  double lo = 0.0;
};

inline DD operator-(DD a) { return {-a.hi, -a.lo}; }

// 10 flops.
inline DD dd_add_d(DD a, double b) {
  TwoTerm t = eft::two_sum(a.hi, b);
  flops::add(1);
  const double tl = a.lo + t.lo;
  t = eft::fast_two_sum_unchecked(t.hi, tl);
  return {t.hi, t.lo};
}

// 20 flops.
inline DD dd_add_dd(DD a, DD b) {
  const TwoTerm s = eft::two_sum(a.hi, b.hi);
  const TwoTerm t = eft::two_sum(a.lo, b.lo);
  flops::add(5);
  double sl = s.lo + t.hi;
  const double th = s.hi + sl;
  sl = sl - (th - s.hi);
  const double tl = t.lo + sl;
  const TwoTerm r = eft::fast_two_sum_unchecked(th, tl);
  return {r.hi, r.lo};
}

// 22 flops.
inline DD dd_mul_d(DD a, double b) {
  const TwoTerm t = eft::two_prod(a.hi, b);
  flops::add(2);
  const double tl = a.lo * b + t.lo;
  const TwoTerm r = eft::fast_two_sum_unchecked(t.hi, tl);
  return {r.hi, r.lo};
}

// 24 flops.
inline DD dd_mul_dd(DD a, DD b) {
  const TwoTerm t = eft::two_prod(a.hi, b.hi);
  flops::add(4);
  const double tl = a.hi * b.lo + a.lo * b.hi + t.lo;
  const TwoTerm r = eft::fast_two_sum_unchecked(t.hi, tl);
  return {r.hi, r.lo};
}

// Long division with three correction terms. 100 flops.
inline DD dd_div_dd(DD a, DD b) {
  assert(b.hi != 0.0 && "dd division by zero");
  flops::add(1);
  const double q1 = a.hi / b.hi;
  DD t = dd_mul_d(b, q1);
  DD r = dd_add_dd(a, -t);
  flops::add(1);
  const double q2 = r.hi / b.hi;
  t = dd_mul_d(b, q2);
  r = dd_add_dd(r, -t);
  flops::add(1);
  const double q3 = r.hi / b.hi;
  const TwoTerm s = eft::fast_two_sum_unchecked(q1, q2);
  return dd_add_d({s.hi, s.lo}, q3);
}

}  // namespace qd
