#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qd/bigreal.hpp"
#include "qd/dd.hpp"

using namespace qd;

namespace {

const BigReal kU = exact::pow2(-53);
const BigReal kBound = 4 * kU * kU;

struct RandomDD {
  std::mt19937_64 gen;
  explicit RandomDD(std::uint64_t seed) : gen(seed) {}

  double uniform_double(int max_exp) {
    const double mant = 1.0 + static_cast<double>(gen() >> 12) * 0x1p-52;
    const int expo = static_cast<int>(gen() % (2 * max_exp + 1)) - max_exp;
    const double sign = (gen() & 1) ? 1.0 : -1.0;
    return sign * std::ldexp(mant, expo);
  }

  DD operator()() {
    const double hi = uniform_double(30);
    const double lo = uniform_double(30) * 0x1p-53 * std::fabs(hi) /
                      2.0;  // below u*|hi| after renormalization
    const TwoTerm t = eft::two_sum(hi, lo);
    return {t.hi, t.lo};
  }
};

BigReal value(DD x) { return BigReal(x.hi) + BigReal(x.lo); }

bool within(DD got, const BigReal& want) {
  if (want == 0) return got.hi == 0.0 && got.lo == 0.0;
  return exact::abs(value(got) - want) <= kBound * exact::abs(want);
}

bool normalized(DD x) {
  const TwoTerm t = eft::fast_two_sum(x.hi, x.lo);
  return t.hi == x.hi && t.lo == x.lo;
}

}  // namespace

TEST_CASE("dd_add_d examples") {
  DD r = dd_add_d({1.0, 0.0}, 1.0);
  CHECK(r.hi == 2.0);
  CHECK(r.lo == 0.0);

  r = dd_add_d({1.0, 0x1p-80}, 0.0);
  CHECK(r.hi == 1.0);
  CHECK(r.lo == 0x1p-80);
}

TEST_CASE("dd_add_dd examples") {
  DD r = dd_add_dd({1.0, 0.0}, {-1.0, 0.0});
  CHECK(r.hi == 0.0);
  CHECK(r.lo == 0.0);

  r = dd_add_dd({1.0, 0x1p-60}, {1.0, 0x1p-60});
  CHECK(r.hi == 2.0);
  CHECK(r.lo == 0x1p-59);
}

TEST_CASE("dd_mul identities") {
  RandomDD rnd(11);
  for (int i = 0; i < 100; ++i) {
    const DD a = rnd();
    DD r = dd_mul_d(a, 1.0);
    CHECK(r.hi == a.hi);
    CHECK(r.lo == a.lo);
    r = dd_mul_dd(a, {1.0, 0.0});
    CHECK(r.hi == a.hi);
    CHECK(r.lo == a.lo);
    r = dd_mul_d(a, 0.0);
    CHECK(r.hi == 0.0);
    r = dd_mul_dd(a, {0.0, 0.0});
    CHECK(r.hi == 0.0);
  }
}

TEST_CASE("dd_div_dd examples") {
  DD r = dd_div_dd({6.0, 0.0}, {3.0, 0.0});
  CHECK(r.hi == 2.0);
  CHECK(r.lo == 0.0);

  r = dd_div_dd({1.0, 0.0}, {1.0, 0.0});
  CHECK(r.hi == 1.0);
  CHECK(r.lo == 0.0);

  r = dd_div_dd({1.0, 0.0}, {3.0, 0.0});
  CHECK(within(r, BigReal(1, 3)));
}

TEST_CASE("dd ops stay within 4u^2 of the exact result") {
  RandomDD rnd(20240524);
  for (int i = 0; i < 25000; ++i) {
    const DD a = rnd(), b = rnd();
    const double d = rnd().hi;

    DD r = dd_add_d(a, d);
    CHECK(within(r, value(a) + BigReal(d)));
    CHECK(normalized(r));

    r = dd_add_dd(a, b);
    CHECK(within(r, value(a) + value(b)));
    CHECK(normalized(r));

    r = dd_mul_d(a, d);
    CHECK(within(r, value(a) * BigReal(d)));
    CHECK(normalized(r));

    r = dd_mul_dd(a, b);
    CHECK(within(r, value(a) * value(b)));
    CHECK(normalized(r));

    r = dd_div_dd(a, b);
    CHECK(within(r, value(a) / value(b)));
    CHECK(normalized(r));
  }
}

TEST_CASE("dd flop counts match the listing costs") {
  const DD a{1.25, 0x1p-60}, b{2.5, 0x1p-58};
  CHECK(flops::measure([&] { dd_add_d(a, 3.0); }) == 10);
  CHECK(flops::measure([&] { dd_add_dd(a, b); }) == 20);
  CHECK(flops::measure([&] { dd_mul_d(a, 3.0); }) == 22);
  CHECK(flops::measure([&] { dd_mul_dd(a, b); }) == 24);
  CHECK(flops::measure([&] { dd_div_dd(a, b); }) == 100);
}
