#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qd/bigreal.hpp"
#include "qd/eft.hpp"

using namespace qd;

namespace {

// Random finite binary64 with exponent in [-300, 300].
struct RandomFl {
  std::mt19937_64 gen;
  explicit RandomFl(std::uint64_t seed) : gen(seed) {}

  double operator()() {
    const double mant =
        1.0 + static_cast<double>(gen() >> 12) * 0x1p-52;  // [1, 2)
    const int expo = static_cast<int>(gen() % 601) - 300;
    const double sign = (gen() & 1) ? 1.0 : -1.0;
    return sign * std::ldexp(mant, expo);
  }
};

}  // namespace

TEST_CASE("two_sum examples") {
  auto r = eft::two_sum(1.0, 0.0);
  CHECK(r.hi == 1.0);
  CHECK(r.lo == 0.0);

  r = eft::two_sum(0x1p53, 1.0);
  CHECK(r.hi == 0x1p53);  // round to even keeps hi
  CHECK(r.lo == 1.0);
}

TEST_CASE("two_sum exactness against rational recomputation") {
  RandomFl rnd(20240521);
  for (int i = 0; i < 20000; ++i) {
    const double a = rnd(), b = rnd();
    const auto r = eft::two_sum(a, b);
    CHECK(BigReal(r.hi) + BigReal(r.lo) == BigReal(a) + BigReal(b));
    if (r.hi != 0.0)
      CHECK(exact::abs(BigReal(r.lo)) <=
            exact::pow2(-53) * exact::abs(BigReal(r.hi)));
  }
}

TEST_CASE("fast_two_sum examples and equivalence with two_sum") {
  auto r = eft::fast_two_sum(1.0, 0.0);
  CHECK(r.hi == 1.0);
  CHECK(r.lo == 0.0);

  r = eft::fast_two_sum(1.0, 0x1p-80);
  CHECK(r.hi == 1.0);
  CHECK(r.lo == 0x1p-80);

  RandomFl rnd(77);
  for (int i = 0; i < 20000; ++i) {
    double a = rnd(), b = rnd();
    if (std::fabs(a) < std::fabs(b)) std::swap(a, b);
    const auto f = eft::fast_two_sum(a, b);
    const auto t = eft::two_sum(a, b);
    CHECK(f.hi == t.hi);
    CHECK(f.lo == t.lo);
  }
}

TEST_CASE("split examples") {
  auto r = eft::split(0.0);
  CHECK(r.hi == 0.0);
  CHECK(r.lo == 0.0);

  r = eft::split(0x1p27 + 1.0);
  CHECK(BigReal(r.hi) + BigReal(r.lo) == BigReal(0x1p27 + 1.0));
  // both halves fit in 27 bits: scaled mantissas are small integers
  CHECK(std::abs(r.lo) <= 0x1p26);

  RandomFl rnd(3);
  for (int i = 0; i < 20000; ++i) {
    const double a = rnd();
    const auto s = eft::split(a);
    CHECK(BigReal(s.hi) + BigReal(s.lo) == BigReal(a));
    // halves multiply exactly in binary64
    CHECK(BigReal(s.hi * s.hi) == BigReal(s.hi) * BigReal(s.hi));
    CHECK(BigReal(s.lo * s.lo) == BigReal(s.lo) * BigReal(s.lo));
  }
}

TEST_CASE("two_prod examples") {
  RandomFl rnd(9);
  for (int i = 0; i < 100; ++i) {
    const double x = rnd();
    const auto r = eft::two_prod(1.0, x);
    CHECK(r.hi == x);
    CHECK(r.lo == 0.0);
  }

  const double v = 1.0 + 0x1p-27;
  const auto r = eft::two_prod(v, v);
  CHECK(r.hi == 1.0 + 0x1p-26);
  CHECK(r.lo == 0x1p-54);
}

TEST_CASE("two_prod exactness against rational recomputation") {
  RandomFl rnd(20240522);
  for (int i = 0; i < 20000; ++i) {
    const double a = rnd(), b = rnd();
    const auto r = eft::two_prod(a, b);
    CHECK(BigReal(r.hi) + BigReal(r.lo) == BigReal(a) * BigReal(b));
    if (r.hi != 0.0)
      CHECK(exact::abs(BigReal(r.lo)) <=
            exact::pow2(-53) * exact::abs(BigReal(r.hi)));
  }
}

TEST_CASE("div_rem examples") {
  auto r = eft::div_rem(6.0, 3.0);
  CHECK(r.q == 2.0);
  CHECK(r.r == 0.0);

  r = eft::div_rem(1.0, 3.0);
  CHECK(r.q == 1.0 / 3.0);
  CHECK(BigReal(r.r) == BigReal(1) - BigReal(3) * BigReal(r.q));
  CHECK(exact::abs(BigReal(r.r)) <= exact::pow2(-53));
}

TEST_CASE("div_rem identity against rational recomputation") {
  RandomFl rnd(20240523);
  for (int i = 0; i < 20000; ++i) {
    const double a = rnd(), b = rnd();
    const auto r = eft::div_rem(a, b);
    CHECK(BigReal(b) * BigReal(r.q) + BigReal(r.r) == BigReal(a));
    CHECK(exact::abs(BigReal(r.r)) <= exact::pow2(-53) * exact::abs(BigReal(a)));
  }
}

TEST_CASE("flop accounting of the kernels") {
  CHECK(flops::measure([] { eft::two_sum(1.5, 2.5); }) == 6);
  CHECK(flops::measure([] { eft::fast_two_sum(2.5, 1.5); }) == 3);
  CHECK(flops::measure([] { eft::split(1.5); }) == 4);
  CHECK(flops::measure([] { eft::two_prod(1.5, 2.5); }) == 17);
  CHECK(flops::measure([] { eft::div_rem(1.5, 2.5); }) == 20);
}
