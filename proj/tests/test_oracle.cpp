#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <mpfr.h>

#include <algorithm>

#include "qd/oracle.hpp"

using namespace qd;
using namespace qd::oracle;

TEST_CASE("taylor coefficients of exp over a pole product") {
  // single factor, degree 0: e^0 / (0 - 1) = -1
  auto c = gen_taylor_exp_rational({BigReal(1)}, 0);
  CHECK(c.size() == 1);
  CHECK(c[0] == BigReal(-1));

  // hand expansion to degree 2 for factors {1, 2, -2, 3}:
  // 1/(x-1) = -(1 + x + x^2 + ...)
  // 1/(x-2) = -(1/2)(1 + x/2 + x^2/4 + ...)
  // 1/(x+2) = +(1/2)(1 - x/2 + x^2/4 - ...)
  // 1/(x-3) = -(1/3)(1 + x/3 + x^2/9 + ...)
  const std::vector<BigReal> f = {BigReal(1), BigReal(2), BigReal(-2), BigReal(3)};
  c = gen_taylor_exp_rational(f, 2);
  auto conv = [](const std::vector<BigReal>& a, const std::vector<BigReal>& b) {
    std::vector<BigReal> r(3, BigReal(0));
    for (int i = 0; i < 3; ++i)
      for (int j = 0; i + j < 3; ++j) r[i + j] += a[i] * b[j];
    return r;
  };
  std::vector<BigReal> expect = {BigReal(1), BigReal(1), BigReal(1, 2)};  // exp
  expect = conv(expect, {BigReal(-1), BigReal(-1), BigReal(-1)});
  expect = conv(expect, {BigReal(-1, 2), BigReal(-1, 4), BigReal(-1, 8)});
  expect = conv(expect, {BigReal(1, 2), BigReal(-1, 4), BigReal(1, 8)});
  expect = conv(expect, {BigReal(-1, 3), BigReal(-1, 9), BigReal(-1, 27)});
  for (int i = 0; i < 3; ++i) CHECK(c[i] == expect[i]);
}

TEST_CASE("taylor series evaluates to the function value at x = 1/10") {
  const std::vector<BigReal> f = {BigReal(1), BigReal(2), BigReal(3), BigReal(4)};
  const int N = 54;
  const auto c = gen_taylor_exp_rational(f, N);

  const BigReal x(1, 10);
  BigReal series(0), xp(1);
  for (int n = 0; n <= N; ++n) {
    series += c[n] * xp;
    xp *= x;
  }

  mpfr_t fx, num, tmp;
  mpfr_inits2(200, fx, num, tmp, nullptr);
  mpfr_set_d(fx, 0.1, MPFR_RNDN);
  mpfr_exp(fx, fx, MPFR_RNDN);  // e^(1/10), 1/10 exact in 200 bits? use exact q
  mpfr_set_q(tmp, x.get_mpq_t(), MPFR_RNDN);
  mpfr_exp(fx, tmp, MPFR_RNDN);
  for (long a : {1L, 2L, 3L, 4L}) {
    mpfr_sub_si(num, tmp, a, MPFR_RNDN);
    mpfr_div(fx, fx, num, MPFR_RNDN);
  }
  const double direct = mpfr_get_d(fx, MPFR_RNDN);
  mpfr_clears(fx, num, tmp, nullptr);

  const double via_series = exact::to_double_via_bits(series, 200);
  // truncation error ~ |c_55| * 10^-55; far below double resolution here
  CHECK(via_series == doctest::Approx(direct).epsilon(1e-14));
}

TEST_CASE("laguerre coefficients") {
  CHECK(gen_laguerre(0) == std::vector<BigReal>{BigReal(1)});
  CHECK(gen_laguerre(1) == std::vector<BigReal>({BigReal(1), BigReal(-1)}));
  CHECK(gen_laguerre(3) ==
        std::vector<BigReal>({BigReal(1), BigReal(-3), BigReal(3, 2), BigReal(-1, 6)}));

  // closed form: coefficient of x^i in L_k is (-1)^i C(k,i) / i!
  const int k = 35;
  const auto c = gen_laguerre(k);
  REQUIRE(c.size() == std::size_t(k + 1));
  BigReal binom(1), fact(1);
  for (int i = 0; i <= k; ++i) {
    if (i > 0) {
      binom *= BigReal(k - i + 1);
      binom /= BigReal(i);
      fact *= i;
    }
    const BigReal expect = (i % 2 ? -1 : 1) * binom / fact;
    CHECK(c[i] == expect);
  }
}

TEST_CASE("random polynomial generator") {
  const auto one = gen_random_poly(0, 42);
  CHECK(one.size() == 1);
  CHECK(exact::abs(one[0]) < 1);
  CHECK(one[0] != 0);

  CHECK(gen_random_poly(20, 7) == gen_random_poly(20, 7));
  CHECK(gen_random_poly(20, 7) != gen_random_poly(20, 8));

  const auto draws = gen_random_poly(9999, 123);
  BigReal mean(0);
  for (const auto& v : draws) mean += v;
  mean /= BigReal(10000);
  CHECK(exact::abs(mean) < BigReal(1, 50));  // 0.02
}

TEST_CASE("exact_qd on the all-ones series masks column two") {
  const std::vector<BigReal> ones(9, BigReal(1));
  const auto t = exact_qd(ones);
  for (int n = 0; n < t.e_row_size(1); ++n) {
    CHECK(t.e_valid(1, n));
    CHECK(t.e[1][n] == 0);
  }
  for (int n = 0; n < t.q_row_size(2); ++n) CHECK(!t.q_valid(2, n));
}

TEST_CASE("exact_qd hand values for c_n = 2^n + 1") {
  std::vector<BigReal> c;
  for (int n = 0; n <= 8; ++n) c.push_back(exact::pow2(n) + 1);
  const auto t = exact_qd(c);
  CHECK(t.q[1][0] == BigReal(3, 2));
  CHECK(t.e[1][0] == BigReal(1, 6));
}

TEST_CASE("hankel determinants and the rhombus identities") {
  const auto c = gen_random_poly(8, 2024);
  CHECK(hankel(c, 0, 3) == BigReal(1));
  CHECK(hankel(c, 1, 5) == c[5]);

  // (H_m^(n))^2 + H_{m+1}^(n-1) H_{m-1}^(n+1) = H_m^(n-1) H_m^(n+1)
  for (int m = 1; m <= 3; ++m)
    for (int n = 1; n + 1 + 2 * m <= 8; ++n) {
      const BigReal lhs = hankel(c, m, n) * hankel(c, m, n) +
                          hankel(c, m + 1, n - 1) * hankel(c, m - 1, n + 1);
      CHECK(lhs == hankel(c, m, n - 1) * hankel(c, m, n + 1));
    }

  // table cells equal the Hankel ratios
  const auto t = exact_qd(c);
  for (int m = 1; m <= t.rows(); ++m) {
    for (int n = 0; n < t.q_row_size(m); ++n) {
      if (!t.q_valid(m, n)) continue;
      const BigReal expect = hankel(c, m, n + 1) * hankel(c, m - 1, n) /
                             (hankel(c, m, n) * hankel(c, m - 1, n + 1));
      CHECK(t.q[m][n] == expect);
    }
    for (int n = 0; m <= t.rows() && n < t.e_row_size(m); ++n) {
      if (!t.e_valid(m, n)) continue;
      const BigReal expect = hankel(c, m + 1, n) * hankel(c, m - 1, n + 1) /
                             (hankel(c, m, n) * hankel(c, m, n + 1));
      CHECK(t.e[m][n] == expect);
    }
  }

  // addition and product rhombus rules hold exactly
  for (int m = 1; m <= t.rows(); ++m) {
    for (int n = 0; n + 1 < t.e_row_size(m); ++n) {
      if (!(t.e_valid(m, n) && t.q_valid(m, n) && t.q_valid(m, n + 1) &&
            t.e_valid(m - 1, n + 1)))
        continue;
      CHECK(t.q[m][n] + t.e[m][n] == t.q[m][n + 1] + t.e[m - 1][n + 1]);
    }
    if (m + 1 > t.rows()) continue;
    for (int n = 0; n < t.q_row_size(m + 1); ++n) {
      if (!(t.q_valid(m + 1, n) && t.e_valid(m, n) && t.q_valid(m, n + 1) &&
            t.e_valid(m, n + 1)))
        continue;
      CHECK(t.q[m][n + 1] * t.e[m][n + 1] == t.q[m + 1][n] * t.e[m][n]);
    }
  }
}

TEST_CASE("real_to_dd splitting") {
  auto s = real_to_dd(BigReal(1));
  CHECK(s.hi == 1.0);
  CHECK(s.lo == 0.0);

  s = real_to_dd(BigReal(1, 3));
  CHECK(s.hi == 1.0 / 3.0);
  CHECK(BigReal(s.lo) == BigReal(exact::to_double(BigReal(1, 3) - BigReal(s.hi))));

  s = real_to_dd(exact::pow2(-60) + 1);
  CHECK(s.hi == 1.0);
  CHECK(s.lo == 0x1p-60);

  const auto rnd = gen_random_poly(200, 5);
  const BigReal u = exact::pow2(-53);
  for (const auto& v : rnd) {
    const BigReal x = v / BigReal(3) + BigReal(1, 7);
    const auto p = real_to_dd(x);
    CHECK(exact::abs(BigReal(p.lo)) <= u * exact::abs(BigReal(p.hi)));
    CHECK(exact::abs(x - BigReal(p.hi) - BigReal(p.lo)) <= u * u * exact::abs(x));
  }
}

TEST_CASE("reference zeros by sturm bisection") {
  // x - 2
  auto z = reference_zeros({BigReal(-2), BigReal(1)}, 60);
  REQUIRE(z.size() == 1);
  CHECK(z[0] == BigReal(2));

  // (x-1)(x-2)(x-4) = -8 + 14x - 7x^2 + x^3
  z = reference_zeros({BigReal(-8), BigReal(14), BigReal(-7), BigReal(1)}, 100);
  REQUIRE(z.size() == 3);
  CHECK(exact::abs(z[0] - 1) <= exact::pow2(-99));
  CHECK(exact::abs(z[1] - 2) <= exact::pow2(-99));
  CHECK(exact::abs(z[2] - 4) <= exact::pow2(-99));

  z = reference_zeros(gen_laguerre(35), 90);
  REQUIRE(z.size() == 35);
  CHECK(z.front() > 0);
  CHECK(z.back() < 140);
  CHECK(std::is_sorted(z.begin(), z.end()));

  // complex pair present
  CHECK_THROWS_AS(reference_zeros({BigReal(1), BigReal(0), BigReal(1)}, 40),
                  std::domain_error);
}

TEST_CASE("relative error measurement") {
  auto r = rel_error(1.0, BigReal(1));
  CHECK(r.value == 0.0);
  CHECK(!r.exact_zero);

  r = rel_error(1.0 + 0x1p-52, BigReal(1));
  CHECK(r.value == 0x1p-52);

  r = rel_error(0.25, BigReal(0));
  CHECK(r.exact_zero);
  CHECK(r.value == 0.25);

  // spot check against 200-bit recomputation
  const BigReal exact_v = BigReal(355, 113);
  const double approx = 3.14159;
  const auto re = rel_error(approx, exact_v);
  mpfr_t a, b;
  mpfr_inits2(200, a, b, nullptr);
  mpfr_set_q(a, exact_v.get_mpq_t(), MPFR_RNDN);
  mpfr_set_d(b, approx, MPFR_RNDN);
  mpfr_sub(b, b, a, MPFR_RNDN);
  mpfr_div(b, b, a, MPFR_RNDN);
  mpfr_abs(b, b, MPFR_RNDN);
  CHECK(re.value == doctest::Approx(mpfr_get_d(b, MPFR_RNDN)).epsilon(1e-15));
  mpfr_clears(a, b, nullptr);
}
