#include "qd/table.hpp"

#include <cmath>

#include "qd/dd.hpp"
#include "qd/eft.hpp"

namespace qd {

const char* algo_name(Algo a) {
  switch (a) {
    case Algo::qd: return "qd";
    case Algo::compqd: return "compqd";
    case Algo::ddqd: return "ddqd";
  }
  return "?";
}

int QdTable::deepest_q(int m) const {
  if (m < 1 || m > rows()) return -1;
  for (int n = q_row_size(m) - 1; n >= 0; --n)
    if (q_ok[m][n]) return n;
  return -1;
}

int QdTable::deepest_e(int m) const {
  if (m < 1 || m > rows()) return -1;
  for (int n = e_row_size(m) - 1; n >= 0; --n)
    if (e_ok[m][n]) return n;
  return -1;
}

namespace {

bool divisor_ok(double d, bool& near) {
  near = false;
  if (d == 0.0) return false;
  if (std::fabs(d) < kNearBreakdownThreshold) {
    near = true;
    return false;
  }
  return true;
}

// Allocates the triangular planes. Rows that would be empty stay empty.
void shape_table(QdTable& t, int degree, bool residuals, bool low_words) {
  t.degree = degree;
  const int m_max = t.rows();
  auto plane = [&](auto& p, bool e_side) {
    p.assign(m_max + 1, {});
    for (int m = e_side ? 0 : 1; m <= m_max; ++m) {
      const int len = e_side ? t.e_row_size(m) : t.q_row_size(m);
      if (len > 0) p[m].assign(len, {});
    }
  };
  plane(t.q, false);
  plane(t.e, true);
  plane(t.q_ok, false);
  plane(t.e_ok, true);
  plane(t.q_flops, false);
  plane(t.e_flops, true);
  if (residuals) {
    plane(t.eps_q, false);
    plane(t.eps_e, true);
  }
  if (low_words) {
    plane(t.q_lo, false);
    plane(t.e_lo, true);
  }
  // Boundary row e_0^(n) = 0 is always present and valid.
  for (auto& ok : t.e_ok[0]) ok = 1;
}

}  // namespace

QdTable empty_table(Algo a, int degree) {
  QdTable t;
  t.algo = a;
  shape_table(t, degree, a == Algo::compqd, a == Algo::ddqd);
  return t;
}

std::vector<Q1Entry> init_q1_real(const SeriesInput& series) {
  const int N = series.degree();
  std::vector<Q1Entry> col(N);
  for (int n = 0; n < N; ++n) {
    bool near = false;
    if (!divisor_ok(series.c[n].hi, near)) continue;
    const DD r = dd_div_dd({series.c[n + 1].hi, series.c[n + 1].lo},
                           {series.c[n].hi, series.c[n].lo});
    if (!std::isfinite(r.hi)) continue;
    col[n] = {r.hi, -r.lo, true};
  }
  return col;
}

std::vector<Q1Entry> init_q1_float(const SeriesInput& series) {
  const int N = series.degree();
  std::vector<Q1Entry> col(N);
  for (int n = 0; n < N; ++n) {
    bool near = false;
    if (!divisor_ok(series.c[n].hi, near)) continue;
    const QuotRem d = eft::div_rem(series.c[n + 1].hi, series.c[n].hi);
    flops::add(1);
    const double eps = -(d.r / series.c[n].hi);
    if (!std::isfinite(d.q)) continue;
    col[n] = {d.q, eps, true};
  }
  return col;
}

QdTable build_qd(const SeriesInput& series) {
  QdTable t;
  t.algo = Algo::qd;
  shape_table(t, series.degree(), false, false);
  const int m_max = t.rows();

  for (int n = 0; n < t.q_row_size(1); ++n) {
    const auto before = flops::count();
    bool near = false;
    if (!divisor_ok(series.c[n].hi, near)) {
      t.breakdowns.push_back({0, n, 'c', near});
      continue;
    }
    flops::add(1);
    const double v = series.c[n + 1].hi / series.c[n].hi;
    t.q_flops[1][n] = static_cast<std::uint32_t>(flops::count() - before);
    if (!std::isfinite(v)) continue;
    t.q[1][n] = v;
    t.q_ok[1][n] = 1;
  }

  for (int m = 1; m <= m_max; ++m) {
    for (int n = 0; n < t.e_row_size(m); ++n) {
      if (!(t.q_ok[m][n + 1] && t.q_ok[m][n] && t.e_ok[m - 1][n + 1])) continue;
      const auto before = flops::count();
      flops::add(2);
      const double v = t.q[m][n + 1] - t.q[m][n] + t.e[m - 1][n + 1];
      t.e_flops[m][n] = static_cast<std::uint32_t>(flops::count() - before);
      if (!std::isfinite(v)) continue;
      t.e[m][n] = v;
      t.e_ok[m][n] = 1;
    }
    if (m + 1 > m_max) break;
    for (int n = 0; n < t.q_row_size(m + 1); ++n) {
      if (!(t.e_ok[m][n + 1] && t.e_ok[m][n] && t.q_ok[m][n + 1])) continue;
      bool near = false;
      if (!divisor_ok(t.e[m][n], near)) {
        t.breakdowns.push_back({m, n, 'e', near});
        continue;
      }
      const auto before = flops::count();
      flops::add(2);
      const double v = (t.e[m][n + 1] / t.e[m][n]) * t.q[m][n + 1];
      t.q_flops[m + 1][n] = static_cast<std::uint32_t>(flops::count() - before);
      if (!std::isfinite(v)) continue;
      t.q[m + 1][n] = v;
      t.q_ok[m + 1][n] = 1;
    }
  }
  return t;
}

QdTable build_compqd(const SeriesInput& series, InitMode init) {
  QdTable t;
  t.algo = Algo::compqd;
  shape_table(t, series.degree(), true, false);
  const int m_max = t.rows();

  for (int n = 0; n < t.q_row_size(1); ++n) {
    const auto before = flops::count();
    bool near = false;
    if (!divisor_ok(series.c[n].hi, near)) {
      t.breakdowns.push_back({0, n, 'c', near});
      continue;
    }
    const Q1Entry v = (init == InitMode::real_dd)
                          ? [&] {
                              const DD r = dd_div_dd(
                                  {series.c[n + 1].hi, series.c[n + 1].lo},
                                  {series.c[n].hi, series.c[n].lo});
                              return Q1Entry{r.hi, -r.lo, std::isfinite(r.hi)};
                            }()
                          : [&] {
                              const QuotRem d =
                                  eft::div_rem(series.c[n + 1].hi, series.c[n].hi);
                              flops::add(1);
                              return Q1Entry{d.q, -(d.r / series.c[n].hi),
                                             std::isfinite(d.q)};
                            }();
    t.q_flops[1][n] = static_cast<std::uint32_t>(flops::count() - before);
    if (!v.ok) continue;
    t.q[1][n] = v.q;
    t.eps_q[1][n] = v.eps_q;
    t.q_ok[1][n] = 1;
  }

  for (int m = 1; m <= m_max; ++m) {
    for (int n = 0; n < t.e_row_size(m); ++n) {
      if (!(t.q_ok[m][n + 1] && t.q_ok[m][n] && t.e_ok[m - 1][n + 1])) continue;
      const auto before = flops::count();
      const TwoTerm s = eft::two_sum(t.q[m][n + 1], -t.q[m][n]);
      TwoTerm ev = eft::two_sum(s.hi, t.e[m - 1][n + 1]);
      flops::add(4);
      const double eps = (((t.eps_q[m][n + 1] - t.eps_q[m][n]) + t.eps_e[m - 1][n + 1]) -
                          s.lo) -
                         ev.lo;
      const TwoTerm refreshed = eft::fast_two_sum_unchecked(ev.hi, -eps);
      t.e_flops[m][n] = static_cast<std::uint32_t>(flops::count() - before);
      if (!std::isfinite(refreshed.hi) || !std::isfinite(refreshed.lo)) continue;
      t.e[m][n] = refreshed.hi;
      t.eps_e[m][n] = -refreshed.lo;
      t.e_ok[m][n] = 1;
    }
    if (m + 1 > m_max) break;
    for (int n = 0; n < t.q_row_size(m + 1); ++n) {
      if (!(t.e_ok[m][n + 1] && t.e_ok[m][n] && t.q_ok[m][n + 1])) continue;
      bool near = false;
      if (!divisor_ok(t.e[m][n], near)) {
        t.breakdowns.push_back({m, n, 'e', near});
        continue;
      }
      const auto before = flops::count();
      const QuotRem d = eft::div_rem(t.e[m][n + 1], t.e[m][n]);
      const TwoTerm qv = eft::two_prod(d.q, t.q[m][n + 1]);
      flops::add(10);
      const double eps = (((((t.eps_q[m][n + 1] * t.e[m][n + 1]) +
                             (t.eps_e[m][n + 1] * t.q[m][n + 1])) -
                            (t.eps_e[m][n] * qv.hi)) -
                           (d.r * t.q[m][n + 1])) -
                          (qv.lo * t.e[m][n])) /
                         t.e[m][n];
      const TwoTerm refreshed = eft::fast_two_sum_unchecked(qv.hi, -eps);
      t.q_flops[m + 1][n] = static_cast<std::uint32_t>(flops::count() - before);
      if (!std::isfinite(refreshed.hi) || !std::isfinite(refreshed.lo)) continue;
      t.q[m + 1][n] = refreshed.hi;
      t.eps_q[m + 1][n] = -refreshed.lo;
      t.q_ok[m + 1][n] = 1;
    }
  }
  return t;
}

QdTable build_ddqd(const SeriesInput& series) {
  QdTable t;
  t.algo = Algo::ddqd;
  shape_table(t, series.degree(), false, true);
  const int m_max = t.rows();

  auto q_at = [&](int m, int n) { return DD{t.q[m][n], t.q_lo[m][n]}; };
  auto e_at = [&](int m, int n) { return DD{t.e[m][n], t.e_lo[m][n]}; };

  for (int n = 0; n < t.q_row_size(1); ++n) {
    const auto before = flops::count();
    bool near = false;
    if (!divisor_ok(series.c[n].hi, near)) {
      t.breakdowns.push_back({0, n, 'c', near});
      continue;
    }
    const DD r = dd_div_dd({series.c[n + 1].hi, series.c[n + 1].lo},
                           {series.c[n].hi, series.c[n].lo});
    t.q_flops[1][n] = static_cast<std::uint32_t>(flops::count() - before);
    if (!std::isfinite(r.hi)) continue;
    t.q[1][n] = r.hi;
    t.q_lo[1][n] = r.lo;
    t.q_ok[1][n] = 1;
  }

  for (int m = 1; m <= m_max; ++m) {
    for (int n = 0; n < t.e_row_size(m); ++n) {
      if (!(t.q_ok[m][n + 1] && t.q_ok[m][n] && t.e_ok[m - 1][n + 1])) continue;
      const auto before = flops::count();
      const DD diff = dd_add_dd(q_at(m, n + 1), -q_at(m, n));
      const DD v = dd_add_dd(diff, e_at(m - 1, n + 1));
      t.e_flops[m][n] = static_cast<std::uint32_t>(flops::count() - before);
      if (!std::isfinite(v.hi)) continue;
      t.e[m][n] = v.hi;
      t.e_lo[m][n] = v.lo;
      t.e_ok[m][n] = 1;
    }
    if (m + 1 > m_max) break;
    for (int n = 0; n < t.q_row_size(m + 1); ++n) {
      if (!(t.e_ok[m][n + 1] && t.e_ok[m][n] && t.q_ok[m][n + 1])) continue;
      bool near = false;
      if (!divisor_ok(t.e[m][n], near)) {
        t.breakdowns.push_back({m, n, 'e', near});
        continue;
      }
      const auto before = flops::count();
      const DD ratio = dd_div_dd(e_at(m, n + 1), e_at(m, n));
      const DD v = dd_mul_dd(ratio, q_at(m, n + 1));
      t.q_flops[m + 1][n] = static_cast<std::uint32_t>(flops::count() - before);
      if (!std::isfinite(v.hi)) continue;
      t.q[m + 1][n] = v.hi;
      t.q_lo[m + 1][n] = v.lo;
      t.q_ok[m + 1][n] = 1;
    }
  }
  return t;
}

}  // namespace qd
