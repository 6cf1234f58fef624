#include "qd/apps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qd::apps {

CFraction cfrac(const QdTable& t, double c0, double c1) {
  CFraction f;
  f.a = {c0, c1};
  for (int k = 1;; ++k) {
    if (!t.q_valid(k, 0)) break;
    f.a.push_back(-t.q[k][0]);
    if (!t.e_valid(k, 0)) break;
    f.a.push_back(-t.e[k][0]);
  }
  return f;
}

std::vector<BigReal> cfrac_exact(const oracle::ExactQdTable& t, const BigReal& c0,
                                 const BigReal& c1) {
  std::vector<BigReal> a = {c0, c1};
  for (int k = 1;; ++k) {
    if (!t.q_valid(k, 0)) break;
    a.push_back(-t.q[k][0]);
    if (!t.e_valid(k, 0)) break;
    a.push_back(-t.e[k][0]);
  }
  return a;
}

namespace {

using Series = std::vector<BigReal>;  // truncated power series, ascending

// Reciprocal of a series with unit constant term.
Series series_inv(const Series& t, int order) {
  Series inv(order + 1, BigReal(0));
  inv[0] = 1;
  for (int k = 1; k <= order; ++k) {
    BigReal s(0);
    for (int j = 1; j <= k; ++j) s += t[j] * inv[k - j];
    inv[k] = -s;
  }
  return inv;
}

}  // namespace

std::vector<BigReal> cfrac_expand(const std::vector<BigReal>& a, int order) {
  if (a.empty()) throw std::invalid_argument("empty fraction");
  Series f(order + 1, BigReal(0));
  f[0] = a[0];
  if (a.size() == 1 || order == 0) return f;
  const int L = static_cast<int>(a.size()) - 1;
  // tail_L = 1; tail_j = 1 + a_{j+1} z / tail_{j+1}; f = a_0 + a_1 z / tail_1.
  Series tail(order + 1, BigReal(0));
  tail[0] = 1;
  for (int j = L - 1; j >= 1; --j) {
    const Series inv = series_inv(tail, order);
    Series next(order + 1, BigReal(0));
    next[0] = 1;
    for (int i = 1; i <= order; ++i) next[i] = a[j + 1] * inv[i - 1];
    tail = std::move(next);
  }
  const Series inv = series_inv(tail, order);
  for (int i = 1; i <= order; ++i) f[i] = a[1] * inv[i - 1];
  return f;
}

PoleReport poles_direct(const QdTable& t, const std::vector<int>& which,
                        double conv_tol) {
  PoleReport rep;
  rep.method = "direct";
  for (int m : which) {
    const int nq = t.deepest_q(m);
    if (nq < 0) continue;
    PoleEstimate p;
    p.m = m;
    p.n = nq;
    p.value = 1.0 / t.q[m][nq];
    const int ne = t.deepest_e(m);
    p.converged =
        ne >= 0 && std::fabs(t.e[m][ne]) <= conv_tol * std::fabs(t.q[m][nq]);
    rep.poles.push_back(p);
  }
  return rep;
}

std::vector<BigReal> poles_direct_exact(const oracle::ExactQdTable& t,
                                        const std::vector<int>& which) {
  std::vector<BigReal> poles;
  for (int m : which) {
    const int nq = t.deepest_q(m);
    if (nq < 0 || t.q[m][nq] == 0) continue;
    poles.push_back(BigReal(1) / t.q[m][nq]);
  }
  return poles;
}

std::vector<double> critical_poly(const QdTable& t, int m, int j, int n) {
  // p_k^(i) needed for i = n .. n + (j - k); k-th polynomial is monic of
  // degree k, held ascending.
  std::vector<std::vector<std::vector<double>>> p(j + 1);
  p[0].assign(j + 1, {1.0});
  for (int k = 0; k < j; ++k) {
    p[k + 1].assign(j - k, {});
    for (int i = 0; i + k + 1 <= j; ++i) {
      const int super = n + i;
      if (!t.q_valid(m + k + 1, super))
        throw std::domain_error("need larger degree");
      const double qv = t.q[m + k + 1][super];
      std::vector<double> next(k + 2, 0.0);
      for (int d = 0; d <= k; ++d) next[d + 1] = p[k][i + 1][d];
      for (int d = 0; d <= k; ++d) next[d] -= qv * p[k][i][d];
      p[k + 1][i] = std::move(next);
    }
  }
  return p[j][0];
}

std::vector<BigReal> critical_poly_exact(const oracle::ExactQdTable& t, int m, int j,
                                         int n) {
  std::vector<std::vector<std::vector<BigReal>>> p(j + 1);
  p[0].assign(j + 1, {BigReal(1)});
  for (int k = 0; k < j; ++k) {
    p[k + 1].assign(j - k, {});
    for (int i = 0; i + k + 1 <= j; ++i) {
      const int super = n + i;
      if (!t.q_valid(m + k + 1, super))
        throw std::domain_error("need larger degree");
      const BigReal& qv = t.q[m + k + 1][super];
      std::vector<BigReal> next(k + 2, BigReal(0));
      for (int d = 0; d <= k; ++d) next[d + 1] = p[k][i + 1][d];
      for (int d = 0; d <= k; ++d) next[d] -= qv * p[k][i][d];
      p[k + 1][i] = std::move(next);
    }
  }
  return p[j][0];
}

namespace {

double horner(const std::vector<double>& ascending, double x) {
  double r = 0.0;
  for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) r = r * x + *it;
  return r;
}

double horner_deriv(const std::vector<double>& ascending, double x) {
  double r = 0.0;
  for (int i = static_cast<int>(ascending.size()) - 1; i >= 1; --i)
    r = r * x + double(i) * ascending[i];
  return r;
}

}  // namespace

PoleReport poles_critical(const QdTable& t, int m, int j, int n) {
  if (n < 0) n = t.degree - 2 * (m + j) - 1;
  if (n < 0) throw std::domain_error("need larger degree");
  PoleReport rep;
  rep.method = "critical";

  const std::vector<double> poly = critical_poly(t, m, j, n);
  std::vector<BigReal> exact_poly;
  exact_poly.reserve(poly.size());
  for (double c : poly) exact_poly.push_back(BigReal(c));
  const auto roots = oracle::sturm_real_roots(exact_poly, 80);
  if (static_cast<int>(roots.size()) < j)
    rep.note = "complex or repeated zeros; only real zeros reported";

  for (const auto& r : roots) {
    double z = exact::to_double(r);
    for (int it = 0; it < 5; ++it) {
      const double dp = horner_deriv(poly, z);
      if (dp == 0.0) break;
      const double step = horner(poly, z) / dp;
      if (!std::isfinite(step)) break;
      z -= step;
    }
    if (z == 0.0) continue;
    PoleEstimate p;
    p.m = m;
    p.n = n;
    p.value = 1.0 / z;
    p.converged = true;
    rep.poles.push_back(p);
  }
  // Reciprocals of ascending zeros come out descending; report ascending
  // pole magnitudes the way the tables are read.
  std::sort(rep.poles.begin(), rep.poles.end(),
            [](const PoleEstimate& a, const PoleEstimate& b) {
              return std::fabs(a.value) < std::fabs(b.value);
            });
  // Flag anything that is not a finite improvement on the raw estimate.
  for (auto& p : rep.poles)
    if (!std::isfinite(p.value)) p.converged = false;
  if (static_cast<int>(rep.poles.size()) < j) {
    PoleEstimate missing;
    missing.m = m;
    missing.n = n;
    missing.value = std::numeric_limits<double>::quiet_NaN();
    missing.converged = false;
    while (static_cast<int>(rep.poles.size()) < j) rep.poles.push_back(missing);
  }
  return rep;
}

std::vector<BigReal> poles_critical_exact(const oracle::ExactQdTable& t, int m, int j,
                                          int n, int precision_bits) {
  if (n < 0) n = t.degree - 2 * (m + j) - 1;
  if (n < 0) throw std::domain_error("need larger degree");
  const auto poly = critical_poly_exact(t, m, j, n);
  auto roots = oracle::sturm_real_roots(poly, precision_bits);
  std::vector<BigReal> poles;
  for (const auto& r : roots)
    if (r != 0) poles.push_back(BigReal(1) / r);
  std::sort(poles.begin(), poles.end(), [](const BigReal& a, const BigReal& b) {
    return exact::abs(a) < exact::abs(b);
  });
  return poles;
}

ZeroReport zeros(const PolyInput& poly, ZeroVariant variant, double tol,
                 int max_sweeps, const std::vector<BigReal>* oracle_zeros) {
  ZeroReport rep;
  rep.run = variant == ZeroVariant::proqd ? proqd(poly, tol, max_sweeps)
                                          : comp_proqd(poly, tol, max_sweeps);
  if (oracle_zeros != nullptr) {
    const auto& oz = *oracle_zeros;
    const std::size_t n = std::min(oz.size(), rep.run.zeros.size());
    rep.rel_errors.assign(rep.run.zeros.size(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const auto r = oracle::rel_error(rep.run.zeros[i], oz[i]);
      rep.rel_errors[i] = r.value;
      rep.max_rel_error = std::max(rep.max_rel_error, r.value);
    }
  }
  return rep;
}

}  // namespace qd::apps
