#include "qd/oracle.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace qd::oracle {

namespace {

// Exact tables are capped well past every experiment degree; rationals in
// deeper tables grow without a practical bound.
constexpr int kMaxExactDegree = 220;

int sign_of(const BigReal& x) { return sgn(x); }

}  // namespace

int ExactQdTable::deepest_q(int m) const {
  if (m < 1 || m > rows()) return -1;
  for (int n = q_row_size(m) - 1; n >= 0; --n)
    if (q_ok[m][n]) return n;
  return -1;
}

std::vector<BigReal> gen_taylor_exp_rational(const std::vector<BigReal>& pole_factors,
                                             int degree) {
  if (degree < 0) throw std::invalid_argument("negative degree");
  for (const auto& a : pole_factors)
    if (a == 0) throw std::invalid_argument("invalid factor");

  // exp series, then one truncated convolution per 1/(x - a) factor.
  std::vector<BigReal> c(degree + 1);
  BigReal fact = 1;
  for (int n = 0; n <= degree; ++n) {
    if (n > 0) fact *= n;
    c[n] = BigReal(1) / fact;
  }
  for (const auto& a : pole_factors) {
    std::vector<BigReal> g(degree + 1);
    const BigReal inv_a = BigReal(1) / a;
    BigReal p = -inv_a;  // -(1/a) * (1/a)^k
    for (int k = 0; k <= degree; ++k) {
      g[k] = p;
      p *= inv_a;
    }
    std::vector<BigReal> out(degree + 1, BigReal(0));
    for (int i = 0; i <= degree; ++i)
      for (int j = 0; i + j <= degree; ++j) out[i + j] += c[i] * g[j];
    c = std::move(out);
  }
  return c;
}

std::vector<BigReal> gen_laguerre(int degree) {
  std::vector<BigReal> prev = {BigReal(1)};
  if (degree == 0) return prev;
  std::vector<BigReal> cur = {BigReal(1), BigReal(-1)};
  for (int k = 1; k < degree; ++k) {
    const BigReal a(2 * k + 1, k + 1);  // (2k+1)/(k+1)
    const BigReal b(1, k + 1);
    const BigReal c(k, k + 1);
    std::vector<BigReal> next(cur.size() + 1, BigReal(0));
    for (std::size_t i = 0; i < cur.size(); ++i) {
      next[i] += a * cur[i];
      next[i + 1] -= b * cur[i];
    }
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= c * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::vector<BigReal> gen_random_poly(int degree, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<BigReal> c;
  c.reserve(degree + 1);
  while (static_cast<int>(c.size()) <= degree) {
    const double u = static_cast<double>(gen() >> 11) * 0x1p-53;
    const double v = 2.0 * u - 1.0;
    if (v == 0.0 || v == -1.0) continue;
    c.push_back(BigReal(v));
  }
  return c;
}

ExactQdTable exact_qd(const std::vector<BigReal>& series) {
  const int N = static_cast<int>(series.size()) - 1;
  if (N < 1) throw std::invalid_argument("series too short");
  if (N > kMaxExactDegree) throw std::invalid_argument("exact table degree cap exceeded");

  ExactQdTable t;
  t.degree = N;
  const int m_max = t.rows();
  t.q.assign(m_max + 1, {});
  t.e.assign(m_max + 1, {});
  t.q_ok.assign(m_max + 1, {});
  t.e_ok.assign(m_max + 1, {});
  for (int m = 1; m <= m_max; ++m) {
    t.q[m].assign(std::max(t.q_row_size(m), 0), BigReal(0));
    t.q_ok[m].assign(std::max(t.q_row_size(m), 0), 0);
  }
  for (int m = 0; m <= m_max; ++m) {
    t.e[m].assign(std::max(t.e_row_size(m), 0), BigReal(0));
    t.e_ok[m].assign(std::max(t.e_row_size(m), 0), m == 0 ? 1 : 0);
  }

  for (int n = 0; n < t.q_row_size(1); ++n) {
    if (series[n] == 0) continue;
    t.q[1][n] = series[n + 1] / series[n];
    t.q_ok[1][n] = 1;
  }
  for (int m = 1; m <= m_max; ++m) {
    for (int n = 0; n < t.e_row_size(m); ++n) {
      if (!(t.q_ok[m][n + 1] && t.q_ok[m][n] && t.e_ok[m - 1][n + 1])) continue;
      t.e[m][n] = t.q[m][n + 1] - t.q[m][n] + t.e[m - 1][n + 1];
      t.e_ok[m][n] = 1;
    }
    if (m + 1 > m_max) break;
    for (int n = 0; n < t.q_row_size(m + 1); ++n) {
      if (!(t.e_ok[m][n + 1] && t.e_ok[m][n] && t.q_ok[m][n + 1])) continue;
      if (t.e[m][n] == 0) continue;
      t.q[m + 1][n] = (t.e[m][n + 1] / t.e[m][n]) * t.q[m][n + 1];
      t.q_ok[m + 1][n] = 1;
    }
  }
  return t;
}

BigReal hankel(const std::vector<BigReal>& series, int m, int n) {
  if (m == 0) return BigReal(1);
  if (m < 0 || n < 0 || n + 2 * (m - 1) >= static_cast<int>(series.size()))
    throw std::invalid_argument("hankel index out of range");

  std::vector<std::vector<BigReal>> a(m, std::vector<BigReal>(m));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a[i][j] = series[n + i + j];

  // Bareiss elimination with row pivoting.
  BigReal prev(1);
  int sign = 1;
  for (int k = 0; k + 1 < m; ++k) {
    if (a[k][k] == 0) {
      int p = -1;
      for (int i = k + 1; i < m; ++i)
        if (a[i][k] != 0) {
          p = i;
          break;
        }
      if (p < 0) return BigReal(0);
      std::swap(a[k], a[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < m; ++i)
      for (int j = k + 1; j < m; ++j)
        a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  return sign > 0 ? a[m - 1][m - 1] : BigReal(-a[m - 1][m - 1]);
}

SplitPair real_to_dd(const BigReal& x) {
  SplitPair s;
  s.hi = exact::to_double(x);
  const BigReal r = x - BigReal(s.hi);
  s.lo = exact::to_double(r);
  s.dropped = exact::abs(r - BigReal(s.lo));
  return s;
}

SeriesInput split_series(const std::vector<BigReal>& exact_coeffs) {
  SeriesInput s;
  s.c.reserve(exact_coeffs.size());
  for (const auto& x : exact_coeffs) {
    const SplitPair p = real_to_dd(x);
    s.c.push_back({p.hi, p.lo});
  }
  return s;
}

PolyInput split_poly_ascending(const std::vector<BigReal>& ascending) {
  PolyInput p;
  p.b.reserve(ascending.size());
  for (auto it = ascending.rbegin(); it != ascending.rend(); ++it) {
    const SplitPair sp = real_to_dd(*it);
    p.b.push_back({sp.hi, sp.lo});
  }
  return p;
}

namespace {

using Poly = std::vector<BigReal>;  // ascending coefficients

Poly trim(Poly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(BigReal(long(i)) * p[i]);
  return d;
}

BigReal eval(const Poly& p, const BigReal& x) {
  BigReal r(0);
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

// Remainder of a by b over the rationals.
Poly rem(Poly a, const Poly& b) {
  const int db = static_cast<int>(b.size()) - 1;
  while (static_cast<int>(a.size()) - 1 >= db) {
    const BigReal f = a.back() / b.back();
    const int shift = static_cast<int>(a.size()) - 1 - db;
    for (int i = 0; i <= db; ++i) a[shift + i] -= f * b[i];
    a = trim(std::move(a));
    if (a.empty()) break;
  }
  return a;
}

Poly poly_gcd(Poly a, Poly b) {
  a = trim(std::move(a));
  b = trim(std::move(b));
  while (!b.empty()) {
    Poly r = rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

struct SturmChain {
  std::vector<Poly> seq;

  int variations(const BigReal& x) const {
    int v = 0, prev = 0;
    for (const auto& p : seq) {
      const int s = sign_of(eval(p, x));
      if (s == 0) continue;
      if (prev != 0 && s != prev) ++v;
      prev = s;
    }
    return v;
  }
};

SturmChain build_sturm(const Poly& p) {
  SturmChain c;
  c.seq.push_back(trim(p));
  c.seq.push_back(trim(derivative(p)));
  while (!c.seq.back().empty() && c.seq.back().size() > 1) {
    Poly r = rem(c.seq[c.seq.size() - 2], c.seq.back());
    if (r.empty()) break;
    for (auto& x : r) x = -x;
    c.seq.push_back(std::move(r));
  }
  return c;
}

}  // namespace

std::vector<BigReal> sturm_real_roots(const std::vector<BigReal>& ascending,
                                      int precision_bits) {
  Poly p = trim(ascending);
  if (p.size() <= 1) return {};
  if (p.size() == 2) return {BigReal(-p[0] / p[1])};

  // Work on the squarefree part so every root is simple.
  Poly g = poly_gcd(p, derivative(p));
  if (g.size() > 1) {
    // divide p by g exactly
    Poly q(p.size() - g.size() + 1, BigReal(0));
    Poly r = p;
    while (static_cast<int>(r.size()) >= static_cast<int>(g.size())) {
      const BigReal f = r.back() / g.back();
      const int shift = static_cast<int>(r.size()) - static_cast<int>(g.size());
      q[shift] = f;
      for (std::size_t i = 0; i < g.size(); ++i) r[shift + i] -= f * g[i];
      r = trim(std::move(r));
      if (r.empty()) break;
    }
    p = trim(std::move(q));
  }

  const SturmChain chain = build_sturm(p);

  // Cauchy bound: every root lies in (-M, M).
  BigReal maxc(0);
  for (std::size_t i = 0; i + 1 < p.size(); ++i)
    maxc = std::max(maxc, exact::abs(p[i] / p.back()));
  BigReal bound = maxc + 1;

  struct Interval {
    BigReal lo, hi;
    int count;
  };
  std::vector<Interval> pending;
  std::vector<Interval> isolated;
  {
    const int total = chain.variations(-bound) - chain.variations(bound);
    if (total > 0) pending.push_back({-bound, bound, total});
  }
  while (!pending.empty()) {
    Interval iv = pending.back();
    pending.pop_back();
    if (iv.count == 1) {
      isolated.push_back(iv);
      continue;
    }
    const BigReal mid = (iv.lo + iv.hi) / 2;
    const int left = chain.variations(iv.lo) - chain.variations(mid);
    const int right = iv.count - left;
    if (left > 0) pending.push_back({iv.lo, mid, left});
    if (right > 0) pending.push_back({mid, iv.hi, right});
  }

  const BigReal width_goal = exact::pow2(-precision_bits);
  std::vector<BigReal> roots;
  roots.reserve(isolated.size());
  for (auto& iv : isolated) {
    // Roots are counted in (lo, hi]; an exact hit at hi is possible.
    if (eval(p, iv.hi) == 0) {
      roots.push_back(iv.hi);
      continue;
    }
    BigReal lo = iv.lo, hi = iv.hi;
    int slo = sign_of(eval(p, lo));
    while (hi - lo > width_goal) {
      const BigReal mid = (lo + hi) / 2;
      const int sm = sign_of(eval(p, mid));
      if (sm == 0) {
        lo = hi = mid;
        break;
      }
      if (sm == slo)
        lo = mid;
      else
        hi = mid;
    }
    roots.push_back((lo + hi) / 2);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<BigReal> reference_zeros(const std::vector<BigReal>& ascending,
                                     int precision_bits) {
  const Poly p = trim(ascending);
  auto roots = sturm_real_roots(ascending, precision_bits);
  if (p.size() >= 1 && roots.size() + 1 != p.size())
    throw std::domain_error("non-real zeros unsupported");
  return roots;
}

RelError rel_error(double approx, const BigReal& exact_value) {
  RelError r;
  if (exact_value == 0) {
    r.exact_zero = true;
    r.value = std::fabs(approx);
    return r;
  }
  const BigReal err =
      exact::abs(BigReal(approx) - exact_value) / exact::abs(exact_value);
  r.value = exact::to_double(err);
  return r;
}

}  // namespace qd::oracle
