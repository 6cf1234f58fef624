#include "qd/analysis.hpp"

#include <mpfr.h>

#include <algorithm>
#include <stdexcept>

namespace qd::analysis {

namespace {

double to_double_up(const BigReal& x) {
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDU);
  const double d = mpfr_get_d(t, MPFR_RNDU);
  mpfr_clear(t);
  return d;
}

// Factor so large that any applicability gate fails; stands in for an
// infinite b/d when a computed divisor is exactly zero.
const BigReal& saturation() {
  static const BigReal s = exact::pow2(400);
  return s;
}

}  // namespace

BigReal gamma_exact(int n) {
  if (n < 0) throw std::invalid_argument("gamma needs n >= 0");
  const BigReal nu = BigReal(n) * unit_roundoff_exact();
  if (nu >= 1) throw std::invalid_argument("gamma needs n*u < 1");
  return nu / (1 - nu);
}

double gamma_up(int n) { return to_double_up(gamma_exact(n)); }

BigReal ConditionTable::max_cond_q() const {
  BigReal best(0);
  for (std::size_t m = 1; m < cond_q.size(); ++m)
    for (std::size_t n = 0; n < cond_q[m].size(); ++n)
      if (cond_q_ok[m][n] && cond_q[m][n] > best) best = cond_q[m][n];
  return best;
}

ConditionTable condition_table(const oracle::ExactQdTable& x) {
  ConditionTable c;
  c.degree = x.degree;
  const int m_max = x.rows();
  auto shape = [&](auto& p, auto& ok, bool e_side) {
    p.assign(m_max + 1, {});
    ok.assign(m_max + 1, {});
    for (int m = e_side ? 0 : 1; m <= m_max; ++m) {
      const int len = e_side ? x.e_row_size(m) : x.q_row_size(m);
      if (len > 0) {
        p[m].assign(len, BigReal(0));
        ok[m].assign(len, 0);
      }
    }
  };
  shape(c.bar_q, c.bar_q_ok, false);
  shape(c.bar_e, c.bar_e_ok, true);
  shape(c.cond_q, c.cond_q_ok, false);
  shape(c.cond_e, c.cond_e_ok, true);

  for (int n = 0; n < x.e_row_size(0); ++n) c.bar_e_ok[0][n] = 1;  // bar_e_0 = 0
  for (int n = 0; n < x.q_row_size(1); ++n) {
    if (!x.q_ok[1][n]) continue;
    c.bar_q[1][n] = exact::abs(x.q[1][n]);
    c.bar_q_ok[1][n] = 1;
    if (x.q[1][n] != 0) {
      c.cond_q[1][n] = BigReal(1);
      c.cond_q_ok[1][n] = 1;
    }
  }

  for (int m = 1; m <= m_max; ++m) {
    for (int n = 0; n < x.e_row_size(m); ++n) {
      if (!(c.bar_q_ok[m][n + 1] && c.bar_q_ok[m][n] && c.bar_e_ok[m - 1][n + 1]))
        continue;
      c.bar_e[m][n] = c.bar_q[m][n + 1] + c.bar_q[m][n] + c.bar_e[m - 1][n + 1];
      c.bar_e_ok[m][n] = 1;
      if (x.e_valid(m, n) && x.e[m][n] != 0) {
        c.cond_e[m][n] = c.bar_e[m][n] / exact::abs(x.e[m][n]);
        c.cond_e_ok[m][n] = 1;
      }
    }
    if (m + 1 > m_max) break;
    for (int n = 0; n < x.q_row_size(m + 1); ++n) {
      if (!(x.q_valid(m + 1, n) && c.bar_e_ok[m][n + 1] && c.bar_e_ok[m][n] &&
            c.bar_q_ok[m][n + 1]))
        continue;
      if (!(x.e_valid(m, n + 1) && x.e[m][n + 1] != 0) ||
          !(x.e_valid(m, n) && x.e[m][n] != 0) || x.q[m][n + 1] == 0)
        continue;
      const BigReal term = c.bar_e[m][n + 1] / exact::abs(x.e[m][n + 1]) +
                           c.bar_q[m][n + 1] / exact::abs(x.q[m][n + 1]) +
                           c.bar_e[m][n] / exact::abs(x.e[m][n]);
      c.bar_q[m + 1][n] = term * exact::abs(x.q[m + 1][n]);
      c.bar_q_ok[m + 1][n] = 1;
      if (x.q[m + 1][n] != 0) {
        c.cond_q[m + 1][n] = term;
        c.cond_q_ok[m + 1][n] = 1;
      }
    }
  }
  return c;
}

namespace {

constexpr mpfr_prec_t kGatePrec = 256;

struct MpfrVal {
  mpfr_t v;
  MpfrVal() { mpfr_init2(v, kGatePrec); }
  MpfrVal(MpfrVal&& o) noexcept {
    mpfr_init2(v, kGatePrec);
    mpfr_swap(v, o.v);
  }
  MpfrVal(const MpfrVal&) = delete;
  MpfrVal& operator=(const MpfrVal&) = delete;
  MpfrVal& operator=(MpfrVal&&) = delete;
  ~MpfrVal() { mpfr_clear(v); }
};

}  // namespace

BigReal max_cond_q_upper(const oracle::ExactQdTable& x) {
  const int m_max = x.rows();

  struct Plane {
    std::vector<std::vector<MpfrVal>> v;
    std::vector<std::vector<std::uint8_t>> ok;
  };
  Plane bar_q, bar_e;
  auto shape = [&](Plane& p, bool e_side) {
    p.v.resize(m_max + 1);
    p.ok.resize(m_max + 1);
    for (int m = e_side ? 0 : 1; m <= m_max; ++m) {
      const int len = e_side ? x.e_row_size(m) : x.q_row_size(m);
      if (len <= 0) continue;
      p.v[m].resize(len);
      p.ok[m].assign(len, 0);
    }
  };
  shape(bar_q, false);
  shape(bar_e, true);

  mpfr_t best, term, div_lo, tmp;
  mpfr_inits2(kGatePrec, best, term, div_lo, tmp, nullptr);
  mpfr_set_zero(best, 1);

  // |cell| rounded down, for denominators
  auto abs_down = [&](mpfr_t dst, const BigReal& v) {
    mpfr_set_q(dst, v.get_mpq_t(), v < 0 ? MPFR_RNDU : MPFR_RNDD);
    mpfr_abs(dst, dst, MPFR_RNDD);
  };
  // |cell| rounded up
  auto abs_up = [&](mpfr_t dst, const BigReal& v) {
    mpfr_set_q(dst, v.get_mpq_t(), v < 0 ? MPFR_RNDD : MPFR_RNDU);
    mpfr_abs(dst, dst, MPFR_RNDU);
  };

  for (int n = 0; n < x.e_row_size(0); ++n) {
    mpfr_set_zero(bar_e.v[0][n].v, 1);
    bar_e.ok[0][n] = 1;
  }
  for (int n = 0; n < x.q_row_size(1); ++n) {
    if (!x.q_ok[1][n]) continue;
    abs_up(bar_q.v[1][n].v, x.q[1][n]);
    bar_q.ok[1][n] = 1;
    if (x.q[1][n] != 0 && mpfr_cmp_ui(best, 1) < 0) mpfr_set_ui(best, 1, MPFR_RNDU);
  }

  for (int m = 1; m <= m_max; ++m) {
    for (int n = 0; n < x.e_row_size(m); ++n) {
      if (!(bar_q.ok[m][n + 1] && bar_q.ok[m][n] && bar_e.ok[m - 1][n + 1]))
        continue;
      mpfr_add(bar_e.v[m][n].v, bar_q.v[m][n + 1].v, bar_q.v[m][n].v, MPFR_RNDU);
      mpfr_add(bar_e.v[m][n].v, bar_e.v[m][n].v, bar_e.v[m - 1][n + 1].v,
               MPFR_RNDU);
      bar_e.ok[m][n] = 1;
    }
    if (m + 1 > m_max) break;
    for (int n = 0; n < x.q_row_size(m + 1); ++n) {
      if (!(x.q_valid(m + 1, n) && bar_e.ok[m][n + 1] && bar_e.ok[m][n] &&
            bar_q.ok[m][n + 1]))
        continue;
      if (!(x.e_valid(m, n + 1) && x.e[m][n + 1] != 0) ||
          !(x.e_valid(m, n) && x.e[m][n] != 0) || x.q[m][n + 1] == 0)
        continue;
      abs_down(div_lo, x.e[m][n + 1]);
      mpfr_div(term, bar_e.v[m][n + 1].v, div_lo, MPFR_RNDU);
      abs_down(div_lo, x.q[m][n + 1]);
      mpfr_div(tmp, bar_q.v[m][n + 1].v, div_lo, MPFR_RNDU);
      mpfr_add(term, term, tmp, MPFR_RNDU);
      abs_down(div_lo, x.e[m][n]);
      mpfr_div(tmp, bar_e.v[m][n].v, div_lo, MPFR_RNDU);
      mpfr_add(term, term, tmp, MPFR_RNDU);
      // term bounds cond_q_{m+1}^(n); bar_q = term * |q_{m+1}^(n)|
      if (x.q[m + 1][n] != 0 && mpfr_cmp(term, best) > 0)
        mpfr_set(best, term, MPFR_RNDU);
      abs_up(tmp, x.q[m + 1][n]);
      mpfr_mul(bar_q.v[m + 1][n].v, term, tmp, MPFR_RNDU);
      bar_q.ok[m + 1][n] = 1;
    }
  }

  BigReal out(0);
  if (mpfr_sgn(best) > 0) {
    mpq_t q;
    mpq_init(q);
    mpfr_get_q(q, best);
    out = BigReal(mpq_class(q));
    mpq_clear(q);
  }
  mpfr_clears(best, term, div_lo, tmp, nullptr);
  return out;
}

BigReal StabilityFactors::phi_max() const {
  BigReal best(0);
  for (const auto& v : Phi) best = std::max(best, v);
  return best;
}

BigReal StabilityFactors::psi_max() const {
  BigReal best(0);
  for (const auto& v : Psi) best = std::max(best, v);
  return best;
}

StabilityFactors stability_factors(const QdTable& t, const oracle::ExactQdTable& x) {
  if (t.degree != x.degree) throw std::invalid_argument("triangle mismatch");
  StabilityFactors f;
  const int m_max = t.rows();
  const bool compensated = t.algo == Algo::compqd;

  f.B.assign(m_max + 1, BigReal(1));
  if (compensated) f.D.assign(m_max + 1, BigReal(1));

  for (int m = 1; m <= m_max; ++m) {
    if (t.e_row_size(m) <= 0) break;
    for (int n = 0; n < t.e_row_size(m); ++n) {
      if (!(t.e_valid(m, n) && x.e_valid(m, n)) || x.e[m][n] == 0) continue;
      const BigReal exact_e = x.e[m][n];
      const BigReal hat_e(t.e[m][n]);
      if (hat_e == 0) {
        f.B[m] = std::max(f.B[m], saturation());
        f.saturated = true;
      } else {
        f.B[m] = std::max(f.B[m], exact::abs(exact_e / hat_e));
      }
      if (compensated) {
        const BigReal pair = hat_e - BigReal(t.eps_e[m][n]);  // e - eps_eps_e
        if (pair == 0) {
          f.D[m] = std::max(f.D[m], saturation());
          f.saturated = true;
        } else {
          f.D[m] = std::max(f.D[m], exact::abs(exact_e / pair));
        }
      }
    }
  }

  f.Phi.assign(f.B.size(), BigReal(1));
  BigReal acc(1);
  for (std::size_t m = 0; m < f.B.size(); ++m) {
    acc *= f.B[m];
    f.Phi[m] = acc;
  }
  if (compensated) {
    f.Psi.assign(f.D.size(), BigReal(1));
    acc = 1;
    for (std::size_t m = 0; m < f.D.size(); ++m) {
      acc *= f.D[m];
      f.Psi[m] = acc;
    }
  }
  return f;
}

BoundReport bound_check(const QdTable& t, const oracle::ExactQdTable& x,
                        const ConditionTable& c, const StabilityFactors& f,
                        CoeffKind kind) {
  if (t.algo == Algo::ddqd)
    throw std::invalid_argument("bound_check covers qd and compqd only");
  const bool compensated = t.algo == Algo::compqd;
  const BigReal u = unit_roundoff_exact();

  BoundReport rep;
  const BigReal factor = compensated ? f.psi_max() : f.phi_max();
  rep.factor_max = to_double_up(factor);
  rep.gate_ok = factor * u < BigReal(1, 1000);

  const int m_max = t.rows();
  auto push = [&](int m, int n, char k, const BigReal& rel, const BigReal& bound,
                  const BigReal& cond) {
    CellCheck cc;
    cc.m = m;
    cc.n = n;
    cc.kind = k;
    cc.rel_err = to_double_up(rel);
    cc.bound = to_double_up(bound);
    cc.cond = to_double_up(cond);
    cc.pass = rel <= bound;
    rep.cells.push_back(cc);
    ++rep.checked;
    if (cc.pass) ++rep.passed;
  };

  // First q column: initialization bounds, not the inner-loop corollaries.
  {
    BigReal b0;
    if (!compensated) {
      b0 = kind == CoeffKind::real ? gamma_exact(3) : gamma_exact(1);
    } else {
      const BigReal inner = kind == CoeffKind::real
                                ? gamma_exact(2) * gamma_exact(2)
                                : u * gamma_exact(1);
      b0 = u * (1 + inner) / (1 - u) + inner;
    }
    for (int n = 0; n < t.q_row_size(1); ++n) {
      if (!(t.q_valid(1, n) && x.q_valid(1, n)) || x.q[1][n] == 0) continue;
      const BigReal rel =
          exact::abs(BigReal(t.q[1][n]) - x.q[1][n]) / exact::abs(x.q[1][n]);
      push(1, n, 'q', rel, b0, BigReal(1));
    }
  }

  for (int m = 1; m <= m_max; ++m) {
    for (int n = 0; n < t.e_row_size(m); ++n) {
      if (!(t.e_valid(m, n) && x.e_valid(m, n)) || x.e[m][n] == 0 ||
          !c.cond_e_ok[m][n])
        continue;
      const BigReal rel =
          exact::abs(BigReal(t.e[m][n]) - x.e[m][n]) / exact::abs(x.e[m][n]);
      BigReal bound;
      if (!compensated) {
        bound = f.Phi[m - 1] * gamma_exact(4 * m) * c.cond_e[m][n];
      } else {
        const BigReal g = gamma_exact(11 * m - 4);
        bound = u + f.Psi[m - 1] * g * g * c.cond_e[m][n];
      }
      push(m, n, 'e', rel, bound, c.cond_e[m][n]);
    }
    if (m + 1 > m_max) break;
    for (int n = 0; n < t.q_row_size(m + 1); ++n) {
      if (!(t.q_valid(m + 1, n) && x.q_valid(m + 1, n)) || x.q[m + 1][n] == 0 ||
          !c.cond_q_ok[m + 1][n])
        continue;
      const BigReal rel = exact::abs(BigReal(t.q[m + 1][n]) - x.q[m + 1][n]) /
                          exact::abs(x.q[m + 1][n]);
      BigReal bound;
      if (!compensated) {
        bound = f.Phi[m] * gamma_exact(4 * m + 2) * c.cond_q[m + 1][n];
      } else {
        bound = u + f.Psi[m] * gamma_exact(11 * m + 2) * gamma_exact(11 * m + 3) *
                        c.cond_q[m + 1][n];
      }
      push(m + 1, n, 'q', rel, bound, c.cond_q[m + 1][n]);
    }
  }
  return rep;
}

TableErrors table_errors(const QdTable& t, const oracle::ExactQdTable& x) {
  if (t.degree != x.degree) throw std::invalid_argument("triangle mismatch");
  TableErrors e;
  const int m_max = t.rows();
  e.q_rel.assign(m_max + 1, {});
  e.e_rel.assign(m_max + 1, {});
  e.q_def.assign(m_max + 1, {});
  e.e_def.assign(m_max + 1, {});
  for (int m = 1; m <= m_max; ++m) {
    e.q_rel[m].assign(std::max(t.q_row_size(m), 0), 0.0);
    e.q_def[m].assign(std::max(t.q_row_size(m), 0), 0);
    for (int n = 0; n < t.q_row_size(m); ++n) {
      if (!(t.q_valid(m, n) && x.q_valid(m, n)) || x.q[m][n] == 0) continue;
      const auto r = oracle::rel_error(t.q[m][n], x.q[m][n]);
      e.q_rel[m][n] = r.value;
      e.q_def[m][n] = 1;
      e.max_q_rel = std::max(e.max_q_rel, r.value);
    }
  }
  for (int m = 1; m <= m_max; ++m) {
    if (t.e_row_size(m) <= 0) break;
    e.e_rel[m].assign(t.e_row_size(m), 0.0);
    e.e_def[m].assign(t.e_row_size(m), 0);
    for (int n = 0; n < t.e_row_size(m); ++n) {
      if (!(t.e_valid(m, n) && x.e_valid(m, n)) || x.e[m][n] == 0) continue;
      const auto r = oracle::rel_error(t.e[m][n], x.e[m][n]);
      e.e_rel[m][n] = r.value;
      e.e_def[m][n] = 1;
      e.max_e_rel = std::max(e.max_e_rel, r.value);
    }
  }
  return e;
}

FlopCosts flop_costs(Algo a, InitCost ic) {
  switch (a) {
    case Algo::qd:
      return {2, 2, 1};
    case Algo::compqd:
      return {19, 50, ic == InitCost::real ? 100 : 21};
    case Algo::ddqd:
      // Floating init divides a binary64 pair by a binary64 with the
      // accurate double-double-by-double division (31 flops).
      return {40, 124, ic == InitCost::real ? 100 : 31};
  }
  return {};
}

long long flop_model(Algo a, long long m, char target, InitCost ic) {
  const FlopCosts c = flop_costs(a, ic);
  if (target == 'e') return m * m * c.f_e + m * (m - 1) * c.f_q + 2 * m * c.f_input;
  if (target == 'q')
    return m * m * c.f_q + m * (m + 1) * c.f_e + (2 * m + 1) * c.f_input;
  throw std::invalid_argument("target must be 'e' or 'q'");
}

double flop_ratio_mean(Algo a, long long m0, long long step, long long m1,
                       InitCost ic) {
  if (step <= 0 || m1 < m0) throw std::invalid_argument("empty m range");
  double sum = 0.0;
  long long count = 0;
  for (long long m = m0; m <= m1; m += step) {
    const double re = double(flop_model(a, m, 'e', ic)) /
                      double(flop_model(Algo::qd, m, 'e', ic));
    const double rq = double(flop_model(a, m, 'q', ic)) /
                      double(flop_model(Algo::qd, m, 'q', ic));
    sum += 0.5 * (re + rq);
    ++count;
  }
  return sum / double(count);
}

}  // namespace qd::analysis
