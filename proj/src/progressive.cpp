#include "qd/progressive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qd/dd.hpp"
#include "qd/eft.hpp"

namespace qd {

namespace {

struct SweepArrays {
  // Row-indexed state on the newest anti-diagonal. e[0] and e[k] stay
  // pinned to zero; q rows run 1..k.
  std::vector<double> q, e;
  std::vector<double> eq, ee;  // compensated residuals
};

ProgressiveResult finish(const SweepArrays& s, int k, ProgStatus st, int sweeps,
                         double max_e, std::string msg) {
  ProgressiveResult r;
  r.status = st;
  r.sweeps = sweeps;
  r.final_max_e = max_e;
  r.message = std::move(msg);
  r.zeros_row_order.assign(s.q.begin() + 1, s.q.begin() + 1 + k);
  r.zeros = r.zeros_row_order;
  std::sort(r.zeros.begin(), r.zeros.end());
  return r;
}

}  // namespace

ProgressiveResult proqd(const PolyInput& poly, double tol, int max_sweeps) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const int k = poly.degree();
  if (max_sweeps <= 0) max_sweeps = 10 * k;
  SweepArrays s;
  s.q.assign(k + 2, 0.0);
  s.e.assign(k + 1, 0.0);
  s.q[1] = -(poly.b[1].hi / poly.b[0].hi);
  for (int m = 1; m < k; ++m) s.e[m] = poly.b[m + 1].hi / poly.b[m].hi;
  if (!std::isfinite(s.q[1]))
    return finish(s, k, ProgStatus::breakdown, 0, 0.0, "progressive breakdown");
  for (int m = 1; m < k; ++m)
    if (!std::isfinite(s.e[m]))
      return finish(s, k, ProgStatus::breakdown, 0, 0.0, "progressive breakdown");

  std::vector<double> qn(k + 2, 0.0), en(k + 1, 0.0);
  double max_e = 0.0;
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    for (int m = 1; m <= k; ++m) qn[m] = (s.e[m] - s.e[m - 1]) + s.q[m];
    max_e = 0.0;
    for (int m = 1; m < k; ++m) {
      if (qn[m] == 0.0 || !std::isfinite(qn[m]))
        return finish(s, k, ProgStatus::breakdown, sweep - 1, max_e,
                      "progressive breakdown");
      en[m] = (qn[m + 1] / qn[m]) * s.e[m];
      max_e = std::max(max_e, std::fabs(en[m]));
    }
    s.q.swap(qn);
    s.e.swap(en);
    assert(s.e[0] == 0.0 && s.e[k] == 0.0 && "e boundary must stay zero");
    if (max_e <= tol)
      return finish(s, k, ProgStatus::converged, sweep, max_e, "");
  }
  return finish(s, k, ProgStatus::sweeps_exhausted, max_sweeps, max_e,
                "not converged");
}

ProgressiveResult comp_proqd(const PolyInput& poly, double tol, int max_sweeps) {
  if (!(tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const int k = poly.degree();
  if (max_sweeps <= 0) max_sweeps = 10 * k;
  SweepArrays s;
  s.q.assign(k + 2, 0.0);
  s.eq.assign(k + 2, 0.0);
  s.e.assign(k + 1, 0.0);
  s.ee.assign(k + 1, 0.0);
  for (int m = 0; m < k; ++m)
    if (poly.b[m].hi == 0.0)
      return finish(s, k, ProgStatus::breakdown, 0, 0.0, "progressive breakdown");
  {
    const DD q1 = dd_div_dd({-poly.b[1].hi, -poly.b[1].lo},
                            {poly.b[0].hi, poly.b[0].lo});
    s.q[1] = q1.hi;
    s.eq[1] = -q1.lo;
  }
  for (int m = 1; m < k; ++m) {
    const DD em = dd_div_dd({poly.b[m + 1].hi, poly.b[m + 1].lo},
                            {poly.b[m].hi, poly.b[m].lo});
    s.e[m] = em.hi;
    s.ee[m] = -em.lo;
  }

  if (!std::isfinite(s.q[1]))
    return finish(s, k, ProgStatus::breakdown, 0, 0.0, "progressive breakdown");
  for (int m = 1; m < k; ++m)
    if (!std::isfinite(s.e[m]))
      return finish(s, k, ProgStatus::breakdown, 0, 0.0, "progressive breakdown");

  std::vector<double> qn(k + 2, 0.0), eqn(k + 2, 0.0);
  std::vector<double> en(k + 1, 0.0), een(k + 1, 0.0);
  double max_e = 0.0;
  for (int sweep = 1; sweep <= max_sweeps; ++sweep) {
    for (int m = 1; m <= k; ++m) {
      const TwoTerm t = eft::two_sum(s.e[m], -s.e[m - 1]);
      const TwoTerm qv = eft::two_sum(t.hi, s.q[m]);
      flops::add(4);
      const double eps = (((s.ee[m] - s.ee[m - 1]) + s.eq[m]) - t.lo) - qv.lo;
      const TwoTerm refreshed = eft::fast_two_sum_unchecked(qv.hi, -eps);
      qn[m] = refreshed.hi;
      eqn[m] = -refreshed.lo;
    }
    max_e = 0.0;
    for (int m = 1; m < k; ++m) {
      if (qn[m] == 0.0 || !std::isfinite(qn[m]))
        return finish(s, k, ProgStatus::breakdown, sweep - 1, max_e,
                      "progressive breakdown");
      const QuotRem d = eft::div_rem(qn[m + 1], qn[m]);
      const TwoTerm ev = eft::two_prod(d.q, s.e[m]);
      flops::add(10);
      const double eps = ((((s.ee[m] * qn[m + 1] + eqn[m + 1] * s.e[m]) -
                            eqn[m] * ev.hi) -
                           d.r * s.e[m]) -
                          ev.lo * qn[m]) /
                         qn[m];
      const TwoTerm refreshed = eft::fast_two_sum_unchecked(ev.hi, -eps);
      en[m] = refreshed.hi;
      een[m] = -refreshed.lo;
      max_e = std::max(max_e, std::fabs(en[m]));
    }
    s.q.swap(qn);
    s.eq.swap(eqn);
    s.e.swap(en);
    s.ee.swap(een);
    assert(s.e[0] == 0.0 && s.e[k] == 0.0 && "e boundary must stay zero");
    if (max_e <= tol)
      return finish(s, k, ProgStatus::converged, sweep, max_e, "");
  }
  return finish(s, k, ProgStatus::sweeps_exhausted, max_sweeps, max_e,
                "not converged");
}

}  // namespace qd
