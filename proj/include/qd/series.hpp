#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace qd {

// One power-series or polynomial coefficient split as hi + lo with
// |lo| <= u * |hi|. Coefficients born in binary64 carry lo = 0.
struct Coeff {
  double hi = 0.0;
  double lo = 0.0;
};

// Power series coefficients c0..cN (degree N).
struct SeriesInput {
  std::vector<Coeff> c;

  int degree() const { return static_cast<int>(c.size()) - 1; }
};

// Polynomial coefficients b0..bk ordered from the leading power down to
// the constant term (b0 is the leading coefficient), as the progressive
// scheme consumes them.
struct PolyInput {
  std::vector<Coeff> b;

  int degree() const { return static_cast<int>(b.size()) - 1; }
};

inline SeriesInput make_series(const std::vector<double>& values) {
  SeriesInput s;
  s.c.reserve(values.size());
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite series coefficient");
    s.c.push_back({v, 0.0});
  }
  if (s.c.empty() || s.c.front().hi == 0.0)
    throw std::invalid_argument("series requires a nonzero leading coefficient");
  return s;
}

inline PolyInput make_poly(const std::vector<double>& leading_first) {
  PolyInput p;
  p.b.reserve(leading_first.size());
  for (double v : leading_first) {
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite polynomial coefficient");
    p.b.push_back({v, 0.0});
  }
  if (p.b.size() < 2 || p.b.front().hi == 0.0 || p.b.back().hi == 0.0)
    throw std::invalid_argument("polynomial requires nonzero leading and constant terms");
  return p;
}

}  // namespace qd
