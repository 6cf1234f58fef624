#include "qd/bigreal.hpp"

#include <mpfr.h>

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace qd::exact {

BigReal pow2(long e) {
  mpz_class n = 1;
  if (e >= 0) {
    mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(e));
    return BigReal(n);
  }
  mpz_mul_2exp(n.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(-e));
  BigReal r(1, n);
  r.canonicalize();
  return r;
}

double to_double(const BigReal& x) {
  mpfr_t t;
  mpfr_init2(t, 53);
  mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDN);
  const double d = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return d;
}

double to_double_via_bits(const BigReal& x, int bits) {
  mpfr_t t;
  mpfr_init2(t, bits);
  mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDN);
  const double d = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return d;
}

namespace {

bool parse_decimal(const std::string& s, BigReal& out) {
  // [+-] digits [. digits] [eE [+-] digits]
  std::size_t i = 0;
  bool neg = false;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) neg = (s[i++] == '-');
  std::string digits;
  long frac_len = 0, expo = 0;
  bool any = false;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
    digits += s[i++];
    any = true;
  }
  if (i < s.size() && s[i] == '.') {
    ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits += s[i++];
      ++frac_len;
      any = true;
    }
  }
  if (!any) return false;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) eneg = (s[i++] == '-');
    if (i == s.size()) return false;
    long ev = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      ev = ev * 10 + (s[i++] - '0');
      if (ev > 100000) return false;
    }
    expo = eneg ? -ev : ev;
  }
  if (i != s.size()) return false;
  mpz_class num(digits.empty() ? "0" : digits, 10);
  BigReal r(num);
  long p10 = expo - frac_len;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(p10 < 0 ? -p10 : p10));
  if (p10 >= 0)
    r *= BigReal(scale);
  else
    r /= BigReal(scale);
  if (neg) r = -r;
  out = r;
  return true;
}

}  // namespace

bool parse(const std::string& text, BigReal& out) {
  if (text.empty()) return false;
  const auto slash = text.find('/');
  if (slash != std::string::npos) {
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    try {
      mpz_class n(num, 10), d(den, 10);
      if (d == 0) return false;
      out = BigReal(n, d);
      out.canonicalize();
      return true;
    } catch (const std::invalid_argument&) {
      return false;
    }
  }
  if (text.find('x') != std::string::npos || text.find('X') != std::string::npos) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == nullptr || *end != '\0') return false;
    out = BigReal(v);
    return true;
  }
  return parse_decimal(text, out);
}

std::string to_decimal_string(const BigReal& x, int digits) {
  mpfr_t t;
  mpfr_init2(t, 256);
  mpfr_set_q(t, x.get_mpq_t(), MPFR_RNDN);
  char buf[512];
  mpfr_snprintf(buf, sizeof(buf), "%.*Rg", digits, t);
  mpfr_clear(t);
  return buf;
}

}  // namespace qd::exact
