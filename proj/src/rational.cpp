#include "walshfejer/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <mpfr.h>

namespace walshfejer {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r' || s.back() == '\t')) s.pop_back();
  std::size_t start = s.find_first_not_of(" \t");
  if (start == std::string::npos) throw std::invalid_argument("empty rational");
  s = s.substr(start);
  if (s.front() == '+') s.erase(0, 1);
  Rational q;
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      auto dot = s.find('.');
      if (dot == std::string::npos) {
        q = Rational(Integer(s, 10));
      } else {
        // Decimal literal: exact conversion of the written digits.
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        if (digits.empty() || digits == "-") throw std::invalid_argument(s);
        Integer num(digits, 10);
        Integer den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
        q = Rational(num, den);
      }
    } else {
      Integer num(s.substr(0, slash), 10);
      Integer den(s.substr(slash + 1), 10);
      if (den == 0) throw std::invalid_argument("zero denominator in '" + s + "'");
      q = Rational(num, den);
    }
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
  }
  q.canonicalize();
  return q;
}

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Real to_real(const Rational& q) {
  mpfr_t tmp;
  mpfr_init2(tmp, 128);
  mpfr_set_q(tmp, q.get_mpq_t(), MPFR_RNDN);
  Real out = mpfr_get_ld(tmp, MPFR_RNDN);
  mpfr_clear(tmp);
  return out;
}

Rational pow2(std::int64_t exponent) {
  Integer p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(exponent < 0 ? -exponent : exponent));
  return exponent < 0 ? Rational(Integer(1), p) : Rational(p);
}

namespace {

std::optional<Integer> exact_int_root(const Integer& x, unsigned long k) {
  Integer r;
  if (mpz_root(r.get_mpz_t(), x.get_mpz_t(), k) == 0) return std::nullopt;
  return r;
}

}  // namespace

std::optional<Rational> exact_root(const Rational& x, unsigned long k) {
  if (k == 0) throw std::invalid_argument("root of order 0");
  if (sgn(x) < 0) throw std::invalid_argument("root of a negative number");
  if (k == 1) return x;
  auto num = exact_int_root(x.get_num(), k);
  if (!num) return std::nullopt;
  auto den = exact_int_root(x.get_den(), k);
  if (!den) return std::nullopt;
  return Rational(*num, *den);
}

std::optional<Rational> exact_pow(const Rational& x, const Rational& q) {
  if (sgn(x) < 0) throw std::invalid_argument("power of a negative number");
  if (sgn(q) == 0) return Rational(1);
  if (sgn(x) == 0) {
    if (sgn(q) < 0) return std::nullopt;
    return Rational(0);
  }
  if (!q.get_den().fits_ulong_p()) return std::nullopt;
  auto root = exact_root(x, q.get_den().get_ui());
  if (!root) return std::nullopt;
  Integer a = abs(q.get_num());
  if (!a.fits_ulong_p()) return std::nullopt;
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), root->get_num_mpz_t(), a.get_ui());
  mpz_pow_ui(den.get_mpz_t(), root->get_den_mpz_t(), a.get_ui());
  Rational out = sgn(q) > 0 ? Rational(num, den) : Rational(den, num);
  out.canonicalize();
  return out;
}

Real real_pow(const Rational& x, const Rational& q) {
  if (sgn(x) == 0) return sgn(q) > 0 ? 0.0L : (sgn(q) == 0 ? 1.0L : HUGE_VALL);
  return std::pow(to_real(x), to_real(q));
}

bool approx_equal(Real a, Real b, Real rel) {
  Real scale = std::max(std::fabs(a), std::fabs(b));
  return std::fabs(a - b) <= rel * scale;
}

std::int64_t floor_to_int(const Rational& q) {
  Integer f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  if (!f.fits_slong_p()) throw std::overflow_error("floor does not fit in 64 bits");
  return f.get_si();
}

}  // namespace walshfejer
