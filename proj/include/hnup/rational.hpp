#pragma once

// Exact rational arithmetic and the extended-precision log layer.
//
// Rationals are GMP mpq_class values kept in canonical form. Logs are taken at
// 128-bit MPFR precision and then rounded to long double; callers accumulate
// them with NeumaierSum.

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "hnup/errors.hpp"

namespace hnup {

using Rational = mpq_class;
using Integer = mpz_class;

inline constexpr mpfr_prec_t kLogPrecisionBits = 128;

/// Bits needed to store numerator and denominator.
inline std::size_t bit_size(const Rational& q) {
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

/// "p/q" always, including integers ("3/1") and zero ("0/1").
inline std::string to_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

/// Accepts "p/q" or "p" with an optional leading '-'. No whitespace or decimals.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && body.front() == '-') {
    negative = true;
    body.remove_prefix(1);
  }
  const auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!digits(num) || !digits(den)) throw PreconditionError("malformed rational '" + std::string(text) + "'");
  Integer d(std::string(den), 10);
  if (d == 0) throw PreconditionError("zero denominator in '" + std::string(text) + "'");
  Rational q(Integer(std::string(num), 10), d);
  q.canonicalize();
  return negative ? Rational(-q) : q;
}

inline Rational pow(const Rational& base, unsigned long exponent) {
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), exponent);
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational pow2(long exponent) {
  Rational r(1);
  if (exponent >= 0)
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(exponent));
  else
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-exponent));
  return r;
}

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

namespace detail {

class MpfrScratch {
 public:
  MpfrScratch() { mpfr_init2(value_, kLogPrecisionBits); }
  ~MpfrScratch() { mpfr_clear(value_); }
  MpfrScratch(const MpfrScratch&) = delete;
  MpfrScratch& operator=(const MpfrScratch&) = delete;
  mpfr_ptr get() { return value_; }

 private:
  mpfr_t value_;
};

}  // namespace detail

/// Natural log of a positive rational, evaluated at 128 bits.
inline long double log_of(const Rational& q) {
  if (sgn(q) <= 0) throw PreconditionError("log of non-positive rational " + to_string(q));
  detail::MpfrScratch x;
  mpfr_set_q(x.get(), q.get_mpq_t(), MPFR_RNDN);
  mpfr_log(x.get(), x.get(), MPFR_RNDN);
  return mpfr_get_ld(x.get(), MPFR_RNDN);
}

inline long double log_of(const Integer& z) {
  if (sgn(z) <= 0) throw PreconditionError("log of non-positive integer");
  detail::MpfrScratch x;
  mpfr_set_z(x.get(), z.get_mpz_t(), MPFR_RNDN);
  mpfr_log(x.get(), x.get(), MPFR_RNDN);
  return mpfr_get_ld(x.get(), MPFR_RNDN);
}

inline long double to_long_double(const Rational& q) {
  detail::MpfrScratch x;
  mpfr_set_q(x.get(), q.get_mpq_t(), MPFR_RNDN);
  return mpfr_get_ld(x.get(), MPFR_RNDN);
}

inline long double ln2() { return log_of(Rational(2)); }

/// Neumaier-compensated summation in long double.
class NeumaierSum {
 public:
  void add(long double x) {
    const long double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
      compensation_ += (sum_ - t) + x;
    else
      compensation_ += (x - t) + sum_;
    sum_ = t;
  }
  NeumaierSum& operator+=(long double x) {
    add(x);
    return *this;
  }
  long double value() const { return sum_ + compensation_; }

 private:
  long double sum_ = 0.0L;
  long double compensation_ = 0.0L;
};

struct Point2 {
  Rational x;
  Rational y;

  friend bool operator==(const Point2&, const Point2&) = default;
  friend Point2 operator+(const Point2& p, const Point2& q) { return {p.x + q.x, p.y + q.y}; }
  friend Point2 operator-(const Point2& p, const Point2& q) { return {p.x - q.x, p.y - q.y}; }
};

inline Rational norm_sq(const Point2& p) { return p.x * p.x + p.y * p.y; }
inline Rational dist_sq(const Point2& p, const Point2& q) { return norm_sq(p - q); }

/// Lexicographic order on (x, y).
inline bool lex_less(const Point2& p, const Point2& q) { return p.x < q.x || (p.x == q.x && p.y < q.y); }

}  // namespace hnup
