#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sumstab {

using Integer = mpz_class;
using Rational = mpq_class;
using RationalPoint = std::vector<Rational>;

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline bool fits_int64(const Integer& z) {
  static const Integer lo(std::to_string(std::numeric_limits<std::int64_t>::min()));
  static const Integer hi(std::to_string(std::numeric_limits<std::int64_t>::max()));
  return z >= lo && z <= hi;
}

inline std::int64_t to_int64(const Integer& z) {
  if (!fits_int64(z)) throw std::overflow_error("integer does not fit in 64 bits: " + z.get_str());
  // mpz_get_si is defined for long; long is 64-bit on the supported platforms.
  static_assert(sizeof(long) == sizeof(std::int64_t));
  return static_cast<std::int64_t>(mpz_get_si(z.get_mpz_t()));
}

inline Integer to_integer(std::int64_t v) {
  static_assert(sizeof(long) == sizeof(std::int64_t));
  return Integer(static_cast<long>(v));
}

/// "p/q" for non-integers, "p" otherwise.
inline std::string to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw std::invalid_argument("empty rational");
  Rational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw std::invalid_argument("malformed rational '" + s + "'");
  q.canonicalize();
  return q;
}

inline Integer lcm_of_denominators(const std::vector<Rational>& values) {
  Integer l = 1;
  for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  return l;
}

inline Rational pow2(int e) {
  Rational r = 1;
  if (e >= 0) {
    mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
  }
  return r;
}

/// Outcome of evaluating an inequality between lhs and rhs exactly.
struct BoundCheck {
  Rational lhs;
  Rational rhs;
  bool holds = false;
};

inline BoundCheck check_le(Rational lhs, Rational rhs) {
  bool ok = lhs <= rhs;
  return {std::move(lhs), std::move(rhs), ok};
}

inline BoundCheck check_ge(Rational lhs, Rational rhs) {
  bool ok = lhs >= rhs;
  return {std::move(lhs), std::move(rhs), ok};
}

}  // namespace sumstab
