#pragma once

// Thin helpers around GMP's exact integer/rational types.  All pass/fail
// comparisons involving rational exponents of integers go through exact
// integer cross-powers; doubles appear only in report columns.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <string>

#include "ffdyn/errors.hpp"

namespace ffdyn {

using BigInt = mpz_class;
using BigRat = mpq_class;

inline BigInt to_big(std::uint64_t v) {
  return BigInt(static_cast<unsigned long>(v));
}

inline BigInt big_pow(const BigInt& base, unsigned long e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

inline BigInt big_pow(std::uint64_t base, unsigned long e) {
  return big_pow(to_big(base), e);
}

/// Exact test of  value <= base^(num/den) / divisor  for nonnegative
/// integers, with num/den in [0,1] and den >= 1.  Cross-multiplied:
/// (divisor*value)^den <= base^num.
inline bool leq_rational_power(std::uint64_t value, std::uint64_t base,
                               const BigRat& exponent, std::uint64_t divisor,
                               std::uint64_t max_exact_den) {
  BigRat e = exponent;
  e.canonicalize();
  if (e.get_den() > to_big(max_exact_den))
    throw CapError("exact power comparison: exponent denominator beyond cap");
  require(e.get_num() >= 0, "exponent must be nonnegative");
  unsigned long den = e.get_den().get_ui();
  unsigned long num = e.get_num().get_ui();
  BigInt lhs = big_pow(to_big(value) * to_big(divisor), den);
  BigInt rhs = big_pow(base, num);
  return lhs <= rhs;
}

/// Natural log of an exact rational, stable for huge numerators/denominators.
inline double log_rational(const BigRat& q) {
  require(sgn(q) > 0, "log of a nonpositive rational");
  signed long ne = 0, de = 0;
  double nm = mpz_get_d_2exp(&ne, q.get_num().get_mpz_t());
  double dm = mpz_get_d_2exp(&de, q.get_den().get_mpz_t());
  constexpr double ln2 = 0.6931471805599453;
  return (std::log(nm) + ne * ln2) - (std::log(dm) + de * ln2);
}

/// "num/den" in lowest terms; the form used in report columns.
inline std::string rat_str(const BigRat& q) {
  BigRat c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

}  // namespace ffdyn
