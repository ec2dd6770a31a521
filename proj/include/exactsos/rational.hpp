#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace exactsos {

using Rational = mpq_class;
using Integer = mpz_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Operands that live in different polynomial rings or have mismatched shapes.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Number of bits of |z|; 1 for zero.
std::size_t bit_length(const Integer& z);

/// max(bit_length(num), bit_length(den)) of a reduced rational.
std::size_t bit_length(const Rational& q);

/// floor(log2 |q|) for q != 0.
long floor_log2(const Rational& q);

/// 2^e as a rational, e may be negative.
Rational pow2(long e);

/// Nearest multiple of 2^-bits (ties round up).
Rational round_dyadic(const Rational& q, long bits);

/// Nearest dyadic with `bits` significant bits, i.e. floating-point rounding
/// with unit roundoff 2^-bits. Zero stays zero.
Rational round_significant(const Rational& q, long bits);

/// sqrt(q) rounded to the nearest dyadic with `bits` significant bits; q >= 0.
Rational sqrt_significant(const Rational& q, long bits);

/// "num/den" with den > 0, always including the denominator.
std::string to_fraction_string(const Rational& q);

/// "num" for integers, "num/den" otherwise.
std::string to_short_string(const Rational& q);

/// Parses "num/den" (or a plain integer when allow_integer) and rejects
/// non-reduced values, zero or negative denominators and stray characters.
Rational parse_fraction_strict(std::string_view text, bool allow_integer = false);

}  // namespace exactsos
