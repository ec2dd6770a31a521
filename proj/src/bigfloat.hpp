#pragma once

#include <mpfr.h>

#include <cmath>
#include <utility>

#include "exactsos/rational.hpp"

namespace exactsos::detail {

/// Value type over mpfr_t. New values take the calling thread's working
/// precision, so concurrent solves at different precisions do not interfere.
class BigFloat {
 public:
  static mpfr_prec_t thread_precision();
  static void set_thread_precision(mpfr_prec_t bits);

  BigFloat() { mpfr_init2(v_, thread_precision()); mpfr_set_zero(v_, 1); }
  BigFloat(double d) { mpfr_init2(v_, thread_precision()); mpfr_set_d(v_, d, MPFR_RNDN); }
  BigFloat(int i) { mpfr_init2(v_, thread_precision()); mpfr_set_si(v_, i, MPFR_RNDN); }
  explicit BigFloat(const Rational& q) {
    mpfr_init2(v_, thread_precision());
    mpfr_set_q(v_, q.get_mpq_t(), MPFR_RNDN);
  }
  BigFloat(const BigFloat& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
  BigFloat(BigFloat&& o) noexcept {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_swap(v_, o.v_);
  }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  BigFloat& operator+=(const BigFloat& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator-=(const BigFloat& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator*=(const BigFloat& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  BigFloat& operator/=(const BigFloat& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

  friend BigFloat operator+(BigFloat a, const BigFloat& b) { return a += b; }
  friend BigFloat operator-(BigFloat a, const BigFloat& b) { return a -= b; }
  friend BigFloat operator*(BigFloat a, const BigFloat& b) { return a *= b; }
  friend BigFloat operator/(BigFloat a, const BigFloat& b) { return a /= b; }
  friend BigFloat operator-(BigFloat a) { mpfr_neg(a.v_, a.v_, MPFR_RNDN); return a; }

  friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.v_, b.v_); }
  friend bool operator>(const BigFloat& a, const BigFloat& b) { return mpfr_greater_p(a.v_, b.v_); }
  friend bool operator<=(const BigFloat& a, const BigFloat& b) { return mpfr_lessequal_p(a.v_, b.v_); }
  friend bool operator>=(const BigFloat& a, const BigFloat& b) { return mpfr_greaterequal_p(a.v_, b.v_); }
  friend bool operator==(const BigFloat& a, const BigFloat& b) { return mpfr_equal_p(a.v_, b.v_); }

  friend BigFloat sqrt(BigFloat a) { mpfr_sqrt(a.v_, a.v_, MPFR_RNDN); return a; }
  friend BigFloat abs(BigFloat a) { mpfr_abs(a.v_, a.v_, MPFR_RNDN); return a; }

  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  bool is_finite() const { return mpfr_number_p(v_) != 0; }

  /// Nearest multiple of 2^-bits as an exact rational.
  Rational round_dyadic(long bits) const;

  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

/// Sets the thread's working precision for the lifetime of the guard.
class ScopedPrecision {
 public:
  explicit ScopedPrecision(mpfr_prec_t bits) : saved_(BigFloat::thread_precision()) {
    BigFloat::set_thread_precision(bits);
  }
  ~ScopedPrecision() { BigFloat::set_thread_precision(saved_); }
  ScopedPrecision(const ScopedPrecision&) = delete;
  ScopedPrecision& operator=(const ScopedPrecision&) = delete;

 private:
  mpfr_prec_t saved_;
};

// Uniform scalar helpers so templated code works for double and BigFloat.
inline double to_double(double d) { return d; }
inline double abs_of(double d) { return std::fabs(d); }
inline BigFloat abs_of(const BigFloat& b) { return abs(b); }
inline double to_double(const BigFloat& b) { return b.to_double(); }

template <class T>
T from_rational(const Rational& q);
template <>
inline double from_rational<double>(const Rational& q) { return q.get_d(); }
template <>
inline BigFloat from_rational<BigFloat>(const Rational& q) { return BigFloat(q); }

Rational to_rational_dyadic(double d, long bits);
inline Rational to_rational_dyadic(const BigFloat& b, long bits) { return b.round_dyadic(bits); }

}  // namespace exactsos::detail
