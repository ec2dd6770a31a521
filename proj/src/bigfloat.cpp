#include "bigfloat.hpp"

namespace exactsos::detail {

namespace {
thread_local mpfr_prec_t working_precision = 256;
}

mpfr_prec_t BigFloat::thread_precision() { return working_precision; }

void BigFloat::set_thread_precision(mpfr_prec_t bits) {
  if (bits < MPFR_PREC_MIN) bits = MPFR_PREC_MIN;
  working_precision = bits;
}

Rational BigFloat::round_dyadic(long bits) const {
  if (!is_finite()) throw Error("cannot round a non-finite value");
  mpfr_t scaled;
  mpfr_init2(scaled, mpfr_get_prec(v_));
  mpfr_mul_2si(scaled, v_, bits, MPFR_RNDN);
  Integer m;
  mpfr_get_z(m.get_mpz_t(), scaled, MPFR_RNDN);
  mpfr_clear(scaled);
  Rational r(m);
  r *= pow2(-bits);
  r.canonicalize();
  return r;
}

Rational to_rational_dyadic(double d, long bits) {
  return round_dyadic(Rational(d), bits);
}

}  // namespace exactsos::detail
