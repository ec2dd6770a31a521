#include "exactsos/rational.hpp"

#include <cctype>

namespace exactsos {

std::size_t bit_length(const Integer& z) {
  return mpz_sizeinbase(z.get_mpz_t(), 2);
}

std::size_t bit_length(const Rational& q) {
  return std::max(bit_length(Integer(q.get_num())), bit_length(Integer(q.get_den())));
}

long floor_log2(const Rational& q) {
  if (q == 0) throw Error("floor_log2 of zero");
  Integer num = abs(q.get_num());
  const Integer& den = q.get_den();
  long e = static_cast<long>(bit_length(num)) - static_cast<long>(bit_length(den));
  // 2^e <= |q| < 2^(e+1) fails only by one step downwards.
  Integer lhs = num;
  Integer rhs = den;
  if (e >= 0)
    rhs <<= static_cast<mp_bitcnt_t>(e);
  else
    lhs <<= static_cast<mp_bitcnt_t>(-e);
  if (lhs < rhs) --e;
  return e;
}

Rational pow2(long e) {
  Rational r(1);
  if (e >= 0)
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(e));
  else
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), static_cast<mp_bitcnt_t>(-e));
  return r;
}

namespace {

// round(q * 2^k) / 2^k with ties rounded up.
Rational round_scaled(const Rational& q, long k) {
  Rational scaled = q * pow2(k) + Rational(1, 2);
  Integer m;
  mpz_fdiv_q(m.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational r(m);
  r *= pow2(-k);
  r.canonicalize();
  return r;
}

}  // namespace

Rational round_dyadic(const Rational& q, long bits) { return round_scaled(q, bits); }

Rational round_significant(const Rational& q, long bits) {
  if (q == 0) return Rational(0);
  return round_scaled(q, bits - 1 - floor_log2(q));
}

Rational sqrt_significant(const Rational& q, long bits) {
  if (q < 0) throw Error("sqrt of a negative rational");
  if (q == 0) return Rational(0);
  long e = floor_log2(q);
  long half = e >= 0 ? e / 2 : -((-e + 1) / 2);
  long k = bits - 1 - half;
  // y = sqrt(q * 4^k); pick the nearest integer to y exactly.
  Rational z = q * pow2(2 * k);
  Integer fl;
  mpz_fdiv_q(fl.get_mpz_t(), z.get_num_mpz_t(), z.get_den_mpz_t());
  Integer m;
  mpz_sqrt(m.get_mpz_t(), fl.get_mpz_t());
  Rational mid = Rational(m) + Rational(1, 2);
  if (z >= mid * mid) m += 1;
  Rational r(m);
  r *= pow2(-k);
  r.canonicalize();
  return r;
}

std::string to_fraction_string(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

std::string to_short_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return to_fraction_string(q);
}

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_fraction_strict(std::string_view text, bool allow_integer) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!allow_integer) throw Error("expected \"num/den\", got \"" + std::string(text) + "\"");
    if (!is_integer_literal(text, true)) throw Error("malformed integer \"" + std::string(text) + "\"");
    std::string s(text);
    if (s[0] == '+') s.erase(0, 1);
    return Rational(Integer(s));
  }
  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  if (!is_integer_literal(num, true) || !is_integer_literal(den, false))
    throw Error("malformed rational \"" + std::string(text) + "\"");
  std::string ns(num);
  if (ns[0] == '+') ns.erase(0, 1);
  Integer n(ns);
  Integer d{std::string(den)};
  if (d == 0) throw Error("zero denominator in \"" + std::string(text) + "\"");
  Integer g;
  mpz_gcd(g.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  if (g != 1 && !(n == 0 && d == 1))
    throw Error("rational not in lowest terms: \"" + std::string(text) + "\"");
  Rational q(n, d);
  return q;
}

}  // namespace exactsos
