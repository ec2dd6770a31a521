#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "exactsos/rational.hpp"

namespace exactsos {

/// Multi-index alpha in N^n; the exponent of the monomial X^alpha.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::size_t n) : e_(n, 0) {}
  ExponentVector(std::initializer_list<std::uint32_t> e) : e_(e) {}
  explicit ExponentVector(std::vector<std::uint32_t> e) : e_(std::move(e)) {}

  std::size_t size() const { return e_.size(); }
  std::uint32_t operator[](std::size_t i) const { return e_[i]; }
  std::uint32_t& operator[](std::size_t i) { return e_[i]; }
  const std::vector<std::uint32_t>& values() const { return e_; }

  /// |alpha|
  std::uint64_t degree() const;
  bool is_zero() const;
  /// alpha in (2N)^n
  bool is_even() const;
  /// alpha / 2, requires is_even()
  ExponentVector half() const;
  ExponentVector doubled() const;

  /// Componentwise a - b, or false when some component would go negative.
  static bool try_subtract(const ExponentVector& a, const ExponentVector& b, ExponentVector& out);

  friend ExponentVector operator+(const ExponentVector& a, const ExponentVector& b);
  friend bool operator==(const ExponentVector&, const ExponentVector&) = default;

 private:
  std::vector<std::uint32_t> e_;
};

/// Graded lexicographic order as used for iteration and printing: higher total
/// degree first, ties broken lexicographically with x1 > x2 > ... > xn.
/// "Smaller" in this order means "printed earlier".
struct GrlexOrder {
  bool operator()(const ExponentVector& a, const ExponentVector& b) const;
};

/// All alpha in N^n with |alpha| <= k, in grlex order.
std::vector<ExponentVector> exponents_up_to_degree(std::size_t n, std::uint32_t k);

/// Sparse multivariate polynomial over Q in n variables. No zero coefficient
/// is ever stored.
class Polynomial {
 public:
  using TermMap = std::map<ExponentVector, Rational, GrlexOrder>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : n_(nvars) {}

  static Polynomial constant(std::size_t nvars, const Rational& c);
  static Polynomial monomial(const ExponentVector& alpha, const Rational& c = Rational(1));
  /// x_{index+1}
  static Polynomial variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return n_; }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; 0 for the zero polynomial.
  std::uint64_t degree() const;
  bool is_homogeneous() const;
  Rational coefficient(const ExponentVector& alpha) const;
  std::vector<ExponentVector> support() const;

  /// Adds c * X^alpha in place.
  void add_term(const ExponentVector& alpha, const Rational& c);

  Polynomial& operator+=(const Polynomial& q);
  Polynomial& operator-=(const Polynomial& q);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial p, const Polynomial& q) { return p += q; }
  friend Polynomial operator-(Polynomial p, const Polynomial& q) { return p -= q; }
  friend Polynomial operator-(Polynomial p) { return p *= Rational(-1); }
  friend Polynomial operator*(const Polynomial& p, const Polynomial& q);
  friend Polynomial operator*(Polynomial p, const Rational& c) { return p *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial p) { return p *= c; }
  friend bool operator==(const Polynomial& p, const Polynomial& q) {
    return p.n_ == q.n_ && p.terms_ == q.terms_;
  }

  Polynomial pow(unsigned e) const;
  Rational evaluate(std::span<const Rational> point) const;

 private:
  void check_same_ring(const Polynomial& q) const;

  std::size_t n_ = 0;
  TermMap terms_;
};

Polynomial scale(const Polynomial& p, const Rational& c);

/// sum_i weights[i] * polys[i]^2 computed exactly.
Polynomial weighted_square_sum(std::span<const Rational> weights, std::span<const Polynomial> polys,
                               std::size_t nvars);

/// Bit size of a polynomial: the largest bit length among the reduced
/// numerators and denominators of its coefficients, 1 for the zero polynomial.
struct BitSize {
  std::size_t value = 1;
  friend auto operator<=>(const BitSize&, const BitSize&) = default;
};
BitSize bitsize(const Polynomial& p);

/// G_n = x1^2 + ... + xn^2
Polynomial sum_of_squared_variables(std::size_t nvars);

/// sum_{alpha in basis} X^(2 alpha)
Polynomial sum_of_even_monomials(std::span<const ExponentVector> basis, std::size_t nvars);

/// Syntax errors carry the byte offset in the source text.
class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

/// Parses expressions over x1..xn with integer literals, + - * / ^ and
/// parentheses. Division is only allowed by nonzero constants and exponents
/// must be nonnegative integer literals.
Polynomial parse_polynomial(std::string_view text, std::size_t nvars);

/// Canonical text form: grlex order, explicit * and ^, rationals as num/den.
std::string to_string(const Polynomial& p);
std::string to_string(const ExponentVector& alpha);

}  // namespace exactsos
