#include "exactsos/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace exactsos {

// ---------------------------------------------------------------------------
// ExponentVector

std::uint64_t ExponentVector::degree() const {
  return std::accumulate(e_.begin(), e_.end(), std::uint64_t{0});
}

bool ExponentVector::is_zero() const {
  return std::all_of(e_.begin(), e_.end(), [](std::uint32_t v) { return v == 0; });
}

bool ExponentVector::is_even() const {
  return std::all_of(e_.begin(), e_.end(), [](std::uint32_t v) { return v % 2 == 0; });
}

ExponentVector ExponentVector::half() const {
  ExponentVector h(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) h.e_[i] = e_[i] / 2;
  return h;
}

ExponentVector ExponentVector::doubled() const {
  ExponentVector d(e_.size());
  for (std::size_t i = 0; i < e_.size(); ++i) d.e_[i] = 2 * e_[i];
  return d;
}

bool ExponentVector::try_subtract(const ExponentVector& a, const ExponentVector& b,
                                  ExponentVector& out) {
  if (a.size() != b.size()) throw DimensionError("exponent length mismatch");
  out = ExponentVector(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < b[i]) return false;
    out[i] = a[i] - b[i];
  }
  return true;
}

ExponentVector operator+(const ExponentVector& a, const ExponentVector& b) {
  if (a.size() != b.size()) throw DimensionError("exponent length mismatch");
  ExponentVector s(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) s[i] = a[i] + b[i];
  return s;
}

bool GrlexOrder::operator()(const ExponentVector& a, const ExponentVector& b) const {
  auto da = a.degree();
  auto db = b.degree();
  if (da != db) return da > db;
  return std::lexicographical_compare(b.values().begin(), b.values().end(), a.values().begin(),
                                      a.values().end());
}

std::vector<ExponentVector> exponents_up_to_degree(std::size_t n, std::uint32_t k) {
  std::vector<ExponentVector> out;
  ExponentVector cur(n);
  // depth-first over the simplex, then sort
  auto rec = [&](auto&& self, std::size_t i, std::uint32_t left) -> void {
    if (i == n) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t v = 0; v <= left; ++v) {
      cur[i] = v;
      self(self, i + 1, left - v);
    }
    cur[i] = 0;
  };
  rec(rec, 0, k);
  std::sort(out.begin(), out.end(), GrlexOrder{});
  return out;
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial Polynomial::constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(ExponentVector(nvars), c);
  return p;
}

Polynomial Polynomial::monomial(const ExponentVector& alpha, const Rational& c) {
  Polynomial p(alpha.size());
  p.add_term(alpha, c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw DimensionError("variable index out of range");
  ExponentVector e(nvars);
  e[index] = 1;
  return monomial(e);
}

std::uint64_t Polynomial::degree() const {
  // grlex puts the highest degree first
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  auto d = degree();
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const auto& t) { return t.first.degree() == d; });
}

Rational Polynomial::coefficient(const ExponentVector& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? Rational(0) : it->second;
}

std::vector<ExponentVector> Polynomial::support() const {
  std::vector<ExponentVector> s;
  s.reserve(terms_.size());
  for (const auto& [e, c] : terms_) s.push_back(e);
  return s;
}

void Polynomial::add_term(const ExponentVector& alpha, const Rational& c) {
  if (alpha.size() != n_) throw DimensionError("exponent length does not match variable count");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(alpha, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Polynomial::check_same_ring(const Polynomial& q) const {
  if (n_ != q.n_)
    throw DimensionError("variable count mismatch: " + std::to_string(n_) + " vs " +
                         std::to_string(q.n_));
}

Polynomial& Polynomial::operator+=(const Polynomial& q) {
  check_same_ring(q);
  for (const auto& [e, c] : q.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& q) {
  check_same_ring(q);
  for (const auto& [e, c] : q.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& p, const Polynomial& q) {
  p.check_same_ring(q);
  Polynomial r(p.n_);
  for (const auto& [ea, ca] : p.terms_)
    for (const auto& [eb, cb] : q.terms_) r.add_term(ea + eb, ca * cb);
  return r;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial result = constant(n_, Rational(1));
  Polynomial base = *this;
  while (e) {
    if (e & 1u) result = result * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return result;
}

Rational Polynomial::evaluate(std::span<const Rational> point) const {
  if (point.size() != n_) throw DimensionError("evaluation point has wrong length");
  Rational total(0);
  for (const auto& [e, c] : terms_) {
    Rational m = c;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::uint32_t k = 0; k < e[i]; ++k) m *= point[i];
    total += m;
  }
  return total;
}

Polynomial scale(const Polynomial& p, const Rational& c) { return p * c; }

Polynomial weighted_square_sum(std::span<const Rational> weights, std::span<const Polynomial> polys,
                               std::size_t nvars) {
  if (weights.size() != polys.size())
    throw DimensionError("weighted_square_sum: " + std::to_string(weights.size()) +
                         " weights for " + std::to_string(polys.size()) + " polynomials");
  Polynomial total(nvars);
  for (std::size_t i = 0; i < polys.size(); ++i) {
    if (polys[i].nvars() != nvars) throw DimensionError("weighted_square_sum: ring mismatch");
    if (weights[i] == 0) continue;
    // expand the square using symmetry: sum c_a^2 X^2a + 2 sum_{a<b} c_a c_b X^(a+b)
    const auto& t = polys[i].terms();
    for (auto a = t.begin(); a != t.end(); ++a) {
      total.add_term(a->first + a->first, weights[i] * a->second * a->second);
      auto b = a;
      for (++b; b != t.end(); ++b)
        total.add_term(a->first + b->first, 2 * weights[i] * a->second * b->second);
    }
  }
  return total;
}

BitSize bitsize(const Polynomial& p) {
  BitSize b;
  for (const auto& [e, c] : p.terms()) b.value = std::max(b.value, bit_length(c));
  return b;
}

Polynomial sum_of_squared_variables(std::size_t nvars) {
  Polynomial g(nvars);
  for (std::size_t i = 0; i < nvars; ++i) {
    ExponentVector e(nvars);
    e[i] = 2;
    g.add_term(e, Rational(1));
  }
  return g;
}

Polynomial sum_of_even_monomials(std::span<const ExponentVector> basis, std::size_t nvars) {
  Polynomial t(nvars);
  for (const auto& a : basis) t.add_term(a.doubled(), Rational(1));
  return t;
}

// ---------------------------------------------------------------------------
// Parsing

ParseError::ParseError(std::size_t position, const std::string& message)
    : Error("parse error at position " + std::to_string(position) + ": " + message),
      position_(position) {}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t n) : s_(text), n_(n) {}

  Polynomial run() {
    skip_ws();
    if (pos_ == s_.size()) throw ParseError(pos_, "empty expression");
    Polynomial p = expr();
    skip_ws();
    if (pos_ != s_.size()) throw ParseError(pos_, std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expr() {
    Polynomial p = term();
    for (;;) {
      if (accept('+'))
        p += term();
      else if (accept('-'))
        p -= term();
      else
        return p;
    }
  }

  Polynomial term() {
    Polynomial p = unary();
    for (;;) {
      if (accept('*')) {
        p = p * unary();
      } else if (accept('/')) {
        std::size_t at = pos_;
        Polynomial d = unary();
        if (d.is_zero()) throw ParseError(at, "division by zero");
        if (d.degree() != 0) throw ParseError(at, "division by a non-constant");
        p *= Rational(1) / d.coefficient(ExponentVector(n_));
      } else {
        return p;
      }
    }
  }

  Polynomial unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return power();
  }

  Polynomial power() {
    Polynomial base = primary();
    if (accept('^')) {
      skip_ws();
      std::size_t at = pos_;
      Integer e = integer_literal();
      if (e > 1000000) throw ParseError(at, "exponent too large");
      base = base.pow(static_cast<unsigned>(e.get_ui()));
    }
    return base;
  }

  Integer integer_literal() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) throw ParseError(pos_, "expected an integer");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  Polynomial primary() {
    skip_ws();
    if (pos_ >= s_.size()) throw ParseError(pos_, "unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!accept(')')) throw ParseError(pos_, "expected ')'");
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c)))
      return Polynomial::constant(n_, Rational(integer_literal()));
    if (c == 'x' || c == 'X') {
      std::size_t at = pos_;
      ++pos_;
      if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
        throw ParseError(pos_, "expected variable index after 'x'");
      Integer idx = integer_literal();
      if (idx < 1 || idx > n_)
        throw ParseError(at, "variable x" + idx.get_str() + " out of range for " +
                                 std::to_string(n_) + " variables");
      return Polynomial::variable(n_, idx.get_ui() - 1);
    }
    throw ParseError(pos_, std::string("unexpected '") + c + "'");
  }

  std::string_view s_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t nvars) {
  return Parser(text, nvars).run();
}

// ---------------------------------------------------------------------------
// Printing

std::string to_string(const ExponentVector& alpha) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < alpha.size(); ++i) os << (i ? "," : "") << alpha[i];
  os << ')';
  return os.str();
}

std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    Rational mag = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "x" + std::to_string(i + 1);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += to_short_string(mag);
    } else if (mag == 1) {
      out += mono;
    } else {
      out += to_short_string(mag) + "*" + mono;
    }
  }
  return out;
}

}  // namespace exactsos
