#include "exactsos/certificate.hpp"

#include <json.hpp>
#include <set>

namespace exactsos {

using nlohmann::json;

Polynomial expand(const std::vector<WeightedSquare>& terms, std::size_t nvars) {
  std::vector<Rational> w;
  std::vector<Polynomial> p;
  w.reserve(terms.size());
  p.reserve(terms.size());
  for (const auto& t : terms) {
    w.push_back(t.weight);
    p.push_back(t.poly);
  }
  return weighted_square_sum(w, p, nvars);
}

namespace {

bool nonnegative(const std::vector<WeightedSquare>& terms) {
  for (const auto& t : terms)
    if (t.weight < 0) return false;
  return true;
}

bool same_ring(const std::vector<WeightedSquare>& terms, std::size_t n) {
  for (const auto& t : terms)
    if (t.poly.nvars() != n) return false;
  return true;
}

void finish(VerifyReport& r) {
  r.identity_ok = r.residual.is_zero();
  r.residual_support = r.residual.support();
  r.residual_bitsize = bitsize(r.residual);
  if (!r.identity_ok)
    r.problems.push_back("identity fails on " + std::to_string(r.residual_support.size()) + " monomials");
  if (!r.weights_nonnegative) r.problems.push_back("negative weight");
  if (!r.degree_ok) r.problems.push_back("degree bound violated");
  if (!r.aux_ok) r.problems.push_back("aux constraint out of range or negative weight");
  r.pass = r.identity_ok && r.weights_nonnegative && r.degree_ok && r.aux_ok;
}

}  // namespace

VerifyReport verify(const SosCertificate& cert) {
  VerifyReport r;
  const std::size_t n = cert.target.nvars();
  r.weights_nonnegative = nonnegative(cert.terms);
  r.aux_ok = true;
  r.degree_ok = same_ring(cert.terms, n);
  r.residual = r.degree_ok ? expand(cert.terms, n) - cert.target : cert.target;
  finish(r);
  return r;
}

VerifyReport verify(const PolyaCertificate& cert) {
  const std::size_t n = cert.target.nvars();
  const Polynomial lifted = cert.target * sum_of_squared_variables(n).pow(cert.degree);
  VerifyReport r;
  r.weights_nonnegative = nonnegative(cert.inner.terms);
  r.aux_ok = true;
  r.degree_ok = same_ring(cert.inner.terms, n) && cert.inner.target.nvars() == n;
  if (r.degree_ok) {
    r.residual = expand(cert.inner.terms, n) - lifted;
    if (cert.inner.target != lifted) {
      r.problems.push_back("inner target differs from target * G^D");
      r.degree_ok = false;
    }
  } else {
    r.residual = lifted;
  }
  finish(r);
  return r;
}

VerifyReport verify(const PutinarCertificate& cert) {
  VerifyReport r;
  const std::size_t n = cert.target.nvars();
  const std::uint64_t cap = 2ull * cert.k;
  r.weights_nonnegative = true;
  r.degree_ok = cert.sos_blocks.size() == cert.constraints.size() + 1;
  r.aux_ok = true;
  if (!r.degree_ok) r.problems.push_back("expected one SOS block per constraint plus the unconstrained block");
  Polynomial sum(n);
  for (std::size_t j = 0; j < cert.sos_blocks.size() && r.degree_ok; ++j) {
    const Polynomial g = j == 0 ? Polynomial::constant(n, 1) : cert.constraints[j - 1];
    if (g.nvars() != n || !same_ring(cert.sos_blocks[j], n)) {
      r.degree_ok = false;
      break;
    }
    if (!nonnegative(cert.sos_blocks[j])) r.weights_nonnegative = false;
    for (const auto& t : cert.sos_blocks[j])
      if (!t.poly.is_zero() && 2 * t.poly.degree() + g.degree() > cap) r.degree_ok = false;
    sum += g * expand(cert.sos_blocks[j], n);
  }
  std::set<ExponentVector, GrlexOrder> seen;
  for (const auto& [alpha, c] : cert.aux) {
    if (alpha.size() != n || alpha.is_zero() || alpha.degree() > cert.k || !seen.insert(alpha).second || c < 0) {
      r.aux_ok = false;
      continue;
    }
    sum += Polynomial::constant(n, c) - Polynomial::monomial(alpha.doubled(), c);
  }
  r.residual = r.degree_ok ? sum - cert.target : cert.target;
  finish(r);
  return r;
}

VerifyReport verify(const Certificate& cert) {
  return std::visit([](const auto& c) { return verify(c); }, cert);
}

namespace {

void max_bits(BitSize& acc, const Polynomial& p) { acc = std::max(acc, bitsize(p)); }
void max_bits(BitSize& acc, const Rational& q) { acc = std::max(acc, BitSize{bit_length(q)}); }
void max_bits(BitSize& acc, const std::vector<WeightedSquare>& terms) {
  for (const auto& t : terms) {
    max_bits(acc, t.weight);
    max_bits(acc, t.poly);
  }
}

}  // namespace

BitSize bitsize(const Certificate& cert) {
  BitSize b;
  if (const auto* s = std::get_if<SosCertificate>(&cert)) {
    max_bits(b, s->target);
    max_bits(b, s->terms);
  } else if (const auto* p = std::get_if<PolyaCertificate>(&cert)) {
    max_bits(b, p->target);
    max_bits(b, p->inner.target);
    max_bits(b, p->inner.terms);
  } else {
    const auto& q = std::get<PutinarCertificate>(cert);
    max_bits(b, q.target);
    for (const auto& g : q.constraints) max_bits(b, g);
    for (const auto& blk : q.sos_blocks) max_bits(b, blk);
    for (const auto& [a, c] : q.aux) max_bits(b, c);
  }
  return b;
}

// ---- JSON ----

namespace {

json exponent_json(const ExponentVector& a) { return json(a.values()); }

json poly_json(const Polynomial& p) {
  json arr = json::array();
  for (const auto& [a, c] : p.terms()) arr.push_back(json::array({exponent_json(a), to_fraction_string(c)}));
  return arr;
}

json squares_json(const std::vector<WeightedSquare>& terms) {
  json arr = json::array();
  for (const auto& t : terms) arr.push_back({{"weight", to_fraction_string(t.weight)}, {"poly", poly_json(t.poly)}});
  return arr;
}

}  // namespace

std::string serialize(const Certificate& cert) {
  json j;
  j["format"] = 1;
  if (const auto* s = std::get_if<SosCertificate>(&cert)) {
    j["kind"] = "sos";
    j["nvars"] = s->target.nvars();
    j["target"] = poly_json(s->target);
    j["terms"] = squares_json(s->terms);
  } else if (const auto* p = std::get_if<PolyaCertificate>(&cert)) {
    j["kind"] = "polya";
    j["nvars"] = p->target.nvars();
    j["target"] = poly_json(p->target);
    j["D"] = p->degree;
    j["inner"] = {{"target", poly_json(p->inner.target)}, {"terms", squares_json(p->inner.terms)}};
  } else {
    const auto& q = std::get<PutinarCertificate>(cert);
    j["kind"] = "putinar";
    j["nvars"] = q.target.nvars();
    j["target"] = poly_json(q.target);
    json cons = json::array();
    for (const auto& g : q.constraints) cons.push_back(poly_json(g));
    j["constraints"] = cons;
    j["k"] = q.k;
    json blocks = json::array();
    for (const auto& b : q.sos_blocks) blocks.push_back(squares_json(b));
    j["sos_blocks"] = blocks;
    json aux = json::array();
    for (const auto& [a, c] : q.aux) aux.push_back({{"alpha", exponent_json(a)}, {"weight", to_fraction_string(c)}});
    j["aux"] = aux;
  }
  return j.dump(1);
}

namespace {

class Parser {
 public:
  const json& field(const json& obj, const std::string& path, const char* key) const {
    if (!obj.is_object()) throw SchemaError(path, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(path + "/" + key, "missing field");
    return *it;
  }

  std::uint64_t natural(const json& v, const std::string& path) const {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
      throw SchemaError(path, "expected a nonnegative integer");
    return v.get<std::uint64_t>();
  }

  const json& array(const json& v, const std::string& path) const {
    if (!v.is_array()) throw SchemaError(path, "expected an array");
    return v;
  }

  Rational rational(const json& v, const std::string& path) const {
    if (!v.is_string()) throw SchemaError(path, "rationals must be \"num/den\" strings");
    try {
      return parse_fraction_strict(v.get<std::string>());
    } catch (const Error& e) {
      throw SchemaError(path, e.what());
    }
  }

  ExponentVector exponent(const json& v, const std::string& path) const {
    array(v, path);
    if (v.size() != nvars) throw SchemaError(path, "exponent length must equal nvars = " + std::to_string(nvars));
    std::vector<std::uint32_t> e;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::uint64_t x = natural(v[i], path + "/" + std::to_string(i));
      if (x > 0xffffffffu) throw SchemaError(path + "/" + std::to_string(i), "exponent too large");
      e.push_back(static_cast<std::uint32_t>(x));
    }
    return ExponentVector(std::move(e));
  }

  Polynomial polynomial(const json& v, const std::string& path) const {
    array(v, path);
    Polynomial p(nvars);
    std::set<ExponentVector, GrlexOrder> seen;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string tp = path + "/" + std::to_string(i);
      if (!v[i].is_array() || v[i].size() != 2) throw SchemaError(tp, "expected [exponents, \"num/den\"]");
      ExponentVector a = exponent(v[i][0], tp + "/0");
      Rational c = rational(v[i][1], tp + "/1");
      if (c == 0) throw SchemaError(tp + "/1", "zero coefficients are not stored");
      if (!seen.insert(a).second) throw SchemaError(tp + "/0", "duplicate exponent");
      p.add_term(a, c);
    }
    return p;
  }

  std::vector<WeightedSquare> squares(const json& v, const std::string& path) const {
    array(v, path);
    std::vector<WeightedSquare> out;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const std::string tp = path + "/" + std::to_string(i);
      out.push_back({rational(field(v[i], tp, "weight"), tp + "/weight"), polynomial(field(v[i], tp, "poly"), tp + "/poly")});
    }
    return out;
  }

  std::size_t nvars = 0;
};

}  // namespace

Certificate deserialize(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("malformed JSON: ") + e.what());
  }
  Parser ps;
  const json& fmt = ps.field(j, "", "format");
  if (!fmt.is_number_integer() || fmt.get<long long>() != 1) throw SchemaError("/format", "unsupported format version");
  const json& kind = ps.field(j, "", "kind");
  if (!kind.is_string()) throw SchemaError("/kind", "expected a string");
  ps.nvars = ps.natural(ps.field(j, "", "nvars"), "/nvars");
  Polynomial target = ps.polynomial(ps.field(j, "", "target"), "/target");
  const std::string k = kind.get<std::string>();
  if (k == "sos") {
    return SosCertificate{std::move(target), ps.squares(ps.field(j, "", "terms"), "/terms")};
  }
  if (k == "polya") {
    const std::uint64_t d = ps.natural(ps.field(j, "", "D"), "/D");
    const json& inner = ps.field(j, "", "inner");
    PolyaCertificate c{std::move(target), static_cast<unsigned>(d), {}};
    c.inner.target = ps.polynomial(ps.field(inner, "/inner", "target"), "/inner/target");
    c.inner.terms = ps.squares(ps.field(inner, "/inner", "terms"), "/inner/terms");
    return c;
  }
  if (k == "putinar") {
    PutinarCertificate c;
    c.target = std::move(target);
    const json& cons = ps.array(ps.field(j, "", "constraints"), "/constraints");
    for (std::size_t i = 0; i < cons.size(); ++i)
      c.constraints.push_back(ps.polynomial(cons[i], "/constraints/" + std::to_string(i)));
    c.k = static_cast<std::uint32_t>(ps.natural(ps.field(j, "", "k"), "/k"));
    const json& blocks = ps.array(ps.field(j, "", "sos_blocks"), "/sos_blocks");
    for (std::size_t i = 0; i < blocks.size(); ++i)
      c.sos_blocks.push_back(ps.squares(blocks[i], "/sos_blocks/" + std::to_string(i)));
    const json& aux = ps.array(ps.field(j, "", "aux"), "/aux");
    for (std::size_t i = 0; i < aux.size(); ++i) {
      const std::string tp = "/aux/" + std::to_string(i);
      c.aux.emplace_back(ps.exponent(ps.field(aux[i], tp, "alpha"), tp + "/alpha"),
                         ps.rational(ps.field(aux[i], tp, "weight"), tp + "/weight"));
    }
    return c;
  }
  throw SchemaError("/kind", "unknown kind '" + k + "' (expected sos, polya or putinar)");
}

}  // namespace exactsos
