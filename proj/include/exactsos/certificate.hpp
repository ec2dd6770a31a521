#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "exactsos/polynomial.hpp"

namespace exactsos {

struct WeightedSquare {
  Rational weight;
  Polynomial poly;
  friend bool operator==(const WeightedSquare&, const WeightedSquare&) = default;
};

/// target = sum weight_i * poly_i^2
struct SosCertificate {
  Polynomial target;
  std::vector<WeightedSquare> terms;
  friend bool operator==(const SosCertificate&, const SosCertificate&) = default;
};

/// target * (x1^2 + ... + xn^2)^D = inner
struct PolyaCertificate {
  Polynomial target;
  unsigned degree = 0;
  SosCertificate inner;
  friend bool operator==(const PolyaCertificate&, const PolyaCertificate&) = default;
};

/// target = sum_j g_j * sigma_j + sum_alpha c_alpha (1 - X^(2 alpha)), with
/// g_0 = 1 and sigma_j = sos_blocks[j] as weighted squares.
struct PutinarCertificate {
  Polynomial target;
  std::vector<Polynomial> constraints;
  std::uint32_t k = 0;
  std::vector<std::vector<WeightedSquare>> sos_blocks;
  std::vector<std::pair<ExponentVector, Rational>> aux;
  friend bool operator==(const PutinarCertificate&, const PutinarCertificate&) = default;
};

using Certificate = std::variant<SosCertificate, PolyaCertificate, PutinarCertificate>;

struct VerifyReport {
  bool pass = false;
  bool identity_ok = false;
  bool weights_nonnegative = false;
  bool degree_ok = false;
  bool aux_ok = false;
  /// Identity residual: expansion minus what it must equal.
  Polynomial residual;
  std::vector<ExponentVector> residual_support;
  BitSize residual_bitsize;
  std::vector<std::string> problems;
};

/// sum weight_i poly_i^2
Polynomial expand(const std::vector<WeightedSquare>& terms, std::size_t nvars);

VerifyReport verify(const SosCertificate& cert);
VerifyReport verify(const PolyaCertificate& cert);
VerifyReport verify(const PutinarCertificate& cert);
VerifyReport verify(const Certificate& cert);

/// Largest bit size over every rational stored in the certificate.
BitSize bitsize(const Certificate& cert);

/// Schema violations carry a JSON-pointer-like path to the offending value.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& path, const std::string& message)
      : Error(path + ": " + message), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

std::string serialize(const Certificate& cert);
Certificate deserialize(std::string_view json_text);

}  // namespace exactsos
