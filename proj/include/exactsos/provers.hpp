#pragma once

#include <optional>
#include <vector>

#include "exactsos/certificate.hpp"
#include "exactsos/sdp.hpp"

namespace exactsos {

struct ProverConfig {
  Rational eps0 = 1;
  long delta = 60;
  Rational R = pow2(60);
  long delta_c = 10;
  int max_eps_halvings = 64;
  int max_escalations = 8;
  std::uint32_t k_max = 6;
  std::uint32_t D_max = 20;
  SolveOptions solver;

  /// Throws Error on out-of-range values.
  void validate() const;
};

/// {x : g_1(x) >= 0, ..., g_m(x) >= 0}; compactness is the caller's claim.
struct SemialgebraicSet {
  std::vector<Polynomial> constraints;
};

class ProverError : public Error {
 public:
  enum class Kind { NotInInteriorSuspected, PrecisionExhausted, DegreeCapExhausted, OddDegree, NotHomogeneous };
  ProverError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

const char* to_string(ProverError::Kind kind);

/// One pass of the main loop, for auditing the escalation behaviour.
struct LoopRecord {
  Rational eps;
  long delta = 0;
  Rational R;
  long delta_c = 0;
  std::uint32_t degree = 0;  // D for Polya, k for Putinar, 0 otherwise
};

struct RunStats {
  double polytope_ms = 0, sdp_ms = 0, cholesky_ms = 0, absorb_ms = 0, verify_ms = 0;
  Rational final_eps;
  long final_delta = 0;
  Rational final_R;
  long final_delta_c = 0;
  std::uint32_t final_degree = 0;
  int eps_halvings = 0;
  int escalations = 0;
  int sdp_calls = 0;
  std::vector<LoopRecord> loop;
  /// The SDP whose rounded solution produced the certificate (on the scaled
  /// integer input), kept for independent re-checking.
  std::optional<GramProblem> gram_problem;
  std::optional<BlockGramProblem> block_problem;
  std::optional<SolverOutput> solution;
};

/// Weighted rational SOS decomposition of f, exactly verified before return.
SosCertificate intsos(const Polynomial& f, const ProverConfig& cfg = {}, RunStats* stats = nullptr);

/// Smallest D <= D_max with f * (x1^2 + ... + xn^2)^D certified by intsos.
PolyaCertificate polyasos(const Polynomial& f, const ProverConfig& cfg = {}, RunStats* stats = nullptr);

/// Putinar representation of f over S' = S intersected with the boxes
/// {1 - X^(2 alpha) >= 0 : 0 < |alpha| <= k}, for the smallest k <= k_max found.
PutinarCertificate putinarsos(const Polynomial& f, const SemialgebraicSet& s, const ProverConfig& cfg = {},
                              RunStats* stats = nullptr);

}  // namespace exactsos
