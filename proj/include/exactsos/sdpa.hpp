#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "exactsos/sdp.hpp"

namespace exactsos {

/// Sparse SDPA input (.dat-s). The Gram matrices are SDPA's dual variable Y:
/// each gamma gives F_gamma . Y = f_gamma, F_0 = -I on the Gram blocks so the
/// SDPA objective max F_0 . Y minimizes the trace. A diagonal block carrying
/// the aux weights is appended when there are aux constraints.
std::string export_sdpa(const GramProblem& problem);
std::string export_sdpa(const BlockGramProblem& problem);

/// The parts of an SDPA result file we use. Diagonal blocks are returned as
/// dense diagonal matrices.
struct SdpaSolution {
  double primal_objective = 0;
  double dual_objective = 0;
  std::vector<double> x;
  std::vector<std::vector<std::vector<double>>> x_blocks;
  std::vector<std::vector<std::vector<double>>> y_blocks;
};

class SdpaFormatError : public Error {
 public:
  using Error::Error;
};

/// Parses objValPrimal/objValDual, xVec, xMat and yMat from SDPA output.
SdpaSolution import_solution(std::string_view text);

/// Writes a solution in the same layout (full precision, round-trips exactly).
std::string write_solution(const SdpaSolution& solution);

/// Built-in solver output in SDPA result layout: y_blocks are the Gram blocks
/// (plus a diagonal aux block when present), x is left empty.
SdpaSolution to_sdpa_solution(const SolverOutput& out);

}  // namespace exactsos
