#include "exactsos/absorb.hpp"

#include <algorithm>

namespace exactsos {

Budget uniform_budget(const HalfBasis& basis, const Rational& eps) {
  Budget b;
  for (const auto& a : basis.points) b.emplace(a, eps);
  return b;
}

void absorb(const Polynomial& u, const HalfBasis& basis, Budget& budget, CertAccumulator& acc) {
  for (const auto& [gamma, coeff] : u.terms()) {
    if (gamma.is_even()) {
      auto it = budget.find(gamma.half());
      if (it != budget.end()) {
        it->second += coeff;
        continue;
      }
    }
    const ExponentVector* alpha = nullptr;
    ExponentVector beta;
    for (const auto& cand : basis.points) {
      ExponentVector rest;
      if (!ExponentVector::try_subtract(gamma, cand, rest)) continue;
      if (rest == cand) continue;
      if (basis.index_of(rest) == basis.size()) continue;
      alpha = &cand;
      beta = std::move(rest);
      break;
    }
    if (!alpha)
      throw UncoverableExponent("absorb: exponent " + to_string(gamma) +
                                " is not a sum of two distinct basis points");
    const Rational half = abs(coeff) / 2;
    budget[*alpha] -= half;
    budget[beta] -= half;
    Polynomial s = Polynomial::monomial(*alpha) +
                   Polynomial::monomial(beta, Rational(coeff > 0 ? 1 : -1));
    acc.append(half, std::move(s));
  }
}

bool budget_ok(const Budget& budget) {
  return std::all_of(budget.begin(), budget.end(), [](const auto& kv) { return kv.second >= 0; });
}

}  // namespace exactsos
