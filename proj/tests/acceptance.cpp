// Acceptance run: one PASS/FAIL line per criterion; exit status 0 iff all pass.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "exactsos/absorb.hpp"
#include "exactsos/certificate.hpp"
#include "exactsos/numlin.hpp"
#include "exactsos/provers.hpp"
#include "support.hpp"

using namespace exactsos;
using testsupport::P;
using testsupport::Q;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

int failures = 0;

void report(int id, const std::string& title, const Outcome& o) {
  std::printf("criterion %d: %s  %s%s%s\n", id, o.pass ? "PASS" : "FAIL", title.c_str(), o.detail.empty() ? "" : " -- ",
              o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

// ---- independent exact checks -------------------------------------------------

/// Plain rational Gaussian elimination on a copy; true iff every pivot > 0.
bool cholesky_succeeds(RationalMatrix a) {
  const std::size_t r = a.dim();
  for (std::size_t k = 0; k < r; ++k) {
    if (a(k, k) <= 0) return false;
    for (std::size_t i = k + 1; i < r; ++i) {
      if (a(i, k) == 0) continue;
      const Rational m = a(i, k) / a(k, k);
      for (std::size_t j = k; j < r; ++j) a(i, j) -= m * a(k, j);
    }
  }
  return true;
}

Polynomial quadratic_form(const RationalMatrix& g, const HalfBasis& b, std::size_t n) {
  Polynomial out(n);
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (g(i, j) != 0) out.add_term(b.points[i] + b.points[j], g(i, j));
  return out;
}

/// max_gamma |recomputed_gamma - target_gamma| over the union of both supports.
Rational max_violation(const Polynomial& recomputed, const ExponentMap& target, std::size_t n) {
  Polynomial t(n);
  for (const auto& [g, c] : target) t.add_term(g, c);
  const Polynomial diff = recomputed - t;
  Rational worst = 0;
  for (const auto& [g, c] : diff.terms()) worst = std::max(worst, Rational(abs(c)));
  return worst;
}

bool shifted_pd(const RationalMatrix& g, const Rational& shift) {
  RationalMatrix s = g;
  for (std::size_t i = 0; i < s.dim(); ++i) s(i, i) -= shift;
  return cholesky_succeeds(s);
}

/// Contract check for the SDP behind a prover run, recomputed from scratch.
void check_contract(const RunStats& st, const std::string& name, Outcome& o) {
  if (!st.solution) return o.fail(name + ": no solution recorded");
  const SolverOutput& s = *st.solution;
  const Rational tol = pow2(-st.final_delta);
  if (st.gram_problem) {
    const GramProblem& gp = *st.gram_problem;
    const std::size_t n = gp.basis.points.front().size();
    if (max_violation(quadratic_form(s.gram_blocks.at(0), gp.basis, n), gp.target, n) > tol)
      o.fail(name + ": constraint violation above 2^-delta");
    if (!shifted_pd(s.gram_blocks.at(0), tol)) o.fail(name + ": G - 2^-delta I not positive definite");
  } else if (st.block_problem) {
    const BlockGramProblem& bp = *st.block_problem;
    const std::size_t n = bp.blocks.front().multiplier.nvars();
    Polynomial lhs(n);
    for (std::size_t j = 0; j < bp.blocks.size(); ++j) {
      lhs += bp.blocks[j].multiplier * quadratic_form(s.gram_blocks.at(j), bp.blocks[j].basis, n);
      if (!shifted_pd(s.gram_blocks[j], tol)) o.fail(name + ": block " + std::to_string(j) + " not interior");
    }
    for (const auto& [alpha, w] : s.aux_weights) {
      lhs += w * (Polynomial::constant(n, 1) - Polynomial::monomial(alpha.doubled()));
      if (w < tol) o.fail(name + ": aux weight below 2^-delta");
    }
    if (max_violation(lhs, bp.target, n) > tol) o.fail(name + ": constraint violation above 2^-delta");
  } else {
    o.fail(name + ": no problem recorded");
  }
}

// ---- mutation ---------------------------------------------------------------------

/// Every single-value mutation of a certificate: weights, aux weights and each
/// polynomial coefficient (targets included), each shifted by +h and -h.
std::vector<std::function<void(Certificate&)>> mutations(const Certificate& cert, const Rational& h) {
  std::vector<std::function<void(Certificate&)>> out;
  auto on_poly = [&](std::function<Polynomial&(Certificate&)> get, const Polynomial& p) {
    for (const auto& a : p.support())
      for (int sg : {1, -1}) out.push_back([=](Certificate& c) { get(c).add_term(a, sg * h); });
  };
  auto on_weight = [&](std::function<Rational&(Certificate&)> get) {
    for (int sg : {1, -1}) out.push_back([=](Certificate& c) { get(c) += sg * h; });
  };
  auto on_terms = [&](std::function<std::vector<WeightedSquare>&(Certificate&)> get,
                      const std::vector<WeightedSquare>& terms) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      on_weight([=](Certificate& c) -> Rational& { return get(c)[i].weight; });
      on_poly([=](Certificate& c) -> Polynomial& { return get(c)[i].poly; }, terms[i].poly);
    }
  };
  if (auto* s = std::get_if<SosCertificate>(&cert)) {
    on_poly([](Certificate& c) -> Polynomial& { return std::get<SosCertificate>(c).target; }, s->target);
    on_terms([](Certificate& c) -> std::vector<WeightedSquare>& { return std::get<SosCertificate>(c).terms; },
             s->terms);
  } else if (auto* p = std::get_if<PolyaCertificate>(&cert)) {
    on_poly([](Certificate& c) -> Polynomial& { return std::get<PolyaCertificate>(c).target; }, p->target);
    on_poly([](Certificate& c) -> Polynomial& { return std::get<PolyaCertificate>(c).inner.target; },
            p->inner.target);
    on_terms([](Certificate& c) -> std::vector<WeightedSquare>& { return std::get<PolyaCertificate>(c).inner.terms; },
             p->inner.terms);
  } else {
    const auto& u = std::get<PutinarCertificate>(cert);
    on_poly([](Certificate& c) -> Polynomial& { return std::get<PutinarCertificate>(c).target; }, u.target);
    for (std::size_t j = 0; j < u.constraints.size(); ++j)
      on_poly([=](Certificate& c) -> Polynomial& { return std::get<PutinarCertificate>(c).constraints[j]; },
              u.constraints[j]);
    for (std::size_t j = 0; j < u.sos_blocks.size(); ++j)
      on_terms([=](Certificate& c) -> std::vector<WeightedSquare>& {
        return std::get<PutinarCertificate>(c).sos_blocks[j];
      }, u.sos_blocks[j]);
    for (std::size_t i = 0; i < u.aux.size(); ++i)
      on_weight([=](Certificate& c) -> Rational& { return std::get<PutinarCertificate>(c).aux[i].second; });
  }
  return out;
}

// ---- random data ------------------------------------------------------------------

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }
  Rational rational(long lo, long hi, long max_den) {
    Rational q(uniform(lo, hi), uniform(1, max_den));
    q.canonicalize();
    return q;
  }
  Rational nonzero(long bound, long max_den) {
    Rational q;
    do q = rational(-bound, bound, max_den);
    while (q == 0);
    return q;
  }
};

Polynomial random_poly(Rng& rng, const HalfBasis& basis, std::size_t n) {
  Polynomial p(n);
  for (const auto& a : basis.points)
    if (rng.uniform(0, 2) != 0) p.add_term(a, rng.nonzero(9, 8));
  if (p.is_zero()) p.add_term(basis.points[rng.uniform(0, static_cast<long>(basis.size()) - 1)], 1);
  return p;
}

}  // namespace

int main() {
  std::vector<Certificate> produced;  // feeds the mutation criterion
  std::vector<std::pair<std::string, RunStats>> solved;

  // 1 --------------------------------------------------------------------------
  {
    Outcome o;
    const Polynomial f = P(testsupport::kQuartic, 2);
    RunStats st;
    const auto t0 = Clock::now();
    try {
      SosCertificate c = intsos(f, ProverConfig{}, &st);
      const double secs = seconds_since(t0);
      VerifyReport r = verify(c);
      if (!r.pass || !r.residual.is_zero()) o.fail("verify failed");
      HalfBasis half;
      half.points = {{2, 0}, {1, 1}, {0, 2}};
      for (const auto& t : c.terms)
        for (const auto& a : t.poly.support())
          if (half.index_of(a) == half.size()) o.fail("square support outside {(2,0),(1,1),(0,2)}");
      if (secs > 10) o.fail("runtime above 10 s");
      std::ostringstream d;
      d << c.terms.size() << " squares, eps=" << to_short_string(st.final_eps) << ", "
        << bitsize(Certificate(c)).value << " bits, " << secs << " s";
      if (o.pass) o.detail = d.str();
      produced.emplace_back(c);
      solved.emplace_back("quartic", st);
    } catch (const std::exception& e) {
      o.fail(e.what());
    }
    report(1, "intsos on the worked quartic", o);
  }

  // 2 --------------------------------------------------------------------------
  {
    Outcome o;
    ProverConfig cfg;
    cfg.eps0 = pow2(-20);
    RunStats st;
    const auto t0 = Clock::now();
    try {
      PolyaCertificate c = polyasos(P(testsupport::kPerturbedMotzkin, 3), cfg, &st);
      const double secs = seconds_since(t0);
      if (c.degree != 1) o.fail("D = " + std::to_string(c.degree) + ", expected 1");
      if (!verify(c).pass) o.fail("verify failed");
      if (c.inner.target != c.target * sum_of_squared_variables(3)) o.fail("inner target is not f*G_3");
      if (secs > 60) o.fail("runtime above 60 s");
      std::ostringstream d;
      d << "D=" << c.degree << ", " << c.inner.terms.size() << " squares, " << secs << " s";
      if (o.pass) o.detail = d.str();
      produced.emplace_back(c);
      solved.emplace_back("perturbed Motzkin", st);
    } catch (const std::exception& e) {
      o.fail(e.what());
    }
    report(2, "polyasos on the perturbed Motzkin form", o);
  }

  // 3 --------------------------------------------------------------------------
  {
    Outcome o;
    RunStats st;
    const SemialgebraicSet s{{P("1 - x1^2", 2), P("1 - x2^2", 2)}};
    const auto t0 = Clock::now();
    try {
      PutinarCertificate c = putinarsos(P(testsupport::kBoxTarget, 2), s, ProverConfig{}, &st);
      const double secs = seconds_since(t0);
      if (2 * c.k != 2) o.fail("D = " + std::to_string(2 * c.k) + ", expected 2");
      VerifyReport r = verify(c);
      if (!r.pass) o.fail("verify failed");
      if (secs > 60) o.fail("runtime above 60 s");
      std::ostringstream d;
      d << "D=" << 2 * c.k << ", eps=" << to_short_string(st.final_eps) << ", " << c.aux.size() << " aux weights, "
        << secs << " s";
      if (o.pass) o.detail = d.str();
      produced.emplace_back(c);
      solved.emplace_back("box", st);
    } catch (const std::exception& e) {
      o.fail(e.what());
    }
    report(3, "putinarsos on the box example", o);
  }

  // 4 --------------------------------------------------------------------------
  {
    // The two printed decompositions were first confirmed by independent
    // symbolic expansion; only then are they fixtures here.
    Outcome o;
    SosCertificate two{P(testsupport::kQuartic, 2),
                       {{1, P("2*x1*x2 + x2^2", 2)}, {1, P("2*x1^2 + x1*x2 - 3*x2^2", 2)}}};
    SosCertificate six{P(testsupport::kQuartic, 2),
                       {{Q("1/3"), P("x1*x2 - x2^2", 2)},
                        {Q("5/9"), P("x1*x2", 2)},
                        {Q("395/1764"), P("x2^2", 2)},
                        {1, P("2*x1^2 + x1*x2 - 8/3*x2^2", 2)},
                        {1, P("4/3*x1*x2 + 3/2*x2^2", 2)},
                        {1, P("2/7*x2^2", 2)}}};
    PutinarCertificate box;
    box.target = P(testsupport::kBoxTarget, 2);
    box.constraints = {P("1 - x1^2", 2), P("1 - x2^2", 2)};
    box.k = 1;
    box.sos_blocks = {{{Q("23853407/292204836"), P("1", 2)},
                       {Q("23/49"), P("x1", 2)},
                       {Q("130657269/291009481"), P("x2", 2)},
                       {Q("1/5963364"), P("1", 2)},
                       {1, P("x1 - x2", 2)},
                       {1, P("x2/2437", 2)}},
                      {{Q("121/49"), P("1", 2)}},
                      {{Q("169/49"), P("1", 2)}}};
    if (!verify(two).pass) o.fail("two-square identity");
    if (!verify(six).pass) o.fail("six-term decomposition");
    if (!verify(box).pass) o.fail("box representation");
    if (o.pass) o.detail = "3 fixtures verified";
    report(4, "fixture verification", o);
  }

  // 5 --------------------------------------------------------------------------
  {
    Outcome o;
    Rng rng(20240531);
    const int instances = 60;
    int ok = 0;
    const auto t0 = Clock::now();
    for (int it = 0; it < instances; ++it) {
      const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
      const auto k = static_cast<std::uint32_t>(rng.uniform(1, 3));
      const HalfBasis basis = full_basis(n, k);
      Polynomial f(n);
      const long squares = rng.uniform(1, 3);
      for (long i = 0; i < squares; ++i) {
        const Polynomial s = random_poly(rng, basis, n);
        f += rng.rational(1, 9, 8) * s * s;
      }
      const Rational mu = rng.uniform(0, 1) ? Q("1/4") : Q("1/16");
      f += mu * sum_of_even_monomials(basis.points, n);
      try {
        SosCertificate c = intsos(f);
        if (c.target != f || !verify(c).pass) {
          o.fail("instance " + std::to_string(it) + ": verify failed");
          continue;
        }
        produced.emplace_back(std::move(c));
        ++ok;
      } catch (const std::exception& e) {
        o.fail("instance " + std::to_string(it) + " (" + to_string(f) + "): " + e.what());
      }
    }
    std::ostringstream d;
    d << ok << "/" << instances << " instances certified, " << seconds_since(t0) << " s";
    if (o.pass) o.detail = d.str();
    report(5, "randomized SOS property suite", o);
  }

  // 6 --------------------------------------------------------------------------
  {
    Outcome o;
    const Rational h = pow2(-40);
    std::size_t total = 0, rejected = 0;
    for (std::size_t ci = 0; ci < produced.size(); ++ci) {
      for (const auto& mutate : mutations(produced[ci], h)) {
        Certificate m = produced[ci];
        mutate(m);
        ++total;
        if (!verify(m).pass)
          ++rejected;
        else
          o.fail("certificate " + std::to_string(ci) + ": a mutation still verifies");
      }
    }
    if (total == 0) o.fail("no certificates to mutate");
    std::ostringstream d;
    d << rejected << "/" << total << " mutations rejected over " << produced.size() << " certificates";
    if (o.pass) o.detail = d.str();
    report(6, "mutation suite", o);
  }

  // 7 --------------------------------------------------------------------------
  {
    Outcome o;
    Rng rng(7);
    const int matrices = 120;
    int nonsingular_checked = 0;
    for (int it = 0; it < matrices; ++it) {
      const auto r = static_cast<std::size_t>(rng.uniform(1, 8));
      RationalMatrix a(r);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) a(i, j) = rng.rational(-6, 6, 5);
      RationalMatrix g = a * a.transpose();
      const Rational shift = pow2(-rng.uniform(0, 12));
      for (std::size_t i = 0; i < r; ++i) g(i, i) += shift;
      const Rational lambda = min_eig_lower_bound(g, 40);
      if (lambda <= 0) {
        o.fail("matrix " + std::to_string(it) + ": no positive eigenvalue bound");
        continue;
      }
      const long dc_in = rng.uniform(1, 40);
      CholResult c;
      try {
        c = approx_cholesky(g, lambda, dc_in);
      } catch (const std::exception& e) {
        o.fail("matrix " + std::to_string(it) + ": " + e.what());
        continue;
      }
      const Rational u = pow2(-c.delta_c_used);
      const Rational ru = Rational(static_cast<long>(r + 1)) * u;
      // |E_ij| <= ru sqrt(G_ii G_jj) / (1 - ru), squared to stay rational.
      const RationalMatrix e = c.L * c.L.transpose() - g;
      for (std::size_t i = 0; i < r && o.pass; ++i)
        for (std::size_t j = 0; j < r; ++j) {
          const Rational lhs = e(i, j) * e(i, j) * (1 - ru) * (1 - ru);
          if (ru >= 1 || lhs > ru * ru * g(i, i) * g(j, j)) {
            o.fail("matrix " + std::to_string(it) + ": entrywise error above the rounding bound");
            break;
          }
        }
      const std::size_t r2 = r * r + r;
      const bool precondition = u < lambda / (Rational(static_cast<long>(r2)) + Rational(static_cast<long>(r - 1)) * lambda);
      if (c.delta_c_used < dc_in) o.fail("precision was lowered");
      if (precondition) {
        ++nonsingular_checked;
        for (std::size_t i = 0; i < r; ++i)
          if (c.L(i, i) <= 0) o.fail("matrix " + std::to_string(it) + ": singular factor");
        if (!cholesky_succeeds(c.L * c.L.transpose())) o.fail("matrix " + std::to_string(it) + ": L L^T not PD");
      } else {
        o.fail("matrix " + std::to_string(it) + ": returned precision does not meet the nonsingularity condition");
      }
    }
    std::ostringstream d;
    d << matrices << " matrices, error bound exact, " << nonsingular_checked << " nonsingular factors";
    if (o.pass) o.detail = d.str();
    report(7, "Cholesky error and nonsingularity bounds", o);
  }

  // 8 --------------------------------------------------------------------------
  {
    Outcome o;
    Rng rng(8);
    const int triples = 150;
    for (int it = 0; it < triples; ++it) {
      const std::size_t n = static_cast<std::size_t>(rng.uniform(1, 3));
      // basis: half points of a random form's polytope, or a full simplex basis
      HalfBasis basis;
      if (rng.uniform(0, 1)) {
        basis = full_basis(n, static_cast<std::uint32_t>(rng.uniform(1, 3)));
      } else {
        Polynomial g(n);
        const HalfBasis big = full_basis(n, 3);
        for (int t = 0; t < 4; ++t) g.add_term(big.points[rng.uniform(0, static_cast<long>(big.size()) - 1)].doubled(), 1);
        basis = half_lattice_points(newton_polytope(g));
      }
      Polynomial u(n);
      const long terms = rng.uniform(0, 8);
      for (long t = 0; t < terms; ++t) {
        const auto& a = basis.points[rng.uniform(0, static_cast<long>(basis.size()) - 1)];
        const auto& b = basis.points[rng.uniform(0, static_cast<long>(basis.size()) - 1)];
        u.add_term(a + b, rng.nonzero(5, 16) / 8);
      }
      const Rational eps = rng.rational(1, 16, 16);
      Budget budget = uniform_budget(basis, eps);
      CertAccumulator acc;
      try {
        absorb(u, basis, budget, acc);
      } catch (const std::exception& e) {
        o.fail("triple " + std::to_string(it) + ": " + e.what());
        continue;
      }
      Polynomial lhs = weighted_square_sum(acc.weights, acc.polys, n);
      for (const auto& [alpha, e] : budget) lhs.add_term(alpha.doubled(), e);
      if (lhs != eps * sum_of_even_monomials(basis.points, n) + u)
        o.fail("triple " + std::to_string(it) + ": re-expansion differs from eps*t + u");
      for (const auto& w : acc.weights)
        if (w < 0) o.fail("triple " + std::to_string(it) + ": negative weight");
    }
    if (o.pass) o.detail = std::to_string(triples) + " triples re-expand exactly";
    report(8, "absorb bookkeeping", o);
  }

  // 9 --------------------------------------------------------------------------
  {
    Outcome o;
    for (const auto& [name, st] : solved) check_contract(st, name, o);
    if (solved.size() != 3) o.fail("expected 3 solved instances, have " + std::to_string(solved.size()));
    if (o.pass) o.detail = "3 instances: constraints within 2^-delta, shifted Gram blocks positive definite";
    report(9, "SDP contract", o);
  }

  std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "ALL PASSED", failures);
  return failures ? 1 : 0;
}
