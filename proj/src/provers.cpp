#include "exactsos/provers.hpp"

#include <algorithm>
#include <chrono>

#include "exactsos/absorb.hpp"
#include "exactsos/newton.hpp"
#include "exactsos/numlin.hpp"

namespace exactsos {

void ProverConfig::validate() const {
  if (eps0 <= 0 || eps0 > 1) throw Error("config: eps0 must lie in (0, 1]");
  if (delta < 1) throw Error("config: delta must be positive");
  if (R < 1) throw Error("config: R must be at least 1");
  if (delta_c < 1) throw Error("config: delta_c must be positive");
  if (max_eps_halvings < 0 || max_escalations < 0) throw Error("config: loop caps must be nonnegative");
  if (k_max < 1) throw Error("config: k_max must be positive");
  if (D_max < 2 || D_max % 2 != 0) throw Error("config: D_max must be a positive even number");
}

const char* to_string(ProverError::Kind kind) {
  switch (kind) {
    case ProverError::Kind::NotInInteriorSuspected: return "not_in_interior_suspected";
    case ProverError::Kind::PrecisionExhausted: return "precision_exhausted";
    case ProverError::Kind::DegreeCapExhausted: return "degree_cap_exhausted";
    case ProverError::Kind::OddDegree: return "odd_degree";
    case ProverError::Kind::NotHomogeneous: return "not_homogeneous";
  }
  return "unknown";
}

namespace {

using Kind = ProverError::Kind;

class Timer {
 public:
  explicit Timer(double& acc) : acc_(acc), t0_(std::chrono::steady_clock::now()) {}
  ~Timer() { acc_ += std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count(); }

 private:
  double& acc_;
  std::chrono::steady_clock::time_point t0_;
};

/// The escalation knobs. They are only ever moved in one direction: eps
/// down, delta / R / delta_c up.
struct Knobs {
  Rational eps;
  int halvings = 0;  // at the current degree
  long delta = 0;
  Rational R;
  long delta_c = 0;
  int escalations = 0;
};

Knobs initial_knobs(const ProverConfig& cfg) { return Knobs{cfg.eps0, 0, cfg.delta, cfg.R, cfg.delta_c, 0}; }

Integer denominator_lcm(const Polynomial& f) {
  Integer l(1);
  for (const auto& [a, c] : f.terms()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

void record(RunStats& st, const Knobs& k, std::uint32_t degree) {
  st.loop.push_back({k.eps, k.delta, k.R, k.delta_c, degree});
}

void escalate(Knobs& k, const ProverConfig& cfg, RunStats& st, const std::string& why) {
  if (k.escalations >= cfg.max_escalations)
    throw ProverError(Kind::PrecisionExhausted, "precision escalations exhausted (" + why + ")");
  ++k.escalations;
  ++st.escalations;
  k.delta *= 2;
  k.R *= 2;
  k.delta_c *= 2;
}

/// Halves eps after an infeasible SDP. A margin upper bound m for f_eps gives
/// m + eps >= margin of f itself, so halvings that cannot succeed are skipped
/// (and still counted).
void next_eps(Knobs& k, const ProverConfig& cfg, RunStats& st, std::optional<double> margin) {
  int next = k.halvings + 1;
  if (margin) {
    const double est = *margin + k.eps.get_d();
    if (est <= pow2(-k.delta).get_d())
      throw ProverError(Kind::NotInInteriorSuspected,
                        "no strictly feasible Gram matrix for any eps > 0 (margin bound " + std::to_string(est) + ")");
    const double target = est / 2;
    while (next <= cfg.max_eps_halvings && Rational(k.eps * pow2(-(next - k.halvings))).get_d() > target) ++next;
  }
  if (next > cfg.max_eps_halvings)
    throw ProverError(Kind::NotInInteriorSuspected, "eps halvings exhausted at eps = " + to_short_string(k.eps));
  const int steps = next - k.halvings;
  st.eps_halvings += steps;
  k.eps *= pow2(-steps);
  k.halvings = next;
}

/// Squares read off the columns of L, so that sum s_i^2 = v^T L L^T v.
std::vector<Polynomial> squares_of(const RationalMatrix& l, const HalfBasis& basis) {
  return rows_to_polys(l.transpose(), basis);
}

void add_nonzero(std::vector<WeightedSquare>& out, const Rational& w, Polynomial p) {
  if (w == 0 || p.is_zero()) return;
  out.push_back({w, std::move(p)});
}

void divide_weights(std::vector<WeightedSquare>& terms, const Integer& l) {
  if (l == 1) return;
  for (auto& t : terms) t.weight /= l;
}

void assert_verified(const VerifyReport& r, const char* what) {
  if (!r.pass) throw Error(std::string("internal error: ") + what + " certificate failed exact verification");
}

/// One eps-loop over a fixed basis for an integer polynomial F.
std::vector<WeightedSquare> sos_core(const Polynomial& F, const HalfBasis& basis, Knobs& k, const ProverConfig& cfg,
                                     RunStats& st, std::uint32_t degree) {
  const std::size_t n = F.nvars();
  const Polynomial t = sum_of_even_monomials(basis.points, n);
  for (;;) {
    record(st, k, degree);
    const Polynomial f_eps = F - k.eps * t;
    GramProblem gp;
    try {
      gp = build_gram_problem(f_eps, basis);
    } catch (const UncoverableExponent& e) {
      throw ProverError(Kind::NotInInteriorSuspected, std::string("not a sum of squares: ") + e.what());
    }
    SolverOutput out;
    try {
      Timer tm(st.sdp_ms);
      ++st.sdp_calls;
      out = solve(gp, k.delta, k.R, cfg.solver);
    } catch (const SolveError& e) {
      if (e.kind() == SolveError::Kind::Infeasible)
        next_eps(k, cfg, st, e.margin_upper());
      else
        escalate(k, cfg, st, e.what());
      continue;
    }
    CholResult chol;
    try {
      Timer tm(st.cholesky_ms);
      chol = approx_cholesky(out.gram_blocks[0], out.eig_bounds[0], k.delta_c);
    } catch (const Error& e) {
      escalate(k, cfg, st, e.what());
      continue;
    }
    std::vector<Polynomial> s = squares_of(chol.L, basis);
    Budget budget = uniform_budget(basis, k.eps);
    CertAccumulator acc;
    {
      Timer tm(st.absorb_ms);
      std::vector<Rational> ones(s.size(), Rational(1));
      const Polynomial u = f_eps - weighted_square_sum(ones, s, n);
      absorb(u, basis, budget, acc);
    }
    if (!budget_ok(budget)) {
      escalate(k, cfg, st, "absorption budget went negative");
      continue;
    }
    std::vector<WeightedSquare> terms;
    for (auto& p : s) add_nonzero(terms, Rational(1), std::move(p));
    for (std::size_t i = 0; i < acc.size(); ++i) add_nonzero(terms, acc.weights[i], std::move(acc.polys[i]));
    for (const auto& [alpha, e] : budget) add_nonzero(terms, e, Polynomial::monomial(alpha));
    st.final_eps = k.eps;
    st.final_delta = k.delta;
    st.final_R = k.R;
    st.final_delta_c = chol.delta_c_used;
    st.final_degree = degree;
    st.gram_problem = std::move(gp);
    st.block_problem.reset();
    st.solution = std::move(out);
    return terms;
  }
}

void check_input(const Polynomial& f) {
  if (f.is_zero()) throw Error("input polynomial is zero");
  if (f.degree() % 2 != 0) throw ProverError(Kind::OddDegree, "input has odd degree " + std::to_string(f.degree()));
}

SosCertificate intsos_impl(const Polynomial& f, Knobs& k, const ProverConfig& cfg, RunStats& st,
                           std::uint32_t degree) {
  check_input(f);
  const Integer l = denominator_lcm(f);
  const Polynomial F = f * Rational(l);
  HalfBasis basis;
  {
    Timer tm(st.polytope_ms);
    basis = half_lattice_points(newton_polytope(F));
  }
  SosCertificate cert{f, sos_core(F, basis, k, cfg, st, degree)};
  divide_weights(cert.terms, l);
  return cert;
}

}  // namespace

SosCertificate intsos(const Polynomial& f, const ProverConfig& cfg, RunStats* stats) {
  cfg.validate();
  RunStats local;
  RunStats& st = stats ? *stats : local;
  st = RunStats{};
  Knobs k = initial_knobs(cfg);
  SosCertificate cert = intsos_impl(f, k, cfg, st, 0);
  Timer tm(st.verify_ms);
  assert_verified(verify(cert), "SOS");
  return cert;
}

PolyaCertificate polyasos(const Polynomial& f, const ProverConfig& cfg, RunStats* stats) {
  cfg.validate();
  RunStats local;
  RunStats& st = stats ? *stats : local;
  st = RunStats{};
  check_input(f);
  if (!f.is_homogeneous()) throw ProverError(Kind::NotHomogeneous, "Polya certificates need a form");
  const Polynomial g = sum_of_squared_variables(f.nvars());
  Knobs k = initial_knobs(cfg);
  Polynomial lifted = f;
  std::string last;
  for (std::uint32_t d = 0; d <= cfg.D_max; ++d, lifted = lifted * g) {
    k.halvings = 0;
    try {
      PolyaCertificate cert{f, d, intsos_impl(lifted, k, cfg, st, d)};
      Timer tm(st.verify_ms);
      assert_verified(verify(cert), "Polya");
      return cert;
    } catch (const ProverError& e) {
      if (e.kind() != Kind::NotInInteriorSuspected) throw;
      last = e.what();
    }
  }
  throw ProverError(Kind::DegreeCapExhausted,
                    "no certificate up to D = " + std::to_string(cfg.D_max) + " (last: " + last + ")");
}

PutinarCertificate putinarsos(const Polynomial& f, const SemialgebraicSet& s, const ProverConfig& cfg,
                              RunStats* stats) {
  cfg.validate();
  RunStats local;
  RunStats& st = stats ? *stats : local;
  st = RunStats{};
  if (f.is_zero()) throw Error("input polynomial is zero");
  if (s.constraints.empty()) throw Error("semialgebraic set needs at least one constraint");
  const std::size_t n = f.nvars();
  std::uint32_t k0 = static_cast<std::uint32_t>((f.degree() + 1) / 2);
  for (const auto& g : s.constraints) {
    if (g.nvars() != n) throw DimensionError("constraint and target live in different rings");
    if (g.is_zero()) throw Error("zero constraint");
    k0 = std::max(k0, static_cast<std::uint32_t>((g.degree() + 1) / 2));
  }
  k0 = std::max<std::uint32_t>(k0, 1);
  const Integer l = denominator_lcm(f);
  const Polynomial F = f * Rational(l);
  const std::uint32_t k_cap = std::min(cfg.k_max, cfg.D_max / 2);

  Knobs kn = initial_knobs(cfg);
  std::string last = "k_max below the degree of the input";
  for (std::uint32_t k = k0; k <= k_cap; ++k) {
    // membership of F in the truncated module of S' with a margin
    std::optional<double> margin;
    {
      record(st, kn, k);
      Timer tm(st.sdp_ms);
      ++st.sdp_calls;
      try {
        margin = solve(build_putinar_problem(F, s.constraints, k), kn.delta, kn.R, cfg.solver).margin_estimate;
      } catch (const SolveError& e) {
        last = e.what();
        continue;
      }
    }
    const HalfBasis basis0 = full_basis(n, k);
    const Polynomial t = sum_of_even_monomials(basis0.points, n);
    kn.halvings = 0;
    while (kn.halvings < cfg.max_eps_halvings && kn.eps.get_d() > *margin / 2) {
      kn.eps /= 2;
      ++kn.halvings;
      ++st.eps_halvings;
    }
    try {
      for (;;) {
        record(st, kn, k);
        const Polynomial f_eps = F - kn.eps * t;
        BlockGramProblem bp = build_putinar_problem(f_eps, s.constraints, k);
        SolverOutput out;
        try {
          Timer tm(st.sdp_ms);
          ++st.sdp_calls;
          out = solve(bp, kn.delta, kn.R, cfg.solver);
        } catch (const SolveError& e) {
          if (e.kind() == SolveError::Kind::Infeasible)
            next_eps(kn, cfg, st, e.margin_upper());
          else
            escalate(kn, cfg, st, e.what());
          continue;
        }
        std::vector<std::vector<Polynomial>> squares;
        long dc_used = kn.delta_c;
        try {
          Timer tm(st.cholesky_ms);
          for (std::size_t j = 0; j < bp.blocks.size(); ++j) {
            CholResult c = approx_cholesky(out.gram_blocks[j], out.eig_bounds[j], kn.delta_c);
            dc_used = std::max(dc_used, c.delta_c_used);
            squares.push_back(squares_of(c.L, bp.blocks[j].basis));
          }
        } catch (const Error& e) {
          escalate(kn, cfg, st, e.what());
          continue;
        }
        Budget budget = uniform_budget(basis0, kn.eps);
        CertAccumulator acc;
        {
          Timer tm(st.absorb_ms);
          Polynomial u = f_eps;
          for (std::size_t j = 0; j < squares.size(); ++j) {
            std::vector<Rational> ones(squares[j].size(), Rational(1));
            u -= bp.blocks[j].multiplier * weighted_square_sum(ones, squares[j], n);
          }
          for (const auto& [alpha, c] : out.aux_weights)
            u -= Polynomial::constant(n, c) - Polynomial::monomial(alpha.doubled(), c);
          absorb(u, basis0, budget, acc);
        }
        if (!budget_ok(budget)) {
          escalate(kn, cfg, st, "absorption budget went negative");
          continue;
        }
        PutinarCertificate cert;
        cert.target = f;
        cert.constraints = s.constraints;
        cert.k = k;
        cert.sos_blocks.resize(bp.blocks.size());
        for (std::size_t j = 0; j < squares.size(); ++j)
          for (auto& p : squares[j]) add_nonzero(cert.sos_blocks[j], Rational(1), std::move(p));
        for (std::size_t i = 0; i < acc.size(); ++i)
          add_nonzero(cert.sos_blocks[0], acc.weights[i], std::move(acc.polys[i]));
        for (const auto& [alpha, e] : budget) add_nonzero(cert.sos_blocks[0], e, Polynomial::monomial(alpha));
        for (auto& blk : cert.sos_blocks) divide_weights(blk, l);
        for (const auto& [alpha, c] : out.aux_weights)
          if (c != 0) cert.aux.emplace_back(alpha, c / l);
        {
          Timer tm(st.verify_ms);
          assert_verified(verify(cert), "Putinar");
        }
        st.final_eps = kn.eps;
        st.final_delta = kn.delta;
        st.final_R = kn.R;
        st.final_delta_c = dc_used;
        st.final_degree = k;
        st.gram_problem.reset();
        st.block_problem = std::move(bp);
        st.solution = std::move(out);
        return cert;
      }
    } catch (const ProverError& e) {
      if (e.kind() != Kind::NotInInteriorSuspected) throw;
      last = e.what();
    }
  }
  throw ProverError(Kind::DegreeCapExhausted,
                    "no representation up to k = " + std::to_string(k_cap) + " (last: " + last + ")");
}

}  // namespace exactsos
