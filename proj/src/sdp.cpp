#include "exactsos/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <tuple>

#include "exactsos/absorb.hpp"
#include "ipm.hpp"

namespace exactsos {

using detail::BigFloat;
using detail::DenseMat;
using detail::SdpEntry;

GramProblem build_gram_problem(const Polynomial& f_eps, const HalfBasis& basis) {
  GramProblem gp;
  gp.basis = basis;
  const auto& pts = basis.points;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i; j < pts.size(); ++j) {
      ExponentVector g = pts[i] + pts[j];
      gp.pair_index[g].emplace_back(i, j);
      gp.target.emplace(g, Rational(0));
    }
  for (const auto& [gamma, c] : f_eps.terms()) {
    auto it = gp.target.find(gamma);
    if (it == gp.target.end())
      throw UncoverableExponent("gram problem: exponent " + to_string(gamma) +
                                " is not a sum of two basis points");
    it->second = c;
  }
  return gp;
}

namespace {

std::uint32_t half_degree_ceil(const Polynomial& g) { return static_cast<std::uint32_t>((g.degree() + 1) / 2); }

}  // namespace

BlockGramProblem build_putinar_problem(const Polynomial& f_eps, const std::vector<Polynomial>& g_list,
                                       std::uint32_t k) {
  const std::size_t n = f_eps.nvars();
  if (f_eps.degree() > 2ull * k) throw Error("putinar problem: k too small for f");
  BlockGramProblem bp;
  bp.k = k;
  bp.blocks.push_back({Polynomial::constant(n, 1), full_basis(n, k)});
  for (const auto& g : g_list) {
    if (g.nvars() != n) throw DimensionError("putinar problem: constraint ring mismatch");
    if (g.is_zero()) throw Error("putinar problem: zero constraint");
    const std::uint32_t w = half_degree_ceil(g);
    if (w > k) throw Error("putinar problem: k too small for constraint " + to_string(g));
    bp.blocks.push_back({g, full_basis(n, k - w)});
  }
  for (const auto& a : exponents_up_to_degree(n, k))
    if (!a.is_zero()) bp.aux_constraints.push_back(a);
  for (const auto& gamma : exponents_up_to_degree(n, 2 * k)) bp.target.emplace(gamma, f_eps.coefficient(gamma));
  return bp;
}

namespace {

/// Equality system  sum_b A_ib . G_b + sum_a aux_coef_ia c_a = rhs_i  shared by
/// both problem kinds.
struct System {
  std::vector<std::size_t> dims;
  std::size_t naux = 0;
  std::vector<std::vector<SdpEntry>> entries;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> aux_coef;
  std::vector<Rational> rhs;
  std::size_t rows() const { return rhs.size(); }
};

System system_of(const GramProblem& p) {
  System s;
  s.dims = {p.basis.size()};
  for (const auto& [gamma, fg] : p.target) {
    std::vector<SdpEntry> row;
    auto it = p.pair_index.find(gamma);
    if (it != p.pair_index.end())
      for (const auto& [i, j] : it->second)
        row.push_back({0, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), Rational(1)});
    s.entries.push_back(std::move(row));
    s.aux_coef.emplace_back();
    s.rhs.push_back(fg);
  }
  return s;
}

System system_of(const BlockGramProblem& p) {
  System s;
  std::map<ExponentVector, std::size_t, GrlexOrder> row_of;
  for (const auto& [gamma, fg] : p.target) {
    row_of.emplace(gamma, s.rhs.size());
    s.rhs.push_back(fg);
  }
  const std::size_t m = s.rhs.size();
  std::vector<std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, Rational>> acc(m);
  for (std::uint32_t b = 0; b < p.blocks.size(); ++b) {
    const auto& pts = p.blocks[b].basis.points;
    s.dims.push_back(pts.size());
    for (std::uint32_t i = 0; i < pts.size(); ++i)
      for (std::uint32_t j = i; j < pts.size(); ++j) {
        const ExponentVector ab = pts[i] + pts[j];
        for (const auto& [d, c] : p.blocks[b].multiplier.terms()) {
          auto it = row_of.find(ab + d);
          if (it == row_of.end()) throw Error("putinar problem: block degree exceeds truncation");
          acc[it->second][{b, i, j}] += c;
        }
      }
  }
  s.entries.resize(m);
  for (std::size_t r = 0; r < m; ++r)
    for (const auto& [key, v] : acc[r])
      if (v != 0) s.entries[r].push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), v});
  s.naux = p.aux_constraints.size();
  s.aux_coef.resize(m);
  const ExponentVector zero(p.target.empty() ? 0 : p.target.begin()->first.size());
  for (std::size_t a = 0; a < s.naux; ++a) {
    s.aux_coef[row_of.at(zero)].emplace_back(a, Rational(1));
    s.aux_coef[row_of.at(p.aux_constraints[a].doubled())].emplace_back(a, Rational(-1));
  }
  return s;
}

/// Data scaling and the shift that makes the margin variable nonnegative.
struct Scaling {
  Rational sigma;  // power of two >= max |rhs|
  Rational t0;     // t = tau - t0
  Rational rho;    // trace row normalizer
  std::size_t n_total = 0;
};

Rational radius_cap(const Scaling& sc) {
  const Rational n(static_cast<long>(std::max<std::size_t>(sc.n_total, 1)));
  return Rational(1L << 20) * n * sc.t0;
}

/// relaxed: ignore R and use the solver's own radius cap.
Scaling make_scaling(const System& s, const Rational& r_bound, bool relaxed = false) {
  Scaling sc;
  Rational mx(0);
  for (const auto& v : s.rhs) mx = std::max(mx, Rational(abs(v)));
  sc.sigma = mx > 0 ? pow2(floor_log2(mx) + 1) : Rational(1);
  double norm2 = 0;
  for (const auto& v : s.rhs) {
    const double d = Rational(v / sc.sigma).get_d();
    norm2 += d * d;
  }
  sc.t0 = Rational(2 + static_cast<long>(std::ceil(std::sqrt(norm2))));
  for (std::size_t d : s.dims) sc.n_total += d;
  sc.n_total += s.naux;
  const Rational n(static_cast<long>(std::max<std::size_t>(sc.n_total, 1)));
  // The solver only needs a generous radius; a bound far beyond the data's
  // scale merely slows the path-following down.
  const Rational cap = radius_cap(sc);
  const Rational r_eff = relaxed ? cap : std::min(Rational(r_bound / sc.sigma), cap);
  sc.rho = r_eff + n * sc.t0;
  return sc;
}

/// LP variables: [tau, trace slack, aux excess a_alpha...]. Maximizes t with
/// G_b = W_b + t I, c_alpha = a_alpha + t on data scaled by 1/sigma.
detail::LinearSdp margin_sdp(const System& s, const Scaling& sc) {
  detail::LinearSdp lin;
  lin.block_dims = s.dims;
  lin.lp_dim = 2 + s.naux;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    Rational e(0);
    for (const auto& en : s.entries[i])
      if (en.p == en.q) e += en.value;
    std::vector<std::pair<std::size_t, Rational>> lp;
    for (const auto& [a, v] : s.aux_coef[i]) {
      e += v;
      lp.emplace_back(2 + a, v);
    }
    if (e != 0) lp.emplace_back(0, e);
    lin.a_blocks.push_back(s.entries[i]);
    lin.a_lp.push_back(std::move(lp));
    lin.rhs.push_back(s.rhs[i] / sc.sigma + sc.t0 * e);
  }
  std::vector<SdpEntry> tr;
  const Rational inv_rho = 1 / sc.rho;
  for (std::uint32_t b = 0; b < s.dims.size(); ++b)
    for (std::uint32_t i = 0; i < s.dims[b]; ++i) tr.push_back({b, i, i, inv_rho});
  std::vector<std::pair<std::size_t, Rational>> lp;
  lp.emplace_back(0, Rational(static_cast<long>(sc.n_total)) * inv_rho);
  lp.emplace_back(1, Rational(1));
  for (std::size_t a = 0; a < s.naux; ++a) lp.emplace_back(2 + a, inv_rho);
  lin.a_blocks.push_back(std::move(tr));
  lin.a_lp.push_back(std::move(lp));
  lin.rhs.push_back(Rational(1));
  lin.lp_cost.assign(lin.lp_dim, Rational(0));
  lin.lp_cost[0] = -1;
  return lin;
}

long default_mantissa(long delta, const Rational& r_bound) {
  const long log2r = r_bound >= 1 ? floor_log2(r_bound) + 1 : 1;
  return 4 * delta + log2r + 64;
}

/// Unscaled solution candidate in multiprecision.
struct Candidate {
  std::vector<DenseMat<BigFloat>> blocks;
  std::vector<BigFloat> aux;
};

enum class PhaseKind { Converged, Infeasible, Undecided };

struct PhaseResult {
  PhaseKind kind = PhaseKind::Undecided;
  Candidate cand;
  double t_primal = 0;
  double t_upper = 0;
  int iterations = 0;
};

template <class T>
Candidate extract(const detail::Ipm<T>& ipm, const System& s, const Scaling& sc) {
  const BigFloat sigma(sc.sigma);
  const BigFloat t = BigFloat(ipm.x()[0]) - BigFloat(sc.t0);
  Candidate c;
  for (std::size_t b = 0; b < s.dims.size(); ++b) {
    DenseMat<BigFloat> g(s.dims[b]);
    for (std::size_t i = 0; i < s.dims[b]; ++i)
      for (std::size_t j = 0; j < s.dims[b]; ++j) {
        g(i, j) = BigFloat(ipm.X()[b](i, j));
        if (i == j) g(i, j) += t;
        g(i, j) *= sigma;
      }
    c.blocks.push_back(std::move(g));
  }
  for (std::size_t a = 0; a < s.naux; ++a) c.aux.push_back((BigFloat(ipm.x()[2 + a]) + t) * sigma);
  return c;
}

PhaseResult double_phase(const detail::LinearSdp& lin, const System& s, const Scaling& sc, const Rational& thr_s) {
  detail::Ipm<double> ipm(lin, sc.t0.get_d(), 1.0);
  const double t0 = sc.t0.get_d();
  const double thr = std::max(4 * thr_s.get_d(), 1e-6);
  PhaseResult res;
  auto stop = [&](const detail::IpmStatus<double>& st) {
    res.iterations = st.iteration;
    res.t_primal = -st.primal_obj - t0;
    res.t_upper = -st.dual_obj - t0;
    if (st.primal_infeas <= 1e-9 && st.dual_infeas <= 1e-9) {
      if (res.t_primal >= thr && res.t_upper - res.t_primal <= 0.25 * res.t_primal) {
        res.kind = PhaseKind::Converged;
        return true;
      }
      if (res.t_upper < -1e-7) {
        res.kind = PhaseKind::Infeasible;
        return true;
      }
    }
    return st.mu < 1e-13;
  };
  ipm.run(100, stop);
  if (res.kind == PhaseKind::Converged) res.cand = extract(ipm, s, sc);
  return res;
}

PhaseResult multiprecision_phase(const detail::LinearSdp& lin, const System& s, const Scaling& sc,
                                 const Rational& thr_s, long mantissa, int max_iterations) {
  detail::Ipm<BigFloat> ipm(lin, sc.t0.get_d(), 1.0);
  const BigFloat t0(sc.t0);
  const BigFloat thr(thr_s);
  const BigFloat dual_tol = BigFloat(thr_s / sc.rho) / BigFloat(16);
  const BigFloat mu_floor = BigFloat(pow2(-(mantissa - 24)));
  const BigFloat m1(static_cast<double>(s.rows() + 2));
  PhaseResult res;
  auto stop = [&](const detail::IpmStatus<BigFloat>& st) {
    res.iterations = st.iteration;
    const BigFloat tp = -st.primal_obj - t0;
    const BigFloat tu = -st.dual_obj - t0;
    res.t_primal = tp.to_double();
    res.t_upper = tu.to_double();
    if (tp >= thr * BigFloat(4) && tu - tp <= tp / BigFloat(4) && st.primal_infeas * m1 * BigFloat(64) <= tp &&
        st.dual_infeas <= tp) {
      res.kind = PhaseKind::Converged;
      return true;
    }
    if (st.dual_infeas <= dual_tol && tu < thr) {
      res.kind = PhaseKind::Infeasible;
      return true;
    }
    return st.mu < mu_floor;
  };
  ipm.run(max_iterations, stop);
  if (res.kind == PhaseKind::Converged) res.cand = extract(ipm, s, sc);
  return res;
}

/// sum_{p,q} A_pq G_pq with upper-triangle entries standing for both halves.
template <class Get>
auto apply_row(const std::vector<SdpEntry>& row, Get&& get) {
  using V = decltype(get(row.front()));
  V s(0);
  for (const auto& e : row) {
    V term = V(e.value) * get(e);
    if (e.p != e.q) term = term + term;
    s += term;
  }
  return s;
}

struct Rounded {
  std::vector<RationalMatrix> blocks;
  std::vector<Rational> aux;
};

SolutionCheck check_system(const System& s, const Rounded& r, long delta, const Rational& r_bound) {
  SolutionCheck chk;
  const Rational tol = pow2(-delta);
  chk.max_violation = 0;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    Rational v = s.rhs[i];
    for (const auto& e : s.entries[i]) {
      Rational t = e.value * r.blocks[e.block](e.p, e.q);
      if (e.p != e.q) t *= 2;
      v -= t;
    }
    for (const auto& [a, c] : s.aux_coef[i]) v -= c * r.aux[a];
    chk.max_violation = std::max(chk.max_violation, Rational(abs(v)));
  }
  chk.constraints_ok = chk.max_violation <= tol;
  chk.interior_ok = true;
  for (const auto& g : r.blocks) {
    if (!g.is_symmetric()) {
      chk.interior_ok = false;
      break;
    }
    RationalMatrix sh = g;
    for (std::size_t i = 0; i < g.dim(); ++i) sh(i, i) -= tol;
    if (!is_positive_definite(sh)) {
      chk.interior_ok = false;
      break;
    }
  }
  for (const auto& c : r.aux)
    if (c < tol) chk.interior_ok = false;
  chk.frobenius_ok = true;
  for (const auto& g : r.blocks) {
    Rational f2(0);
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = 0; j < g.dim(); ++j) f2 += g(i, j) * g(i, j);
    if (f2 > r_bound * r_bound) chk.frobenius_ok = false;
  }
  return chk;
}

/// Projects onto the equality constraints in multiprecision (minimum Frobenius
/// norm correction), rounds to a dyadic grid and clamps aux weights.
Rounded project_and_round(const System& s, Candidate c, long delta, long mantissa) {
  const std::size_t m = s.rows();
  // K_ik = <A_i, A_k>, exact
  std::map<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>, std::vector<std::pair<std::size_t, Rational>>> loc;
  for (std::size_t i = 0; i < m; ++i)
    for (const auto& e : s.entries[i]) loc[{e.block, e.p, e.q}].emplace_back(i, e.value);
  std::vector<std::vector<std::pair<std::size_t, Rational>>> aux_loc(s.naux);
  for (std::size_t i = 0; i < m; ++i)
    for (const auto& [a, v] : s.aux_coef[i]) aux_loc[a].emplace_back(i, v);
  std::vector<Rational> k(m * m);
  auto accumulate = [&](const std::vector<std::pair<std::size_t, Rational>>& users, const Rational& mult) {
    for (const auto& [i, vi] : users)
      for (const auto& [j, vj] : users) k[i * m + j] += mult * vi * vj;
  };
  for (const auto& [key, users] : loc) accumulate(users, Rational(std::get<1>(key) == std::get<2>(key) ? 1 : 2));
  for (const auto& users : aux_loc) accumulate(users, Rational(1));

  DenseMat<BigFloat> kk(m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) kk(i, j) = BigFloat(k[i * m + j]);
  std::vector<BigFloat> r(m);
  for (std::size_t i = 0; i < m; ++i) {
    BigFloat v(s.rhs[i]);
    v -= apply_row(s.entries[i], [&](const SdpEntry& e) { return c.blocks[e.block](e.p, e.q); });
    for (const auto& [a, coef] : s.aux_coef[i]) v -= BigFloat(coef) * c.aux[a];
    r[i] = v;
  }
  DenseMat<BigFloat> l;
  if (!detail::cholesky(kk, l)) throw SolveError(SolveError::Kind::PrecisionExhausted, "sdp: dependent constraints");
  detail::cholesky_solve(l, r);
  for (std::size_t i = 0; i < m; ++i) {
    for (const auto& e : s.entries[i]) {
      BigFloat d = BigFloat(e.value) * r[i];
      c.blocks[e.block](e.p, e.q) += d;
      if (e.p != e.q) c.blocks[e.block](e.q, e.p) += d;
    }
    for (const auto& [a, coef] : s.aux_coef[i]) c.aux[a] += BigFloat(coef) * r[i];
  }

  const long bits = std::min(mantissa, 2 * delta);
  Rounded out;
  for (const auto& g : c.blocks) {
    const DenseMat<BigFloat> sym = g.symmetrized();
    RationalMatrix q(g.dim());
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = i; j < g.dim(); ++j) {
        q(i, j) = sym(i, j).round_dyadic(bits);
        q(j, i) = q(i, j);
      }
    out.blocks.push_back(std::move(q));
  }
  const Rational floor = pow2(-delta);
  for (const auto& a : c.aux) out.aux.push_back(std::max(a.round_dyadic(bits), floor));
  return out;
}

SolverOutput finalize(const System& s, Candidate c, long delta, const Rational& r_bound, long mantissa,
                      long eig_bits, const std::vector<ExponentVector>& aux_names) {
  Rounded r = project_and_round(s, std::move(c), delta, mantissa);
  SolutionCheck chk = check_system(s, r, delta, r_bound);
  if (!chk.constraints_ok)
    throw SolveError(SolveError::Kind::PrecisionExhausted, "sdp: rounded solution violates constraints by " +
                                                               std::to_string(chk.max_violation.get_d()));
  if (!chk.interior_ok)
    throw SolveError(SolveError::Kind::Infeasible, "sdp: rounded solution is not strictly interior");
  if (!chk.frobenius_ok)
    throw SolveError(SolveError::Kind::PrecisionExhausted, "sdp: Frobenius norm exceeds R");
  SolverOutput out;
  out.achieved_delta = delta;
  out.mantissa_bits = mantissa;
  for (auto& g : r.blocks) {
    out.eig_bounds.push_back(min_eig_lower_bound(g, delta + eig_bits));
    out.gram_blocks.push_back(std::move(g));
  }
  for (std::size_t a = 0; a < r.aux.size(); ++a) out.aux_weights.emplace(aux_names[a], r.aux[a]);
  return out;
}

SolverOutput solve_system(const System& s, long delta, const Rational& r_bound, const SolveOptions& opt,
                          const std::vector<ExponentVector>& aux_names) {
  if (delta < 1) throw Error("sdp: delta must be at least 1");
  if (r_bound < 1) throw Error("sdp: R must be at least 1");
  const long mantissa = opt.mantissa_bits > 0 ? opt.mantissa_bits : default_mantissa(delta, r_bound);
  if (mantissa > opt.mantissa_cap)
    throw SolveError(SolveError::Kind::PrecisionExhausted,
                     "sdp: mantissa " + std::to_string(mantissa) + " exceeds the cap");
  const Scaling sc = make_scaling(s, r_bound);
  const detail::LinearSdp lin = margin_sdp(s, sc);
  const Rational thr_s = pow2(-delta) / sc.sigma;
  const double sigma = sc.sigma.get_d();

  detail::ScopedPrecision prec(mantissa);
  // Infeasibility caused only by the radius bound is a precision failure: a
  // larger R would help, a smaller eps would not.
  auto infeasible = [&](double t_upper) {
    if (r_bound / sc.sigma < radius_cap(sc)) {
      const Scaling wide = make_scaling(s, r_bound, true);
      if (double_phase(margin_sdp(s, wide), s, wide, thr_s).kind == PhaseKind::Converged)
        return SolveError(SolveError::Kind::PrecisionExhausted,
                          "sdp: feasible only beyond the radius bound R = " + to_short_string(r_bound));
    }
    return SolveError(SolveError::Kind::Infeasible,
                      "sdp: no strictly feasible Gram matrix (margin bound " + std::to_string(t_upper * sigma) + ")",
                      t_upper * sigma);
  };
  PhaseResult dbl = double_phase(lin, s, sc, thr_s);
  if (dbl.kind == PhaseKind::Infeasible) throw infeasible(dbl.t_upper);
  if (dbl.kind == PhaseKind::Converged) {
    try {
      SolverOutput out = finalize(s, std::move(dbl.cand), delta, r_bound, mantissa, opt.eig_extra_bits, aux_names);
      out.margin_estimate = dbl.t_primal * sigma;
      out.iterations = dbl.iterations;
      return out;
    } catch (const SolveError&) {
      // double precision was not enough; fall through to the multiprecision run
    }
  }
  PhaseResult mp = multiprecision_phase(lin, s, sc, thr_s, mantissa, opt.max_iterations);
  if (mp.kind == PhaseKind::Infeasible) throw infeasible(mp.t_upper);
  if (mp.kind == PhaseKind::Undecided)
    throw SolveError(SolveError::Kind::PrecisionExhausted,
                     "sdp: solver stalled at mantissa " + std::to_string(mantissa), mp.t_upper * sigma);
  SolverOutput out = finalize(s, std::move(mp.cand), delta, r_bound, mantissa, opt.eig_extra_bits, aux_names);
  out.margin_estimate = mp.t_primal * sigma;
  out.iterations = dbl.iterations + mp.iterations;
  return out;
}

Rounded rounded_of(const SolverOutput& out, const std::vector<ExponentVector>& aux_names) {
  Rounded r;
  r.blocks = out.gram_blocks;
  for (const auto& a : aux_names) {
    auto it = out.aux_weights.find(a);
    r.aux.push_back(it == out.aux_weights.end() ? Rational(0) : it->second);
  }
  return r;
}

}  // namespace

SolverOutput solve(const GramProblem& problem, long delta, const Rational& r_bound, const SolveOptions& options) {
  return solve_system(system_of(problem), delta, r_bound, options, {});
}

SolverOutput solve(const BlockGramProblem& problem, long delta, const Rational& r_bound,
                   const SolveOptions& options) {
  return solve_system(system_of(problem), delta, r_bound, options, problem.aux_constraints);
}

SolutionCheck check_solution(const GramProblem& problem, const SolverOutput& out, long delta,
                             const Rational& r_bound) {
  const System s = system_of(problem);
  if (out.gram_blocks.size() != 1 || out.gram_blocks[0].dim() != problem.basis.size())
    throw DimensionError("check_solution: block shape mismatch");
  return check_system(s, rounded_of(out, {}), delta, r_bound);
}

SolutionCheck check_solution(const BlockGramProblem& problem, const SolverOutput& out, long delta,
                             const Rational& r_bound) {
  const System s = system_of(problem);
  if (out.gram_blocks.size() != s.dims.size()) throw DimensionError("check_solution: block count mismatch");
  for (std::size_t b = 0; b < s.dims.size(); ++b)
    if (out.gram_blocks[b].dim() != s.dims[b]) throw DimensionError("check_solution: block shape mismatch");
  return check_system(s, rounded_of(out, problem.aux_constraints), delta, r_bound);
}

SolverOutput finalize_external(const GramProblem& problem,
                               const std::vector<std::vector<std::vector<double>>>& blocks, long delta,
                               const Rational& r_bound, const SolveOptions& options) {
  const System s = system_of(problem);
  if (blocks.size() != 1 || blocks[0].size() != problem.basis.size())
    throw DimensionError("external solution: block shape mismatch");
  const long mantissa = options.mantissa_bits > 0 ? options.mantissa_bits : default_mantissa(delta, r_bound);
  detail::ScopedPrecision prec(mantissa);
  Candidate c;
  DenseMat<BigFloat> g(problem.basis.size());
  for (std::size_t i = 0; i < g.dim(); ++i) {
    if (blocks[0][i].size() != g.dim()) throw DimensionError("external solution: row length mismatch");
    for (std::size_t j = 0; j < g.dim(); ++j) g(i, j) = BigFloat(blocks[0][i][j]);
  }
  c.blocks.push_back(std::move(g));
  return finalize(s, std::move(c), delta, r_bound, mantissa, options.eig_extra_bits, {});
}

}  // namespace exactsos
