#pragma once

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "bigfloat.hpp"
#include "dense.hpp"

namespace exactsos::detail {

/// Entry of a symmetric constraint matrix; an off-diagonal entry (p, q) stands
/// for both (p, q) and (q, p).
struct SdpEntry {
  std::uint32_t block, p, q;
  Rational value;
};

/// min c^T x  s.t.  sum_b A_ib . X_b + a_i^T x = b_i,  X_b psd, x >= 0.
/// Block costs are zero, which is all the margin formulation needs.
struct LinearSdp {
  std::vector<std::size_t> block_dims;
  std::size_t lp_dim = 0;
  std::vector<std::vector<SdpEntry>> a_blocks;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> a_lp;
  std::vector<Rational> rhs;
  std::vector<Rational> lp_cost;
  std::size_t rows() const { return rhs.size(); }
};

template <class T>
struct IpmStatus {
  T primal_obj, dual_obj;
  T primal_infeas, dual_infeas;
  T mu;
  int iteration = 0;
};

enum class IpmOutcome { Stopped, IterationLimit, Breakdown };

/// Infeasible-start primal-dual path following with the HKM direction and a
/// Mehrotra predictor-corrector. Templated on the scalar so the same code runs
/// in double and in multiprecision.
template <class T>
class Ipm {
 public:
  Ipm(const LinearSdp& sdp, double x0, double z0) : dims_(sdp.block_dims), nlp_(sdp.lp_dim), m_(sdp.rows()) {
    rows_.resize(m_);
    cols_.resize(nlp_);
    b_.reserve(m_);
    for (std::size_t i = 0; i < m_; ++i) {
      for (const auto& e : sdp.a_blocks[i]) {
        T v = from_rational<T>(e.value);
        rows_[i].push_back({e.block, e.p, e.q, v});
        if (e.p != e.q) rows_[i].push_back({e.block, e.q, e.p, v});
      }
      for (const auto& [k, v] : sdp.a_lp[i]) cols_[k].push_back({i, from_rational<T>(v)});
      b_.push_back(from_rational<T>(sdp.rhs[i]));
    }
    for (const auto& c : sdp.lp_cost) c_.push_back(from_rational<T>(c));
    for (std::size_t d : dims_) {
      pt_X.push_back(DenseMat<T>::identity(d, T(x0)));
      pt_Z.push_back(DenseMat<T>::identity(d, T(z0)));
      n_total_ += d;
    }
    pt_x.assign(nlp_, T(x0));
    pt_z.assign(nlp_, T(z0));
    pt_y.assign(m_, T(0));
    n_total_ += nlp_;
  }

  template <class Stop>
  IpmOutcome run(int max_iterations, Stop&& stop) {
    for (int it = 0; it < max_iterations; ++it) {
      residuals();
      IpmStatus<T> st = status(it);
      if (stop(st)) return IpmOutcome::Stopped;
      if (!step()) return IpmOutcome::Breakdown;
    }
    residuals();
    return stop(status(max_iterations)) ? IpmOutcome::Stopped : IpmOutcome::IterationLimit;
  }

  const std::vector<DenseMat<T>>& X() const { return pt_X; }
  const std::vector<T>& x() const { return pt_x; }
  const std::vector<T>& y() const { return pt_y; }

 private:
  struct Entry {
    std::uint32_t block, p, q;
    T v;
  };
  struct ColEntry {
    std::size_t row;
    T v;
  };

  void residuals() {
    rp_ = b_;
    for (std::size_t i = 0; i < m_; ++i) {
      for (const auto& e : rows_[i]) rp_[i] -= e.v * pt_X[e.block](e.p, e.q);
    }
    for (std::size_t k = 0; k < nlp_; ++k)
      for (const auto& ce : cols_[k]) rp_[ce.row] -= ce.v * pt_x[k];
    adjoint(pt_y, Rd_, rd_);
    for (std::size_t b = 0; b < dims_.size(); ++b) {
      Rd_[b] *= T(-1);
      Rd_[b] -= pt_Z[b];
    }
    for (std::size_t k = 0; k < nlp_; ++k) rd_[k] = c_[k] - rd_[k] - pt_z[k];
  }

  IpmStatus<T> status(int it) const {
    IpmStatus<T> st{T(0), T(0), T(0), T(0), T(0), it};
    for (std::size_t k = 0; k < nlp_; ++k) st.primal_obj += c_[k] * pt_x[k];
    for (std::size_t i = 0; i < m_; ++i) st.dual_obj += b_[i] * pt_y[i];
    for (const auto& r : rp_) st.primal_infeas = std::max(st.primal_infeas, abs_of(r));
    for (const auto& m : Rd_)
      for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) st.dual_infeas = std::max(st.dual_infeas, abs_of(m(i, j)));
    for (const auto& r : rd_) st.dual_infeas = std::max(st.dual_infeas, abs_of(r));
    st.mu = complementarity(pt_X, pt_Z, pt_x, pt_z);
    return st;
  }

  T complementarity(const std::vector<DenseMat<T>>& X, const std::vector<DenseMat<T>>& Z, const std::vector<T>& x,
                    const std::vector<T>& z) const {
    T s(0);
    for (std::size_t b = 0; b < dims_.size(); ++b) s += inner(X[b], Z[b]);
    for (std::size_t k = 0; k < nlp_; ++k) s += x[k] * z[k];
    return s / T(static_cast<double>(n_total_));
  }

  /// blocks = sum_i y_i A_ib, lp = sum_i y_i a_i
  void adjoint(const std::vector<T>& y, std::vector<DenseMat<T>>& blocks, std::vector<T>& lp) const {
    blocks.clear();
    for (std::size_t d : dims_) blocks.emplace_back(d);
    for (std::size_t i = 0; i < m_; ++i)
      for (const auto& e : rows_[i]) blocks[e.block](e.p, e.q) += e.v * y[i];
    lp.assign(nlp_, T(0));
    for (std::size_t k = 0; k < nlp_; ++k)
      for (const auto& ce : cols_[k]) lp[k] += ce.v * y[ce.row];
  }

  /// Largest alpha with X + alpha dX psd and x + alpha dx >= 0 (may be inf).
  double max_step(const std::vector<DenseMat<T>>& X, const std::vector<DenseMat<T>>& dX, const std::vector<T>& x,
                  const std::vector<T>& dx) const {
    double amax = std::numeric_limits<double>::infinity();
    for (std::size_t b = 0; b < X.size(); ++b) {
      DenseMat<T> l;
      if (!cholesky(X[b], l)) return 0;
      DenseMat<T> c = congruence_by_inverse(l, dX[b]);
      const auto d = static_cast<Eigen::Index>(c.dim());
      Eigen::MatrixXd m(d, d);
      for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) m(i, j) = to_double(c(i, j));
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
      const double lam = es.eigenvalues()(0);
      if (lam < 0) amax = std::min(amax, -1.0 / lam);
    }
    for (std::size_t k = 0; k < x.size(); ++k)
      if (dx[k] < T(0)) amax = std::min(amax, to_double(T(x[k] / (-dx[k]))));
    return amax;
  }

  /// Damped step, backed off until the updated point is strictly interior in
  /// the working arithmetic.
  T safe_step(const std::vector<DenseMat<T>>& X, const std::vector<DenseMat<T>>& dX, const std::vector<T>& x,
              const std::vector<T>& dx) const {
    double a = std::min(1.0, 0.95 * max_step(X, dX, x, dx));
    for (int tries = 0; tries < 40 && a > 0; ++tries, a *= 0.8) {
      const T alpha(a);
      bool ok = true;
      for (std::size_t k = 0; k < x.size() && ok; ++k) ok = x[k] + alpha * dx[k] > T(0);
      for (std::size_t b = 0; b < X.size() && ok; ++b) {
        DenseMat<T> l;
        ok = cholesky(X[b] + dX[b] * alpha, l);
      }
      if (ok) return alpha;
    }
    return T(0);
  }

  struct Direction {
    std::vector<DenseMat<T>> dX, dZ;
    std::vector<T> dx, dz, dy;
  };

  Direction solve_direction(const std::vector<DenseMat<T>>& rc_zinv, const std::vector<T>& rc_lp) const {
    Direction d;
    // rhs = rp - A(Rc Z^-1 - X Rd Z^-1) - a (rc - x rd) / z
    std::vector<T> rhs = rp_;
    for (std::size_t i = 0; i < m_; ++i) {
      for (const auto& e : rows_[i]) rhs[i] -= e.v * (rc_zinv[e.block](e.p, e.q) - xrdzinv_[e.block](e.p, e.q));
    }
    for (std::size_t k = 0; k < nlp_; ++k) {
      const T t = (rc_lp[k] - pt_x[k] * rd_[k]) / pt_z[k];
      for (const auto& ce : cols_[k]) rhs[ce.row] -= ce.v * t;
    }
    cholesky_solve(schur_l_, rhs);
    d.dy = std::move(rhs);
    adjoint(d.dy, d.dZ, d.dz);
    for (std::size_t b = 0; b < dims_.size(); ++b) {
      DenseMat<T> dz = Rd_[b] - d.dZ[b];
      d.dZ[b] = dz;
      DenseMat<T> m = rc_zinv[b] - pt_X[b] * dz * zinv_[b];
      d.dX.push_back(m.symmetrized());
    }
    d.dx.resize(nlp_);
    for (std::size_t k = 0; k < nlp_; ++k) {
      d.dz[k] = rd_[k] - d.dz[k];
      d.dx[k] = (rc_lp[k] - pt_x[k] * d.dz[k]) / pt_z[k];
    }
    return d;
  }

  bool build_schur() {
    zinv_.clear();
    for (const auto& z : pt_Z) {
      DenseMat<T> l;
      if (!cholesky(z, l)) return false;
      zinv_.push_back(cholesky_inverse(l));
    }
    DenseMat<T> m(m_);
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t k = i; k < m_; ++k) {
        T s(0);
        for (const auto& e : rows_[i])
          for (const auto& f : rows_[k]) {
            if (e.block != f.block) continue;
            s += e.v * f.v * pt_X[e.block](e.q, f.p) * zinv_[e.block](f.q, e.p);
          }
        m(i, k) = s;
      }
    for (std::size_t k = 0; k < nlp_; ++k) {
      const T w = pt_x[k] / pt_z[k];
      for (const auto& a : cols_[k])
        for (const auto& b : cols_[k])
          if (a.row <= b.row) m(a.row, b.row) += a.v * b.v * w;
    }
    for (std::size_t i = 0; i < m_; ++i)
      for (std::size_t k = 0; k < i; ++k) m(i, k) = m(k, i);
    if (cholesky(m, schur_l_)) return true;
    // Near-singular Schur complement late in the run: regularize lightly.
    T maxd(0);
    for (std::size_t i = 0; i < m_; ++i) maxd = std::max(maxd, abs_of(m(i, i)));
    T reg = maxd * T(1e-14);
    for (int tries = 0; tries < 6; ++tries, reg *= T(100)) {
      DenseMat<T> r = m;
      for (std::size_t i = 0; i < m_; ++i) r(i, i) += reg;
      if (cholesky(r, schur_l_)) return true;
    }
    return false;
  }

  bool step() {
    if (!build_schur()) return false;
    const T mu = complementarity(pt_X, pt_Z, pt_x, pt_z);
    xrdzinv_.clear();
    for (std::size_t b = 0; b < dims_.size(); ++b) xrdzinv_.push_back(pt_X[b] * Rd_[b] * zinv_[b]);

    // predictor
    std::vector<DenseMat<T>> rc(dims_.size());
    for (std::size_t b = 0; b < dims_.size(); ++b) rc[b] = pt_X[b] * T(-1);
    std::vector<T> rc_lp(nlp_);
    for (std::size_t k = 0; k < nlp_; ++k) rc_lp[k] = -(pt_x[k] * pt_z[k]);
    Direction aff = solve_direction(rc, rc_lp);
    const T ap(std::min(1.0, max_step(pt_X, aff.dX, pt_x, aff.dx)));
    const T ad(std::min(1.0, max_step(pt_Z, aff.dZ, pt_z, aff.dz)));
    std::vector<DenseMat<T>> xa, za;
    std::vector<T> xla(nlp_), zla(nlp_);
    for (std::size_t b = 0; b < dims_.size(); ++b) {
      xa.push_back(pt_X[b] + aff.dX[b] * ap);
      za.push_back(pt_Z[b] + aff.dZ[b] * ad);
    }
    for (std::size_t k = 0; k < nlp_; ++k) {
      xla[k] = pt_x[k] + ap * aff.dx[k];
      zla[k] = pt_z[k] + ad * aff.dz[k];
    }
    const T mu_aff = complementarity(xa, za, xla, zla);
    T sigma = mu > T(0) ? mu_aff / mu : T(0);
    sigma = sigma * sigma * sigma;
    if (sigma > T(1)) sigma = T(1);
    const T smu = sigma * mu;

    // corrector
    for (std::size_t b = 0; b < dims_.size(); ++b) {
      rc[b] = zinv_[b] * smu - pt_X[b] - aff.dX[b] * aff.dZ[b] * zinv_[b];
    }
    for (std::size_t k = 0; k < nlp_; ++k) rc_lp[k] = smu - pt_x[k] * pt_z[k] - aff.dx[k] * aff.dz[k];
    Direction d = solve_direction(rc, rc_lp);
    const T alpha_p = safe_step(pt_X, d.dX, pt_x, d.dx);
    const T alpha_d = safe_step(pt_Z, d.dZ, pt_z, d.dz);
    if (!(alpha_p > T(0)) && !(alpha_d > T(0))) return false;
    for (std::size_t b = 0; b < dims_.size(); ++b) {
      pt_X[b] += d.dX[b] * alpha_p;
      pt_Z[b] += d.dZ[b] * alpha_d;
    }
    for (std::size_t k = 0; k < nlp_; ++k) {
      pt_x[k] += alpha_p * d.dx[k];
      pt_z[k] += alpha_d * d.dz[k];
    }
    for (std::size_t i = 0; i < m_; ++i) pt_y[i] += alpha_d * d.dy[i];
    return true;
  }

  std::vector<std::size_t> dims_;
  std::size_t nlp_, m_;
  std::size_t n_total_ = 0;
  std::vector<std::vector<Entry>> rows_;
  std::vector<std::vector<ColEntry>> cols_;
  std::vector<T> b_, c_;

  std::vector<DenseMat<T>> pt_X, pt_Z;
  std::vector<T> pt_x, pt_z, pt_y;

  std::vector<T> rp_, rd_;
  std::vector<DenseMat<T>> Rd_, zinv_, xrdzinv_;
  DenseMat<T> schur_l_;
};

}  // namespace exactsos::detail
