#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace exactsos::detail {

/// Minimal square dense matrix for the interior-point iterations; works for
/// double and BigFloat alike.
template <class T>
class DenseMat {
 public:
  DenseMat() = default;
  explicit DenseMat(std::size_t n) : n_(n), a_(n * n, T(0)) {}

  static DenseMat identity(std::size_t n, const T& scale = T(1)) {
    DenseMat m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = scale;
    return m;
  }

  std::size_t dim() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }

  DenseMat transpose() const {
    DenseMat t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// (M + M^T) / 2
  DenseMat symmetrized() const {
    DenseMat s(n_);
    const T half(0.5);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) s(i, j) = ((*this)(i, j) + (*this)(j, i)) * half;
    return s;
  }

  DenseMat& operator+=(const DenseMat& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] += o.a_[k];
    return *this;
  }
  DenseMat& operator-=(const DenseMat& o) {
    for (std::size_t k = 0; k < a_.size(); ++k) a_[k] -= o.a_[k];
    return *this;
  }
  DenseMat& operator*=(const T& s) {
    for (auto& v : a_) v *= s;
    return *this;
  }
  friend DenseMat operator+(DenseMat a, const DenseMat& b) { return a += b; }
  friend DenseMat operator-(DenseMat a, const DenseMat& b) { return a -= b; }
  friend DenseMat operator*(DenseMat a, const T& s) { return a *= s; }

  friend DenseMat operator*(const DenseMat& a, const DenseMat& b) {
    const std::size_t n = a.n_;
    DenseMat c(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const T& aik = a(i, k);
        for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  /// sum_ij A_ij B_ij
  friend T inner(const DenseMat& a, const DenseMat& b) {
    T s(0);
    for (std::size_t k = 0; k < a.a_.size(); ++k) s += a.a_[k] * b.a_[k];
    return s;
  }

  T trace() const {
    T s(0);
    for (std::size_t i = 0; i < n_; ++i) s += (*this)(i, i);
    return s;
  }

 private:
  std::size_t n_ = 0;
  std::vector<T> a_;
};

/// Lower Cholesky factor of a symmetric matrix; false if not numerically PD.
template <class T>
bool cholesky(const DenseMat<T>& a, DenseMat<T>& l) {
  using std::sqrt;
  const std::size_t n = a.dim();
  l = DenseMat<T>(n);
  for (std::size_t j = 0; j < n; ++j) {
    T d = a(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
    if (!(d > T(0))) return false;
    l(j, j) = sqrt(d);
    for (std::size_t i = j + 1; i < n; ++i) {
      T s = a(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return true;
}

/// Solves L L^T x = b in place.
template <class T>
void cholesky_solve(const DenseMat<T>& l, std::vector<T>& b) {
  const std::size_t n = l.dim();
  for (std::size_t i = 0; i < n; ++i) {
    T s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * b[k];
    b[i] = s / l(i, i);
  }
  for (std::size_t i = n; i-- > 0;) {
    T s = b[i];
    for (std::size_t k = i + 1; k < n; ++k) s -= l(k, i) * b[k];
    b[i] = s / l(i, i);
  }
}

/// L^-1 M for lower-triangular L.
template <class T>
DenseMat<T> lower_solve(const DenseMat<T>& l, const DenseMat<T>& m) {
  const std::size_t n = l.dim();
  DenseMat<T> y(n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t i = 0; i < n; ++i) {
      T s = m(i, c);
      for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * y(k, c);
      y(i, c) = s / l(i, i);
    }
  return y;
}

/// (L L^T)^-1
template <class T>
DenseMat<T> cholesky_inverse(const DenseMat<T>& l) {
  const std::size_t n = l.dim();
  DenseMat<T> linv = lower_solve(l, DenseMat<T>::identity(n));
  DenseMat<T> inv(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      T s(0);
      for (std::size_t k = std::max(i, j); k < n; ++k) s += linv(k, i) * linv(k, j);
      inv(i, j) = s;
      inv(j, i) = s;
    }
  return inv;
}

/// L^-1 M L^-T
template <class T>
DenseMat<T> congruence_by_inverse(const DenseMat<T>& l, const DenseMat<T>& m) {
  DenseMat<T> y = lower_solve(l, m);
  DenseMat<T> z = lower_solve(l, y.transpose());
  return z.symmetrized();
}

}  // namespace exactsos::detail
