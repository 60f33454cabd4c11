#ifndef NCV_OPERATORS_HPP
#define NCV_OPERATORS_HPP

#include <cmath>
#include <utility>

#include "ncv/core.hpp"

namespace ncv {

/// An operator on the truncated space, held as the dense matrix of its
/// elements <m|beta|n> (row m, column n). Hermiticity is not enforced.
template <typename Real>
class Observable {
 public:
  Observable(Matrix<Real> B, Real hbar) : B_(std::move(B)), hbar_(hbar) {
    if (B_.rows() != B_.cols()) {
      throw Error(ErrorCode::DimensionMismatch, "operator matrix must be square");
    }
    if (B_.rows() < 2) throw Error(ErrorCode::InvalidArgument, "operator dimension must be at least 2");
    if (!(hbar_ > 0)) throw Error(ErrorCode::InvalidArgument, "hbar must be positive");
  }

  Eigen::Index dim() const { return B_.rows(); }
  Real hbar() const { return hbar_; }
  const Matrix<Real>& matrix() const { return B_; }
  const Complex<Real>& operator()(Eigen::Index m, Eigen::Index n) const { return B_(m, n); }

  bool is_hermitian(Real tol = Real(1e-12)) const {
    return (B_ - B_.adjoint()).cwiseAbs().maxCoeff() <= tol * std::max<Real>(Real(1), B_.cwiseAbs().maxCoeff());
  }

  Observable adjoint() const { return Observable(B_.adjoint(), hbar_); }

 private:
  Matrix<Real> B_;
  Real hbar_;
};

namespace detail {

template <typename Real>
void require_compatible(const Observable<Real>& a, const Observable<Real>& b) {
  if (a.dim() != b.dim()) throw Error(ErrorCode::DimensionMismatch, "operators of different dimension");
  if (a.hbar() != b.hbar()) throw Error(ErrorCode::DimensionMismatch, "operators built with different hbar");
}

}  // namespace detail

template <typename Real>
Observable<Real> identity(Eigen::Index dim, Real hbar) {
  return Observable<Real>(Matrix<Real>::Identity(dim, dim), hbar);
}

/// Truncated annihilation/creation pair: a|n> = sqrt(n)|n-1>.
template <typename Real>
std::pair<Observable<Real>, Observable<Real>> ladder(Eigen::Index dim, Real hbar) {
  if (dim < 2) throw Error(ErrorCode::InvalidArgument, "ladder operators need dim >= 2");
  Matrix<Real> a = Matrix<Real>::Zero(dim, dim);
  for (Eigen::Index n = 1; n < dim; ++n) a(n - 1, n) = Complex<Real>(std::sqrt(Real(n)), 0);
  Matrix<Real> ad = a.adjoint();
  return {Observable<Real>(std::move(a), hbar), Observable<Real>(std::move(ad), hbar)};
}

template <typename Real>
Observable<Real> number(Eigen::Index dim, Real hbar) {
  Matrix<Real> n = Matrix<Real>::Zero(dim, dim);
  for (Eigen::Index k = 0; k < dim; ++k) n(k, k) = Complex<Real>(Real(k), 0);
  return Observable<Real>(std::move(n), hbar);
}

/// x = sqrt(hbar/2)(a + a^dag), p = i sqrt(hbar/2)(a^dag - a), unit mass and frequency.
template <typename Real>
std::pair<Observable<Real>, Observable<Real>> position_momentum(Eigen::Index dim, Real hbar) {
  const auto [a, ad] = ladder<Real>(dim, hbar);
  const Real c = std::sqrt(hbar / 2);
  Matrix<Real> x = c * (a.matrix() + ad.matrix());
  Matrix<Real> p = Complex<Real>(0, c) * (ad.matrix() - a.matrix());
  return {Observable<Real>(std::move(x), hbar), Observable<Real>(std::move(p), hbar)};
}

template <typename Real>
Observable<Real> product(const Observable<Real>& a, const Observable<Real>& b) {
  detail::require_compatible(a, b);
  return Observable<Real>(a.matrix() * b.matrix(), a.hbar());
}

template <typename Real>
Observable<Real> operator*(const Observable<Real>& a, const Observable<Real>& b) {
  return product(a, b);
}

template <typename Real>
Observable<Real> operator+(const Observable<Real>& a, const Observable<Real>& b) {
  detail::require_compatible(a, b);
  return Observable<Real>(a.matrix() + b.matrix(), a.hbar());
}

template <typename Real>
Observable<Real> operator-(const Observable<Real>& a, const Observable<Real>& b) {
  detail::require_compatible(a, b);
  return Observable<Real>(a.matrix() - b.matrix(), a.hbar());
}

template <typename Real>
Observable<Real> operator*(const Complex<Real>& alpha, const Observable<Real>& a) {
  return Observable<Real>(alpha * a.matrix(), a.hbar());
}

template <typename Real>
Observable<Real> commutator(const Observable<Real>& a, const Observable<Real>& b) {
  detail::require_compatible(a, b);
  return Observable<Real>(a.matrix() * b.matrix() - b.matrix() * a.matrix(), a.hbar());
}

template <typename Real>
Observable<Real> anticommutator(const Observable<Real>& a, const Observable<Real>& b) {
  detail::require_compatible(a, b);
  return Observable<Real>(a.matrix() * b.matrix() + b.matrix() * a.matrix(), a.hbar());
}

/// beta^k by repeated multiplication; beta^0 is the identity.
template <typename Real>
Observable<Real> power(const Observable<Real>& a, int k) {
  Matrix<Real> out = Matrix<Real>::Identity(a.dim(), a.dim());
  for (int i = 0; i < k; ++i) out = out * a.matrix();
  return Observable<Real>(std::move(out), a.hbar());
}

/// A = Re + i Im with Re = (A + A^dag)/2 and Im = (A - A^dag)/2i, both Hermitian.
template <typename Real>
std::pair<Observable<Real>, Observable<Real>> hermitian_split(const Observable<Real>& a) {
  const Matrix<Real>& B = a.matrix();
  Matrix<Real> re = (B + B.adjoint()) / Real(2);
  Matrix<Real> im = (B - B.adjoint()) / Complex<Real>(0, 2);
  return {Observable<Real>(std::move(re), a.hbar()), Observable<Real>(std::move(im), a.hbar())};
}

/// Kronecker product; basis pair (m1, m2) maps to m1 * d2 + m2.
template <typename Real>
Observable<Real> tensor(const Observable<Real>& a, const Observable<Real>& b, Eigen::Index max_dim = 64) {
  if (a.hbar() != b.hbar()) throw Error(ErrorCode::DimensionMismatch, "operators built with different hbar");
  const Eigen::Index d1 = a.dim(), d2 = b.dim();
  if (d1 * d2 > max_dim) {
    throw Error(ErrorCode::DimensionTooLarge,
                "tensor dimension " + std::to_string(d1 * d2) + " exceeds " + std::to_string(max_dim));
  }
  Matrix<Real> out(d1 * d2, d1 * d2);
  for (Eigen::Index i = 0; i < d1; ++i)
    for (Eigen::Index j = 0; j < d1; ++j) out.block(i * d2, j * d2, d2, d2) = a(i, j) * b.matrix();
  return Observable<Real>(std::move(out), a.hbar());
}

template <typename Real>
struct Eigensystem {
  Eigen::Matrix<Real, Eigen::Dynamic, 1> values;  // ascending
  Matrix<Real> vectors;                           // column k pairs with values(k)
};

/// Spectral decomposition of a Hermitian operator.
template <typename Real>
Eigensystem<Real> eigendecompose(const Observable<Real>& a) {
  if (!a.is_hermitian()) throw Error(ErrorCode::NotHermitian, "eigendecompose requires a Hermitian operator");
  const Matrix<Real> herm = (a.matrix() + a.matrix().adjoint()) / Real(2);
  Eigen::SelfAdjointEigenSolver<Matrix<Real>> solver(herm);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::ConvergenceFailure, "Hermitian eigensolver did not converge");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

using Observabled = Observable<double>;

}  // namespace ncv

#endif  // NCV_OPERATORS_HPP
