#ifndef NCV_RANDOM_HPP
#define NCV_RANDOM_HPP

#include <random>

#include "ncv/core.hpp"
#include "ncv/hilbert.hpp"
#include "ncv/operators.hpp"

namespace ncv {

// Entries are i.i.d. with real and imaginary parts uniform on [-1, 1].
// Callers own the generator; nothing here touches global random state.

template <typename Real, typename Rng>
Complex<Real> random_complex(Rng& rng) {
  std::uniform_real_distribution<Real> u(Real(-1), Real(1));
  const Real re = u(rng);
  const Real im = u(rng);
  return {re, im};
}

template <typename Real, typename Rng>
Matrix<Real> random_matrix(Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  Matrix<Real> m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = random_complex<Real>(rng);
  return m;
}

template <typename Real, typename Rng>
Observable<Real> random_operator(Eigen::Index dim, Real hbar, Rng& rng) {
  return Observable<Real>(random_matrix<Real>(dim, dim, rng), hbar);
}

template <typename Real, typename Rng>
Observable<Real> random_hermitian(Eigen::Index dim, Real hbar, Rng& rng) {
  const Matrix<Real> a = random_matrix<Real>(dim, dim, rng);
  return Observable<Real>((a + a.adjoint()) / Real(2), hbar);
}

/// Random operator redrawn until its condition number is at most `max_condition`.
template <typename Real, typename Rng>
Observable<Real> random_invertible(Eigen::Index dim, Real hbar, Rng& rng, Real max_condition = Real(1e6)) {
  for (;;) {
    Matrix<Real> a = random_matrix<Real>(dim, dim, rng);
    Eigen::JacobiSVD<Matrix<Real>> svd(a);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) > 0 && sv(0) / sv(sv.size() - 1) <= max_condition) {
      return Observable<Real>(std::move(a), hbar);
    }
  }
}

template <typename Real, typename Rng>
StateVector<Real> random_state(Eigen::Index dim, Real hbar, Rng& rng) {
  return StateVector<Real>(random_matrix<Real>(dim, 1, rng), hbar);
}

}  // namespace ncv

#endif  // NCV_RANDOM_HPP
