#ifndef NCV_HILBERT_HPP
#define NCV_HILBERT_HPP

#include <cmath>
#include <optional>
#include <string>

#include "ncv/core.hpp"

namespace ncv {

/// A point z of the truncated Hilbert space, with coordinates z^n in the
/// basis |0>..|d-1> and the hbar convention it was built under.
template <typename Real>
class StateVector {
 public:
  StateVector(Vector<Real> z, Real hbar) : z_(std::move(z)), hbar_(hbar) {
    if (z_.size() < 2) {
      throw Error(ErrorCode::InvalidArgument, "state dimension must be at least 2");
    }
    if (!(hbar_ > 0)) {
      throw Error(ErrorCode::InvalidArgument, "hbar must be positive");
    }
    if (norm2() <= Real(1e-30)) {
      throw Error(ErrorCode::ZeroVector, "state vector has zero norm");
    }
  }

  Eigen::Index dim() const { return z_.size(); }
  Real hbar() const { return hbar_; }
  const Vector<Real>& coords() const { return z_; }
  const Complex<Real>& operator[](Eigen::Index n) const { return z_(n); }

  /// |z|^2 = sum_n conj(z^n) z^n
  Real norm2() const { return z_.squaredNorm(); }

  friend bool operator==(const StateVector& a, const StateVector& b) {
    return a.hbar_ == b.hbar_ && a.z_.size() == b.z_.size() && a.z_ == b.z_;
  }

 private:
  Vector<Real> z_;
  Real hbar_;
};

/// A ray, stored as its phase-fixed representative with |z|^2 = 2 hbar.
/// The affine coordinates exist only when z^0 != 0.
template <typename Real>
class PhysicalState {
 public:
  PhysicalState(StateVector<Real> fixed, std::optional<Vector<Real>> w)
      : fixed_(std::move(fixed)), w_(std::move(w)) {}

  Eigen::Index dim() const { return fixed_.dim(); }
  Real hbar() const { return fixed_.hbar(); }
  const StateVector<Real>& state() const { return fixed_; }
  const Vector<Real>& coords() const { return fixed_.coords(); }
  bool chart_valid() const { return w_.has_value(); }

  const Vector<Real>& affine() const {
    if (!w_) throw Error(ErrorCode::ChartUndefined, "affine chart undefined where z^0 = 0");
    return *w_;
  }

 private:
  StateVector<Real> fixed_;
  std::optional<Vector<Real>> w_;
};

namespace detail {

template <typename Real>
bool is_zero_component(const Complex<Real>& c, Real norm2) {
  return std::norm(c) <= Real(1e-30) * norm2;
}

}  // namespace detail

/// Componentwise w^n = z^n / z^0 for n = 1..d-1 on a raw state.
template <typename Real>
Vector<Real> affine_coordinates(const StateVector<Real>& s) {
  if (detail::is_zero_component(s[0], s.norm2())) {
    throw Error(ErrorCode::ChartUndefined, "affine chart undefined where z^0 = 0");
  }
  return s.coords().tail(s.dim() - 1) / s[0];
}

/// Unique representative of the ray through s with |z|^2 = 2 hbar and the
/// phase fixed so z^0 is real and positive. When z^0 vanishes the phase is
/// fixed on the lowest-index nonzero component and the affine chart is
/// marked undefined.
template <typename Real>
PhysicalState<Real> normalize_ray(const StateVector<Real>& s) {
  const Real n2 = s.norm2();
  Eigen::Index pivot = 0;
  while (detail::is_zero_component(s[pivot], n2)) ++pivot;

  const Complex<Real> phase = s[pivot] / std::abs(s[pivot]);
  const Real scale = std::sqrt(2 * s.hbar() / n2);
  Vector<Real> z = s.coords() * (std::conj(phase) * scale);
  z(pivot) = Complex<Real>(std::abs(z(pivot)), 0);
  for (Eigen::Index n = 0; n < pivot; ++n) z(n) = Complex<Real>(0, 0);

  StateVector<Real> fixed(std::move(z), s.hbar());
  std::optional<Vector<Real>> w;
  if (pivot == 0) w = fixed.coords().tail(fixed.dim() - 1) / fixed[0];
  return PhysicalState<Real>(std::move(fixed), std::move(w));
}

template <typename Real>
Vector<Real> to_affine(const PhysicalState<Real>& p) {
  return p.affine();
}

/// |<a|b>|^2 / (|a|^2 |b|^2), which is 1 exactly when a and b span the same ray.
template <typename Real>
Real ray_fidelity(const StateVector<Real>& a, const StateVector<Real>& b) {
  if (a.dim() != b.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "states of different dimension");
  }
  return std::norm(a.coords().dot(b.coords())) / (a.norm2() * b.norm2());
}

template <typename Real>
bool ray_equal(const StateVector<Real>& a, const StateVector<Real>& b, Real rel_tol = Real(1e-10)) {
  return ray_fidelity(a, b) >= 1 - rel_tol;
}

/// |k> scaled to the preferred normalization |z|^2 = 2 hbar.
template <typename Real>
StateVector<Real> basis_state(Eigen::Index dim, Eigen::Index k, Real hbar) {
  if (k < 0 || k >= dim) throw Error(ErrorCode::InvalidArgument, "basis index out of range");
  Vector<Real> z = Vector<Real>::Zero(dim);
  z(k) = Complex<Real>(std::sqrt(2 * hbar), 0);
  return StateVector<Real>(std::move(z), hbar);
}

/// The state (1, w^1, .., w^{d-1}) for given affine coordinates.
template <typename Real>
StateVector<Real> from_affine(const Vector<Real>& w, Real hbar) {
  Vector<Real> z(w.size() + 1);
  z(0) = Complex<Real>(1, 0);
  z.tail(w.size()) = w;
  return StateVector<Real>(std::move(z), hbar);
}

using StateVectord = StateVector<double>;
using PhysicalStated = PhysicalState<double>;

}  // namespace ncv

#endif  // NCV_HILBERT_HPP
