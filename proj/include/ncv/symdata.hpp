#ifndef NCV_SYMDATA_HPP
#define NCV_SYMDATA_HPP

#include "ncv/core.hpp"
#include "ncv/hilbert.hpp"
#include "ncv/kahler.hpp"
#include "ncv/operators.hpp"

namespace ncv {

/// The noncommutative value of an observable at a state: the function value
/// together with the covector X_n = i d_n f, its antiholomorphic partner
/// Xbar_n = -i dbar_n f and the second derivatives K(m, n) = K_{m nbar} =
/// -i d_m dbar_n f.
///
/// In the HilbertFlat chart `f` holds H_beta; otherwise it holds f_beta.
/// AffineFS components are indexed by w^1..w^{d-1}, so X has length d-1.
/// `state` is the point of evaluation: the raw state for HilbertFlat and
/// HomogeneousFS, the phase-fixed representative for AffineFS.
template <typename Real>
struct SymmetryData {
  Chart chart;
  Complex<Real> f;
  Vector<Real> X;
  Vector<Real> Xbar;
  Matrix<Real> K;
  StateVector<Real> state;

  Eigen::Index dim() const { return X.size(); }
  Real hbar() const { return state.hbar(); }

  /// Value and first derivatives in the form the star products consume.
  FirstJet<Real> jet() const {
    const Complex<Real> i(0, 1);
    return {f, -i * X, i * Xbar};
  }
};

namespace detail {

template <typename Real>
void require_same_point(const SymmetryData<Real>& a, const SymmetryData<Real>& b, Chart chart) {
  if (a.chart != chart || b.chart != chart) {
    throw Error(ErrorCode::StateMismatch, std::string("expected symmetry data in chart ") + chart_tag(chart));
  }
  if (!(a.state == b.state)) {
    throw Error(ErrorCode::StateMismatch, "symmetry data evaluated at different states");
  }
}

template <typename Real>
void require_metric_at(const MetricChart<Real>& metric, Chart chart, const Vector<Real>& point) {
  if (metric.chart != chart) throw Error(ErrorCode::StateMismatch, "metric belongs to another chart");
  if (metric.point.size() != point.size() || metric.point != point) {
    throw Error(ErrorCode::StateMismatch, "metric evaluated at a different point");
  }
}

/// Triplet of f = v^dag B v / |v|^2 over all d homogeneous slots of v.
template <typename Real>
void projective_triplet(const Matrix<Real>& B, const Vector<Real>& v, Complex<Real>& f, Vector<Real>& X,
                        Vector<Real>& Xbar, Matrix<Real>& K) {
  const Complex<Real> i(0, 1);
  const Real n2 = v.squaredNorm();
  const Vector<Real> vbar = v.conjugate();
  f = v.dot(B * v) / n2;
  X = (-i / n2) * (f * vbar - B.transpose() * vbar);
  Xbar = (i / n2) * (f * v - B * v);
  const Eigen::Index d = v.size();
  K = (i / n2) * (f * Matrix<Real>::Identity(d, d) + i * vbar * Xbar.transpose() - i * X * v.transpose() -
                  B.transpose());
}

}  // namespace detail

/// Value of H_beta on the flat Hilbert space. K is state independent and
/// equals -(i/2hbar) <n|beta|m>.
template <typename Real>
SymmetryData<Real> symdata_H(const Observable<Real>& beta, const StateVector<Real>& s) {
  detail::require_dim(beta, s.dim());
  const Complex<Real> c(0, 1 / (2 * s.hbar()));
  const Matrix<Real>& B = beta.matrix();
  const Vector<Real>& z = s.coords();
  return {Chart::HilbertFlat, H_function(beta, s), c * (B.transpose() * z.conjugate()), -c * (B * z),
          -c * B.transpose(), s};
}

/// Value of f_beta in homogeneous coordinates, evaluated at the raw |z|^2.
template <typename Real>
SymmetryData<Real> symdata_z(const Observable<Real>& beta, const StateVector<Real>& s) {
  detail::require_dim(beta, s.dim());
  SymmetryData<Real> out{Chart::HomogeneousFS, {}, {}, {}, {}, s};
  detail::projective_triplet(beta.matrix(), s.coords(), out.f, out.X, out.Xbar, out.K);
  return out;
}

/// Value of f_beta in the affine chart. Sums run over m = 0 with w^0 = 1;
/// the returned components cover n = 1..d-1 only.
template <typename Real>
SymmetryData<Real> symdata_w(const Observable<Real>& beta, const PhysicalState<Real>& p) {
  detail::require_dim(beta, p.dim());
  const Vector<Real> W = detail::with_unit_slot(p.affine());
  Complex<Real> f;
  Vector<Real> X, Xbar;
  Matrix<Real> K;
  detail::projective_triplet(beta.matrix(), W, f, X, Xbar, K);
  const Eigen::Index n = p.dim() - 1;
  return {Chart::AffineFS, f, X.tail(n), Xbar.tail(n), K.bottomRightCorner(n, n), p.state()};
}

template <typename Real>
SymmetryData<Real> symdata_w(const Observable<Real>& beta, const StateVector<Real>& s) {
  return symdata_w(beta, normalize_ray(s));
}

template <typename Real>
SymmetryData<Real> symdata(Chart chart, const Observable<Real>& beta, const PhysicalState<Real>& p) {
  switch (chart) {
    case Chart::HilbertFlat: return symdata_H(beta, p.state());
    case Chart::HomogeneousFS: return symdata_z(beta, p.state());
    case Chart::AffineFS: return symdata_w(beta, p);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown chart");
}

template <typename Real>
SymmetryData<Real> symdata(Chart chart, const Observable<Real>& beta, const StateVector<Real>& s) {
  if (chart == Chart::AffineFS) return symdata_w(beta, s);
  return chart == Chart::HilbertFlat ? symdata_H(beta, s) : symdata_z(beta, s);
}

/// Value of beta*gamma on the flat Hilbert space from the values of beta and gamma.
template <typename Real>
SymmetryData<Real> sd_product_H(const SymmetryData<Real>& a, const SymmetryData<Real>& b) {
  detail::require_same_point(a, b, Chart::HilbertFlat);
  const Complex<Real> c(0, 2 * a.hbar());
  return {Chart::HilbertFlat,
          Real(2) * a.hbar() * (a.X.transpose() * b.Xbar).value(),
          c * (b.K * a.X),
          c * (a.K.transpose() * b.Xbar),
          c * (b.K * a.K),
          a.state};
}

/// Product law in homogeneous coordinates. `metric` must be the homogeneous
/// metric at the shared state; its lowered part enters the K line.
template <typename Real>
SymmetryData<Real> sd_product_z(const SymmetryData<Real>& a, const SymmetryData<Real>& b,
                                const MetricChart<Real>& metric) {
  detail::require_same_point(a, b, Chart::HomogeneousFS);
  detail::require_metric_at(metric, Chart::HomogeneousFS, a.state.coords());
  const Complex<Real> i(0, 1);
  const Real n2 = a.state.norm2();
  const Complex<Real> s = (a.X.transpose() * b.Xbar).value();

  SymmetryData<Real> out{Chart::HomogeneousFS, {}, {}, {}, {}, a.state};
  out.f = a.f * b.f + n2 * s;
  out.X = a.f * b.X + b.f * a.X + i * n2 * (b.K * a.X);
  out.Xbar = a.f * b.Xbar + b.f * a.Xbar + i * n2 * (a.K.transpose() * b.Xbar);
  out.K = a.f * b.K + b.f * a.K + i * n2 * (b.K * a.K) - i * b.X * a.Xbar.transpose() +
          (i * n2 * s / metric.hbar) * metric.g;
  return out;
}

template <typename Real>
SymmetryData<Real> sd_product_z(const SymmetryData<Real>& a, const SymmetryData<Real>& b) {
  return sd_product_z(a, b, homogeneous_metric(a.state));
}

/// Product law in the affine chart, contracted with the affine Fubini-Study
/// metric at the shared ray.
template <typename Real>
SymmetryData<Real> sd_product_w(const SymmetryData<Real>& a, const SymmetryData<Real>& b,
                                const MetricChart<Real>& metric) {
  detail::require_same_point(a, b, Chart::AffineFS);
  detail::require_metric_at(metric, Chart::AffineFS, affine_coordinates(a.state));
  const Complex<Real> ih(0, metric.hbar);
  const Complex<Real> i(0, 1);
  const Matrix<Real>& gi = metric.g_inv;
  const Complex<Real> s = (a.X.transpose() * gi * b.Xbar).value();

  SymmetryData<Real> out{Chart::AffineFS, {}, {}, {}, {}, a.state};
  out.f = a.f * b.f + metric.hbar * s;
  out.X = a.f * b.X + b.f * a.X + ih * (b.K * gi.transpose() * a.X);
  out.Xbar = a.f * b.Xbar + b.f * a.Xbar + ih * (a.K.transpose() * gi * b.Xbar);
  out.K = a.f * b.K + b.f * a.K + ih * (b.K * gi.transpose() * a.K) - i * b.X * a.Xbar.transpose() +
          (i * s) * metric.g;
  return out;
}

template <typename Real>
SymmetryData<Real> sd_product_w(const SymmetryData<Real>& a, const SymmetryData<Real>& b) {
  return sd_product_w(a, b, affine_metric(affine_coordinates(a.state), a.hbar()));
}

/// Chart-dispatching product of two values at the same state.
template <typename Real>
SymmetryData<Real> sd_product(const SymmetryData<Real>& a, const SymmetryData<Real>& b) {
  switch (a.chart) {
    case Chart::HilbertFlat: return sd_product_H(a, b);
    case Chart::HomogeneousFS: return sd_product_z(a, b);
    case Chart::AffineFS: return sd_product_w(a, b);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown chart");
}

template <typename Real>
SymmetryData<Real> operator+(const SymmetryData<Real>& a, const SymmetryData<Real>& b) {
  detail::require_same_point(a, b, a.chart);
  return {a.chart, a.f + b.f, a.X + b.X, a.Xbar + b.Xbar, a.K + b.K, a.state};
}

template <typename Real>
SymmetryData<Real> operator-(const SymmetryData<Real>& a, const SymmetryData<Real>& b) {
  detail::require_same_point(a, b, a.chart);
  return {a.chart, a.f - b.f, a.X - b.X, a.Xbar - b.Xbar, a.K - b.K, a.state};
}

template <typename Real>
SymmetryData<Real> operator*(const Complex<Real>& alpha, const SymmetryData<Real>& a) {
  return {a.chart, alpha * a.f, alpha * a.X, alpha * a.Xbar, alpha * a.K, a.state};
}

/// Worst componentwise residual of `a` against reference `b` over f, X, Xbar and K.
template <typename Real>
struct TripletResidual {
  Real f = 0, X = 0, Xbar = 0, K = 0;
  Real max() const { return std::max(std::max(f, X), std::max(Xbar, K)); }
};

template <typename Real>
TripletResidual<Real> triplet_residual(const SymmetryData<Real>& a, const SymmetryData<Real>& b,
                                       const Tolerance<Real>& tol = {}) {
  return {residual(a.f, b.f, tol), residual(a.X, b.X, tol), residual(a.Xbar, b.Xbar, tol), residual(a.K, b.K, tol)};
}

using SymmetryDatad = SymmetryData<double>;

}  // namespace ncv

#endif  // NCV_SYMDATA_HPP
