#ifndef NCV_KAHLER_HPP
#define NCV_KAHLER_HPP

#include "ncv/core.hpp"
#include "ncv/hilbert.hpp"
#include "ncv/operators.hpp"

namespace ncv {

namespace detail {

template <typename Real>
void require_dim(const Observable<Real>& beta, Eigen::Index dim) {
  if (beta.dim() != dim) {
    throw Error(ErrorCode::DimensionMismatch, "operator dimension " + std::to_string(beta.dim()) +
                                                  " does not match state dimension " + std::to_string(dim));
  }
}

/// (1, w^1, .., w^{d-1}): the affine point with the w^0 = 1 slot prepended.
template <typename Real>
Vector<Real> with_unit_slot(const Vector<Real>& w) {
  Vector<Real> W(w.size() + 1);
  W(0) = Complex<Real>(1, 0);
  W.tail(w.size()) = w;
  return W;
}

}  // namespace detail

/// H_beta(z) = (1/2hbar) sum_mn conj(z^m) z^n <m|beta|n>
template <typename Real>
Complex<Real> H_function(const Observable<Real>& beta, const StateVector<Real>& s) {
  detail::require_dim(beta, s.dim());
  return s.coords().dot(beta.matrix() * s.coords()) / (2 * s.hbar());
}

/// f_beta = (2hbar/|z|^2) H_beta; the expectation value, blind to scale and phase of z.
template <typename Real>
Complex<Real> f_function(const Observable<Real>& beta, const StateVector<Real>& s) {
  detail::require_dim(beta, s.dim());
  return s.coords().dot(beta.matrix() * s.coords()) / s.norm2();
}

/// f_beta as a function of the affine coordinates w^1..w^{d-1}.
template <typename Real>
Complex<Real> f_affine(const Observable<Real>& beta, const Vector<Real>& w) {
  detail::require_dim(beta, w.size() + 1);
  const Vector<Real> W = detail::with_unit_slot(w);
  return W.dot(beta.matrix() * W) / W.squaredNorm();
}

/// Value plus holomorphic (d_n = d/dz^n) and antiholomorphic
/// (dbar_n = d/dconj(z^n)) first derivatives of a function at one point.
template <typename Real>
struct FirstJet {
  Complex<Real> value;
  Vector<Real> d;
  Vector<Real> dbar;
};

/// Metric g_{m nbar} and inverse metric g^{m nbar} of one chart at one point.
/// Rows carry the holomorphic index, columns the antiholomorphic one, so the
/// inverse relation reads sum_n g^{m nbar} g_{k nbar} = delta^m_k.
template <typename Real>
struct MetricChart {
  Chart chart;
  Real hbar;
  Vector<Real> point;  // z for HilbertFlat/HomogeneousFS, w for AffineFS
  Matrix<Real> g_inv;
  Matrix<Real> g;

  Eigen::Index dim() const { return g_inv.rows(); }
};

/// sum_n g_{m nbar} h^{k nbar}, the contraction over the antiholomorphic slot.
template <typename Real>
Matrix<Real> contract_antiholomorphic(const Matrix<Real>& lower, const Matrix<Real>& upper) {
  return lower * upper.transpose();
}

template <typename Real>
MetricChart<Real> hilbert_metric(const StateVector<Real>& s) {
  const Eigen::Index d = s.dim();
  return {Chart::HilbertFlat, s.hbar(), s.coords(), Real(2) * Matrix<Real>::Identity(d, d),
          Matrix<Real>::Identity(d, d) / Real(2)};
}

/// Degenerate Fubini-Study metric in homogeneous coordinates:
/// g^{m nbar} = (|z|^2 delta - z^m conj(z^n)) / hbar and
/// g_{m nbar} = hbar (|z|^2 delta - conj(z_m) z_n) / |z|^4.
template <typename Real>
MetricChart<Real> homogeneous_metric(const StateVector<Real>& s) {
  const Eigen::Index d = s.dim();
  const Vector<Real>& z = s.coords();
  const Real n2 = s.norm2();
  const Matrix<Real> id = Matrix<Real>::Identity(d, d);
  Matrix<Real> g_inv = (n2 * id - z * z.adjoint()) / s.hbar();
  Matrix<Real> g = s.hbar() * (n2 * id - z.conjugate() * z.transpose()) / (n2 * n2);
  return {Chart::HomogeneousFS, s.hbar(), z, std::move(g_inv), std::move(g)};
}

/// Fubini-Study metric in the affine chart:
/// g^{m nbar} = (1 + |w|^2)(delta + w^m conj(w^n)) / hbar and its inverse
/// g_{m nbar} = hbar ((1 + |w|^2) delta - conj(w_m) w_n) / (1 + |w|^2)^2.
template <typename Real>
MetricChart<Real> affine_metric(const Vector<Real>& w, Real hbar) {
  const Eigen::Index d = w.size();
  const Real q = 1 + w.squaredNorm();
  const Matrix<Real> id = Matrix<Real>::Identity(d, d);
  Matrix<Real> g_inv = q * (id + w * w.adjoint()) / hbar;
  Matrix<Real> g = hbar * (q * id - w.conjugate() * w.transpose()) / (q * q);
  return {Chart::AffineFS, hbar, w, std::move(g_inv), std::move(g)};
}

template <typename Real>
MetricChart<Real> metric_chart(Chart chart, const StateVector<Real>& s) {
  switch (chart) {
    case Chart::HilbertFlat: return hilbert_metric(s);
    case Chart::HomogeneousFS: return homogeneous_metric(s);
    case Chart::AffineFS: return affine_metric(affine_coordinates(s), s.hbar());
  }
  throw Error(ErrorCode::InvalidArgument, "unknown chart");
}

template <typename Real>
MetricChart<Real> metric_chart(Chart chart, const PhysicalState<Real>& p) {
  if (chart == Chart::AffineFS) return affine_metric(p.affine(), p.hbar());
  return metric_chart(chart, p.state());
}

/// hbar d_m(a) g^{m nbar} dbar_n(b), the bidifferential part of every Kahler product.
template <typename Real>
Complex<Real> kahler_bracket(const FirstJet<Real>& a, const FirstJet<Real>& b, const MetricChart<Real>& metric) {
  if (a.d.size() != metric.dim() || b.dbar.size() != metric.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "gradient length does not match the metric chart");
  }
  return metric.hbar * (a.d.transpose() * metric.g_inv * b.dbar).value();
}

/// H_beta *_K H_gamma = hbar d_m H_beta G^{m nbar} dbar_n H_gamma with G = 2 delta.
template <typename Real>
Complex<Real> star_K(const FirstJet<Real>& Hb, const FirstJet<Real>& Hg, Real hbar) {
  if (Hb.d.size() != Hg.dbar.size()) throw Error(ErrorCode::DimensionMismatch, "gradient lengths differ");
  return Real(2) * hbar * (Hb.d.transpose() * Hg.dbar).value();
}

/// f_beta *_kappa f_gamma = f_beta f_gamma + hbar d_m f_beta g^{m nbar} dbar_n f_gamma,
/// with the degenerate homogeneous metric.
template <typename Real>
Complex<Real> star_kappa_homogeneous(const FirstJet<Real>& fb, const FirstJet<Real>& fg,
                                     const MetricChart<Real>& metric) {
  if (metric.chart != Chart::HomogeneousFS) {
    throw Error(ErrorCode::InvalidArgument, "star_kappa_homogeneous needs the homogeneous metric");
  }
  return fb.value * fg.value + kahler_bracket(fb, fg, metric);
}

/// Same product in the affine chart, derivatives taken in w^1..w^{d-1}.
template <typename Real>
Complex<Real> star_kappa_affine(const FirstJet<Real>& fb, const FirstJet<Real>& fg, const MetricChart<Real>& metric) {
  if (metric.chart != Chart::AffineFS) {
    throw Error(ErrorCode::ChartUndefined, "star_kappa_affine needs the affine metric");
  }
  return fb.value * fg.value + kahler_bracket(fb, fg, metric);
}

}  // namespace ncv

#endif  // NCV_KAHLER_HPP
