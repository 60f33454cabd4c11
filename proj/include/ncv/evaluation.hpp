#ifndef NCV_EVALUATION_HPP
#define NCV_EVALUATION_HPP

#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "ncv/core.hpp"
#include "ncv/hilbert.hpp"
#include "ncv/kahler.hpp"
#include "ncv/operators.hpp"
#include "ncv/symdata.hpp"

namespace ncv {

template <typename Real>
struct Reconstruction {
  StateVector<Real> raw;        // z recovered from the covector, before ray fixing
  PhysicalState<Real> state;    // normalize_ray(raw)
  Real residual;                // consistency residual, in units of X
  Real condition;               // condition number of the operator
};

/// Recovers the state from the flat-chart covector X_n = (i/2hbar) sum_m
/// conj(z^m) <m|beta|n> of an invertible beta. The transposed system is solved
/// through an SVD; when `Xbar` is supplied the recovered z must also reproduce
/// it, which exposes covectors that no state produces.
template <typename Real>
Reconstruction<Real> reconstruct_state(const Observable<Real>& beta, const Vector<Real>& X, Real hbar,
                                       const std::optional<Vector<Real>>& Xbar = std::nullopt,
                                       Real max_condition = Real(1e8), Real rel_residual = Real(1e-8)) {
  if (X.size() != beta.dim() || (Xbar && Xbar->size() != beta.dim())) {
    throw Error(ErrorCode::DimensionMismatch, "covector length does not match operator dimension");
  }
  const Matrix<Real> Bt = beta.matrix().transpose();
  Eigen::JacobiSVD<Matrix<Real>> svd(Bt, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const Real smin = sv(sv.size() - 1);
  const Real cond = smin > 0 ? sv(0) / smin : std::numeric_limits<Real>::infinity();
  if (!(cond <= max_condition)) {
    throw Error(ErrorCode::SingularOperator, "operator condition number " + std::to_string(double(cond)) +
                                                 " exceeds " + std::to_string(double(max_condition)));
  }

  const Complex<Real> c(0, 1 / (2 * hbar));
  const Vector<Real> zbar = svd.solve(X / c);
  Real res = (c * (Bt * zbar) - X).norm();
  Vector<Real> z = zbar.conjugate();
  if (Xbar) res = std::max(res, (-c * (beta.matrix() * z) - *Xbar).norm());
  if (res > rel_residual * X.norm()) {
    throw Error(ErrorCode::InconsistentData, "covector inconsistent with any state (residual " +
                                                 std::to_string(double(res)) + ")");
  }
  StateVector<Real> raw(std::move(z), hbar);
  PhysicalState<Real> ray = normalize_ray(raw);
  return {std::move(raw), std::move(ray), res, cond};
}

/// Outcome statistics of a Hermitian observable on a state, two ways:
/// `exact[k-1]` = f of beta^k and `spectral[k-1]` = sum_j p_j lambda_j^k.
template <typename Real>
struct MomentReport {
  std::vector<Real> exact;
  std::vector<Real> spectral;
  std::vector<Real> probabilities;
  std::vector<Real> eigenvalues;
  int order = 0;
  Real scale = 1;           // beta was divided by this before powering
  Real chain_residual = 0;  // exact moments against chained value products

  /// Largest relative disagreement between the two moment columns.
  Real agreement(Real floor = Real(1e-2)) const {
    Real worst = 0;
    for (std::size_t k = 0; k < exact.size(); ++k) {
      worst = std::max<Real>(worst, std::abs(exact[k] - spectral[k]) / std::max<Real>(std::abs(spectral[k]), floor));
    }
    return worst;
  }
};

inline constexpr int kMaxMomentOrder = 12;

template <typename Real>
MomentReport<Real> moments(const Observable<Real>& beta, const PhysicalState<Real>& p, int order) {
  if (order > kMaxMomentOrder) {
    throw Error(ErrorCode::MomentOrderTooLarge, "moment order " + std::to_string(order) + " exceeds " +
                                                    std::to_string(kMaxMomentOrder));
  }
  if (order < 1) throw Error(ErrorCode::InvalidArgument, "moment order must be at least 1");
  detail::require_dim(beta, p.dim());
  const Eigensystem<Real> eig = eigendecompose(beta);

  MomentReport<Real> report;
  report.order = order;
  const Real radius = eig.values.cwiseAbs().maxCoeff();
  if (beta.matrix().norm() > 10 && radius > 0) report.scale = radius;
  const Observable<Real> scaled(beta.matrix() / report.scale, beta.hbar());

  const Vector<Real> amplitudes = eig.vectors.adjoint() * p.coords();
  const Real n2 = p.state().norm2();
  for (Eigen::Index j = 0; j < amplitudes.size(); ++j) {
    report.probabilities.push_back(std::norm(amplitudes(j)) / n2);
    report.eigenvalues.push_back(eig.values(j));
  }

  const SymmetryData<Real> first = symdata_z(scaled, p.state());
  SymmetryData<Real> chained = first;
  Matrix<Real> power = Matrix<Real>::Identity(beta.dim(), beta.dim());
  for (int k = 1; k <= order; ++k) {
    power = power * scaled.matrix();
    if (k > 1) chained = sd_product_z(chained, first);
    const Complex<Real> fk = f_function(Observable<Real>(power, beta.hbar()), p.state());
    report.chain_residual = std::max(report.chain_residual, residual(chained.f, fk, Tolerance<Real>{}));
    const Real s = std::pow(report.scale, k);
    report.exact.push_back(fk.real() * s);

    Real mu = 0;
    for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
      mu += report.probabilities[j] * std::pow(eig.values(j) / report.scale, k);
    }
    report.spectral.push_back(mu * s);
  }
  return report;
}

/// Finite-shot estimate of the first `order` moments: `shots` outcomes drawn
/// from the report's distribution with the caller's generator.
template <typename Real, typename Rng>
std::vector<Real> sample_moments(const MomentReport<Real>& report, int shots, Rng& rng) {
  std::discrete_distribution<std::size_t> outcome(report.probabilities.begin(), report.probabilities.end());
  std::vector<Real> sums(report.order, Real(0));
  for (int s = 0; s < shots; ++s) {
    const Real lambda = report.eigenvalues[outcome(rng)];
    Real pw = 1;
    for (int k = 0; k < report.order; ++k) {
      pw *= lambda;
      sums[k] += pw;
    }
  }
  for (Real& v : sums) v /= Real(shots);
  return sums;
}

/// The evaluation map of a fixed state: every observable to its value in `chart`.
template <typename Real>
std::vector<SymmetryData<Real>> evaluation_map(const PhysicalState<Real>& p, const std::vector<Observable<Real>>& betas,
                                               Chart chart) {
  std::vector<SymmetryData<Real>> out;
  out.reserve(betas.size());
  for (const auto& beta : betas) out.push_back(symdata(chart, beta, p));
  return out;
}

using MomentReportd = MomentReport<double>;

}  // namespace ncv

#endif  // NCV_EVALUATION_HPP
