#ifndef NCV_CORE_HPP
#define NCV_CORE_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <complex>
#include <stdexcept>
#include <string>

namespace ncv {

template <typename Real>
using Complex = std::complex<Real>;

template <typename Real>
using Vector = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, 1>;

template <typename Real>
using Matrix = Eigen::Matrix<Complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;

using Complexd = Complex<double>;
using Vectord = Vector<double>;
using Matrixd = Matrix<double>;

/// Failure categories. The CLI maps these onto its exit codes.
enum class ErrorCode {
  ZeroVector,
  ChartUndefined,
  DimensionMismatch,
  DimensionTooLarge,
  StateMismatch,
  NotHermitian,
  ConvergenceFailure,
  SingularOperator,
  InconsistentData,
  MomentOrderTooLarge,
  InvalidArgument,
  ParseError,
};

inline const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::ChartUndefined: return "ChartUndefined";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::DimensionTooLarge: return "DimensionTooLarge";
    case ErrorCode::StateMismatch: return "StateMismatch";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::ConvergenceFailure: return "ConvergenceFailure";
    case ErrorCode::SingularOperator: return "SingularOperator";
    case ErrorCode::InconsistentData: return "InconsistentData";
    case ErrorCode::MomentOrderTooLarge: return "MomentOrderTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// The three coordinate charts a value can be expressed in: the flat
/// Hilbert space, homogeneous coordinates on projective space, and the
/// affine chart w^n = z^n / z^0.
enum class Chart { HilbertFlat, HomogeneousFS, AffineFS };

inline const char* chart_tag(Chart chart) {
  switch (chart) {
    case Chart::HilbertFlat: return "H";
    case Chart::HomogeneousFS: return "z";
    case Chart::AffineFS: return "w";
  }
  return "?";
}

inline Chart chart_from_tag(const std::string& tag) {
  if (tag == "H") return Chart::HilbertFlat;
  if (tag == "z") return Chart::HomogeneousFS;
  if (tag == "w") return Chart::AffineFS;
  throw Error(ErrorCode::ParseError, "unknown chart tag '" + tag + "'");
}

/// Mixed relative/absolute error policy: a component passes when
/// |a - b| <= max(rel * |b|, abs_floor).
template <typename Real>
struct Tolerance {
  Real rel = Real(1e-10);
  Real abs_floor = Real(1e-12);

  /// Denominator below which components are judged on the absolute floor.
  Real scale_floor() const { return abs_floor / rel; }
};

/// Largest componentwise |a - b| / max(|b|, floor). Comparing the result
/// against `tol.rel` applies the mixed policy above.
template <typename Real, typename DerivedA, typename DerivedB>
Real residual(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b,
              const Tolerance<Real>& tol = {}) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "residual of differently shaped arrays");
  }
  Real worst = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      const Real den = std::max<Real>(std::abs(b(i, j)), tol.scale_floor());
      worst = std::max<Real>(worst, std::abs(a(i, j) - b(i, j)) / den);
    }
  }
  return worst;
}

template <typename Real>
Real residual(const Complex<Real>& a, const Complex<Real>& b, const Tolerance<Real>& tol = {}) {
  return std::abs(a - b) / std::max<Real>(std::abs(b), tol.scale_floor());
}

}  // namespace ncv

#endif  // NCV_CORE_HPP
