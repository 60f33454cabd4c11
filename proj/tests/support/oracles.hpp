#ifndef NCV_TESTS_ORACLES_HPP
#define NCV_TESTS_ORACLES_HPP

// Test-only reference computations. Nothing here calls into the library's
// closed-form derivatives or product laws: function values are explicit
// double sums, derivatives are central finite differences.

#include <functional>
#include <random>

#include "ncv/core.hpp"

namespace oracle {

using ncv::Complexd;
using ncv::Matrixd;
using ncv::Vectord;

using Function = std::function<Complexd(const Vectord&)>;

/// sum_mn conj(v^m) v^n B(m, n), written out.
inline Complexd bilinear(const Matrixd& B, const Vectord& v) {
  Complexd acc = 0;
  for (Eigen::Index m = 0; m < v.size(); ++m)
    for (Eigen::Index n = 0; n < v.size(); ++n) acc += std::conj(v(m)) * v(n) * B(m, n);
  return acc;
}

inline double norm2(const Vectord& v) {
  double acc = 0;
  for (Eigen::Index n = 0; n < v.size(); ++n) acc += std::norm(v(n));
  return acc;
}

inline Function H_of(const Matrixd& B, double hbar) {
  return [B, hbar](const Vectord& z) { return bilinear(B, z) / (2 * hbar); };
}

inline Function f_of(const Matrixd& B) {
  return [B](const Vectord& z) { return bilinear(B, z) / norm2(z); };
}

/// f as a function of w^1..w^{d-1} with w^0 = 1.
inline Function f_affine_of(const Matrixd& B) {
  return [B](const Vectord& w) {
    Vectord W(w.size() + 1);
    W(0) = 1;
    W.tail(w.size()) = w;
    return bilinear(B, W) / norm2(W);
  };
}

struct Jet {
  Complexd value;
  Vectord d;     // d/dz^n
  Vectord dbar;  // d/dconj(z^n)
};

/// Wirtinger derivatives by central differences along Re and Im of each coordinate.
inline Jet fd_jet(const Function& F, const Vectord& p, double h) {
  const Eigen::Index n = p.size();
  Jet j{F(p), Vectord(n), Vectord(n)};
  for (Eigen::Index k = 0; k < n; ++k) {
    Vectord a = p, b = p;
    a(k) += h;
    b(k) -= h;
    const Complexd dx = (F(a) - F(b)) / (2 * h);
    a = p;
    b = p;
    a(k) += Complexd(0, h);
    b(k) -= Complexd(0, h);
    const Complexd dy = (F(a) - F(b)) / (2 * h);
    j.d(k) = (dx - Complexd(0, 1) * dy) / 2.0;
    j.dbar(k) = (dx + Complexd(0, 1) * dy) / 2.0;
  }
  return j;
}

/// Mixed second derivatives d_m dbar_n F by a four-point stencil with one
/// Richardson step.
inline Matrixd fd_mixed_hessian(const Function& F, const Vectord& p, double h) {
  const Eigen::Index n = p.size();
  const Complexd I(0, 1);
  const Complexd dirs[2] = {1, I};
  auto second = [&](Eigen::Index m, Complexd um, Eigen::Index k, Complexd uk, double step) {
    auto at = [&](double sm, double sk) {
      Vectord q = p;
      q(m) += sm * step * um;
      q(k) += sk * step * uk;
      return F(q);
    };
    return (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4 * step * step);
  };
  auto richardson = [&](Eigen::Index m, Complexd um, Eigen::Index k, Complexd uk) {
    return (4.0 * second(m, um, k, uk, h / 2) - second(m, um, k, uk, h)) / 3.0;
  };
  Matrixd out(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = 0; k < n; ++k) {
      // d_m = (dx_m - i dy_m)/2, dbar_k = (dx_k + i dy_k)/2
      const Complexd xx = richardson(m, dirs[0], k, dirs[0]);
      const Complexd xy = richardson(m, dirs[0], k, dirs[1]);
      const Complexd yx = richardson(m, dirs[1], k, dirs[0]);
      const Complexd yy = richardson(m, dirs[1], k, dirs[1]);
      out(m, k) = (xx + I * xy - I * yx + yy) / 4.0;
    }
  }
  return out;
}

/// X = i d F, Xbar = -i dbar F, K = -i d dbar F, all by finite differences.
struct FdTriplet {
  Complexd f;
  Vectord X, Xbar;
  Matrixd K;
};

inline FdTriplet fd_triplet(const Function& F, const Vectord& p, double h1, double h2) {
  const Complexd I(0, 1);
  const Jet j = fd_jet(F, p, h1);
  return {j.value, I * j.d, -I * j.dbar, -I * fd_mixed_hessian(F, p, h2)};
}

/// ||a - b||_inf / ||b||_inf
template <typename A, typename B>
double norm_relative(const A& a, const B& b) {
  const double den = std::max(b.cwiseAbs().maxCoeff(), 1e-300);
  return (a - b).cwiseAbs().maxCoeff() / den;
}

}  // namespace oracle

#endif  // NCV_TESTS_ORACLES_HPP
