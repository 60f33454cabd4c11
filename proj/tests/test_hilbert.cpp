#include <doctest.h>

#include <cmath>
#include <random>

#include "ncv/hilbert.hpp"
#include "ncv/random.hpp"

using namespace ncv;

namespace {

Vectord vec(std::initializer_list<Complexd> xs) {
  Vectord v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (const auto& x : xs) v(i++) = x;
  return v;
}

}  // namespace

TEST_CASE("normalize_ray keeps a basis state that is already normalized") {
  const auto p = normalize_ray(StateVectord(vec({1, 0}), 0.5));
  CHECK(p.coords()(0) == Complexd(1, 0));
  CHECK(p.coords()(1) == Complexd(0, 0));
  REQUIRE(p.chart_valid());
  CHECK(p.affine().size() == 1);
  CHECK(p.affine()(0) == Complexd(0, 0));
}

TEST_CASE("normalize_ray fixes phase on the first nonzero component when z^0 = 0") {
  const auto p = normalize_ray(StateVectord(vec({0, {0, 5}}), 0.5));
  CHECK(p.coords()(0) == Complexd(0, 0));
  CHECK(std::abs(p.coords()(1) - Complexd(1, 0)) < 1e-15);
  CHECK_FALSE(p.chart_valid());
  CHECK_THROWS_AS(to_affine(p), Error);
  try {
    to_affine(p);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ChartUndefined);
  }
}

TEST_CASE("normalize_ray on (1+i, 2, -i) with hbar = 1/2") {
  // |z|^2 = 7 and 2 hbar = 1: z_fixed = e^{-i pi/4} z / sqrt(7), w = z^n / z^0.
  const auto p = normalize_ray(StateVectord(vec({{1, 1}, 2, {0, -1}}), 0.5));
  const double r7 = std::sqrt(7.0);
  const Complexd e = std::polar(1.0, -M_PI / 4);
  CHECK(std::abs(p.coords()(0) - Complexd(std::sqrt(2.0) / r7, 0)) < 1e-15);
  CHECK(std::abs(p.coords()(1) - 2.0 * e / r7) < 1e-15);
  CHECK(std::abs(p.coords()(2) - Complexd(0, -1) * e / r7) < 1e-15);
  CHECK(p.coords()(0).imag() == 0.0);
  CHECK(std::abs(p.state().norm2() - 1.0) < 1e-15);
  CHECK(std::abs(p.affine()(0) - Complexd(1, -1)) < 1e-15);
  CHECK(std::abs(p.affine()(1) - Complexd(-0.5, -0.5)) < 1e-15);
}

TEST_CASE("normalize_ray invariants over random rays") {
  std::mt19937_64 rng(7);
  for (double hbar : {0.5, 1.0, 2.0}) {
    for (int t = 0; t < 50; ++t) {
      const auto s = random_state<double>(2 + t % 7, hbar, rng);
      const auto p = normalize_ray(s);
      CHECK(std::abs(p.state().norm2() - 2 * hbar) <= 1e-12 * 2 * hbar);
      CHECK(p.coords()(0).imag() == 0.0);
      CHECK(p.coords()(0).real() >= 0.0);

      // idempotent
      const auto again = normalize_ray(p.state());
      CHECK((again.coords() - p.coords()).cwiseAbs().maxCoeff() <= 1e-12);

      // blind to complex rescaling
      const Complexd lambda = random_complex<double>(rng) * 3.0;
      const auto scaled = normalize_ray(StateVectord(lambda * s.coords(), hbar));
      CHECK((scaled.coords() - p.coords()).cwiseAbs().maxCoeff() <= 1e-12);

      // affine chart of the representative is the raw componentwise ratio
      const Vectord raw = s.coords().tail(s.dim() - 1) / s[0];
      CHECK((to_affine(p) - raw).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, raw.cwiseAbs().maxCoeff()));
      CHECK((affine_coordinates(s) - raw).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("to_affine examples") {
  const double hbar = 1.0;
  CHECK(to_affine(normalize_ray(StateVectord(vec({1, 0, 0}), hbar))).cwiseAbs().maxCoeff() == 0.0);
  const double c = std::sqrt(2 * hbar / 3);
  const auto w = to_affine(normalize_ray(StateVectord(vec({c, c, c}), hbar)));
  CHECK(std::abs(w(0) - 1.0) < 1e-15);
  CHECK(std::abs(w(1) - 1.0) < 1e-15);
}

TEST_CASE("ray_equal") {
  CHECK(ray_equal(StateVectord(vec({1, 0}), 1.0), StateVectord(vec({{0, 3}, 0}), 1.0)));
  CHECK_FALSE(ray_equal(StateVectord(vec({1, 0}), 1.0), StateVectord(vec({0, 1}), 1.0)));

  std::mt19937_64 rng(11);
  const auto z = random_state<double>(6, 1.0, rng);
  CHECK(ray_equal(z, StateVectord(std::polar(1.0, 0.7) * z.coords(), 1.0)));

  CHECK_THROWS_AS(ray_equal(StateVectord(vec({1, 0}), 1.0), StateVectord(vec({1, 0, 0}), 1.0)), Error);
}

TEST_CASE("state construction errors") {
  try {
    StateVectord(vec({0, 0, 0}), 1.0);
    FAIL("zero vector accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroVector);
  }
  CHECK_THROWS_AS(StateVectord(vec({1}), 1.0), Error);
  CHECK_THROWS_AS(StateVectord(vec({1, 0}), 0.0), Error);
}

TEST_CASE("basis_state and from_affine") {
  const auto s = basis_state<double>(4, 2, 0.5);
  CHECK(s.norm2() == doctest::Approx(1.0));
  CHECK(s[2] == Complexd(1, 0));
  const auto t = from_affine<double>(vec({2, {0, 1}}), 1.0);
  CHECK(t[0] == Complexd(1, 0));
  CHECK(t[2] == Complexd(0, 1));
}

TEST_CASE("long double instantiation") {
  using LVec = Vector<long double>;
  LVec z(3);
  z << std::complex<long double>(1, 1), 2, std::complex<long double>(0, -1);
  const auto p = normalize_ray(StateVector<long double>(z, 0.5L));
  CHECK(std::abs(p.state().norm2() - 1.0L) < 1e-18L);
}
