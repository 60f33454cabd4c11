#include <doctest.h>

#include <cmath>
#include <random>

#include "ncv/evaluation.hpp"
#include "ncv/random.hpp"
#include "support/oracles.hpp"

using namespace ncv;

namespace {

const Complexd I(0, 1);

template <typename Fn>
ErrorCode code_of(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::InvalidArgument;
}

/// <z|B^k|z> / |z|^2 by repeated explicit products.
double oracle_moment(const Matrixd& B, const Vectord& z, int k) {
  Vectord v = z;
  for (int j = 0; j < k; ++j) v = B * v;
  Complexd acc = 0;
  for (Eigen::Index n = 0; n < z.size(); ++n) acc += std::conj(z(n)) * v(n);
  return acc.real() / oracle::norm2(z);
}

}  // namespace

TEST_CASE("reconstruct_state from the identity") {
  const double hbar = 1.0;
  Vectord z(3);
  z << Complexd(1, 1), 2, Complexd(0, -1);
  const StateVectord s(z, hbar);
  const auto sd = symdata_H(identity(3, hbar), s);
  const auto r = reconstruct_state(identity(3, hbar), sd.X, hbar);
  CHECK((r.raw.coords() - z).norm() <= 1e-15);
  CHECK(r.condition == doctest::Approx(1.0));
  CHECK(ray_fidelity(r.state.state(), s) >= 1 - 1e-15);
}

TEST_CASE("reconstruct_state for a diagonal operator") {
  // conj(z^n) = -2 i hbar X_n / lambda_n
  const double hbar = 0.5;
  Matrixd D = Matrixd::Zero(4, 4);
  const double lambda[] = {1.0, -2.0, 0.5, 3.0};
  for (int n = 0; n < 4; ++n) D(n, n) = lambda[n];
  Vectord X(4);
  X << Complexd(0.1, 0.2), Complexd(-0.3, 0), Complexd(0, 0.4), Complexd(1, -1);
  const auto r = reconstruct_state(Observabled(D, hbar), X, hbar);
  for (int n = 0; n < 4; ++n) CHECK(std::abs(std::conj(r.raw[n]) - (-2.0 * I * hbar * X(n) / lambda[n])) <= 1e-14);
}

TEST_CASE("reconstruct_state round trip") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 100; ++t) {
    const double hbar = 0.5 + t % 3;
    const int d = 2 + t % 7;
    const auto B = random_invertible<double>(d, hbar, rng, 1e4);
    const auto s = random_state<double>(d, hbar, rng);
    const auto sd = symdata_H(B, s);
    const auto r = reconstruct_state(B, sd.X, hbar, std::optional<Vectord>(sd.Xbar));
    CHECK(ray_fidelity(r.state.state(), s) >= 1 - 1e-9);
    CHECK((r.raw.coords() - s.coords()).norm() <= 1e-9 * s.coords().norm());
  }
}

TEST_CASE("reconstruct_state errors") {
  std::mt19937_64 rng(103);
  // rank-deficient operator
  Matrixd P = Matrixd::Zero(3, 3);
  P(0, 0) = 1;
  const Vectord X = Vectord::Ones(3);
  CHECK(code_of([&] { reconstruct_state(Observabled(P, 1.0), X, 1.0); }) == ErrorCode::SingularOperator);
  CHECK(code_of([&] { reconstruct_state(number(4, 1.0), Vectord(Vectord::Ones(4)), 1.0); }) == ErrorCode::SingularOperator);

  // a zeroed component of X that the paired Xbar contradicts
  const auto B = random_invertible<double>(4, 1.0, rng);
  const auto s = random_state<double>(4, 1.0, rng);
  const auto sd = symdata_H(B, s);
  Vectord broken = sd.X;
  broken(1) = 0;
  CHECK(code_of([&] { reconstruct_state(B, broken, 1.0, std::optional<Vectord>(sd.Xbar)); }) ==
        ErrorCode::InconsistentData);

  CHECK(code_of([&] { reconstruct_state(B, Vectord(Vectord::Ones(3)), 1.0); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("moments of the identity are all one") {
  std::mt19937_64 rng(105);
  const auto p = normalize_ray(random_state<double>(5, 1.0, rng));
  const auto m = moments(identity(5, 1.0), p, 6);
  REQUIRE(m.exact.size() == 6);
  for (int k = 0; k < 6; ++k) {
    CHECK(std::abs(m.exact[k] - 1.0) <= 1e-14);
    CHECK(std::abs(m.spectral[k] - 1.0) <= 1e-14);
  }
}

TEST_CASE("moments of position on the ground state") {
  for (double hbar : {0.5, 1.0, 2.0}) {
    const auto x = position_momentum(2, hbar).first;
    const auto p = normalize_ray(basis_state<double>(2, 0, hbar));
    const auto m = moments(x, p, 4);
    CHECK(std::abs(m.exact[0]) <= 1e-15);
    CHECK(std::abs(m.exact[1] - hbar / 2) <= 1e-15);
    CHECK(std::abs(m.exact[2]) <= 1e-15);
    CHECK(std::abs(m.exact[3] - hbar * hbar / 4) <= 1e-14);
    CHECK(m.probabilities[0] == doctest::Approx(0.5));
    CHECK(m.agreement() <= 1e-13);
  }
}

TEST_CASE("moments agree with the spectral distribution") {
  std::mt19937_64 rng(107);
  for (int t = 0; t < 50; ++t) {
    const auto H = random_hermitian<double>(2 + t % 7, 1.0, rng);
    const auto p = normalize_ray(random_state<double>(H.dim(), 1.0, rng));
    const auto m = moments(H, p, 6);
    CHECK(m.agreement() <= 1e-10);
    CHECK(m.chain_residual <= 1e-10);
    double total = 0;
    for (double q : m.probabilities) total += q;
    CHECK(std::abs(total - 1.0) <= 1e-13);
    for (int k = 1; k <= 6; ++k) {
      const double ref = oracle_moment(H.matrix(), p.coords(), k);
      CHECK(std::abs(m.exact[k - 1] - ref) <= 1e-10 * std::max(1.0, std::abs(ref)));
    }
    // the first moment is the function value
    CHECK(std::abs(m.exact[0] - symdata_z(H, p.state()).f.real()) <= 1e-13);
  }
}

TEST_CASE("moments rescale large operators") {
  std::mt19937_64 rng(109);
  const auto H = Complexd(50) * random_hermitian<double>(6, 1.0, rng);
  const auto p = normalize_ray(random_state<double>(6, 1.0, rng));
  const auto m = moments(H, p, 8);
  CHECK(m.scale > 1.0);
  CHECK(m.agreement() <= 1e-10);
  CHECK(m.chain_residual <= 1e-10);
  for (int k = 1; k <= 8; ++k) {
    const double ref = oracle_moment(H.matrix(), p.coords(), k);
    CHECK(std::abs(m.exact[k - 1] - ref) <= 1e-10 * std::abs(ref));
  }
}

TEST_CASE("moments errors") {
  std::mt19937_64 rng(111);
  const auto p = normalize_ray(random_state<double>(3, 1.0, rng));
  CHECK(code_of([&] { moments(ladder(3, 1.0).first, p, 2); }) == ErrorCode::NotHermitian);
  CHECK(code_of([&] { moments(identity(3, 1.0), p, kMaxMomentOrder + 1); }) == ErrorCode::MomentOrderTooLarge);
  CHECK(code_of([&] { moments(identity(3, 1.0), p, 0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { moments(identity(4, 1.0), p, 2); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("sample_moments converges to the exact moments") {
  std::mt19937_64 rng(113);
  const auto H = random_hermitian<double>(4, 1.0, rng);
  const auto p = normalize_ray(random_state<double>(4, 1.0, rng));
  const auto m = moments(H, p, 2);
  std::mt19937_64 shots_rng(7);
  const auto est = sample_moments(m, 200000, shots_rng);
  REQUIRE(est.size() == 2);
  const double var = m.exact[1] - m.exact[0] * m.exact[0];
  CHECK(std::abs(est[0] - m.exact[0]) <= 6 * std::sqrt(var / 200000));
  CHECK(std::abs(est[1] - m.exact[1]) <= 0.05 * std::abs(m.exact[1]) + 1e-3);

  std::mt19937_64 again(7);
  CHECK(sample_moments(m, 200000, again) == est);
}

TEST_CASE("evaluation_map") {
  std::mt19937_64 rng(115);
  const auto p = normalize_ray(random_state<double>(4, 1.0, rng));
  const std::vector<Observabled> betas = {identity(4, 1.0), number(4, 1.0), random_operator<double>(4, 1.0, rng)};
  for (Chart chart : {Chart::HilbertFlat, Chart::HomogeneousFS, Chart::AffineFS}) {
    const auto vals = evaluation_map(p, betas, chart);
    REQUIRE(vals.size() == betas.size());
    for (std::size_t k = 0; k < betas.size(); ++k) {
      const auto ref = symdata(chart, betas[k], p);
      CHECK(vals[k].f == ref.f);
      CHECK(vals[k].X == ref.X);
      CHECK(vals[k].K == ref.K);
    }
  }
}
