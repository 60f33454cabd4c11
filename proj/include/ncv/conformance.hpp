#ifndef NCV_CONFORMANCE_HPP
#define NCV_CONFORMANCE_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ncv/core.hpp"
#include "ncv/io.hpp"

namespace ncv {

struct ConformanceConfig {
  std::vector<int> dims{2, 3, 5, 8, 16};
  std::vector<Chart> charts{Chart::HilbertFlat, Chart::HomogeneousFS, Chart::AffineFS};
  double hbar = 1.0;
  std::uint64_t seed = 42;
  int trials = 200;
  Tolerance<double> tolerance{1e-10, 1e-12};
  /// Added to every K entry of the input values before the product laws run.
  double perturb_K = 0.0;
};

struct IdentityOutcome {
  double max_residual = 0.0;
  int worst_dim = 0;
  int worst_trial = -1;
  std::map<int, double> by_dim;

  bool passed(double tol) const { return max_residual <= tol; }
};

/// Maximum residual of every algebra identity over the trial schedule.
/// Identity names: star_K, star_kappa_z, star_kappa_w (scalar products) and
/// sd_product_{H,z,w}.{f,X,Xbar,K} (triplet product laws).
struct ConformanceReport {
  ConformanceConfig config;
  std::map<std::string, IdentityOutcome> identities;

  bool passed() const;
  std::vector<std::string> failures() const;
  io::Json to_json() const;
};

/// Each (dim, trial) draws beta, gamma and a state from its own generator
/// seeded by (seed, dim, trial), so results are independent of run order.
ConformanceReport run_conformance(const ConformanceConfig& config);

}  // namespace ncv

#endif  // NCV_CONFORMANCE_HPP
