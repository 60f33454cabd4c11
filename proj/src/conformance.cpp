#include "ncv/conformance.hpp"

#include <random>

#include "ncv/kahler.hpp"
#include "ncv/random.hpp"
#include "ncv/symdata.hpp"

namespace ncv {

namespace {

void record(ConformanceReport& report, const std::string& name, int dim, int trial, double r) {
  IdentityOutcome& out = report.identities[name];
  double& per_dim = out.by_dim[dim];
  per_dim = std::max(per_dim, r);
  if (r > out.max_residual || out.worst_trial < 0) {
    if (r > out.max_residual) out.max_residual = r;
    out.worst_dim = dim;
    out.worst_trial = trial;
  }
}

SymmetryDatad perturbed(SymmetryDatad sd, double eps) {
  if (eps != 0.0) sd.K.array() += Complexd(eps, 0);
  return sd;
}

void record_triplet(ConformanceReport& report, const std::string& prefix, int dim, int trial,
                    const TripletResidual<double>& r) {
  record(report, prefix + ".f", dim, trial, r.f);
  record(report, prefix + ".X", dim, trial, r.X);
  record(report, prefix + ".Xbar", dim, trial, r.Xbar);
  record(report, prefix + ".K", dim, trial, r.K);
}

void run_trial(const ConformanceConfig& cfg, ConformanceReport& report, int dim, int trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                    static_cast<std::uint32_t>(dim), static_cast<std::uint32_t>(trial)};
  std::mt19937_64 rng(seq);
  const Observabled beta = random_operator<double>(dim, cfg.hbar, rng);
  const Observabled gamma = random_operator<double>(dim, cfg.hbar, rng);
  const StateVectord s = random_state<double>(dim, cfg.hbar, rng);
  const Observabled bg = product(beta, gamma);
  const Tolerance<double>& tol = cfg.tolerance;

  for (Chart chart : cfg.charts) {
    switch (chart) {
      case Chart::HilbertFlat: {
        const auto vb = symdata_H(beta, s), vg = symdata_H(gamma, s);
        record(report, "star_K", dim, trial, residual(star_K(vb.jet(), vg.jet(), cfg.hbar), H_function(bg, s), tol));
        const auto prod = sd_product_H(perturbed(vb, cfg.perturb_K), perturbed(vg, cfg.perturb_K));
        record_triplet(report, "sd_product_H", dim, trial, triplet_residual(prod, symdata_H(bg, s), tol));
        break;
      }
      case Chart::HomogeneousFS: {
        const auto metric = homogeneous_metric(s);
        const auto vb = symdata_z(beta, s), vg = symdata_z(gamma, s);
        record(report, "star_kappa_z", dim, trial,
               residual(star_kappa_homogeneous(vb.jet(), vg.jet(), metric), f_function(bg, s), tol));
        const auto prod = sd_product_z(perturbed(vb, cfg.perturb_K), perturbed(vg, cfg.perturb_K), metric);
        record_triplet(report, "sd_product_z", dim, trial, triplet_residual(prod, symdata_z(bg, s), tol));
        break;
      }
      case Chart::AffineFS: {
        const PhysicalStated p = normalize_ray(s);
        const auto metric = affine_metric(p.affine(), cfg.hbar);
        const auto vb = symdata_w(beta, p), vg = symdata_w(gamma, p);
        record(report, "star_kappa_w", dim, trial,
               residual(star_kappa_affine(vb.jet(), vg.jet(), metric), f_function(bg, s), tol));
        const auto prod = sd_product_w(perturbed(vb, cfg.perturb_K), perturbed(vg, cfg.perturb_K), metric);
        record_triplet(report, "sd_product_w", dim, trial, triplet_residual(prod, symdata_w(bg, p), tol));
        break;
      }
    }
  }
}

}  // namespace

ConformanceReport run_conformance(const ConformanceConfig& config) {
  if (config.trials < 1) throw Error(ErrorCode::InvalidArgument, "trials must be at least 1");
  ConformanceReport report;
  report.config = config;
  for (int dim : config.dims) {
    if (dim < 2) throw Error(ErrorCode::InvalidArgument, "dimensions must be at least 2");
    for (int t = 0; t < config.trials; ++t) run_trial(config, report, dim, t);
  }
  return report;
}

bool ConformanceReport::passed() const { return failures().empty(); }

std::vector<std::string> ConformanceReport::failures() const {
  std::vector<std::string> out;
  for (const auto& [name, outcome] : identities) {
    if (!outcome.passed(config.tolerance.rel)) out.push_back(name);
  }
  return out;
}

io::Json ConformanceReport::to_json() const {
  io::Json charts = io::Json::array();
  for (Chart c : config.charts) charts.push_back(chart_tag(c));
  io::Json cfg = {{"dims", config.dims},
                  {"charts", charts},
                  {"hbar", config.hbar},
                  {"seed", config.seed},
                  {"trials", config.trials},
                  {"tolerance", config.tolerance.rel},
                  {"abs_floor", config.tolerance.abs_floor},
                  {"perturb_K", config.perturb_K}};
  io::Json ids = io::Json::object();
  for (const auto& [name, outcome] : identities) {
    io::Json by_dim = io::Json::object();
    for (const auto& [dim, r] : outcome.by_dim) by_dim[std::to_string(dim)] = r;
    ids[name] = {{"max_residual", outcome.max_residual},
                 {"passed", outcome.passed(config.tolerance.rel)},
                 {"worst_dim", outcome.worst_dim},
                 {"worst_trial", outcome.worst_trial},
                 {"by_dim", by_dim}};
  }
  return {{"config", cfg}, {"identities", ids}, {"passed", passed()}, {"failures", failures()}};
}

}  // namespace ncv
