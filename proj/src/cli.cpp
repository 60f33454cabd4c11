#include "ncv/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <iostream>
#include <random>

#include "ncv/conformance.hpp"
#include "ncv/evaluation.hpp"
#include "ncv/io.hpp"
#include "ncv/random.hpp"
#include "ncv/symdata.hpp"

namespace ncv::cli {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ParseError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::MomentOrderTooLarge:
      return kParseError;
    case ErrorCode::ZeroVector:
    case ErrorCode::ChartUndefined:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::DimensionTooLarge:
    case ErrorCode::StateMismatch:
      return kDimensionError;
    case ErrorCode::SingularOperator:
      return kSingular;
    case ErrorCode::InconsistentData:
      return kInconsistent;
    case ErrorCode::NotHermitian:
      return kNotHermitian;
    case ErrorCode::ConvergenceFailure:
      return kIdentityBreach;
  }
  return kIdentityBreach;
}

void RunConfig::validate() const {
  if (dim && *dim < 2) throw Error(ErrorCode::InvalidArgument, "--dim must be at least 2");
  if (hbar && !(*hbar > 0)) throw Error(ErrorCode::InvalidArgument, "--hbar must be positive");
  if (trials < 1) throw Error(ErrorCode::InvalidArgument, "--trials must be at least 1");
  if (!(tolerance > 0 && tolerance <= 1e-4)) throw Error(ErrorCode::InvalidArgument, "--tolerance must lie in (0, 1e-4]");
  if (max_dim < 2) throw Error(ErrorCode::InvalidArgument, "--max-dim must be at least 2");
  if (dim && *dim > max_dim) throw Error(ErrorCode::DimensionTooLarge, "--dim exceeds --max-dim");
}

namespace {

struct Options {
  RunConfig config;
  std::string chart_tag;
  std::string op;
  std::string state_path;
  std::string symdata_path;
  std::vector<int> dims;
  double perturb_K = 0.0;
  int order = 6;
  int shots = 0;
  std::optional<int> basis;
  bool random_state = false;
};

void emit(const RunConfig& cfg, const io::Json& j, std::ostream& out) {
  const std::string text = io::canonical_dump(j) + "\n";
  if (cfg.output_path.empty()) {
    out << text;
  } else {
    io::write_file(cfg.output_path, text);
  }
}

/// Resolves a builder name or operator file against the state it will act on.
Observabled resolve_operator(const Options& o, Eigen::Index dim, double hbar) {
  if (dim > o.config.max_dim) {
    throw Error(ErrorCode::DimensionTooLarge, "dimension " + std::to_string(dim) + " exceeds --max-dim");
  }
  if (o.config.dim && *o.config.dim != dim) {
    throw Error(ErrorCode::DimensionMismatch, "--dim disagrees with the state dimension");
  }
  if (o.config.hbar && *o.config.hbar != hbar) {
    throw Error(ErrorCode::DimensionMismatch, "--hbar disagrees with the state's hbar");
  }
  if (io::is_builder_name(o.op)) return io::named_operator(o.op, dim, hbar);
  Observabled op = io::observable_from_json(io::read_file(o.op));
  if (op.dim() != dim) throw Error(ErrorCode::DimensionMismatch, "operator and state dimensions differ");
  if (op.hbar() != hbar) throw Error(ErrorCode::DimensionMismatch, "operator and state use different hbar");
  return op;
}

int cmd_symdata(const Options& o, std::ostream& out) {
  const StateVectord s = io::state_from_json(io::read_file(o.state_path));
  const Observabled beta = resolve_operator(o, s.dim(), s.hbar());
  const Chart chart = o.config.chart.value_or(Chart::HomogeneousFS);
  emit(o.config, io::to_json(symdata(chart, beta, s)), out);
  return kOk;
}

int cmd_conformance(const Options& o, std::ostream& out, std::ostream& err) {
  ConformanceConfig cc;
  if (o.config.dim) {
    cc.dims = {*o.config.dim};
  } else if (!o.dims.empty()) {
    cc.dims = o.dims;
  }
  for (int d : cc.dims) {
    if (d < 2) throw Error(ErrorCode::InvalidArgument, "--dims entries must be at least 2");
    if (d > o.config.max_dim) throw Error(ErrorCode::DimensionTooLarge, "--dims entry exceeds --max-dim");
  }
  if (o.config.chart) cc.charts = {*o.config.chart};
  cc.hbar = o.config.hbar_or_default();
  cc.seed = o.config.seed;
  cc.trials = o.config.trials;
  cc.tolerance.rel = o.config.tolerance;
  cc.perturb_K = o.perturb_K;
  const ConformanceReport report = run_conformance(cc);
  emit(o.config, report.to_json(), out);
  for (const auto& name : report.failures()) {
    err << "identity breached: " << name << " (max residual " << report.identities.at(name).max_residual << ")\n";
  }
  return report.passed() ? kOk : kIdentityBreach;
}

int cmd_reconstruct(const Options& o, std::ostream& out) {
  const SymmetryDatad sd = io::symdata_from_json(io::read_file(o.symdata_path));
  if (sd.chart != Chart::HilbertFlat) {
    throw Error(ErrorCode::ChartUndefined, "reconstruction needs symmetry data in the H chart");
  }
  const Observabled beta = resolve_operator(o, sd.state.dim(), sd.hbar());
  const auto rec = reconstruct_state(beta, sd.X, sd.hbar(), std::optional<Vectord>(sd.Xbar));
  emit(o.config, io::to_json(rec), out);
  return kOk;
}

int cmd_moments(const Options& o, std::ostream& out, std::ostream& err) {
  const StateVectord s = io::state_from_json(io::read_file(o.state_path));
  const Observabled beta = resolve_operator(o, s.dim(), s.hbar());
  const MomentReportd report = moments(beta, normalize_ray(s), o.order);
  io::Json j = io::to_json(report);
  if (o.shots > 0) {
    std::mt19937_64 rng(o.config.seed);
    j["sampled"] = sample_moments(report, o.shots, rng);
    j["shots"] = o.shots;
  }
  emit(o.config, j, out);
  const double worst = std::max(report.agreement(), report.chain_residual);
  if (worst > o.config.tolerance) {
    err << "moment columns disagree (residual " << worst << ")\n";
    return kIdentityBreach;
  }
  return kOk;
}

int cmd_state(const Options& o, std::ostream& out) {
  if (!o.config.dim) throw Error(ErrorCode::InvalidArgument, "state needs --dim");
  const double hbar = o.config.hbar_or_default();
  if (o.random_state) {
    std::mt19937_64 rng(o.config.seed);
    emit(o.config, io::to_json(random_state<double>(*o.config.dim, hbar, rng)), out);
  } else {
    emit(o.config, io::to_json(basis_state<double>(*o.config.dim, o.basis.value_or(0), hbar)), out);
  }
  return kOk;
}

int cmd_operator(const Options& o, std::ostream& out) {
  if (!o.config.dim) throw Error(ErrorCode::InvalidArgument, "operator needs --dim");
  emit(o.config, io::to_json(io::named_operator(o.op, *o.config.dim, o.config.hbar_or_default())), out);
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Noncommutative values of observables on truncated Hilbert spaces", "ncv"};
  app.require_subcommand(1);
  app.fallthrough();

  std::optional<int> dim;
  std::optional<double> hbar;
  app.add_option("--dim", dim, "Truncation dimension d");
  app.add_option("--hbar", hbar, "Value of hbar (default 1)");
  app.add_option("--chart", o.chart_tag, "Chart: H, z or w")->check(CLI::IsMember({"H", "z", "w"}));
  app.add_option("--seed", o.config.seed, "Random seed");
  app.add_option("--trials", o.config.trials, "Trials per dimension");
  app.add_option("--tolerance", o.config.tolerance, "Relative tolerance");
  app.add_option("--max-dim", o.config.max_dim, "Largest accepted dimension");
  app.add_option("--out", o.config.output_path, "Write JSON here instead of standard output");

  auto* symdata_cmd = app.add_subcommand("symdata", "Symmetry data of an operator at a state");
  symdata_cmd->add_option("--op", o.op, "Builder name or operator JSON file")->required();
  symdata_cmd->add_option("--state", o.state_path, "State JSON file")->required();

  auto* conformance_cmd = app.add_subcommand("conformance", "Product-law conformance sweep");
  conformance_cmd->add_option("--dims", o.dims, "Dimensions to sweep (default 2 3 5 8 16)")->delimiter(',');
  conformance_cmd->add_option("--perturb-K", o.perturb_K, "Fault injection: offset added to every K entry");

  auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Recover a state from H-chart symmetry data");
  reconstruct_cmd->add_option("--op", o.op, "Builder name or operator JSON file")->required();
  reconstruct_cmd->add_option("--symdata", o.symdata_path, "H-chart symmetry data JSON file")->required();

  auto* moments_cmd = app.add_subcommand("moments", "Exact and spectral moments of a Hermitian operator");
  moments_cmd->add_option("--op", o.op, "Builder name or operator JSON file")->required();
  moments_cmd->add_option("--state", o.state_path, "State JSON file")->required();
  moments_cmd->add_option("-K,--order", o.order, "Highest moment order (at most 12)");
  moments_cmd->add_option("--shots", o.shots, "Also draw this many seeded outcomes (demonstration only)");

  auto* state_cmd = app.add_subcommand("state", "Emit a basis or random state JSON");
  state_cmd->add_option("--basis", o.basis, "Basis index k (state |k> with |z|^2 = 2 hbar)");
  state_cmd->add_flag("--random", o.random_state, "Seeded random state");

  auto* operator_cmd = app.add_subcommand("operator", "Emit a named operator as JSON");
  operator_cmd->add_option("--op", o.op, "Builder name")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kParseError;
  }

  try {
    o.config.dim = dim;
    o.config.hbar = hbar;
    if (!o.chart_tag.empty()) o.config.chart = chart_from_tag(o.chart_tag);
    o.config.validate();

    if (symdata_cmd->parsed()) return cmd_symdata(o, out);
    if (conformance_cmd->parsed()) return cmd_conformance(o, out, err);
    if (reconstruct_cmd->parsed()) return cmd_reconstruct(o, out);
    if (moments_cmd->parsed()) return cmd_moments(o, out, err);
    if (state_cmd->parsed()) return cmd_state(o, out);
    if (operator_cmd->parsed()) return cmd_operator(o, out);
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kParseError;
}

}  // namespace ncv::cli
