#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "slicecert/errors.hpp"
#include "slicecert/system_io.hpp"

namespace slicecert {

namespace {

Vec to_vec(const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())); }

std::string format_vec(const Vec& v) {
  std::ostringstream os;
  os << std::setprecision(6) << "(";
  for (Eigen::Index i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v(i);
  os << ")";
  return os.str();
}

Vec resolve_point(const SystemDefinition& def, const std::vector<double>& override_point) {
  if (override_point.empty()) return def.point;
  if (static_cast<int>(override_point.size()) != def.system.dim())
    throw ValidationError("--point must have " + std::to_string(def.system.dim()) + " coordinates");
  return to_vec(override_point);
}

int cmd_validate(const std::string& file, std::ostream& out, std::ostream& err) {
  SystemDefinition def = load_system(file);
  out << nlohmann::json{{"valid", true},
                        {"dim", def.system.dim()},
                        {"algebraDim", def.system.algebra_dim()},
                        {"compactness", compactness_certificate(def.system.algebra(), def.system.space().metric())
                                            ? "verified"
                                            : "compactness unverified"}}
             .dump(2)
      << "\n";
  err << file << ": valid system, dim " << def.system.dim() << ", " << def.system.algebra_dim() << " generators\n";
  return kExitStable;
}

int cmd_analyze(const std::string& file, const std::vector<double>& point, std::ostream& out, std::ostream& err) {
  SystemDefinition def = load_system(file);
  Vec p = resolve_point(def, point);
  AnalysisReport report = analyze(def.system, p);
  out << to_json(report).dump(2) << "\n";
  auto dims = report.frame.dims();
  err << "mu = " << format_vec(report.mu.coords) << ", dim h = " << report.dim_isotropy
      << ", dim k = " << report.dim_momentum_isotropy << ", dim n = " << report.dim_normalizer << ", Witt-Artin (T0, T, N, N0) = ("
      << dims.t0 << ", " << dims.t << ", " << dims.n << ", " << dims.n0 << ")"
      << (report.compactness_verified ? "" : ", compactness unverified") << "\n";
  return kExitStable;
}

int cmd_certify(const std::string& file, const std::vector<double>& point, const std::vector<double>& velocity,
                std::uint64_t seed, std::ostream& out, std::ostream& err) {
  SystemDefinition def = load_system(file);
  Vec p = resolve_point(def, point);
  SearchOptions options;
  options.seed = seed;
  std::optional<AlgebraVector> fixed;
  if (!velocity.empty()) fixed = AlgebraVector(to_vec(velocity));
  CertifyResult result = certify(def.system, p, options, fixed);
  out << to_json(result).dump(2) << "\n";
  const auto& cert = result.certificate;
  err << to_string(cert.verdict) << " at xi* = " << format_vec(cert.xi_star.coords) << ", margin " << cert.margin
      << "\n";
  if (cert.verdict == Verdict::Inconclusive)
    err << "no definite slice Hessian found; this does not show instability (the criterion is only sufficient)\n";
  if (!cert.compactness_verified) err << "warning: compactness unverified\n";
  if (cert.boundary_hit) err << "warning: optimum on the search-box boundary\n";
  return cert.stable() ? kExitStable : kExitInconclusive;
}

int cmd_probe(const std::string& file, const std::vector<double>& point, const ProbeOptions& options,
              const std::string& csv_path, std::ostream& out, std::ostream& err) {
  SystemDefinition def = load_system(file);
  Vec p = resolve_point(def, point);
  const auto& sys = def.system;
  Subalgebra k = momentum_isotropy_algebra(sys.algebra(), sys.momentum()(p));

  std::ofstream csv;
  TrajectorySink sink;
  if (!csv_path.empty()) {
    csv.open(csv_path);
    if (!csv) throw ParseError("cannot write " + csv_path);
    csv << "t";
    for (int i = 1; i <= sys.dim(); ++i) csv << ",x" << i;
    csv << ",h";
    for (int i = 1; i <= sys.algebra_dim(); ++i) csv << ",J" << i;
    csv << ",orbitDistance\n";
    csv << std::setprecision(17);
    sink = [&csv](int sample, const TrajectoryRow& row) {
      if (sample != 0) return;
      csv << row.t;
      for (Eigen::Index i = 0; i < row.x.size(); ++i) csv << "," << row.x(i);
      csv << "," << row.h;
      for (Eigen::Index i = 0; i < row.j.size(); ++i) csv << "," << row.j(i);
      csv << "," << row.orbit_distance << "\n";
    };
  }
  ProbeReport report = stability_probe(sys, p, k, options, sink);
  out << to_json(report).dump(2) << "\n";
  err << (report.escaped ? "escaped" : "stayed close") << ": max distance to K-orbit " << report.max_orbit_distance
      << " (epsilon " << report.epsilon << "), energy drift " << report.energy_drift << ", momentum drift "
      << report.momentum_drift << "\n";
  return kExitStable;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  load_rank_tolerance_from_env();

  CLI::App app{"Slice-Hessian stability certificates for relative equilibria"};
  app.require_subcommand(1);

  std::string file;
  std::vector<double> point;
  std::vector<double> velocity;
  std::uint64_t seed = 42;
  ProbeOptions probe_options;
  std::string csv_path;

  auto* validate = app.add_subcommand("validate", "Load and validate a system definition");
  validate->add_option("file", file, "System definition (JSON)")->required();

  auto* analyze_cmd = app.add_subcommand("analyze", "Momentum, isotropy algebras and Witt-Artin dimensions");
  analyze_cmd->add_option("file", file, "System definition (JSON)")->required();
  analyze_cmd->add_option("--point", point, "Point overriding the file's point")->delimiter(',');

  auto* certify_cmd = app.add_subcommand("certify", "Search the velocity family for a definite slice Hessian");
  certify_cmd->add_option("file", file, "System definition (JSON)")->required();
  certify_cmd->add_option("--point", point, "Point overriding the file's point")->delimiter(',');
  certify_cmd->add_option("--velocity", velocity, "Use this velocity instead of searching")->delimiter(',');
  certify_cmd->add_option("--seed", seed, "Seed for random restarts");

  auto* probe_cmd = app.add_subcommand("probe", "Integrate nearby trajectories and measure distance to the K-orbit");
  probe_cmd->add_option("file", file, "System definition (JSON)")->required();
  probe_cmd->add_option("--point", point, "Point overriding the file's point")->delimiter(',');
  probe_cmd->add_option("--epsilon", probe_options.epsilon, "Radius of the initial ball");
  probe_cmd->add_option("--horizon", probe_options.horizon, "Integration time");
  probe_cmd->add_option("--samples", probe_options.samples, "Number of trajectories");
  probe_cmd->add_option("--dt", probe_options.dt, "Time step");
  probe_cmd->add_option("--escape-factor", probe_options.escape_factor, "Escape when distance exceeds factor * epsilon");
  probe_cmd->add_option("--csv", csv_path, "Dump the first trajectory as CSV");
  probe_cmd->add_option("--seed", seed, "Seed for initial conditions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : kExitUsage;
  }

  try {
    if (*validate) return cmd_validate(file, out, err);
    if (*analyze_cmd) return cmd_analyze(file, point, out, err);
    if (*certify_cmd) return cmd_certify(file, point, velocity, seed, out, err);
    if (*probe_cmd) {
      probe_options.seed = seed;
      return cmd_probe(file, point, probe_options, csv_path, out, err);
    }
  } catch (const NotRelativeEquilibrium& e) {
    err << "not a relative equilibrium: " << e.what() << "\n";
    return kExitNotRelativeEquilibrium;
  } catch (const ValidationError& e) {
    err << "validation failed: " << e.what() << "\n";
    return kExitValidation;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace slicecert
