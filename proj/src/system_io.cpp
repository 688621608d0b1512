#include "slicecert/system_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "slicecert/errors.hpp"

namespace slicecert {

using nlohmann::json;

namespace {

constexpr double kInvarianceTol = 1e-9;

Vec vector_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError("'" + field + "' must be an array of numbers");
  Vec v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw ParseError("'" + field + "' must contain only numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

Mat matrix_from_json(const json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError("'" + field + "' must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : (j[0].is_array() ? j[0].size() : 0);
  Mat m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t r = 0; r < rows; ++r) {
    if (!j[r].is_array() || j[r].size() != cols) throw ParseError("'" + field + "' is not a rectangular matrix");
    for (std::size_t c = 0; c < cols; ++c) {
      if (!j[r][c].is_number()) throw ParseError("'" + field + "' must contain only numbers");
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = j[r][c].get<double>();
    }
  }
  return m;
}

json json_from_vector(const Vec& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json json_from_matrix(const Mat& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

/// Columns as a list of vectors.
json json_from_columns(const Mat& m) {
  json out = json::array();
  for (Eigen::Index c = 0; c < m.cols(); ++c) out.push_back(json_from_vector(m.col(c)));
  return out;
}

json json_from_inertia(const Inertia& in) { return json::array({in.positive, in.negative, in.zero}); }

json json_number(double v) {
  if (std::isfinite(v)) return v;
  return v > 0 ? "inf" : (v < 0 ? "-inf" : "nan");
}

const json& require(const json& doc, const char* field) {
  auto it = doc.find(field);
  if (it == doc.end()) throw ParseError(std::string("missing required field '") + field + "'");
  return *it;
}

}  // namespace

SystemDefinition parse_system(const json& doc) {
  if (!doc.is_object()) throw ParseError("system definition must be a JSON object");
  const json& dim_field = require(doc, "dim");
  if (!dim_field.is_number_integer()) throw ParseError("'dim' must be an integer");
  const int dim = dim_field.get<int>();
  if (dim <= 0 || dim % 2 != 0) throw ValidationError("'dim' must be even and positive");

  Mat omega = doc.contains("omega") ? matrix_from_json(doc["omega"], "omega") : SymplecticSpace::canonical_omega(dim);
  Mat metric = doc.contains("metric") ? matrix_from_json(doc["metric"], "metric") : Mat::Identity(dim, dim);
  if (omega.rows() != dim || omega.cols() != dim) throw ValidationError("omega must be dim x dim");
  SymplecticSpace space(omega, metric);

  const json& gens = require(doc, "generators");
  if (!gens.is_array()) throw ParseError("'generators' must be an array of matrices");
  std::vector<Mat> generators;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Mat a = matrix_from_json(gens[i], "generators[" + std::to_string(i) + "]");
    if (a.rows() != dim || a.cols() != dim)
      throw ValidationError("generator " + std::to_string(i) + " must be dim x dim");
    generators.push_back(std::move(a));
  }
  const int d = static_cast<int>(generators.size());

  std::optional<StructureConstants> structure;
  if (doc.contains("structureConstants") && !doc["structureConstants"].is_null()) {
    const json& c = doc["structureConstants"];
    StructureConstants sc(d);
    if (!c.is_array() || static_cast<int>(c.size()) != d) throw ParseError("'structureConstants' must be d x d x d");
    for (int i = 0; i < d; ++i) {
      Mat slab = matrix_from_json(c[i], "structureConstants");
      if (slab.rows() != d || slab.cols() != d) throw ParseError("'structureConstants' must be d x d x d");
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) sc(i, j, k) = slab(j, k);
    }
    structure = std::move(sc);
  }

  std::optional<LieAlgebraBasis> algebra;
  try {
    algebra.emplace(space.omega(), std::move(generators), std::move(structure));
  } catch (const NotClosedUnderBracket& e) {
    throw ValidationError(std::string("bracket non-closure: ") + e.what());
  }

  const json& terms = require(doc, "hamiltonian");
  if (!terms.is_array()) throw ParseError("'hamiltonian' must be a list of monomials");
  Poly h(dim);
  for (const auto& term : terms) {
    if (!term.is_object()) throw ParseError("monomials must be objects {exponents, coeff}");
    const json& exps = require(term, "exponents");
    const json& coeff = require(term, "coeff");
    if (!exps.is_array() || !coeff.is_number()) throw ParseError("malformed monomial");
    Exponents e;
    for (const auto& k : exps) {
      if (!k.is_number_integer()) throw ParseError("exponents must be integers");
      e.push_back(k.get<int>());
    }
    try {
      h.add_term(e, coeff.get<double>());
    } catch (const DimensionMismatch& err) {
      throw ValidationError(std::string("hamiltonian monomial: ") + err.what());
    }
  }

  Mat algebra_metric;
  if (doc.contains("algebraMetric") && !doc["algebraMetric"].is_null())
    algebra_metric = matrix_from_json(doc["algebraMetric"], "algebraMetric");

  Vec point = vector_from_json(require(doc, "point"), "point");
  if (point.size() != dim) throw ValidationError("point must have length dim");

  SymmetricSystem system(std::move(space), std::move(*algebra), std::move(h), std::move(algebra_metric));
  double defect = invariance_defect(system);
  if (defect > kInvarianceTol)
    throw ValidationError("hamiltonian is not invariant under the generators (defect " + std::to_string(defect) + ")");
  return SystemDefinition{std::move(system), std::move(point)};
}

SystemDefinition parse_system_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return parse_system(doc);
}

SystemDefinition load_system(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_system_text(buffer.str());
}

json to_json(const SystemDefinition& def) {
  const auto& sys = def.system;
  const auto& algebra = sys.algebra();
  const int d = algebra.dim();
  json doc;
  doc["dim"] = sys.dim();
  doc["omega"] = json_from_matrix(sys.space().omega());
  doc["metric"] = json_from_matrix(sys.space().metric());
  json gens = json::array();
  for (const auto& a : algebra.generators()) gens.push_back(json_from_matrix(a));
  doc["generators"] = std::move(gens);
  json c = json::array();
  for (int i = 0; i < d; ++i) {
    Mat slab(d, d);
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) slab(j, k) = algebra.structure()(i, j, k);
    c.push_back(json_from_matrix(slab));
  }
  doc["structureConstants"] = std::move(c);
  json terms = json::array();
  for (const auto& [e, coeff] : sys.hamiltonian().terms()) terms.push_back({{"exponents", e}, {"coeff", coeff}});
  doc["hamiltonian"] = std::move(terms);
  doc["point"] = json_from_vector(def.point);
  doc["algebraMetric"] = json_from_matrix(sys.algebra_metric());
  return doc;
}

AnalysisReport analyze(const SymmetricSystem& system, const Vec& p) {
  AnalysisReport report;
  report.point = p;
  report.frame = witt_artin(system, p);
  report.mu = report.frame.mu;
  report.dim_isotropy = report.frame.isotropy.dim();
  report.dim_momentum_isotropy = report.frame.momentum_isotropy.dim();
  report.dim_normalizer =
      normalizer_algebra(system.algebra(), report.frame.isotropy, report.frame.momentum_isotropy).dim();
  report.compactness_verified = compactness_certificate(system.algebra(), system.space().metric());
  return report;
}

CertifyResult certify(const SymmetricSystem& system, const Vec& p, const SearchOptions& options,
                      const std::optional<AlgebraVector>& fixed_velocity) {
  VelocityFamily family = solve_velocities(system, p);
  WittArtinFrame frame = witt_artin(system, p);
  StabilityCertificate cert;
  if (fixed_velocity) {
    if (fixed_velocity->dim() != system.algebra_dim())
      throw DimensionMismatch("velocity must have one coordinate per generator");
    if (system.velocity_residual(p, *fixed_velocity) > 1e-9)
      throw NotRelativeEquilibrium("the supplied velocity does not make p a critical point of h - J_xi");
    cert = certificate_at(system, p, *fixed_velocity, family, frame, options.threshold);
  } else {
    cert = definiteness_search(system, p, family, frame, options);
  }
  AlgebraVector orthogonal = orthogonal_velocity(family, system.algebra_metric());
  Inertia at_orthogonal = inertia(restricted_hessian(system, p, orthogonal, frame), options.threshold);
  return CertifyResult{std::move(family), std::move(frame), std::move(cert), std::move(orthogonal), at_orthogonal,
                       fixed_velocity.has_value()};
}

json to_json(const AnalysisReport& report) {
  const auto dims = report.frame.dims();
  json frame;
  frame["dims"] = {dims.t0, dims.t, dims.n, dims.n0};
  frame["T0"] = json_from_columns(report.frame.t0);
  frame["T"] = json_from_columns(report.frame.t);
  frame["N"] = json_from_columns(report.frame.n);
  frame["N0"] = json_from_columns(report.frame.n0);
  return json{{"point", json_from_vector(report.point)},
              {"mu", json_from_vector(report.mu.coords)},
              {"dimIsotropy", report.dim_isotropy},
              {"dimMomentumIsotropy", report.dim_momentum_isotropy},
              {"dimNormalizer", report.dim_normalizer},
              {"wittArtin", std::move(frame)},
              {"compactness", report.compactness_verified ? "verified" : "compactness unverified"}};
}

json to_json(const CertifyResult& result) {
  const auto& cert = result.certificate;
  json out{{"verdict", to_string(cert.verdict)},
           {"xiStar", json_from_vector(cert.xi_star.coords)},
           {"spectrum", json_from_vector(cert.spectrum)},
           {"margin", json_number(cert.margin)},
           {"bestPositiveMargin", json_number(cert.best_positive_margin)},
           {"bestNegativeMargin", json_number(cert.best_negative_margin)},
           {"inertiaAtXi1", json_from_inertia(cert.inertia_at_xi1)},
           {"xi1", json_from_vector(result.family.xi1.coords)},
           {"familyDim", result.family.dim()},
           {"xiPerp", json_from_vector(result.orthogonal.coords)},
           {"inertiaAtXiPerp", json_from_inertia(result.inertia_at_orthogonal)},
           {"sliceDim", result.frame.slice_dim()},
           {"compactness", cert.compactness_verified ? "verified" : "compactness unverified"},
           {"boundaryWarning", cert.boundary_hit},
           {"searchDisabled", result.search_disabled}};
  if (cert.verdict == Verdict::Inconclusive)
    out["note"] =
        "INCONCLUSIVE does not imply instability: definiteness of the slice Hessian is a sufficient condition only";
  else if (!cert.compactness_verified)
    out["note"] = "stability relative to K assumes K compact, which could not be verified for these generators";
  return out;
}

json to_json(const ProbeReport& report) {
  json out{{"epsilon", report.epsilon},
           {"horizon", report.horizon},
           {"samples", report.samples},
           {"maxOrbitDistance", report.max_orbit_distance},
           {"energyDrift", report.energy_drift},
           {"momentumDrift", report.momentum_drift},
           {"escaped", report.escaped},
           {"divergedSamples", report.diverged_samples}};
  out["escapeTime"] = report.escape_time ? json(*report.escape_time) : json(nullptr);
  return out;
}

}  // namespace slicecert
