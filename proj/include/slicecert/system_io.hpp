#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include <json.hpp>

#include "slicecert/certify.hpp"
#include "slicecert/dynamics.hpp"
#include "slicecert/slice.hpp"
#include "slicecert/system.hpp"

namespace slicecert {

/// A validated system plus the point under study.
struct SystemDefinition {
  SymmetricSystem system;
  Vec point;
};

/// Parses and validates. Throws ParseError on malformed JSON or missing
/// fields, ValidationError naming the violated invariant otherwise.
SystemDefinition parse_system(const nlohmann::json& doc);
SystemDefinition parse_system_text(const std::string& text);
SystemDefinition load_system(const std::filesystem::path& path);

nlohmann::json to_json(const SystemDefinition& def);

/// Aggregate of the point-wise geometry.
struct AnalysisReport {
  Vec point;
  MomentumValue mu;
  int dim_isotropy = 0;
  int dim_momentum_isotropy = 0;
  int dim_normalizer = 0;
  WittArtinFrame frame;
  bool compactness_verified = false;
};

AnalysisReport analyze(const SymmetricSystem& system, const Vec& p);

/// Full certification run. With `fixed_velocity`, no search is performed and
/// the verdict is the definiteness of the restricted Hessian at that velocity.
struct CertifyResult {
  VelocityFamily family;
  WittArtinFrame frame;
  StabilityCertificate certificate;
  AlgebraVector orthogonal;
  Inertia inertia_at_orthogonal;
  bool search_disabled = false;
};

CertifyResult certify(const SymmetricSystem& system, const Vec& p, const SearchOptions& options = {},
                      const std::optional<AlgebraVector>& fixed_velocity = std::nullopt);

nlohmann::json to_json(const AnalysisReport& report);
nlohmann::json to_json(const CertifyResult& result);
nlohmann::json to_json(const ProbeReport& report);

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitStable = 0,
  kExitUsage = 1,
  kExitInconclusive = 2,
  kExitNotRelativeEquilibrium = 3,
  kExitValidation = 4,
};

/// Entry point of the command-line tool; reports go to `out`, summaries and
/// diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace slicecert
