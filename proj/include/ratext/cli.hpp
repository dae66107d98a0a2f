#pragma once

// Job configuration, orchestration and machine-readable reports for the
// command-line front end.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "ratext/verify.hpp"

namespace ratext {

/// Malformed or inconsistent configuration; the message starts with a JSON
/// pointer to the offending entry.
class ConfigError : public DomainError {
 public:
  using DomainError::DomainError;
};

enum class Command { Extend, Classify, Spectrum, Verify, Curve, Equivalence };
std::string command_name(Command c);
Command parse_command(std::string_view s);

struct NumericOptions {
  double grid = 1.0 / 200;
  double truncate = 20.0;
  double tolerance = 1e-3;
  double margin = 1e-3;
  bool operator==(const NumericOptions&) const = default;
};

struct CurveOptions {
  std::optional<Rational> n_lo, n_hi;
  Rational step{1, 4};
  bool operator==(const CurveOptions&) const = default;
};

struct JobConfig {
  FamilyTag family = FamilyTag::M;
  Rational h, mu, g;
  bool half_integer = false;
  std::vector<SeedKind> seeds;
  std::vector<std::string> checks;
  std::optional<ShapeVariant> variant;
  std::optional<long> krein_adler_n;
  NumericOptions numeric;
  CurveOptions curve;
  std::string out_dir = ".";

  static const std::vector<std::string>& known_checks();
  static JobConfig from_json(const nlohmann::json& j);
  static JobConfig parse(const std::string& text);
  static JobConfig load(const std::string& path);
  nlohmann::json to_json() const;

  Params params() const;
  /// Throws ConfigError for parameter problems and InvalidSeedError for seeds.
  ExtensionSpec spec() const;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
  bool operator==(const CheckResult&) const = default;
};

struct RunReport {
  std::string command;
  bool pass = true;  // conjunction of the checks
  std::vector<CheckResult> checks;
  std::map<std::string, std::string> artifacts;
  nlohmann::json system;  // serialised extension, when built

  nlohmann::json to_json() const;
  static RunReport from_json(const nlohmann::json& j);
  bool operator==(const RunReport& o) const;
};

nlohmann::json system_to_json(const ExtendedSystem& sys);
nlohmann::json params_to_json(const Params& p);

/// Plot data: n, E, region, discrete.
std::string curve_csv(const EnergyCurve& c);
/// x, U, U^[M] on an evenly spaced grid of the truncated domain.
std::string potential_csv(const ExtensionSpec& spec, double truncate, long points = 801);

/// Runs the pipeline of `cmd` plus the requested checks and writes the
/// artifacts into cfg.out_dir. Throws ConfigError / InvalidSeedError for
/// invalid configurations.
RunReport run(const JobConfig& cfg, Command cmd);

/// 0 success, 1 failed check, 2 invalid configuration.
int exit_code(const RunReport& r);

}  // namespace ratext
