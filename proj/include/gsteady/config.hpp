#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "gsteady/dsmc.hpp"
#include "gsteady/ensemble.hpp"
#include "gsteady/restitution.hpp"

namespace gsteady {

struct RestitutionConfig {
  RestitutionKind kind = RestitutionKind::PowerLaw;
  double a = 1.0;
  double gamma = 0.2;
  double e0 = 1.0;
  double lambda = 1.0;  ///< pre-composed rescale of the law

  RestitutionModel build() const;

  bool operator==(const RestitutionConfig&) const = default;
};

/// Everything a simulation needs, as read from a flat key=value file.
///
/// scaling.lambda, when present, selects the rescaled problem: the law is
/// rescaled by lambda and the bath strength becomes lambda^gamma. It cannot
/// be combined with an explicit engine.mu.
struct SimulationConfig {
  EngineConfig engine;
  RunConfig run;
  RestitutionConfig restitution;
  InitialCondition init;
  std::optional<double> scaling_lambda;
  bool mu_given = false;

  /// Model with the scaling rescale applied.
  RestitutionModel model() const;
  /// Engine with the scaling bath strength applied.
  EngineConfig effective_engine() const;

  bool operator==(const SimulationConfig&) const = default;
};

/// Parses "key = value" lines; '#' starts a comment. Unknown, duplicate or
/// malformed keys and a missing restitution.kind raise ConfigError naming the key.
SimulationConfig parse_config(const std::string& text);
SimulationConfig load_config(const std::filesystem::path& path);

/// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const SimulationConfig& config);

/// Splits the text into its key/value pairs, ignoring comments and layout.
std::map<std::string, std::string> config_pairs(const std::string& text);

/// Shortest text that parses back to the same double.
std::string format_double(double value);

/// 64-bit FNV-1a of a byte string, as 16 hex digits.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace gsteady
