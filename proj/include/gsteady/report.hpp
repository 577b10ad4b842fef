#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "gsteady/config.hpp"
#include "gsteady/dsmc.hpp"
#include "gsteady/observables.hpp"
#include "gsteady/scaling.hpp"
#include "gsteady/verification.hpp"

namespace gsteady {

std::string version_string();

/// Identity of one invocation. The hash covers the configuration text, the
/// seed and the code version; wall time and outputs are recorded only.
struct RunManifest {
  std::string command;
  std::string config_text;
  std::uint64_t seed = 0;
  std::string version = version_string();
  double wall_seconds = 0.0;
  std::vector<std::string> outputs;

  std::string hash() const;
  /// "# manifest=<hash> version=<v> seed=<s> command=<c>"
  std::string header_line() const;
  void write_json(const std::filesystem::path& path) const;
};

void write_time_series(std::ostream& out, const RunManifest& manifest, const std::vector<TimeSample>& series);
void write_final_report(std::ostream& out, const RunManifest& manifest, const SteadyReport& report);
void write_moments(std::ostream& out, const RunManifest& manifest, const MomentReport& report);
void write_tail(std::ostream& out, const RunManifest& manifest, const TailReport& report);
void write_distance(std::ostream& out, const RunManifest& manifest, const MaxwellianDistance& distance);
void write_sweep(std::ostream& out, const RunManifest& manifest, const std::vector<SweepPoint>& points);
void write_properties(std::ostream& out, const RunManifest& manifest, const std::vector<PropertyResult>& results);

/// Decimal text with round-trip precision; "nan"/"inf" for non-finite values.
std::string csv_number(double value);

}  // namespace gsteady
