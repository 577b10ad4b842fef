#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gsteady/restitution.hpp"

namespace gsteady {

/// One checked property: `worst` is the largest observed violation measure,
/// compared against `limit` (passed iff worst <= limit and worst is finite).
struct PropertyResult {
  std::string suite;
  std::string property;
  std::string model;
  double worst = 0.0;
  double limit = 0.0;
  bool passed = false;
};

struct NamedModel {
  std::string label;
  RestitutionModel model;
};

/// constant(0.3), constant(0.8), power_law(1, 0.2), viscoelastic(1).
std::vector<NamedModel> default_models();

struct SuiteOptions {
  std::uint64_t seed = 20240601;
  /// Reduced sample counts for quick runs.
  bool fast = false;
  /// Models to exercise; empty means default_models().
  std::vector<NamedModel> models;
};

/// Known suites: all, fast, restitution, kinematics, dissipation, maps, povzner.
bool is_known_suite(const std::string& name);

/// Runs the named property suite. Throws InputError for unknown names.
std::vector<PropertyResult> run_suite(const std::string& name, const SuiteOptions& options = {});

std::vector<PropertyResult> restitution_properties(const SuiteOptions& options);
std::vector<PropertyResult> kinematics_properties(const SuiteOptions& options);
std::vector<PropertyResult> dissipation_properties(const SuiteOptions& options);
std::vector<PropertyResult> map_properties(const SuiteOptions& options);
std::vector<PropertyResult> povzner_properties(const SuiteOptions& options);

}  // namespace gsteady
