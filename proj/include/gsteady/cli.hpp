#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "gsteady/restitution.hpp"

namespace gsteady {

enum ExitCode : int {
  kExitOk = 0,
  kExitError = 1,
  kExitNotConverged = 2,
};

/// Entry point of the gsteady command-line tool; returns the exit code.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "elastic", "constant:E0", "power_law:A,GAMMA", "viscoelastic:A".
RestitutionModel parse_model_spec(const std::string& spec);

/// Applies GSTEADY_THREADS, if set, as the worker cap. Throws on bad values.
void apply_thread_limit();

}  // namespace gsteady
