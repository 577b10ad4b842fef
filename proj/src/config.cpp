#include "gsteady/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "gsteady/error.hpp"

namespace gsteady {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ConfigError(key, key + ": expected a finite number, got '" + value + "'");
  }
  return out;
}

std::uint64_t to_unsigned(const std::string& key, const std::string& value) {
  std::uint64_t out = 0;
  const char* end = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), end, out);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(key, key + ": expected a non-negative integer, got '" + value + "'");
  }
  return out;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError(key, key + ": expected true or false, got '" + value + "'");
}

}  // namespace

RestitutionModel RestitutionConfig::build() const {
  RestitutionModel model = RestitutionModel::elastic();
  switch (kind) {
    case RestitutionKind::Constant:
      if (!(e0 > 0.0 && e0 <= 1.0)) throw ConfigError("restitution.e0", "restitution.e0 must lie in (0, 1]");
      model = RestitutionModel::constant(e0);
      break;
    case RestitutionKind::PowerLaw:
      if (!(a > 0.0)) throw ConfigError("restitution.a", "restitution.a must be positive");
      if (!(gamma > 0.0 && gamma <= 1.0)) {
        throw ConfigError("restitution.gamma", "restitution.gamma must lie in (0, 1]");
      }
      model = RestitutionModel::power_law(a, gamma);
      break;
    case RestitutionKind::ViscoelasticImplicit:
      if (!(a > 0.0)) throw ConfigError("restitution.a", "restitution.a must be positive");
      model = RestitutionModel::viscoelastic(a);
      break;
  }
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw ConfigError("restitution.lambda", "restitution.lambda must lie in (0, 1]");
  }
  return lambda == 1.0 ? model : model.rescaled(lambda);
}

RestitutionModel SimulationConfig::model() const {
  const RestitutionModel m = restitution.build();
  return scaling_lambda ? m.rescaled(*scaling_lambda) : m;
}

EngineConfig SimulationConfig::effective_engine() const {
  EngineConfig e = engine;
  if (scaling_lambda) {
    e.mu = std::pow(*scaling_lambda, restitution.build().gamma());
  }
  return e;
}

SimulationConfig parse_config(const std::string& text) {
  SimulationConfig c;
  std::set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(line, "line " + std::to_string(line_no) + ": expected key = value, got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!seen.insert(key).second) {
      throw ConfigError(key, key + ": given more than once");
    }
    if (value.empty()) {
      throw ConfigError(key, key + ": missing value");
    }

    if (key == "engine.N") {
      c.engine.n = to_unsigned(key, value);
    } else if (key == "engine.dt") {
      c.engine.dt = to_double(key, value);
    } else if (key == "engine.mu") {
      c.engine.mu = to_double(key, value);
      c.mu_given = true;
    } else if (key == "engine.seed") {
      c.engine.seed = to_unsigned(key, value);
    } else if (key == "engine.recenter") {
      c.engine.recenter = to_bool(key, value);
    } else if (key == "engine.umax_factor") {
      c.engine.umax_factor = to_double(key, value);
    } else if (key == "restitution.kind") {
      try {
        c.restitution.kind = restitution_kind_from_string(value);
      } catch (const std::exception&) {
        throw ConfigError(key, key + ": unknown kind '" + value + "' (constant, power_law, viscoelastic)");
      }
    } else if (key == "restitution.a") {
      c.restitution.a = to_double(key, value);
    } else if (key == "restitution.gamma") {
      c.restitution.gamma = to_double(key, value);
    } else if (key == "restitution.e0") {
      c.restitution.e0 = to_double(key, value);
    } else if (key == "restitution.lambda") {
      c.restitution.lambda = to_double(key, value);
    } else if (key == "init.kind") {
      try {
        c.init.kind = init_kind_from_string(value);
      } catch (const std::exception&) {
        throw ConfigError(key, key + ": unknown kind '" + value + "' (maxwellian, bimodal, uniform_ball)");
      }
    } else if (key == "init.T0") {
      c.init.temperature = to_double(key, value);
    } else if (key == "run.max_steps") {
      c.run.max_steps = to_unsigned(key, value);
    } else if (key == "run.window") {
      c.run.window = to_unsigned(key, value);
    } else if (key == "run.tol") {
      c.run.tol = to_double(key, value);
    } else if (key == "run.burn_in") {
      c.run.burn_in = to_unsigned(key, value);
    } else if (key == "run.sample_every") {
      c.run.sample_every = to_unsigned(key, value);
    } else if (key == "run.diss_pairs") {
      c.run.diss_pairs = to_unsigned(key, value);
    } else if (key == "run.tail_A") {
      c.run.tail_rate = to_double(key, value);
    } else if (key == "scaling.lambda") {
      c.scaling_lambda = to_double(key, value);
    } else {
      throw ConfigError(key, key + ": unknown key");
    }
  }

  if (!seen.contains("restitution.kind")) {
    throw ConfigError("restitution.kind", "restitution.kind: required key is missing");
  }
  if (!(c.init.temperature > 0.0)) {
    throw ConfigError("init.T0", "init.T0 must be positive");
  }
  if (c.scaling_lambda) {
    if (!(*c.scaling_lambda > 0.0 && *c.scaling_lambda <= 1.0)) {
      throw ConfigError("scaling.lambda", "scaling.lambda must lie in (0, 1]");
    }
    if (c.mu_given) {
      throw ConfigError("scaling.lambda", "scaling.lambda fixes the bath strength; drop engine.mu");
    }
  }
  c.restitution.build();
  c.engine.validate();
  c.run.validate();
  return c;
}

SimulationConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot read config file " + path.string());
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof buffer, value);
  return std::string(buffer, ptr);
}

std::string serialize_config(const SimulationConfig& c) {
  std::ostringstream out;
  out << "engine.N = " << c.engine.n << '\n';
  out << "engine.dt = " << format_double(c.engine.dt) << '\n';
  if (c.mu_given) {
    out << "engine.mu = " << format_double(c.engine.mu) << '\n';
  }
  out << "engine.seed = " << c.engine.seed << '\n';
  out << "engine.recenter = " << (c.engine.recenter ? "true" : "false") << '\n';
  out << "engine.umax_factor = " << format_double(c.engine.umax_factor) << '\n';
  out << "restitution.kind = " << to_string(c.restitution.kind) << '\n';
  out << "restitution.a = " << format_double(c.restitution.a) << '\n';
  out << "restitution.gamma = " << format_double(c.restitution.gamma) << '\n';
  out << "restitution.e0 = " << format_double(c.restitution.e0) << '\n';
  out << "restitution.lambda = " << format_double(c.restitution.lambda) << '\n';
  out << "init.kind = " << to_string(c.init.kind) << '\n';
  out << "init.T0 = " << format_double(c.init.temperature) << '\n';
  out << "run.max_steps = " << c.run.max_steps << '\n';
  out << "run.window = " << c.run.window << '\n';
  out << "run.tol = " << format_double(c.run.tol) << '\n';
  out << "run.burn_in = " << c.run.burn_in << '\n';
  out << "run.sample_every = " << c.run.sample_every << '\n';
  out << "run.diss_pairs = " << c.run.diss_pairs << '\n';
  out << "run.tail_A = " << format_double(c.run.tail_rate) << '\n';
  if (c.scaling_lambda) {
    out << "scaling.lambda = " << format_double(*c.scaling_lambda) << '\n';
  }
  return out.str();
}

std::map<std::string, std::string> config_pairs(const std::string& text) {
  std::map<std::string, std::string> pairs;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    pairs[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return pairs;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (const unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(h));
  return buffer;
}

}  // namespace gsteady
