#include "gsteady/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <omp.h>

#include "gsteady/config.hpp"
#include "gsteady/dissipation.hpp"
#include "gsteady/dsmc.hpp"
#include "gsteady/error.hpp"
#include "gsteady/observables.hpp"
#include "gsteady/povzner.hpp"
#include "gsteady/report.hpp"
#include "gsteady/scaling.hpp"
#include "gsteady/verification.hpp"

namespace gsteady {

namespace {

double elapsed_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path);
  if (!file) {
    throw InputError("cannot write " + path);
  }
  return file;
}

/// Writes to the named file, or to `fallback` when the name is empty or "-".
template <class Writer>
void emit(const std::string& path, std::ostream& fallback, Writer&& writer) {
  if (path.empty() || path == "-") {
    writer(fallback);
    return;
  }
  std::ofstream file = open_output(path);
  writer(file);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InputError("cannot read " + path);
  }
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<double> split_numbers(const std::string& list) {
  std::vector<double> out;
  std::stringstream s(list);
  std::string item;
  while (std::getline(s, item, ',')) {
    if (item.empty()) continue;
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) {
      throw InputError("bad number '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

/// "kind" or "kind:T0".
InitialCondition parse_init_spec(const std::string& spec, double default_temperature) {
  const auto colon = spec.find(':');
  InitialCondition init;
  init.kind = init_kind_from_string(spec.substr(0, colon));
  init.temperature = default_temperature;
  if (colon != std::string::npos) {
    init.temperature = std::stod(spec.substr(colon + 1));
  }
  if (!(init.temperature > 0.0)) {
    throw InputError("initial temperature must be positive in '" + spec + "'");
  }
  return init;
}

std::string init_label(const InitialCondition& init) {
  return to_string(init.kind) + ":" + format_double(init.temperature);
}

int cmd_simulate(const std::string& config_path, std::string prefix, const std::string& restart,
                 std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const std::string text = read_text(config_path);
  const SimulationConfig config = parse_config(text);
  const RestitutionModel model = config.model();
  const EngineConfig engine = config.effective_engine();
  if (prefix.empty()) {
    prefix = std::filesystem::path(config_path).stem().string();
  }

  Ensemble initial = restart.empty() ? make_initial(config.init, engine.n, engine.seed) : read_snapshot(restart);
  if (initial.size() != engine.n) {
    throw InputError("restart snapshot has " + std::to_string(initial.size()) + " particles, engine.N is " +
                     std::to_string(engine.n));
  }
  const RunResult result = run_to_steady(engine, config.run, model, std::move(initial));

  RunManifest manifest;
  manifest.command = "simulate";
  manifest.config_text = serialize_config(config);
  manifest.seed = engine.seed;
  const std::string series_path = prefix + ".timeseries.csv";
  const std::string report_path = prefix + ".report.csv";
  const std::string moments_path = prefix + ".moments.csv";
  const std::string tail_path = prefix + ".tail.csv";
  const std::string distance_path = prefix + ".distance.csv";
  const std::string snapshot_path = prefix + ".snapshot.bin";
  manifest.outputs = {series_path, report_path, moments_path, tail_path, distance_path, snapshot_path};

  emit(series_path, out, [&](std::ostream& o) { write_time_series(o, manifest, result.series); });
  emit(report_path, out, [&](std::ostream& o) { write_final_report(o, manifest, result.report); });
  emit(moments_path, out, [&](std::ostream& o) { write_moments(o, manifest, moments(result.ensemble)); });
  emit(tail_path, out,
       [&](std::ostream& o) { write_tail(o, manifest, tail_integral(result.ensemble, config.run.tail_rate)); });
  const double reference = result.report.temperature > 0.0 ? result.report.temperature : config.init.temperature;
  emit(distance_path, out, [&](std::ostream& o) {
    write_distance(o, manifest, maxwellian_distance(result.ensemble, reference));
  });
  write_snapshot(snapshot_path, result.ensemble);
  manifest.wall_seconds = elapsed_since(start);
  manifest.write_json(prefix + ".manifest.json");

  for (const auto& w : result.report.warnings) {
    err << "warning: " << w << '\n';
  }
  out << "converged=" << (result.report.converged ? 1 : 0) << " temperature=" << csv_number(result.report.temperature)
      << " diss_estimate=" << csv_number(result.report.diss_estimate) << " six_mu="
      << csv_number(result.report.six_mu) << " steps=" << result.report.steps << " stop=\""
      << result.report.stop_reason << "\"\n";
  return result.report.converged ? kExitOk : kExitNotConverged;
}

int cmd_sweep(const std::string& config_path, const std::vector<double>& lambdas, const std::string& out_path,
              std::ostream& out, std::ostream& err) {
  const auto start = std::chrono::steady_clock::now();
  const SimulationConfig config = parse_config(read_text(config_path));
  if (config.scaling_lambda) {
    throw ConfigError("scaling.lambda", "scaling.lambda: sweep-lambda sets lambda per row; remove the key");
  }
  if (config.mu_given) {
    throw ConfigError("engine.mu", "engine.mu: sweep-lambda uses the bath lambda^gamma; remove the key");
  }
  if (lambdas.empty()) {
    throw InputError("no lambda values given");
  }
  const RestitutionModel base = config.restitution.build();
  if (!(base.gamma() > 0.0)) {
    throw ConfigError("restitution.kind", "restitution.kind: the sweep needs a law with gamma > 0");
  }

  std::vector<SweepPoint> points;
  bool all_converged = true;
  for (const double lambda : lambdas) {
    points.push_back(sweep_point(base, config.engine, config.run, config.init, lambda));
    all_converged = all_converged && points.back().converged;
    err << "lambda=" << csv_number(lambda) << " temperature=" << csv_number(points.back().temperature)
        << " converged=" << (points.back().converged ? 1 : 0) << '\n';
  }

  RunManifest manifest;
  manifest.command = "sweep-lambda";
  manifest.config_text = serialize_config(config);
  manifest.seed = config.engine.seed;
  emit(out_path, out, [&](std::ostream& o) { write_sweep(o, manifest, points); });

  if (points.size() >= 2) {
    std::vector<double> x;
    std::vector<double> y;
    for (const auto& p : points) {
      x.push_back(std::log(p.lambda));
      y.push_back(std::log(p.distance.d_moment));
    }
    const SlopeFit fit = fit_line(x, y);
    err << "fit log(d_moment) vs log(lambda): slope=" << csv_number(fit.slope) << " se=" << csv_number(fit.se)
        << '\n';
    if (!out_path.empty() && out_path != "-") {
      std::ofstream f = open_output(out_path + ".fit.csv");
      f << manifest.header_line() << "\nslope,se,intercept,points\n"
        << csv_number(fit.slope) << ',' << csv_number(fit.se) << ',' << csv_number(fit.intercept) << ','
        << points.size() << '\n';
    }
  }
  if (!out_path.empty() && out_path != "-") {
    manifest.outputs = {out_path};
    if (points.size() >= 2) manifest.outputs.push_back(out_path + ".fit.csv");
    manifest.wall_seconds = elapsed_since(start);
    manifest.write_json(out_path + ".manifest.json");
  }
  return all_converged ? kExitOk : kExitNotConverged;
}

int cmd_verify(const std::string& suite, const std::vector<std::string>& model_specs, std::uint64_t seed,
               const std::string& out_path, std::ostream& out, std::ostream& err) {
  if (!is_known_suite(suite)) {
    err << "error: unknown suite '" << suite << "' (all, fast, restitution, kinematics, dissipation, maps, povzner)\n";
    return kExitError;
  }
  SuiteOptions options;
  options.seed = seed;
  for (const auto& spec : model_specs) {
    options.models.push_back({spec, parse_model_spec(spec)});
  }
  const auto results = run_suite(suite, options);
  RunManifest manifest;
  manifest.command = "verify " + suite;
  manifest.seed = seed;
  emit(out_path, out, [&](std::ostream& o) { write_properties(o, manifest, results); });
  std::size_t passed = 0;
  for (const auto& r : results) {
    if (r.passed) {
      ++passed;
    } else {
      err << "FAILED " << r.suite << '/' << r.property << " [" << r.model << "] worst=" << csv_number(r.worst)
          << " limit=" << csv_number(r.limit) << '\n';
    }
  }
  err << passed << '/' << results.size() << " properties passed\n";
  return passed == results.size() ? kExitOk : kExitError;
}

int cmd_povzner(const std::vector<double>& ps, const std::vector<std::string>& model_specs, std::size_t pairs,
                std::size_t bound_pairs, std::uint64_t seed, const std::string& out_path, std::ostream& out,
                std::ostream& err) {
  std::vector<NamedModel> models;
  if (model_specs.empty()) {
    models = default_models();
  } else {
    for (const auto& spec : model_specs) models.push_back({spec, parse_model_spec(spec)});
  }
  std::vector<PovznerBatteryResult> results;
  for (const auto& [label, model] : models) {
    for (const double p : ps) {
      if (!(p >= 2.0)) {
        throw InputError("povzner-check needs p >= 2");
      }
      results.push_back(povzner_battery(model, label, p, pairs, seed, bound_pairs));
    }
  }
  RunManifest manifest;
  manifest.command = "povzner-check";
  manifest.seed = seed;
  bool ok = true;
  emit(out_path, out, [&](std::ostream& o) {
    o << manifest.header_line() << '\n';
    o << "model,p,pairs,worst_margin,worst_gain_slack,printed_k,fitted_k,worst_v,worst_vs,passed\n";
    for (const auto& r : results) {
      o << '"' << r.model << "\"," << csv_number(r.p) << ',' << r.pairs << ',' << csv_number(r.worst_margin) << ','
        << csv_number(r.worst_gain_slack) << ',' << csv_number(r.printed_k) << ',' << csv_number(r.fitted_k)
        << ",\"" << csv_number(r.worst_v.x) << ' ' << csv_number(r.worst_v.y) << ' ' << csv_number(r.worst_v.z)
        << "\",\"" << csv_number(r.worst_vs.x) << ' ' << csv_number(r.worst_vs.y) << ' '
        << csv_number(r.worst_vs.z) << "\"," << (r.passed ? 1 : 0) << '\n';
    }
  });
  for (const auto& r : results) {
    if (r.passed) continue;
    if (r.fitted_k > 0.0 && r.worst_gain_slack >= -1e-9) {
      err << "warning: printed k=" << csv_number(r.printed_k) << " fails for " << r.model << " p=" << r.p
          << "; largest passing k=" << csv_number(r.fitted_k) << '\n';
    } else {
      err << "FAILED " << r.model << " p=" << r.p << " worst_margin=" << csv_number(r.worst_margin) << '\n';
      ok = false;
    }
  }
  return ok ? kExitOk : kExitError;
}

int cmd_theta(double a, const std::vector<double>& gammas, std::ostream& out) {
  out << "a,gamma,theta_oracle,theta_paper_formula\n";
  for (const double g : gammas) {
    const ThetaResult t = theta_limit(a, g);
    out << csv_number(a) << ',' << csv_number(g) << ',' << csv_number(t.theta) << ','
        << csv_number(t.theta_paper_formula) << '\n';
  }
  return kExitOk;
}

int cmd_uniqueness(const std::string& config_path, const std::vector<std::string>& init_specs, std::size_t seeds,
                   const std::string& out_path, std::ostream& out, std::ostream& err) {
  const SimulationConfig config = parse_config(read_text(config_path));
  if (init_specs.size() < 2) {
    throw InputError("uniqueness-probe needs at least two initial conditions");
  }
  if (seeds < 2) {
    throw InputError("uniqueness-probe needs at least two seeds");
  }
  std::vector<InitialCondition> inits;
  for (const auto& spec : init_specs) inits.push_back(parse_init_spec(spec, config.init.temperature));

  const RestitutionModel model = config.model();
  const EngineConfig engine = config.effective_engine();
  std::vector<std::vector<double>> temperature(inits.size());
  std::vector<std::vector<double>> m2(inits.size());
  bool converged = true;
  for (std::size_t i = 0; i < inits.size(); ++i) {
    for (std::size_t k = 0; k < seeds; ++k) {
      EngineConfig e = engine;
      e.seed = engine.seed + 1000 * (i + 1) + k;
      const RunResult r = run_to_steady(e, config.run, model, inits[i]);
      err << init_label(inits[i]) << " seed=" << e.seed << " temperature=" << csv_number(r.report.temperature)
          << " converged=" << (r.report.converged ? 1 : 0) << " (" << r.report.stop_reason << ")\n";
      converged = converged && r.report.converged;
      temperature[i].push_back(r.report.temperature);
      m2[i].push_back(r.report.m2);
    }
  }
  if (!converged) {
    err << "non-converged runs: no steady state to compare\n";
    return kExitNotConverged;
  }

  RunManifest manifest;
  manifest.command = "uniqueness-probe";
  manifest.config_text = serialize_config(config);
  manifest.seed = engine.seed;
  bool agree = true;
  emit(out_path, out, [&](std::ostream& o) {
    o << manifest.header_line() << '\n';
    o << "init_a,init_b,quantity,mean_a,se_a,mean_b,se_b,z\n";
    for (std::size_t i = 0; i < inits.size(); ++i) {
      for (std::size_t j = i + 1; j < inits.size(); ++j) {
        for (const auto& [name, values] : {std::pair{"temperature", &temperature}, std::pair{"m2", &m2}}) {
          const ReplicaStats a = replica_stats((*values)[i]);
          const ReplicaStats b = replica_stats((*values)[j]);
          const double z = two_sample_z(a, b);
          agree = agree && std::abs(z) < 3.0;
          o << init_label(inits[i]) << ',' << init_label(inits[j]) << ',' << name << ',' << csv_number(a.mean)
            << ',' << csv_number(a.se) << ',' << csv_number(b.mean) << ',' << csv_number(b.se) << ','
            << csv_number(z) << '\n';
        }
      }
    }
  });
  if (!agree) {
    err << "steady states differ between initial conditions (|z| >= 3)\n";
  }
  return agree ? kExitOk : kExitError;
}

}  // namespace

RestitutionModel parse_model_spec(const std::string& spec) {
  const auto colon = spec.find(':');
  const std::string kind = spec.substr(0, colon);
  const std::vector<double> args =
      colon == std::string::npos ? std::vector<double>{} : split_numbers(spec.substr(colon + 1));
  auto need = [&](std::size_t n) {
    if (args.size() != n) {
      throw InputError("model '" + spec + "' needs " + std::to_string(n) + " parameter(s)");
    }
  };
  if (kind == "elastic") {
    need(0);
    return RestitutionModel::elastic();
  }
  const RestitutionKind k = restitution_kind_from_string(kind);
  switch (k) {
    case RestitutionKind::Constant:
      need(1);
      return RestitutionModel::constant(args[0]);
    case RestitutionKind::PowerLaw:
      need(2);
      return RestitutionModel::power_law(args[0], args[1]);
    case RestitutionKind::ViscoelasticImplicit:
      need(1);
      return RestitutionModel::viscoelastic(args[0]);
  }
  throw InputError("unknown model '" + spec + "'");
}

void apply_thread_limit() {
  const char* value = std::getenv("GSTEADY_THREADS");
  if (value == nullptr || *value == '\0') {
    return;
  }
  char* end = nullptr;
  const long n = std::strtol(value, &end, 10);
  if (*end != '\0' || n < 1) {
    throw InputError(std::string("GSTEADY_THREADS must be a positive integer, got '") + value + "'");
  }
  omp_set_num_threads(static_cast<int>(n));
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"gsteady: particle simulation of driven granular gases with variable restitution"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());

  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 20240601;

  auto* simulate = app.add_subcommand("simulate", "run one configuration to steady state");
  std::string restart;
  simulate->add_option("config", config_path, "key=value configuration file")->required();
  simulate->add_option("-o,--out", out_path, "output prefix (default: config file stem)");
  simulate->add_option("--restart", restart, "start from a velocity snapshot");

  auto* sweep = app.add_subcommand("sweep-lambda", "steady states of the rescaled problem across lambda");
  std::vector<double> lambdas;
  sweep->add_option("config", config_path, "key=value configuration file")->required();
  sweep->add_option("-l,--lambdas", lambdas, "lambda values")->required()->delimiter(',');
  sweep->add_option("-o,--out", out_path, "CSV path (default: stdout)");

  auto* verify = app.add_subcommand("verify", "run a property suite");
  std::string suite = "all";
  std::vector<std::string> models;
  verify->add_option("-s,--suite", suite, "all, fast, restitution, kinematics, dissipation, maps, povzner");
  verify->add_option("-m,--model", models, "restitution law, e.g. power_law:1,0.2 (repeatable)");
  verify->add_option("--seed", seed, "seed of the random draws");
  verify->add_option("-o,--out", out_path, "CSV path (default: stdout)");

  auto* povzner = app.add_subcommand("povzner-check", "Povzner inequality margins on random pairs");
  std::vector<double> ps = {2.0, 3.0};
  std::size_t pairs = 10000;
  std::size_t bound_pairs = 1000;
  povzner->add_option("-p,--p", ps, "moment exponents")->delimiter(',');
  povzner->add_option("-m,--model", models, "restitution law (repeatable; default: standard battery)");
  povzner->add_option("--pairs", pairs, "random pairs per case");
  povzner->add_option("--bound-pairs", bound_pairs, "pairs used for the gain bound");
  povzner->add_option("--seed", seed, "seed of the random draws");
  povzner->add_option("-o,--out", out_path, "CSV path (default: stdout)");

  auto* theta = app.add_subcommand("theta", "temperature of the quasi-elastic limit Maxwellian");
  double a = 1.0;
  std::vector<double> gammas = {0.2};
  theta->add_option("-a,--a", a, "small-speed coefficient a > 0");
  theta->add_option("-g,--gamma", gammas, "exponents gamma > 0")->delimiter(',');

  auto* unique = app.add_subcommand("uniqueness-probe", "compare steady states reached from different starts");
  std::vector<std::string> inits = {"maxwellian", "bimodal"};
  std::size_t seeds = 4;
  unique->add_option("config", config_path, "key=value configuration file")->required();
  unique->add_option("-i,--inits", inits, "initial conditions kind[:T0]")->delimiter(';');
  unique->add_option("--seeds", seeds, "replicas per initial condition");
  unique->add_option("-o,--out", out_path, "CSV path (default: stdout)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    apply_thread_limit();
    if (*simulate) return cmd_simulate(config_path, out_path, restart, out, err);
    if (*sweep) return cmd_sweep(config_path, lambdas, out_path, out, err);
    if (*verify) return cmd_verify(suite, models, seed, out_path, out, err);
    if (*povzner) return cmd_povzner(ps, models, pairs, bound_pairs, seed, out_path, out, err);
    if (*theta) return cmd_theta(a, gammas, out);
    if (*unique) return cmd_uniqueness(config_path, inits, seeds, out_path, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace gsteady
