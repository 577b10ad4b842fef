#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gsteady/cli.hpp"
#include "gsteady/ensemble.hpp"
#include "gsteady/error.hpp"

using namespace gsteady;
namespace fs = std::filesystem;

namespace {

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "gsteady_cli_tests";
  fs::create_directories(dir);
  return dir / name;
}

fs::path write_file(const std::string& name, const std::string& text) {
  const auto path = scratch(name);
  std::ofstream(path) << text;
  return path;
}

std::vector<std::string> lines_of(const fs::path& path) {
  std::ifstream in(path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

std::string field(const std::string& header, const std::string& row, const std::string& name) {
  std::istringstream hs(header), rs(row);
  for (std::string h, r; std::getline(hs, h, ',') && std::getline(rs, r, ',');) {
    if (h == name) return r;
  }
  return "";
}

}  // namespace

TEST_CASE("model specs") {
  CHECK(parse_model_spec("elastic").is_elastic());
  CHECK(parse_model_spec("constant:0.4").e0() == 0.4);
  const auto pl = parse_model_spec("power_law:2,0.5");
  CHECK(pl.a() == 2.0);
  CHECK(pl.gamma() == 0.5);
  CHECK(parse_model_spec("viscoelastic:1").kind() == RestitutionKind::ViscoelasticImplicit);
  CHECK_THROWS_AS(parse_model_spec("power_law:2"), InputError);
  CHECK_THROWS_AS(parse_model_spec("soft"), InputError);
}

TEST_CASE("usage errors exit 1") {
  CHECK(cli({}).code == kExitError);
  CHECK(cli({"frobnicate"}).code == kExitError);
  CHECK(cli({"verify", "--suite", "everything"}).code == kExitError);
  CHECK(cli({"--help"}).code == kExitOk);
  CHECK(cli({"simulate", scratch("does_not_exist.cfg").string()}).code == kExitError);
}

TEST_CASE("missing restitution kind is reported by name") {
  const auto cfg = write_file("no_kind.cfg", "engine.N = 100\n");
  const auto r = cli({"simulate", cfg.string(), "-o", scratch("no_kind").string()});
  CHECK(r.code == kExitError);
  CHECK(r.err.find("restitution.kind") != std::string::npos);
}

TEST_CASE("elastic simulation keeps its temperature and writes every output") {
  const auto cfg = write_file("elastic.cfg",
                              "restitution.kind = constant\nrestitution.e0 = 1\nengine.N = 2000\n"
                              "engine.mu = 0\ninit.T0 = 0.8\nrun.window = 10\nrun.burn_in = 2\n");
  const auto prefix = scratch("elastic").string();
  const auto r = cli({"simulate", cfg.string(), "-o", prefix});
  REQUIRE(r.code == kExitOk);
  for (const char* ext : {".timeseries.csv", ".report.csv", ".moments.csv", ".tail.csv", ".distance.csv",
                          ".snapshot.bin", ".manifest.json"}) {
    CHECK(fs::exists(prefix + ext));
  }
  const auto report = lines_of(prefix + ".report.csv");
  REQUIRE(report.size() == 3);
  CHECK(report[0].rfind("# manifest=", 0) == 0);
  CHECK(std::abs(std::stod(field(report[1], report[2], "temperature")) - 0.8) < 1e-6);
  CHECK(field(report[1], report[2], "converged") == "1");
  CHECK(report[2].find("nan") == std::string::npos);

  const auto series = lines_of(prefix + ".timeseries.csv");
  CHECK(series[1] == "step,t,m1,m3_2,m2,m3,diss_estimate,accept_ratio");
  CHECK(series[0] == report[0]);

  // Restarting from the snapshot continues from the saved ensemble.
  const auto restarted = cli({"simulate", cfg.string(), "-o", scratch("elastic_restart").string(), "--restart",
                              prefix + ".snapshot.bin"});
  CHECK(restarted.code == kExitOk);
}

TEST_CASE("cooling gas exits non-converged") {
  const auto cfg = write_file("cooling.cfg",
                              "restitution.kind = constant\nrestitution.e0 = 0.7\nengine.N = 1000\n"
                              "engine.mu = 0\nrun.max_steps = 200\nrun.window = 10\nrun.burn_in = 2\n");
  CHECK(cli({"simulate", cfg.string(), "-o", scratch("cooling").string()}).code == kExitNotConverged);
}

TEST_CASE("rescaled problem via scaling.lambda") {
  const auto cfg = write_file("scaled.cfg",
                              "restitution.kind = power_law\nrestitution.a = 1\nrestitution.gamma = 0.2\n"
                              "scaling.lambda = 0.1\nengine.N = 3000\nengine.dt = 0.03\ninit.T0 = 1.8\n"
                              "run.window = 40\nrun.burn_in = 40\nrun.sample_every = 5\nrun.tol = 0.05\n"
                              "run.max_steps = 5000\nrun.diss_pairs = 3000\n");
  const auto prefix = scratch("scaled").string();
  REQUIRE(cli({"simulate", cfg.string(), "-o", prefix}).code == kExitOk);
  const auto report = lines_of(prefix + ".report.csv");
  REQUIRE(report.size() == 3);
  CHECK(std::stod(field(report[1], report[2], "six_mu")) == doctest::Approx(6.0 * std::pow(0.1, 0.2)));
}

TEST_CASE("sweep rows and slope report") {
  const auto cfg = write_file("sweep.cfg",
                              "restitution.kind = power_law\nengine.N = 1000\nengine.dt = 0.03\n"
                              "run.window = 10\nrun.burn_in = 10\nrun.sample_every = 5\nrun.tol = 0.2\n"
                              "run.diss_pairs = 500\n");
  const auto out = scratch("sweep.csv").string();
  const auto r = cli({"sweep-lambda", cfg.string(), "-l", "1", "-o", out});
  CHECK((r.code == kExitOk || r.code == kExitNotConverged));
  const auto rows = lines_of(out);
  REQUIRE(rows.size() == 3);
  CHECK(rows[1].rfind("lambda,temperature,theta_oracle,d_moment,d_hist,m3,tail_value,diss_estimate,six_mu", 0) == 0);
  CHECK(r.err.find("slope") == std::string::npos);

  const auto two = cli({"sweep-lambda", cfg.string(), "-l", "1,0.7,0.5", "-o", out});
  CHECK((two.code == kExitOk || two.code == kExitNotConverged));
  CHECK(lines_of(out).size() == 5);
  CHECK(two.err.find("slope=") != std::string::npos);
  const auto fit = lines_of(out + ".fit.csv");
  REQUIRE(fit.size() == 3);
  CHECK(std::isfinite(std::stod(field(fit[1], fit[2], "se"))));

  const auto with_mu = write_file("sweep_mu.cfg", "restitution.kind = power_law\nengine.mu = 0.1\n");
  CHECK(cli({"sweep-lambda", with_mu.string(), "-l", "0.5"}).code == kExitError);
}

TEST_CASE("theta table") {
  const auto r = cli({"theta", "-a", "1", "-g", "0.2,1"});
  REQUIRE(r.code == kExitOk);
  CHECK(r.out.find("a,gamma,theta_oracle,theta_paper_formula") != std::string::npos);
  CHECK(r.out.find("1.0649041657330") != std::string::npos);
  CHECK(r.out.find("0.70710678118654") != std::string::npos);
}

TEST_CASE("verify and povzner-check") {
  const auto maps = cli({"verify", "-s", "maps", "-m", "elastic"});
  CHECK(maps.code == kExitOk);
  CHECK(maps.out.find("suite,property,model,worst,limit,passed") != std::string::npos);

  const auto pz = cli({"povzner-check", "-p", "2,3", "-m", "viscoelastic:1", "--pairs", "200", "--bound-pairs",
                       "20"});
  CHECK(pz.code == kExitOk);
  CHECK(pz.out.find("worst_margin") != std::string::npos);
}
