#include <pybind11/functional.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "gsteady/appendix_maps.hpp"
#include "gsteady/cli.hpp"
#include "gsteady/dissipation.hpp"
#include "gsteady/dsmc.hpp"
#include "gsteady/error.hpp"
#include "gsteady/kinematics.hpp"
#include "gsteady/observables.hpp"
#include "gsteady/povzner.hpp"
#include "gsteady/scaling.hpp"
#include "gsteady/verification.hpp"

namespace py = pybind11;
using namespace gsteady;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Vec3 to_vec(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }
std::array<double, 3> to_array(const Vec3& v) { return {v.x, v.y, v.z}; }

Array velocities_of(const Ensemble& e) {
  Array out({static_cast<py::ssize_t>(e.size()), py::ssize_t{3}});
  auto view = out.mutable_unchecked<2>();
  for (std::size_t i = 0; i < e.size(); ++i) {
    const Vec3& v = e.velocities()[i];
    view(i, 0) = v.x;
    view(i, 1) = v.y;
    view(i, 2) = v.z;
  }
  return out;
}

Ensemble ensemble_from(const Array& velocities, double time) {
  if (velocities.ndim() != 2 || velocities.shape(1) != 3) {
    throw InputError("velocities must have shape (N, 3)");
  }
  auto view = velocities.unchecked<2>();
  std::vector<Vec3> v(static_cast<std::size_t>(velocities.shape(0)));
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = {view(i, 0), view(i, 1), view(i, 2)};
  return Ensemble(std::move(v), time);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Particle simulation of driven granular gases with variable restitution";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<MajorantViolation>(m, "MajorantViolation", PyExc_RuntimeError);
  py::register_exception<StepSizeError>(m, "StepSizeError", PyExc_RuntimeError);

  py::enum_<RestitutionKind>(m, "RestitutionKind")
      .value("Constant", RestitutionKind::Constant)
      .value("PowerLaw", RestitutionKind::PowerLaw)
      .value("Viscoelastic", RestitutionKind::ViscoelasticImplicit);

  py::class_<RestitutionModel>(m, "RestitutionModel")
      .def_static("constant", &RestitutionModel::constant, py::arg("e0"))
      .def_static("elastic", &RestitutionModel::elastic)
      .def_static("power_law", &RestitutionModel::power_law, py::arg("a"), py::arg("gamma"))
      .def_static("viscoelastic", &RestitutionModel::viscoelastic, py::arg("a"))
      .def_static("from_spec", &parse_model_spec, py::arg("spec"))
      .def("__call__", &RestitutionModel::eval, py::arg("r"))
      .def("eval", &RestitutionModel::eval, py::arg("r"))
      .def("beta", &RestitutionModel::beta, py::arg("r"))
      .def("rescaled", &RestitutionModel::rescaled, py::arg("lam"))
      .def_property_readonly("kind", &RestitutionModel::kind)
      .def_property_readonly("a", &RestitutionModel::a)
      .def_property_readonly("gamma", &RestitutionModel::gamma)
      .def_property_readonly("gamma_bar", &RestitutionModel::gamma_bar)
      .def_property_readonly("lambda_scale", &RestitutionModel::lambda_scale);

  m.def(
      "post_collision_sigma",
      [](std::array<double, 3> v, std::array<double, 3> vs, std::array<double, 3> sigma,
         const RestitutionModel& model) {
        const auto [a, b] = post_collision_sigma(to_vec(v), to_vec(vs), to_vec(sigma), model);
        return std::make_pair(to_array(a), to_array(b));
      },
      py::arg("v"), py::arg("vs"), py::arg("sigma"), py::arg("model"));
  m.def(
      "energy_loss",
      [](std::array<double, 3> v, std::array<double, 3> vs, std::array<double, 3> sigma,
         const RestitutionModel& model) { return energy_loss(to_vec(v), to_vec(vs), to_vec(sigma), model); },
      py::arg("v"), py::arg("vs"), py::arg("sigma"), py::arg("model"));

  py::class_<DissipationSpec>(m, "DissipationSpec")
      .def(py::init<RestitutionModel, std::size_t>(), py::arg("model"), py::arg("n_z") = 64)
      .def("psi", &DissipationSpec::psi, py::arg("r"))
      .def("zeta_lambda", &DissipationSpec::zeta_lambda, py::arg("lam"), py::arg("r2"));
  m.def("zeta_zero", &zeta_zero, py::arg("a"), py::arg("gamma"), py::arg("r2"));
  m.def(
      "theta_limit",
      [](double a, double gamma) {
        const ThetaResult t = theta_limit(a, gamma);
        return std::make_pair(t.theta, t.theta_paper_formula);
      },
      py::arg("a"), py::arg("gamma"), "(oracle temperature, printed closed form)");

  py::class_<MapBundle>(m, "MapBundle")
      .def(py::init<RestitutionModel>(), py::arg("model"))
      .def("eta", &MapBundle::eta)
      .def("alpha", &MapBundle::alpha)
      .def("jacobian", &MapBundle::jacobian);

  m.def(
      "povzner_margin",
      [](std::array<double, 3> v, std::array<double, 3> vs, double p, const RestitutionModel& model) {
        return check_inequality(to_vec(v), to_vec(vs), PovznerCase::power(p), model, AngularQuadrature());
      },
      py::arg("v"), py::arg("vs"), py::arg("p"), py::arg("model"));

  py::class_<EngineConfig>(m, "EngineConfig")
      .def(py::init<>())
      .def_readwrite("n", &EngineConfig::n)
      .def_readwrite("dt", &EngineConfig::dt)
      .def_readwrite("mu", &EngineConfig::mu)
      .def_readwrite("seed", &EngineConfig::seed)
      .def_readwrite("recenter", &EngineConfig::recenter)
      .def_readwrite("umax_factor", &EngineConfig::umax_factor)
      .def_readwrite("collisions", &EngineConfig::collisions);

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init<>())
      .def_readwrite("max_steps", &RunConfig::max_steps)
      .def_readwrite("window", &RunConfig::window)
      .def_readwrite("sample_every", &RunConfig::sample_every)
      .def_readwrite("burn_in", &RunConfig::burn_in)
      .def_readwrite("tol", &RunConfig::tol)
      .def_readwrite("diss_pairs", &RunConfig::diss_pairs)
      .def_readwrite("tail_rate", &RunConfig::tail_rate);

  py::class_<Ensemble>(m, "Ensemble")
      .def(py::init(&ensemble_from), py::arg("velocities"), py::arg("time") = 0.0)
      .def_static(
          "initial",
          [](const std::string& kind, double temperature, std::size_t n, std::uint64_t seed) {
            return make_initial({init_kind_from_string(kind), temperature}, n, seed);
          },
          py::arg("kind"), py::arg("temperature"), py::arg("n"), py::arg("seed"))
      .def("__len__", &Ensemble::size)
      .def_property_readonly("velocities", &velocities_of)
      .def_property_readonly("time", &Ensemble::time)
      .def_property_readonly("steps", &Ensemble::steps)
      .def("mean_square_speed", &Ensemble::mean_square_speed)
      .def("step", [](Ensemble& e, const EngineConfig& c, const RestitutionModel& m) { step(e, c, m); },
           py::arg("engine"), py::arg("model"))
      .def("rescaled", &rescale_ensemble, py::arg("lam"));

  py::class_<SteadyReport>(m, "SteadyReport")
      .def_readonly("temperature", &SteadyReport::temperature)
      .def_readonly("m1", &SteadyReport::m1)
      .def_readonly("m2", &SteadyReport::m2)
      .def_readonly("m3", &SteadyReport::m3)
      .def_readonly("diss_estimate", &SteadyReport::diss_estimate)
      .def_readonly("six_mu", &SteadyReport::six_mu)
      .def_readonly("converged", &SteadyReport::converged)
      .def_readonly("steps", &SteadyReport::steps)
      .def_readonly("stop_reason", &SteadyReport::stop_reason);

  m.def(
      "run_to_steady",
      [](const EngineConfig& engine, const RunConfig& run, const RestitutionModel& model, Ensemble initial) {
        RunResult r = run_to_steady(engine, run, model, std::move(initial));
        return std::make_pair(r.report, std::move(r.ensemble));
      },
      py::arg("engine"), py::arg("run"), py::arg("model"), py::arg("initial"),
      py::call_guard<py::gil_scoped_release>());

  m.def(
      "moments",
      [](const Ensemble& e, std::vector<double> orders) { return moments(e, orders).m; },
      py::arg("ensemble"), py::arg("orders") = std::vector<double>{1.0, 1.5, 2.0, 3.0});
  m.def(
      "maxwellian_distance",
      [](const Ensemble& e, double theta) {
        const auto d = maxwellian_distance(e, theta);
        return std::make_pair(d.d_moment, d.d_hist);
      },
      py::arg("ensemble"), py::arg("theta"));
  m.def(
      "lambda_from_mu", [](double mu, double gamma) { return lambda_from_mu(mu, gamma).lambda; }, py::arg("mu"),
      py::arg("gamma"));

  m.def(
      "verify",
      [](const std::string& suite) {
        std::vector<py::dict> rows;
        for (const auto& r : run_suite(suite)) {
          py::dict d;
          d["suite"] = r.suite;
          d["property"] = r.property;
          d["model"] = r.model;
          d["worst"] = r.worst;
          d["limit"] = r.limit;
          d["passed"] = r.passed;
          rows.push_back(d);
        }
        return rows;
      },
      py::arg("suite") = "fast");

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out;
        std::ostringstream err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run the command-line front end; returns (exit code, stdout, stderr).");
}
