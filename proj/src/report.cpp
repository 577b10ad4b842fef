#include "gsteady/report.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "gsteady/error.hpp"

#ifndef GSTEADY_VERSION
#define GSTEADY_VERSION "unknown"
#endif

namespace gsteady {

std::string version_string() { return GSTEADY_VERSION; }

std::string RunManifest::hash() const {
  return fnv1a_hex(config_text + "\nseed=" + std::to_string(seed) + "\nversion=" + version + "\ncommand=" + command);
}

std::string RunManifest::header_line() const {
  return "# manifest=" + hash() + " version=" + version + " seed=" + std::to_string(seed) + " command=" + command;
}

void RunManifest::write_json(const std::filesystem::path& path) const {
  nlohmann::json j;
  j["hash"] = hash();
  j["command"] = command;
  j["version"] = version;
  j["seed"] = seed;
  j["wall_seconds"] = wall_seconds;
  j["outputs"] = outputs;
  j["config"] = config_text;
  std::ofstream out(path);
  if (!out) {
    throw InputError("cannot write " + path.string());
  }
  out << j.dump(2) << '\n';
}

std::string csv_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  return format_double(value);
}

void write_time_series(std::ostream& out, const RunManifest& manifest, const std::vector<TimeSample>& series) {
  out << manifest.header_line() << '\n';
  out << "step,t,m1,m3_2,m2,m3,diss_estimate,accept_ratio\n";
  for (const auto& s : series) {
    out << s.step << ',' << csv_number(s.t) << ',' << csv_number(s.m1) << ',' << csv_number(s.m3_2) << ','
        << csv_number(s.m2) << ',' << csv_number(s.m3) << ',' << csv_number(s.diss_estimate) << ','
        << csv_number(s.accept_ratio) << '\n';
  }
}

void write_final_report(std::ostream& out, const RunManifest& manifest, const SteadyReport& r) {
  out << manifest.header_line() << '\n';
  out << "temperature,m1,m3_2,m2,m3,diss_estimate,six_mu,tail_A,tail_value,accept_ratio,relative_drift,steps,"
         "converged,stop_reason\n";
  std::string reason = r.stop_reason;
  for (char& c : reason) {
    if (c == ',' || c == '\n') c = ';';
  }
  out << csv_number(r.temperature) << ',' << csv_number(r.m1) << ',' << csv_number(r.m3_2) << ','
      << csv_number(r.m2) << ',' << csv_number(r.m3) << ',' << csv_number(r.diss_estimate) << ','
      << csv_number(r.six_mu) << ',' << csv_number(r.tail_rate) << ',' << csv_number(r.tail_value) << ','
      << csv_number(r.accept_ratio) << ',' << csv_number(r.relative_drift) << ',' << r.steps << ','
      << (r.converged ? 1 : 0) << ',' << reason << '\n';
}

void write_moments(std::ostream& out, const RunManifest& manifest, const MomentReport& report) {
  out << manifest.header_line() << '\n';
  out << "p,m_p\n";
  for (const auto& [p, m] : report.m) {
    out << csv_number(p) << ',' << csv_number(m) << '\n';
  }
}

void write_tail(std::ostream& out, const RunManifest& manifest, const TailReport& report) {
  out << manifest.header_line() << '\n';
  out << "A,tail_value,max_share\n";
  out << csv_number(report.rate) << ',' << csv_number(report.value) << ',' << csv_number(report.max_share) << '\n';
}

void write_distance(std::ostream& out, const RunManifest& manifest, const MaxwellianDistance& d) {
  out << manifest.header_line() << '\n';
  out << "d_moment,d_hist\n";
  out << csv_number(d.d_moment) << ',' << csv_number(d.d_hist) << '\n';
}

void write_sweep(std::ostream& out, const RunManifest& manifest, const std::vector<SweepPoint>& points) {
  out << manifest.header_line() << '\n';
  out << "lambda,temperature,theta_oracle,d_moment,d_hist,m3,tail_value,diss_estimate,six_mu,theta_closure\n";
  for (const auto& p : points) {
    out << csv_number(p.lambda) << ',' << csv_number(p.temperature) << ',' << csv_number(p.theta_oracle) << ','
        << csv_number(p.distance.d_moment) << ',' << csv_number(p.distance.d_hist) << ',' << csv_number(p.m3)
        << ',' << csv_number(p.tail_value) << ',' << csv_number(p.diss_estimate) << ','
        << csv_number(p.six_mu) << ',' << csv_number(p.theta_closure) << '\n';
  }
}

void write_properties(std::ostream& out, const RunManifest& manifest, const std::vector<PropertyResult>& results) {
  out << manifest.header_line() << '\n';
  out << "suite,property,model,worst,limit,passed\n";
  for (const auto& r : results) {
    out << r.suite << ',' << r.property << ",\"" << r.model << "\"," << csv_number(r.worst) << ','
        << csv_number(r.limit) << ',' << (r.passed ? 1 : 0) << '\n';
  }
}

}  // namespace gsteady
