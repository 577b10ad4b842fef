#include "gsteady/ensemble.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "gsteady/error.hpp"
#include "gsteady/rng.hpp"

namespace gsteady {

namespace {

constexpr std::size_t kBlock = 4096;

template <class Accumulate>
auto blocked_sum(std::size_t n, Accumulate&& term) {
  using T = decltype(term(std::size_t{0}));
  T total{};
  for (std::size_t start = 0; start < n; start += kBlock) {
    const std::size_t stop = std::min(n, start + kBlock);
    T partial{};
    for (std::size_t i = start; i < stop; ++i) {
      partial += term(i);
    }
    total += partial;
  }
  return total;
}

}  // namespace

Ensemble::Ensemble(std::vector<Vec3> velocities, double time) : v_(std::move(velocities)), t_(time) {
  for (const auto& v : v_) {
    if (!is_finite(v)) {
      throw NonFiniteVelocity("ensemble velocities must be finite");
    }
  }
}

Vec3 Ensemble::mean_velocity() const {
  if (v_.empty()) return {};
  return blocked_sum(v_.size(), [&](std::size_t i) { return v_[i]; }) / static_cast<double>(v_.size());
}

double Ensemble::mean_square_speed() const {
  if (v_.empty()) return 0.0;
  return blocked_sum(v_.size(), [&](std::size_t i) { return norm2(v_[i]); }) /
         static_cast<double>(v_.size());
}

void Ensemble::subtract(const Vec3& shift) noexcept {
  for (auto& v : v_) {
    v -= shift;
  }
}

std::string to_string(InitKind kind) {
  switch (kind) {
    case InitKind::Maxwellian:
      return "maxwellian";
    case InitKind::Bimodal:
      return "bimodal";
    case InitKind::UniformBall:
      return "uniform_ball";
  }
  return "unknown";
}

InitKind init_kind_from_string(const std::string& name) {
  if (name == "maxwellian") return InitKind::Maxwellian;
  if (name == "bimodal") return InitKind::Bimodal;
  if (name == "uniform_ball" || name == "uniform-ball") return InitKind::UniformBall;
  throw InputError("unknown initial condition '" + name + "'");
}

Ensemble make_initial(const InitialCondition& init, std::size_t n, std::uint64_t seed) {
  if (n < 2) {
    throw InputError("an ensemble needs at least 2 particles");
  }
  if (!(init.temperature > 0.0) || !std::isfinite(init.temperature)) {
    throw InputError("initial temperature must be positive");
  }
  std::vector<Vec3> v(n);
  rng::CounterStream stream(seed, rng::Stream::Init, 0);
  switch (init.kind) {
    case InitKind::Maxwellian:
      for (auto& vi : v) {
        vi = {stream.normal(), stream.normal(), stream.normal()};
      }
      break;
    case InitKind::Bimodal: {
      // Two beams +-v0 along x with a small isotropic jitter.
      constexpr double jitter = 1e-3;
      for (std::size_t i = 0; i < n; ++i) {
        const double sign = (i % 2 == 0) ? 1.0 : -1.0;
        v[i] = Vec3{sign, 0.0, 0.0} +
               jitter * Vec3{stream.normal(), stream.normal(), stream.normal()};
      }
      break;
    }
    case InitKind::UniformBall:
      for (auto& vi : v) {
        Vec3 p;
        do {
          p = {2.0 * stream.uniform() - 1.0, 2.0 * stream.uniform() - 1.0, 2.0 * stream.uniform() - 1.0};
        } while (norm2(p) > 1.0);
        vi = p;
      }
      break;
  }
  Ensemble ensemble(std::move(v));
  ensemble.subtract(ensemble.mean_velocity());
  const double scale = std::sqrt(3.0 * init.temperature / ensemble.mean_square_speed());
  for (auto& vi : ensemble.velocities()) {
    vi *= scale;
  }
  return ensemble;
}

namespace {

std::uint64_t to_little_endian(std::uint64_t bits) {
  if constexpr (std::endian::native == std::endian::big) {
    std::uint64_t out = 0;
    for (int i = 0; i < 8; ++i) {
      out = (out << 8) | ((bits >> (8 * i)) & 0xFFu);
    }
    return out;
  }
  return bits;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const Ensemble& ensemble) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw InputError("cannot open snapshot file '" + path.string() + "' for writing");
  }
  char header[96];
  std::snprintf(header, sizeof header, "GSTEADY1 N=%zu t=%.17g\n", ensemble.size(), ensemble.time());
  out << header;
  std::vector<std::uint64_t> raw;
  raw.reserve(3 * ensemble.size());
  for (const auto& v : ensemble.velocities()) {
    for (const double c : {v.x, v.y, v.z}) {
      raw.push_back(to_little_endian(std::bit_cast<std::uint64_t>(c)));
    }
  }
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size() * sizeof(std::uint64_t)));
  if (!out) {
    throw InputError("failed writing snapshot '" + path.string() + "'");
  }
}

Ensemble read_snapshot(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot open snapshot file '" + path.string() + "'");
  }
  std::string header;
  std::getline(in, header);
  std::size_t n = 0;
  double t = 0.0;
  if (std::sscanf(header.c_str(), "GSTEADY1 N=%zu t=%lf", &n, &t) != 2) {
    throw InputError("'" + path.string() + "' is not a GSTEADY1 snapshot");
  }
  std::vector<std::uint64_t> raw(3 * n);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size() * sizeof(std::uint64_t)));
  if (in.gcount() != static_cast<std::streamsize>(raw.size() * sizeof(std::uint64_t))) {
    throw InputError("snapshot '" + path.string() + "' is truncated");
  }
  std::vector<Vec3> v(n);
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = {std::bit_cast<double>(to_little_endian(raw[3 * i])),
            std::bit_cast<double>(to_little_endian(raw[3 * i + 1])),
            std::bit_cast<double>(to_little_endian(raw[3 * i + 2]))};
  }
  return Ensemble(std::move(v), t);
}

}  // namespace gsteady
