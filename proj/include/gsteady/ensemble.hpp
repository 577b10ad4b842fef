#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "gsteady/vec3.hpp"

namespace gsteady {

/// N equal-weight particle velocities representing a unit-mass probability
/// measure on R^3, plus the simulation clock and collision counters.
class Ensemble {
 public:
  Ensemble() = default;
  explicit Ensemble(std::vector<Vec3> velocities, double time = 0.0);

  std::size_t size() const noexcept { return v_.size(); }
  const std::vector<Vec3>& velocities() const noexcept { return v_; }
  std::vector<Vec3>& velocities() noexcept { return v_; }

  double time() const noexcept { return t_; }
  void set_time(double t) noexcept { t_ = t; }

  /// Steps taken so far; keys the per-step random streams.
  std::uint64_t steps() const noexcept { return steps_; }
  void advance(double dt) noexcept {
    t_ += dt;
    ++steps_;
  }

  std::uint64_t collisions() const noexcept { return collisions_; }
  std::uint64_t candidates() const noexcept { return candidates_; }
  void add_counts(std::uint64_t candidates, std::uint64_t accepted) noexcept {
    candidates_ += candidates;
    collisions_ += accepted;
  }
  /// Accepted / candidate collisions over the whole history (1 if none).
  double accept_ratio() const noexcept {
    return candidates_ == 0 ? 1.0 : static_cast<double>(collisions_) / static_cast<double>(candidates_);
  }

  /// Mean velocity, summed in fixed-size blocks for order-independent results.
  Vec3 mean_velocity() const;

  /// (1/N) sum |v_i|^2, blocked like mean_velocity.
  double mean_square_speed() const;

  void subtract(const Vec3& shift) noexcept;

 private:
  std::vector<Vec3> v_;
  double t_ = 0.0;
  std::uint64_t steps_ = 0;
  std::uint64_t collisions_ = 0;
  std::uint64_t candidates_ = 0;
};

enum class InitKind { Maxwellian, Bimodal, UniformBall };

std::string to_string(InitKind kind);
InitKind init_kind_from_string(const std::string& name);

/// Starting distribution, centred and scaled so that m1 / 3 = temperature.
struct InitialCondition {
  InitKind kind = InitKind::Maxwellian;
  double temperature = 1.0;

  bool operator==(const InitialCondition&) const = default;
};

Ensemble make_initial(const InitialCondition& init, std::size_t n, std::uint64_t seed);

/// Binary snapshot: the ASCII line "GSTEADY1 N=<n> t=<t>\n" followed by 3N
/// little-endian IEEE-754 doubles (x, y, z per particle).
void write_snapshot(const std::filesystem::path& path, const Ensemble& ensemble);
Ensemble read_snapshot(const std::filesystem::path& path);

}  // namespace gsteady
