#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "ecoprompt/farm/config.hpp"
#include "ecoprompt/farm/game.hpp"

namespace ecoprompt {
class Provider;
}

namespace ecoprompt::farm {

/// Headless player strategy: never use AI, always use it, or use it only
/// while the lake is healthier than `threshold`.
struct PolicySpec {
  enum class Kind { never_ai, always_ai, threshold };
  Kind kind = Kind::never_ai;
  int threshold = 0;  // in [0, 100], threshold kind only

  bool uses_ai(int lake_health) const noexcept;
  std::string name() const;

  /// Accepts "never_ai", "always_ai", "threshold:K" and "threshold(K)".
  /// Throws Error(validation) otherwise.
  static PolicySpec parse(std::string_view text);

  bool operator==(const PolicySpec&) const = default;
};

struct TrajectoryRow {
  long long tick = 0;
  int level = 1;
  int lake_health = 100;
  long long coins = 0;
  long long xp = 0;
  long long ai_actions = 0;

  bool operator==(const TrajectoryRow&) const = default;
};

struct SimulationReport {
  std::vector<TrajectoryRow> rows;  // one per tick, after the tick
  Score score;
  long long ticks = 0;
  // Lake health at the moment each level was reached (index 0 = level 2).
  std::vector<int> lake_at_level_up;
  Game game;
};

/// Plays the game headlessly with `policy` until it ends or `max_ticks`
/// ticks have elapsed. The provider answers farm-hand questions; with the
/// mock provider the whole run is a pure function of its arguments.
SimulationReport run_simulation(std::uint64_t seed, const PolicySpec& policy, long long max_ticks,
                                const GameConfig& config, const Provider& provider);

/// "tick,level,lake_health,coins,xp,ai_actions" header plus one line per row.
void write_trajectory_csv(std::ostream& out, const std::vector<TrajectoryRow>& rows);

}  // namespace ecoprompt::farm
