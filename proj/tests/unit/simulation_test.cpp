#include <doctest.h>

#include <sstream>

#include "ecoprompt/error.hpp"
#include "ecoprompt/farm/simulation.hpp"
#include "ecoprompt/provider.hpp"

using namespace ecoprompt;
using namespace ecoprompt::farm;

namespace {

const MockProvider kMock(0);

SimulationReport run(std::uint64_t seed, std::string_view policy, long long max_ticks = 2000) {
  return run_simulation(seed, PolicySpec::parse(policy), max_ticks, GameConfig{}, kMock);
}

}  // namespace

TEST_CASE("policy parsing") {
  CHECK(PolicySpec::parse("never_ai").kind == PolicySpec::Kind::never_ai);
  CHECK(PolicySpec::parse("always_ai").kind == PolicySpec::Kind::always_ai);
  const PolicySpec t = PolicySpec::parse("threshold:60");
  CHECK(t.kind == PolicySpec::Kind::threshold);
  CHECK(t.threshold == 60);
  CHECK(PolicySpec::parse("threshold(60)") == t);
  CHECK(t.uses_ai(61));
  CHECK_FALSE(t.uses_ai(60));
  CHECK(t.name() == "threshold:60");
  for (const char* bad : {"sometimes", "threshold:", "threshold:101", "threshold:-1", "threshold(5"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS((void)PolicySpec::parse(bad), Error);
  }
}

TEST_CASE("never_ai wins with the lake above 40") {
  const SimulationReport r = run(1, "never_ai");
  CHECK(r.score.outcome == Outcome::won);
  CHECK(r.score.lake_health > 40);
  CHECK(r.score.ai_actions.empty());
  CHECK(r.game.state().ai_lake_cost == 0);
  CHECK(100 - r.score.lake_health == r.game.state().drain_total);
}

TEST_CASE("always_ai dries the lake before level 5") {
  const SimulationReport r = run(1, "always_ai");
  CHECK(r.score.outcome == Outcome::lost);
  CHECK(r.score.lake_health == 0);
  CHECK(r.score.levels_completed < 5);
  CHECK_FALSE(r.score.ai_actions.empty());
  const GameState& s = r.game.state();
  CHECK(s.ai_lake_cost + s.drain_total == 100);
}

TEST_CASE("level 1 ends with the lake in the low nineties") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const SimulationReport r = run(seed, "never_ai");
    REQUIRE_FALSE(r.lake_at_level_up.empty());
    CHECK(r.lake_at_level_up.front() >= 91);
    CHECK(r.lake_at_level_up.front() <= 95);
  }
}

TEST_CASE("simulation is a pure function of its inputs") {
  const SimulationReport a = run(5, "threshold:70");
  const SimulationReport b = run(5, "threshold:70");
  CHECK(a.rows == b.rows);
  CHECK(a.score == b.score);
  CHECK(a.game.state() == b.game.state());
  CHECK(run(6, "threshold:70").rows != a.rows);
}

TEST_CASE("trajectory rows follow the ticks") {
  const SimulationReport r = run(2, "never_ai", 50);
  REQUIRE(r.rows.size() == 50);
  CHECK(r.ticks == 50);
  for (std::size_t i = 0; i < r.rows.size(); ++i) CHECK(r.rows[i].tick == static_cast<long long>(i) + 1);
  CHECK(r.rows.back().lake_health == r.game.state().lake_health);
  CHECK(r.score.outcome == Outcome::in_progress);
}

TEST_CASE("saved simulated game reloads to the same state") {
  const SimulationReport r = run(3, "always_ai", 120);
  const Game loaded = Game::load(r.game.save());
  CHECK(loaded.state() == r.game.state());
}

TEST_CASE("trajectory CSV") {
  std::ostringstream out;
  write_trajectory_csv(out, {{1, 1, 100, 0, 0, 0}, {2, 2, 98, 5, 21, 1}});
  CHECK(out.str() == "tick,level,lake_health,coins,xp,ai_actions\n1,1,100,0,0,0\n2,2,98,5,21,1\n");
}
