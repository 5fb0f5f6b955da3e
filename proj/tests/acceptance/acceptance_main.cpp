// Acceptance suite: one PASS/FAIL line per headline criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

#include <httplib.h>

#include "ecoprompt/budget.hpp"
#include "ecoprompt/config.hpp"
#include "ecoprompt/error.hpp"
#include "ecoprompt/farm/game.hpp"
#include "ecoprompt/farm/market.hpp"
#include "ecoprompt/farm/simulation.hpp"
#include "ecoprompt/footprint.hpp"
#include "ecoprompt/provider.hpp"
#include "ecoprompt/serialization.hpp"
#include "ecoprompt/transcript.hpp"

namespace {

using namespace ecoprompt;
using nlohmann::json;
namespace fs = std::filesystem;

struct Verdict {
  bool pass = false;
  std::string detail;
};

bool close_rel(double a, double b, double tol = 1e-9) {
  if (a == b) return true;
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// ---------------------------------------------------------------------------

Verdict calibration_triple() {
  const Config c;
  FootprintEstimate fp;
  fp.energy_wh = 0.38;
  fp.water_ml = energy_to_water(c.datacenter, fp.energy_wh);
  fp.carbon_g = energy_to_carbon(c.datacenter, fp.energy_wh);
  const std::string direct = to_relatable(fp, c.relatable).compact();

  // Same energy reached through the model: latency that yields 0.38 Wh.
  const double latency =
      0.38 * 3600.0 / (c.model.effective_power_w() * c.datacenter.pue);
  const FootprintEstimate modeled =
      estimate_footprint(c.model, c.datacenter, QueryUsage{0, 0, latency});
  const std::string via_model = to_relatable(modeled, c.relatable).compact();

  const std::string want = "3 drops, 0.01 balloons, 2.3 minutes";
  return {direct == want && via_model == want, "\"" + direct + "\""};
}

Verdict one_word_contrast() {
  const Config c;
  const MockProvider mock(c.provider.mock_seed, c.model);
  const std::vector<std::string> questions = {
      "Why is the sky blue?", "What do plants eat?", "How far away is the moon?",
      "Why do cats purr?", "What makes thunder?"};
  bool ok = true;
  std::string sample;
  for (const auto& q : questions) {
    const ProviderResult full = mock.complete({q, std::nullopt, std::nullopt});
    const ProviderResult terse =
        mock.complete({"Respond in one word. " + q, std::nullopt, std::nullopt});
    const FootprintEstimate a = estimate_footprint(c.model, c.datacenter, full.usage());
    const FootprintEstimate b = estimate_footprint(c.model, c.datacenter, terse.usage());
    ok &= b.energy_wh < a.energy_wh && b.water_ml < a.water_ml && b.carbon_g < a.carbon_g;
    const RelatableUnits ru = to_relatable(b, c.relatable);
    // Display class "1 drop / 0.00 balloons / 0.5 minutes", one display unit either way.
    ok &= std::llround(ru.water_drops) <= 2 && ru.water_drops > 0.0;
    ok &= std::stod(format_balloons(ru.co2_balloons)) <= 0.01 + 1e-12;
    const double minutes = std::stod(format_led_minutes(ru.led_minutes));
    ok &= minutes >= 0.4 - 1e-12 && minutes <= 0.6 + 1e-12;
    if (sample.empty()) sample = ru.compact() + " vs " + to_relatable(a, c.relatable).compact();
  }
  return {ok, sample};
}

Verdict scale_sanity() {
  const Config c;
  const double per_query =
      estimate_footprint(c.model, c.datacenter, QueryUsage{0, 100, std::nullopt}).energy_wh;
  const double daily_wh = per_query * 7e8;
  const double homes_wh = 35000.0 * 30000.0;
  const double ratio = daily_wh / homes_wh;
  return {ratio >= 0.1 && ratio <= 10.0,
          fmt("%.3g", daily_wh / 1e6) + " MWh/day vs " + fmt("%.3g", homes_wh / 1e6) +
              " MWh/day (ratio " + fmt("%.2f", ratio) + ")"};
}

Verdict footprint_properties() {
  std::mt19937_64 rng(7001);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  auto in = [&](double lo, double hi) { return lo + (hi - lo) * u(rng); };
  constexpr int kCases = 2000;
  int bad = 0;
  for (int i = 0; i < kCases; ++i) {
    ModelProfile m;
    m.ttft_s = in(0.0, 2.0);
    m.gen_speed_tps = in(5.0, 200.0);
    m.gpu_power_w = in(100.0, 1500.0);
    m.gpu_utilization = in(0.05, 1.0);
    m.nongpu_power_w = in(0.0, 300.0);
    DatacenterProfile dc;
    dc.pue = in(1.0, 2.0);
    dc.wue_l_per_kwh = in(0.0, 5.0);
    dc.cif_g_per_kwh = in(0.0, 900.0);
    const double latency = in(0.0, 60.0);
    const double k = in(0.1, 10.0);
    const auto tokens = static_cast<long long>(in(0.0, 4000.0));

    const FootprintEstimate base = estimate_footprint(m, dc, QueryUsage{0, 0, latency});
    const FootprintEstimate scaled_latency = estimate_footprint(m, dc, QueryUsage{0, 0, latency * k});
    bool ok = close_rel(scaled_latency.energy_wh, k * base.energy_wh) &&
              close_rel(scaled_latency.water_ml, k * base.water_ml) &&
              close_rel(scaled_latency.carbon_g, k * base.carbon_g);

    DatacenterProfile dk = dc;
    dk.pue *= k;
    const FootprintEstimate scaled_pue = estimate_footprint(m, dk, QueryUsage{0, 0, latency});
    ok &= close_rel(scaled_pue.energy_wh, k * base.energy_wh);
    dk = dc;
    dk.wue_l_per_kwh *= k;
    const FootprintEstimate scaled_wue = estimate_footprint(m, dk, QueryUsage{0, 0, latency});
    ok &= close_rel(scaled_wue.water_ml, k * base.water_ml) &&
          scaled_wue.energy_wh == base.energy_wh && scaled_wue.carbon_g == base.carbon_g;
    dk = dc;
    dk.cif_g_per_kwh *= k;
    const FootprintEstimate scaled_cif = estimate_footprint(m, dk, QueryUsage{0, 0, latency});
    ok &= close_rel(scaled_cif.carbon_g, k * base.carbon_g) &&
          scaled_cif.energy_wh == base.energy_wh && scaled_cif.water_ml == base.water_ml;

    const FootprintEstimate fewer = estimate_footprint(m, dc, QueryUsage{0, tokens, std::nullopt});
    const FootprintEstimate more = estimate_footprint(m, dc, QueryUsage{0, tokens + 1, std::nullopt});
    ok &= more.energy_wh > fewer.energy_wh && more.water_ml >= fewer.water_ml &&
          more.carbon_g >= fewer.carbon_g;

    const FootprintEstimate zero = estimate_footprint(m, dc, QueryUsage{0, tokens, 0.0});
    ok &= zero.energy_wh == 0.0 && zero.water_ml == 0.0 && zero.carbon_g == 0.0;
    bad += !ok;
  }
  return {bad == 0, std::to_string(kCases - bad) + "/" + std::to_string(kCases) + " cases"};
}

int rank(LimitState s) {
  switch (s) {
    case LimitState::no_limit: return -1;
    case LimitState::under: return 0;
    case LimitState::approaching: return 1;
    case LimitState::exceeded: return 2;
  }
  return -1;
}

Verdict budget_conservation() {
  std::mt19937_64 rng(7002);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  constexpr int kCases = 1000;
  int bad = 0;
  for (int i = 0; i < kCases; ++i) {
    SessionBudget b;
    bool ok = true;
    const int steps = 1 + static_cast<int>(u(rng) * 60);
    LimitStatus prev = b.status();
    for (int step = 0; step < steps; ++step) {
      if (u(rng) < 0.15) {
        ResourceLimits l;
        for (Resource r : kResources) {
          if (u(rng) < 0.7) l.set(r, 0.01 + u(rng) * 20.0);
        }
        prev = b.set_limits(l);
      } else {
        FootprintEstimate fp;
        fp.energy_wh = u(rng) * 2.0;
        fp.water_ml = fp.energy_wh * 2.0;
        fp.carbon_g = fp.energy_wh * 0.4;
        fp.latency_s = u(rng) * 20.0;
        const auto outcome = b.record("p-" + std::to_string(step), fp);
        for (std::size_t k = 0; k < outcome.statuses.size(); ++k) {
          ok &= rank(outcome.statuses[k].state) >= rank(prev[k].state);
        }
        for (const auto& t : outcome.transitions) ok &= rank(t.to) > rank(t.from);
        prev = outcome.statuses;
      }
      FootprintEstimate sum;
      for (const auto& e : b.history()) sum += e.estimate;
      const FootprintEstimate& t = b.totals();
      ok &= close_rel(t.energy_wh, sum.energy_wh) && close_rel(t.water_ml, sum.water_ml) &&
            close_rel(t.carbon_g, sum.carbon_g) && close_rel(t.latency_s, sum.latency_s);
      for (const auto& st : b.status()) {
        ok &= st.display_fraction >= 0.0 && st.display_fraction <= 1.0;
      }
    }
    bad += !ok;
  }
  return {bad == 0, std::to_string(kCases - bad) + "/" + std::to_string(kCases) + " sequences"};
}

// Plays a random but plausible sequence; rejected actions are simply skipped.
farm::Game random_playthrough(std::uint64_t seed, bool use_ai, const Provider& provider,
                              long long& drain_events_sum) {
  using namespace farm;
  GameConfig config;
  if (use_ai) {
    // Low thresholds so random play reaches every AI feature.
    config.level_xp_thresholds = {2, 4, 6, 8};
    config.completion_xp = 1000;
  }
  Game g(seed, config);
  std::mt19937_64 rng(seed * 7919 + 13);
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  const char* crops[] = {"wheat", "carrot", "tomato", "pumpkin", "kale"};
  drain_events_sum = 0;
  for (int step = 0; step < 400 && !g.state().game_over(); ++step) {
    const GameState& s = g.state();
    std::vector<TilePos> planted;
    for (std::size_t i = 0; i < s.tiles.size(); ++i) {
      if (s.tiles[i].content == TileContent::planted) planted.push_back(s.pos_of(i));
    }
    const TilePos any = s.pos_of(pick(s.tiles.size()));
    const TilePos tile = planted.empty() || pick(4) == 0 ? any : planted[pick(planted.size())];
    Action a = action::Tick{};
    switch (pick(use_ai ? 10 : 8)) {
      case 0: a = action::Plant{any, crops[pick(5)]}; break;
      case 1: case 2: a = action::Water{tile}; break;
      case 3: a = action::Harvest{tile}; break;
      case 4:
        a = s.pests.empty() ? Action{action::OpenWeek{}}
                            : Action{action::StartMinigame{s.pests.front().id}};
        break;
      case 5:
        a = s.pests.empty() ? Action{action::Sell{}}
                            : Action{action::ResolveMinigame{s.pests.front().id,
                                                             static_cast<long long>(pick(20))}};
        break;
      case 8:
        a = action::AskFarmhand{"What should I plant?", true, std::nullopt, false};
        break;
      case 9:
        a = s.pests.empty() ? Action{action::AiScarecrow{true}}
                            : Action{action::AiPestControl{s.pests.front().id, true}};
        break;
      default: break;
    }
    try {
      for (const auto& e : g.apply(a, &provider)) {
        if (e.kind == "drain") drain_events_sum += e.value;
      }
    } catch (const Error&) {
    }
  }
  return g;
}

Verdict game_determinism() {
  const MockProvider mock(0);
  int mismatched = 0;
  int accounting = 0;
  int zero_ai_runs = 0;
  int ai_spent = 0;
  for (std::uint64_t i = 0; i < 100; ++i) {
    const bool use_ai = i % 2 == 1;
    long long drained = 0;
    const farm::Game g = random_playthrough(1000 + i, use_ai, mock, drained);

    // Replay from the saved action log, and again after a JSON round trip.
    const farm::Game replayed = farm::Game::load(g.save());
    const farm::Game reparsed = farm::Game::load(json::parse(g.save().dump()));
    const std::string want = json(g.state()).dump();
    if (!(replayed.state() == g.state()) || json(reparsed.state()).dump() != want) ++mismatched;

    if (use_ai) ai_spent += g.state().ai_lake_cost > 0;
    if (!use_ai) {
      ++zero_ai_runs;
      const auto& s = g.state();
      const long long lost = 100 - s.lake_health;
      if (lost != s.drain_total || lost != drained || s.ai_lake_cost != 0) ++accounting;
    }
  }
  return {mismatched == 0 && accounting == 0,
          std::to_string(100 - mismatched) + "/100 replays identical, " +
              std::to_string(zero_ai_runs - accounting) + "/" + std::to_string(zero_ai_runs) +
              " zero-AI drain sums exact, " + std::to_string(ai_spent) +
              " AI runs spent lake"};
}

Verdict level1_calibration() {
  const MockProvider mock(0);
  int lo = 101;
  int hi = -1;
  int in_range = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto r = farm::run_simulation(seed, farm::PolicySpec{}, 400, farm::GameConfig{}, mock);
    if (r.lake_at_level_up.empty()) continue;
    const int lake = r.lake_at_level_up.front();
    lo = std::min(lo, lake);
    hi = std::max(hi, lake);
    in_range += lake >= 91 && lake <= 95;
  }
  return {in_range == 50, std::to_string(in_range) + "/50 seeds, lake " + std::to_string(lo) +
                              ".." + std::to_string(hi)};
}

Verdict policy_divergence() {
  const MockProvider mock(0);
  const auto never = farm::PolicySpec::parse("never_ai");
  const auto always = farm::PolicySpec::parse("always_ai");
  int never_ok = 0;
  int always_ok = 0;
  for (std::uint64_t seed = 1; seed <= 50; ++seed) {
    const auto a = farm::run_simulation(seed, never, 2000, farm::GameConfig{}, mock);
    never_ok += a.score.outcome == farm::Outcome::won && a.score.lake_health > 40;
    const auto b = farm::run_simulation(seed, always, 2000, farm::GameConfig{}, mock);
    always_ok += b.score.outcome == farm::Outcome::lost && b.score.lake_health == 0 &&
                 b.game.state().level < 5;
  }
  return {never_ok >= 45 && always_ok >= 45,
          "never_ai won " + std::to_string(never_ok) + "/50, always_ai lost " +
              std::to_string(always_ok) + "/50"};
}

Verdict market_oracle() {
  using namespace farm;
  const GameConfig config;
  std::mt19937_64 rng(7003);
  int matched = 0;
  for (int i = 0; i < 100; ++i) {
    GameState s = new_game(rng(), config);
    s.level = 5;
    const CropSpec& crop = config.crops[rng() % config.crops.size()];
    const long long stock = 1 + static_cast<long long>(rng() % 60);
    s.inventory[crop.name] = stock;
    // Advance the market RNG a random number of weeks.
    for (int w = static_cast<int>(rng() % 5); w > 0; --w) s.market_rng.next_u32();
    Game g = Game::from_snapshot(config, s);
    g.open_week();
    const DemandModel m{g.state().market.demand.at(crop.name), crop.base_price,
                        config.market.elasticity, config.market.max_price};
    long long best = 1;
    long long best_revenue = -1;
    for (long long p = 1; p <= m.max_price; ++p) {
      const double ratio = static_cast<double>(m.reference_price) / static_cast<double>(p);
      const long long demand =
          std::llround(static_cast<double>(m.base_demand) * std::pow(ratio, m.elasticity));
      const long long r = std::min(stock, demand) * p;
      if (r > best_revenue) {
        best_revenue = r;
        best = p;
      }
    }
    matched += g.ai_price_suggestion(crop.name, true) == best;
  }
  return {matched == 100, std::to_string(matched) + "/100 states"};
}

// ---------------------------------------------------------------------------
// Crash-replay against the real CLI server.

class ServerProcess {
 public:
  explicit ServerProcess(const fs::path& data_dir) {
    int fds[2];
    if (pipe(fds) != 0) throw std::runtime_error("pipe failed");
    pid_ = fork();
    if (pid_ < 0) throw std::runtime_error("fork failed");
    if (pid_ == 0) {
      dup2(fds[1], STDOUT_FILENO);
      close(fds[0]);
      close(fds[1]);
      execl(ECOPROMPT_CLI_PATH, ECOPROMPT_CLI_PATH, "serve", "--port", "0", "--provider", "mock",
            "--data-dir", data_dir.c_str(), static_cast<char*>(nullptr));
      _exit(127);
    }
    close(fds[1]);
    FILE* out = fdopen(fds[0], "r");
    char line[256] = {0};
    const bool got = std::fgets(line, sizeof line, out) != nullptr;
    std::fclose(out);
    const std::string text = got ? line : "";
    const auto colon = text.rfind(':');
    if (!got || colon == std::string::npos) {
      kill_hard();
      throw std::runtime_error("server did not report its port: " + text);
    }
    port_ = std::stoi(text.substr(colon + 1));
  }
  ~ServerProcess() { kill_hard(); }

  void kill_hard() {
    if (pid_ <= 0) return;
    ::kill(pid_, SIGKILL);
    int status = 0;
    waitpid(pid_, &status, 0);
    pid_ = -1;
  }

  httplib::Client client() const {
    httplib::Client c("127.0.0.1", port_);
    c.set_read_timeout(10, 0);
    return c;
  }

 private:
  pid_t pid_ = -1;
  int port_ = 0;
};

json checked(const httplib::Result& r, int status) {
  if (!r) throw std::runtime_error("request failed: " + httplib::to_string(r.error()));
  if (r->status != status) {
    throw std::runtime_error("unexpected status " + std::to_string(r->status) + ": " + r->body);
  }
  return json::parse(r->body);
}

Verdict crash_replay() {
  const fs::path dir = fs::temp_directory_path() /
                       ("ecoprompt-acceptance-" + std::to_string(getpid()));
  fs::remove_all(dir);
  std::mt19937_64 rng(7004);
  const char* prompts[] = {"Why is the sky blue?", "Respond in one word: best fruit?",
                           "Tell me a story about a brave turtle", "What is rain?",
                           "Explain how bees make honey"};
  int identical = 0;
  std::string failure;
  try {
    for (int round = 0; round < 20; ++round) {
      std::string sid;
      std::string gid;
      std::string session_before;
      std::string game_before;
      {
        ServerProcess server(dir);
        auto c = server.client();
        sid = checked(c.Post("/api/sessions", "{}", "application/json"), 201).at("session_id");
        gid = checked(c.Post("/api/games", json{{"seed", rng() >> 1}}.dump(), "application/json"),
                      201)
                  .at("game_id");
        const int ops = 3 + static_cast<int>(rng() % 25);
        for (int op = 0; op < ops; ++op) {
          const auto roll = rng() % 10;
          if (roll < 3) {
            checked(c.Post("/api/sessions/" + sid + "/prompt",
                           json{{"text", prompts[rng() % 5]}}.dump(), "application/json"),
                    200);
          } else if (roll == 3) {
            checked(c.Put("/api/sessions/" + sid + "/limits",
                          json{{"water_ml", 1.0 + static_cast<double>(rng() % 20)}}.dump(),
                          "application/json"),
                    200);
          } else {
            const json tick{{"type", "tick"}};
            checked(c.Post("/api/games/" + gid + "/actions", tick.dump(), "application/json"),
                    200);
          }
        }
        session_before = checked(c.Get("/api/sessions/" + sid), 200).at("totals").dump();
        game_before = checked(c.Get("/api/games/" + gid + "/state"), 200).at("state").dump();
        server.kill_hard();
      }
      // Every other round also leaves half a record behind, as a crash mid-append would.
      if (round % 2 == 1) {
        std::ofstream(dir / "sessions" / (sid + ".jsonl"), std::ios::app)
            << R"({"ts":"2026-01-01T00:00:00.000Z","id":")" << sid << R"(","kind":"foot)";
      }
      ServerProcess restarted(dir);
      auto c = restarted.client();
      const std::string session_after =
          checked(c.Get("/api/sessions/" + sid), 200).at("totals").dump();
      const std::string game_after =
          checked(c.Get("/api/games/" + gid + "/state"), 200).at("state").dump();
      restarted.kill_hard();

      const TranscriptReport report =
          replay_transcript(dir / "sessions" / (sid + ".jsonl"), Config{});
      const bool same = session_after == session_before && game_after == game_before &&
                        report.estimates_match && report.totals_match;
      identical += same;
      if (!same && failure.empty()) failure = " (first mismatch in round " + std::to_string(round) + ")";
    }
  } catch (const std::exception& e) {
    failure = std::string(" (") + e.what() + ")";
  }
  std::error_code ec;
  fs::remove_all(dir, ec);
  return {identical == 20, std::to_string(identical) + "/20 sessions identical after SIGKILL" + failure};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Verdict()>>> checks = {
      {"footprint calibration triple", calibration_triple},
      {"one-word contrast", one_word_contrast},
      {"scale sanity", scale_sanity},
      {"footprint linearity/monotonicity", footprint_properties},
      {"budget conservation", budget_conservation},
      {"game determinism", game_determinism},
      {"level-1 drain calibration", level1_calibration},
      {"policy divergence", policy_divergence},
      {"market oracle", market_oracle},
      {"crash-replay", crash_replay},
  };
  int failed = 0;
  for (const auto& [name, run] : checks) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %-34s %s [%.2fs]\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.c_str(),
                secs);
    std::fflush(stdout);
    failed += !v.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(checks.size()) - failed, checks.size());
  return failed == 0 ? 0 : 1;
}
