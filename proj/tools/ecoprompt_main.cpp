#include <atomic>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <pthread.h>
#include <string>
#include <thread>
#include <unistd.h>

#include <CLI11.hpp>

#include "ecoprompt/config.hpp"
#include "ecoprompt/error.hpp"
#include "ecoprompt/farm/simulation.hpp"
#include "ecoprompt/footprint.hpp"
#include "ecoprompt/http_server.hpp"
#include "ecoprompt/provider.hpp"
#include "ecoprompt/service.hpp"
#include "ecoprompt/transcript.hpp"

namespace {

using namespace ecoprompt;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

Config load_or_default(const std::string& path) {
  return path.empty() ? Config{} : load_config(path);
}

void print_estimate(std::ostream& out, const FootprintEstimate& fp, const RelatableUnits& ru) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "latency_s   %.6g\nenergy_wh   %.6g\nwater_ml    %.6g\ncarbon_g    %.6g\n",
                fp.latency_s, fp.energy_wh, fp.water_ml, fp.carbon_g);
  out << buf;
  out << "water       " << ru.water_display << '\n';
  out << "co2         " << ru.co2_display << '\n';
  out << "led         " << ru.led_display << '\n';
  out << "summary     " << ru.compact() << " (" << kEstimateLabel << ")\n";
}

int run_serve(const std::string& config_path, const std::string& data_dir,
              const std::string& provider, const std::string& host, int port,
              const std::string& static_dir) {
  Config config = load_or_default(config_path);
  if (!provider.empty()) config.provider.mode = parse_provider_mode(provider);

  // Signals are taken synchronously by a dedicated thread.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  Service service(config, data_dir.empty() ? std::nullopt
                                           : std::optional<std::filesystem::path>(data_dir));
  HttpServer server(service, static_dir.empty()
                                 ? std::nullopt
                                 : std::optional<std::filesystem::path>(static_dir));
  const int bound = server.bind(host, port);
  std::cout << "ecoprompt listening on http://" << host << ':' << bound << " (provider "
            << to_string(config.provider.mode) << ")" << std::endl;

  std::atomic<bool> signalled{false};
  std::thread waiter([&] {
    int sig = 0;
    sigwait(&signals, &sig);
    signalled = true;
    server.stop();
  });
  server.listen();
  // listen() can also return on its own; wake the waiter so it can be joined.
  if (!signalled) kill(getpid(), SIGTERM);
  waiter.join();
  std::cout << "ecoprompt stopped" << std::endl;
  return kExitOk;
}

int run_estimate(long long input_tokens, long long output_tokens, std::optional<double> latency,
                 const std::string& profile) {
  const Config config = load_or_default(profile);
  const QueryUsage usage{input_tokens, output_tokens, latency};
  validate(usage);
  const FootprintEstimate fp = estimate_footprint(config.model, config.datacenter, usage);
  print_estimate(std::cout, fp, to_relatable(fp, config.relatable));
  return kExitOk;
}

int run_replay(const std::string& transcript, const std::string& config_path) {
  const Config config = load_or_default(config_path);
  const TranscriptReport report = replay_transcript(transcript, config);

  std::printf("%-8s %-10s %8s %8s %12s %12s %12s\n", "line", "prompt", "in_tok", "out_tok",
              "energy_wh", "water_ml", "carbon_g");
  for (const auto& r : report.rows) {
    if (r.from_snapshot) {
      std::printf("%-8zu %-10s %8s %8s %12.6g %12.6g %12.6g\n", r.line, r.prompt_id.c_str(), "-",
                  "-", r.recomputed.energy_wh, r.recomputed.water_ml, r.recomputed.carbon_g);
    } else {
      std::printf("%-8zu %-10s %8lld %8lld %12.6g %12.6g %12.6g\n", r.line, r.prompt_id.c_str(),
                  r.usage.input_tokens, r.usage.output_tokens, r.recomputed.energy_wh,
                  r.recomputed.water_ml, r.recomputed.carbon_g);
    }
  }
  const FootprintEstimate& t = report.budget.totals();
  std::printf("%-8s %-10zu %8s %8s %12.6g %12.6g %12.6g\n", "total", report.rows.size(), "", "",
              t.energy_wh, t.water_ml, t.carbon_g);
  std::cout << "relatable: " << to_relatable(t, config.relatable).compact() << '\n';

  for (const auto& m : report.mismatches) std::cerr << "mismatch: " << m << '\n';
  if (report.estimates_match && report.totals_match) {
    std::cout << "totals match\n";
    return kExitOk;
  }
  std::cout << "totals differ\n";
  return kExitData;
}

int run_simulate(std::uint64_t seed, const std::string& policy_text, long long max_ticks,
                 const std::string& out_path, const std::string& config_path) {
  const Config config = load_or_default(config_path);
  const farm::PolicySpec policy = farm::PolicySpec::parse(policy_text);
  const MockProvider provider(config.provider.mock_seed, config.model);
  const farm::SimulationReport report =
      farm::run_simulation(seed, policy, max_ticks, config.game, provider);

  std::ostream* summary = &std::cout;
  if (out_path.empty() || out_path == "-") {
    farm::write_trajectory_csv(std::cout, report.rows);
    summary = &std::cerr;
  } else {
    std::ofstream out(out_path);
    if (!out) throw Error(ErrorCode::io, "cannot write " + out_path);
    farm::write_trajectory_csv(out, report.rows);
  }
  const farm::Score& s = report.score;
  *summary << "policy " << policy.name() << ", seed " << seed << ", ticks " << report.ticks
           << "\noutcome " << farm::to_string(s.outcome) << ", lake " << s.lake_health
           << ", levels completed " << s.levels_completed << ", coins " << s.coins << ", xp "
           << s.xp << "\nai actions:";
  if (s.ai_actions.empty()) *summary << " none";
  for (const auto& [kind, n] : s.ai_actions) *summary << ' ' << kind << '=' << n;
  *summary << '\n';
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"EcoPrompt: AI footprint calculator service and farm simulation"};
  app.require_subcommand(1);

  std::string config_path;

  auto* serve = app.add_subcommand("serve", "Run the HTTP API");
  int port = 8080;
  std::string host = "127.0.0.1";
  std::string data_dir = "data";
  std::string provider;
  std::string static_dir;
  serve->add_option("--port", port, "Port to listen on (0 picks a free one)")
      ->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Address to bind");
  serve->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);
  serve->add_option("--data-dir", data_dir, "Directory for JSONL logs (empty disables persistence)");
  serve->add_option("--provider", provider, "Provider mode")->check(CLI::IsMember({"mock", "live"}));
  serve->add_option("--static-dir", static_dir, "Serve the built web UI from this directory");

  auto* estimate = app.add_subcommand("estimate", "Estimate one query's footprint offline");
  long long input_tokens = 0;
  long long output_tokens = 0;
  std::optional<double> latency;
  std::string profile;
  estimate->add_option("--input-tokens", input_tokens, "Prompt tokens")->check(CLI::NonNegativeNumber);
  estimate->add_option("--output-tokens", output_tokens, "Response tokens")
      ->check(CLI::NonNegativeNumber);
  estimate->add_option("--latency", latency, "Measured latency in seconds")
      ->check(CLI::NonNegativeNumber);
  estimate->add_option("--profile,--config", profile, "JSON config file with profiles")
      ->check(CLI::ExistingFile);

  auto* replay = app.add_subcommand("replay", "Recompute a session log and check its totals");
  std::string transcript;
  replay->add_option("transcript", transcript, "Session JSONL log")->required();
  replay->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);

  auto* simulate = app.add_subcommand("simulate", "Play the farm game headlessly");
  std::uint64_t seed = 1;
  std::string policy = "never_ai";
  long long max_ticks = 2000;
  std::string out_path;
  simulate->add_option("--seed", seed, "Game seed");
  simulate->add_option("--policy", policy, "never_ai, always_ai or threshold:K");
  simulate->add_option("--max-ticks", max_ticks, "Tick limit")->check(CLI::PositiveNumber);
  simulate->add_option("--out", out_path, "CSV output path (default stdout)");
  simulate->add_option("--config", config_path, "JSON config file")->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*serve) return run_serve(config_path, data_dir, provider, host, port, static_dir);
    if (*estimate) return run_estimate(input_tokens, output_tokens, latency, profile);
    if (*replay) return run_replay(transcript, config_path);
    if (*simulate) return run_simulate(seed, policy, max_ticks, out_path, config_path);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}
