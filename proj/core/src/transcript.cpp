#include "ecoprompt/transcript.hpp"

#include "ecoprompt/error.hpp"
#include "ecoprompt/event_log.hpp"
#include "ecoprompt/serialization.hpp"

namespace ecoprompt {

using nlohmann::json;

TranscriptReport replay_transcript(const std::filesystem::path& path, const Config& config) {
  const ReadResult log = read_log(path, /*tolerate_torn_tail=*/false);
  TranscriptReport report;
  report.budget = SessionBudget(config.thresholds);

  for (const auto& [line, rec] : log.records) {
    const json& p = rec.payload;
    auto fail = [&, line = line](const std::string& what) {
      throw Error(ErrorCode::malformed, "line " + std::to_string(line) + ": " + what);
    };
    try {
      if (rec.kind == "footprint") {
        TranscriptRow row{line, p.at("prompt_id").get<std::string>(), p.at("usage").get<QueryUsage>(),
                          p.at("estimate").get<FootprintEstimate>(), {}, false};
        validate(row.usage);
        row.recomputed = estimate_footprint(config.model, config.datacenter, row.usage);
        if (!(row.recomputed == row.logged)) {
          report.estimates_match = false;
          report.mismatches.push_back("line " + std::to_string(line) + ": estimate for " +
                                      row.prompt_id + " differs from recomputation");
        }
        report.budget.record(row.prompt_id, row.recomputed);
        report.logged_totals = p.at("totals").get<FootprintEstimate>();
        report.rows.push_back(std::move(row));
      } else if (rec.kind == "limit_change") {
        report.budget.set_limits(p.at("limits").get<ResourceLimits>());
      } else if (rec.kind == "snapshot") {
        report.budget = SessionBudget(config.thresholds);
        report.budget.set_limits(p.at("limits").get<ResourceLimits>());
        for (const auto& e : p.at("history")) {
          TranscriptRow row{line, e.at("prompt_id").get<std::string>(), {},
                            e.at("estimate").get<FootprintEstimate>(), {}, true};
          row.recomputed = row.logged;
          report.budget.record(row.prompt_id, row.logged);
          report.rows.push_back(std::move(row));
        }
        report.logged_totals = report.budget.totals();
      } else if (rec.kind != "session_created" && rec.kind != "prompt") {
        fail("unexpected record kind '" + rec.kind + "'");
      }
    } catch (const json::exception& e) {
      fail(e.what());
    } catch (const Error& e) {
      if (std::string_view(e.what()).starts_with("line ")) throw;
      fail(e.what());
    }
  }
  if (!(report.budget.totals() == report.logged_totals)) {
    report.totals_match = false;
    report.mismatches.push_back("recomputed totals differ from logged totals");
  }
  return report;
}

}  // namespace ecoprompt
