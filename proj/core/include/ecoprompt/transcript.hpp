#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ecoprompt/budget.hpp"
#include "ecoprompt/config.hpp"
#include "ecoprompt/footprint.hpp"

namespace ecoprompt {

struct TranscriptRow {
  std::size_t line = 0;
  std::string prompt_id;
  QueryUsage usage;
  FootprintEstimate logged;
  FootprintEstimate recomputed;
  bool from_snapshot = false;  // usage unknown, logged estimate taken as-is
};

struct TranscriptReport {
  std::vector<TranscriptRow> rows;
  SessionBudget budget;           // rebuilt from the log
  FootprintEstimate logged_totals;  // last totals the log recorded
  bool estimates_match = true;
  bool totals_match = true;
  std::vector<std::string> mismatches;
};

/// Re-derives a session log (as written by the service): every footprint is
/// recomputed from its logged usage under `config`, and the running totals are
/// compared with the totals the log recorded. Throws Error(malformed) naming
/// the offending line when a record does not fit the schema.
TranscriptReport replay_transcript(const std::filesystem::path& path, const Config& config);

}  // namespace ecoprompt
