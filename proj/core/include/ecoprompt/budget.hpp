#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ecoprompt/footprint.hpp"

namespace ecoprompt {

enum class Resource { water, carbon, energy };
inline constexpr std::array<Resource, 3> kResources{Resource::water, Resource::carbon,
                                                    Resource::energy};

std::string_view to_string(Resource r) noexcept;
std::optional<Resource> parse_resource(std::string_view name) noexcept;

/// Quantity of `r` in an estimate (mL, g or Wh).
double amount(const FootprintEstimate& fp, Resource r) noexcept;

enum class LimitState { no_limit, under, approaching, exceeded };

std::string_view to_string(LimitState s) noexcept;
std::optional<LimitState> parse_limit_state(std::string_view name) noexcept;

/// Limits are independently optional; a present limit is strictly positive.
struct ResourceLimits {
  std::optional<double> water_ml;
  std::optional<double> carbon_g;
  std::optional<double> energy_wh;

  std::optional<double> get(Resource r) const noexcept;
  void set(Resource r, std::optional<double> value) noexcept;

  bool operator==(const ResourceLimits&) const = default;
};

void validate(const ResourceLimits& limits);

struct StatusThresholds {
  double approaching = 0.75;  // inclusive
  double exceeded = 1.0;      // strictly above

  bool operator==(const StatusThresholds&) const = default;
};

struct ResourceStatus {
  Resource resource = Resource::water;
  LimitState state = LimitState::no_limit;
  double fill_fraction = 0.0;     // uncapped
  double display_fraction = 0.0;  // min(1, fill)
  std::optional<double> limit;

  bool operator==(const ResourceStatus&) const = default;
};

using LimitStatus = std::array<ResourceStatus, 3>;  // indexed like kResources

struct StatusTransition {
  Resource resource;
  LimitState from;
  LimitState to;

  bool operator==(const StatusTransition&) const = default;
};

ResourceStatus classify(Resource r, double total, std::optional<double> limit,
                        const StatusThresholds& thresholds) noexcept;

struct BudgetEntry {
  std::string prompt_id;
  FootprintEstimate estimate;

  bool operator==(const BudgetEntry&) const = default;
};

/// Cumulative footprint of one calculator session against user-set limits.
/// History is append-only and totals are always the in-order sum of it.
/// Exceeding a limit is informational only; recording is never refused.
class SessionBudget {
 public:
  explicit SessionBudget(StatusThresholds thresholds = {}) : thresholds_(thresholds) {}

  /// Replaces the limits; totals and history are untouched.
  LimitStatus set_limits(const ResourceLimits& limits);

  struct RecordOutcome {
    LimitStatus statuses;
    std::vector<StatusTransition> transitions;
  };
  RecordOutcome record(std::string prompt_id, const FootprintEstimate& estimate);

  LimitStatus status() const noexcept;

  const FootprintEstimate& totals() const noexcept { return totals_; }
  const ResourceLimits& limits() const noexcept { return limits_; }
  const std::vector<BudgetEntry>& history() const noexcept { return history_; }
  const StatusThresholds& thresholds() const noexcept { return thresholds_; }

  bool operator==(const SessionBudget&) const = default;

 private:
  StatusThresholds thresholds_;
  ResourceLimits limits_;
  FootprintEstimate totals_;
  std::vector<BudgetEntry> history_;
};

}  // namespace ecoprompt
