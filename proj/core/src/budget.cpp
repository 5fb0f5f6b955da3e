#include "ecoprompt/budget.hpp"

#include <algorithm>
#include <cmath>

#include "ecoprompt/error.hpp"

namespace ecoprompt {

std::string_view to_string(Resource r) noexcept {
  switch (r) {
    case Resource::water: return "water";
    case Resource::carbon: return "carbon";
    case Resource::energy: return "energy";
  }
  return "?";
}

std::optional<Resource> parse_resource(std::string_view name) noexcept {
  for (Resource r : kResources) {
    if (to_string(r) == name) return r;
  }
  return std::nullopt;
}

double amount(const FootprintEstimate& fp, Resource r) noexcept {
  switch (r) {
    case Resource::water: return fp.water_ml;
    case Resource::carbon: return fp.carbon_g;
    case Resource::energy: return fp.energy_wh;
  }
  return 0.0;
}

std::string_view to_string(LimitState s) noexcept {
  switch (s) {
    case LimitState::no_limit: return "no_limit";
    case LimitState::under: return "under";
    case LimitState::approaching: return "approaching";
    case LimitState::exceeded: return "exceeded";
  }
  return "?";
}

std::optional<LimitState> parse_limit_state(std::string_view name) noexcept {
  for (auto s : {LimitState::no_limit, LimitState::under, LimitState::approaching,
                 LimitState::exceeded}) {
    if (to_string(s) == name) return s;
  }
  return std::nullopt;
}

std::optional<double> ResourceLimits::get(Resource r) const noexcept {
  switch (r) {
    case Resource::water: return water_ml;
    case Resource::carbon: return carbon_g;
    case Resource::energy: return energy_wh;
  }
  return std::nullopt;
}

void ResourceLimits::set(Resource r, std::optional<double> value) noexcept {
  switch (r) {
    case Resource::water: water_ml = value; break;
    case Resource::carbon: carbon_g = value; break;
    case Resource::energy: energy_wh = value; break;
  }
}

void validate(const ResourceLimits& limits) {
  for (Resource r : kResources) {
    if (auto v = limits.get(r); v && !(std::isfinite(*v) && *v > 0.0)) {
      throw Error(ErrorCode::validation,
                  std::string(to_string(r)) + " limit must be a positive number");
    }
  }
}

ResourceStatus classify(Resource r, double total, std::optional<double> limit,
                        const StatusThresholds& thresholds) noexcept {
  ResourceStatus st;
  st.resource = r;
  st.limit = limit;
  if (!limit) return st;
  st.fill_fraction = total / *limit;
  st.display_fraction = std::clamp(st.fill_fraction, 0.0, 1.0);
  if (st.fill_fraction > thresholds.exceeded) {
    st.state = LimitState::exceeded;
  } else if (st.fill_fraction >= thresholds.approaching) {
    st.state = LimitState::approaching;
  } else {
    st.state = LimitState::under;
  }
  return st;
}

LimitStatus SessionBudget::status() const noexcept {
  LimitStatus out;
  for (std::size_t i = 0; i < kResources.size(); ++i) {
    const Resource r = kResources[i];
    out[i] = classify(r, amount(totals_, r), limits_.get(r), thresholds_);
  }
  return out;
}

LimitStatus SessionBudget::set_limits(const ResourceLimits& limits) {
  validate(limits);
  limits_ = limits;
  return status();
}

SessionBudget::RecordOutcome SessionBudget::record(std::string prompt_id,
                                                   const FootprintEstimate& estimate) {
  const LimitStatus before = status();
  totals_ += estimate;
  history_.push_back(BudgetEntry{std::move(prompt_id), estimate});

  RecordOutcome out;
  out.statuses = status();
  for (std::size_t i = 0; i < kResources.size(); ++i) {
    if (before[i].state != out.statuses[i].state) {
      out.transitions.push_back({kResources[i], before[i].state, out.statuses[i].state});
    }
  }
  return out;
}

}  // namespace ecoprompt
