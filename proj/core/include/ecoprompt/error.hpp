#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ecoprompt {

enum class ErrorCode {
  // input validation
  validation,
  malformed,
  config,
  // lookups
  not_found,
  // farm-sim rule violations
  out_of_bounds,
  tile_not_empty,
  tile_not_planted,
  crop_not_mature,
  off_season,
  missing_seed,
  unknown_crop,
  game_over,
  feature_locked,
  warning_required,
  no_active_pest,
  insufficient_items,
  hit_rate_exceeded,
  minigame_not_started,
  scarecrow_active,
  market_closed,
  market_open,
  invalid_price,
  // session/service
  live_unavailable,
  // provider
  provider_unavailable,
  provider_auth,
  provider_timeout,
  provider_error,
  // persistence
  io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Single exception type used across the library; `code()` is the stable,
/// machine-readable part and doubles as the `error` field of API responses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline bool is_provider_error(ErrorCode code) noexcept {
  return code == ErrorCode::provider_unavailable || code == ErrorCode::provider_auth ||
         code == ErrorCode::provider_timeout || code == ErrorCode::provider_error;
}

}  // namespace ecoprompt
