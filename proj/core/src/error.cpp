#include "ecoprompt/error.hpp"

namespace ecoprompt {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::validation: return "validation";
    case ErrorCode::malformed: return "malformed";
    case ErrorCode::config: return "config";
    case ErrorCode::not_found: return "not_found";
    case ErrorCode::out_of_bounds: return "out_of_bounds";
    case ErrorCode::tile_not_empty: return "tile_not_empty";
    case ErrorCode::tile_not_planted: return "tile_not_planted";
    case ErrorCode::crop_not_mature: return "crop_not_mature";
    case ErrorCode::off_season: return "off_season";
    case ErrorCode::missing_seed: return "missing_seed";
    case ErrorCode::unknown_crop: return "unknown_crop";
    case ErrorCode::game_over: return "game_over";
    case ErrorCode::feature_locked: return "feature_locked";
    case ErrorCode::warning_required: return "warning_required";
    case ErrorCode::no_active_pest: return "no_active_pest";
    case ErrorCode::insufficient_items: return "insufficient_items";
    case ErrorCode::hit_rate_exceeded: return "hit_rate_exceeded";
    case ErrorCode::minigame_not_started: return "minigame_not_started";
    case ErrorCode::scarecrow_active: return "scarecrow_active";
    case ErrorCode::market_closed: return "market_closed";
    case ErrorCode::market_open: return "market_open";
    case ErrorCode::invalid_price: return "invalid_price";
    case ErrorCode::live_unavailable: return "live_unavailable";
    case ErrorCode::provider_unavailable: return "provider_unavailable";
    case ErrorCode::provider_auth: return "provider_auth";
    case ErrorCode::provider_timeout: return "provider_timeout";
    case ErrorCode::provider_error: return "provider_error";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

}  // namespace ecoprompt
