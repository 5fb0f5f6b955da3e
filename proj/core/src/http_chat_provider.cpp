#include <chrono>
#include <cmath>
#include <cstdlib>

#include <httplib.h>

#include "ecoprompt/error.hpp"
#include "ecoprompt/provider.hpp"

namespace ecoprompt {
namespace {

using Clock = std::chrono::steady_clock;

void set_timeout(httplib::Client& client, double seconds) {
  const auto whole = static_cast<time_t>(std::floor(seconds));
  const auto micros = static_cast<time_t>((seconds - std::floor(seconds)) * 1e6);
  client.set_connection_timeout(whole, micros);
  client.set_read_timeout(whole, micros);
  client.set_write_timeout(whole, micros);
}

std::string error_excerpt(const std::string& body) {
  constexpr std::size_t kMax = 300;
  return body.size() > kMax ? body.substr(0, kMax) + "..." : body;
}

}  // namespace

HttpChatProvider::HttpChatProvider(LiveProviderConfig config, std::string api_key)
    : config_(std::move(config)), api_key_(std::move(api_key)) {
  if (api_key_.empty()) {
    throw Error(ErrorCode::live_unavailable, "live provider requires an API key");
  }
  if (!(config_.timeout_s > 0.0)) {
    throw Error(ErrorCode::config, "provider timeout must be positive");
  }
}

std::unique_ptr<HttpChatProvider> HttpChatProvider::from_environment(
    const LiveProviderConfig& config) {
  const char* key = std::getenv(config.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    throw Error(ErrorCode::live_unavailable,
                "live provider selected but " + config.api_key_env + " is not set");
  }
  return std::make_unique<HttpChatProvider>(config, key);
}

nlohmann::json HttpChatProvider::build_body(const ProviderRequest& request) const {
  nlohmann::json messages = nlohmann::json::array();
  if (request.system_hint) {
    messages.push_back({{"role", "system"}, {"content", *request.system_hint}});
  }
  messages.push_back({{"role", "user"}, {"content", request.prompt_text}});

  nlohmann::json body = config_.extra_params.is_object() ? config_.extra_params
                                                         : nlohmann::json::object();
  body["model"] = config_.model;
  body["messages"] = std::move(messages);
  if (request.max_output_tokens) body["max_tokens"] = *request.max_output_tokens;
  return body;
}

ProviderResult HttpChatProvider::parse_response(const nlohmann::json& body,
                                                const ProviderRequest& request,
                                                double latency_s) {
  const auto& choices = body.value("choices", nlohmann::json::array());
  if (!choices.is_array() || choices.empty() || !choices[0].is_object()) {
    throw Error(ErrorCode::provider_error, "provider response has no choices");
  }
  const auto& choice = choices[0];
  const auto message = choice.value("message", nlohmann::json::object());

  ProviderResult result;
  result.provider_name = "live";
  result.measured_latency_s = latency_s;

  if (message.contains("refusal") && message["refusal"].is_string()) {
    result.refused = true;
    result.response_text = message["refusal"].get<std::string>();
  } else if (message.contains("content") && message["content"].is_string()) {
    result.response_text = message["content"].get<std::string>();
  }
  if (choice.value("finish_reason", std::string{}) == "content_filter") result.refused = true;

  const auto usage = body.value("usage", nlohmann::json::object());
  if (usage.contains("prompt_tokens") && usage["prompt_tokens"].is_number_integer()) {
    result.input_tokens = usage["prompt_tokens"].get<long long>();
  } else {
    result.input_tokens = count_tokens(request.prompt_text) +
                          (request.system_hint ? count_tokens(*request.system_hint) : 0);
  }
  if (usage.contains("completion_tokens") && usage["completion_tokens"].is_number_integer()) {
    result.output_tokens = usage["completion_tokens"].get<long long>();
  } else {
    result.output_tokens = count_tokens(result.response_text);
  }
  return result;
}

ProviderResult HttpChatProvider::complete(const ProviderRequest& request) const {
  ecoprompt::validate(request);

  httplib::Client client(config_.base_url);
  set_timeout(client, config_.timeout_s);
  client.set_bearer_token_auth(api_key_);

  const std::string payload = build_body(request).dump();
  const auto start = Clock::now();
  auto res = client.Post(config_.endpoint_path, payload, "application/json");
  const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();

  if (!res) {
    // A read timeout surfaces as a plain read error, so the clock decides.
    if (res.error() == httplib::Error::ConnectionTimeout || elapsed >= 0.95 * config_.timeout_s) {
      throw Error(ErrorCode::provider_timeout, "provider did not answer within " +
                                                   std::to_string(config_.timeout_s) + " s");
    }
    throw Error(ErrorCode::provider_unavailable,
                "provider request failed: " + httplib::to_string(res.error()));
  }
  if (res->status == 401 || res->status == 403) {
    throw Error(ErrorCode::provider_auth, "provider rejected the API key (HTTP " +
                                              std::to_string(res->status) + ")");
  }
  if (res->status < 200 || res->status >= 300) {
    throw Error(ErrorCode::provider_error, "provider returned HTTP " +
                                               std::to_string(res->status) + ": " +
                                               error_excerpt(res->body));
  }

  nlohmann::json body = nlohmann::json::parse(res->body, nullptr, false);
  if (body.is_discarded() || !body.is_object()) {
    throw Error(ErrorCode::provider_error, "provider returned malformed JSON");
  }
  // Wall clock is the only latency we trust for live calls; never report 0.
  return parse_response(body, request, std::max(elapsed, 1e-6));
}

}  // namespace ecoprompt
