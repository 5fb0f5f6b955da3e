#include "ecoprompt/provider.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "ecoprompt/error.hpp"

namespace ecoprompt {
namespace {

constexpr std::array<std::string_view, 4> kOneWord{
    "Definitely.",
    "Sometimes.",
    "Absolutely.",
    "Probably.",
};

// Each short answer is ~50 tokens under count_tokens().
constexpr std::array<std::string_view, 4> kShort{
    "I don't drink water myself, but the computers that run me get warm, and data centers "
    "often use water to keep them cool. So every question you ask uses a little bit of "
    "water somewhere far away.",
    "Good question! The short answer is that it depends on the season and the weather. "
    "Plants and people both do best with just enough water, not too much and not too "
    "little. Want to know more?",
    "Here is a quick answer: start small, check what happens, and then try again. Most big "
    "problems get easier when you split them into little steps and take them one at a "
    "time. You can do it!",
    "Yes, I think so. Many people would say the same thing, although some might disagree. "
    "It is a good idea to look at a couple of different sources and then decide what you "
    "believe yourself.",
};

constexpr std::array<std::string_view, 3> kVerbose{
    "Imagine you are standing in a giant room full of humming computers, stacked in rows "
    "taller than a school bus. Every time someone types a question, one of those computers "
    "wakes up, reads every word, and starts guessing the best next word, over and over, "
    "until a whole answer appears. All that guessing makes the computer hot, so fans blow, "
    "pumps push cool water through pipes, and the power plant down the road burns a little "
    "more fuel. Now imagine millions of people asking questions at the same time. The room "
    "gets louder, the pipes carry more water, and the electricity meter spins faster. That "
    "is why even a small question has a small cost, and why a long answer like this one "
    "costs more than a short one.",
    "Imagine we are tiny explorers riding along with your question. First we zoom out "
    "of your tablet through the Wi-Fi, then through cables under the ground, all the way to "
    "a data center far away. Inside, a huge model made of numbers looks at what you asked "
    "and builds an answer one piece at a time. Each piece needs electricity, and the "
    "electricity turns into heat, so the building drinks water to stay cool. When the "
    "answer is finished, we ride back home with it and pop out on your screen. The longer "
    "the answer, the longer our trip takes, and the more energy and water get used along "
    "the way.",
    "Imagine a farmer with a single well that the whole village shares. Each time the "
    "farmer asks a helper for advice, the helper has to pump a bucket of water before "
    "answering. A quick yes or no needs only a splash, but a long story needs bucket after "
    "bucket. If everyone in the village asks for long stories all day, the well slowly runs "
    "low, even though nobody meant to waste anything. Thinking about what you really need "
    "to ask, and how long an answer you really want, is one way to keep the well healthy "
    "for everyone who depends on it.",
};

constexpr std::string_view kRefusal =
    "Sorry, I can't help with that request. Let's talk about something else!";

constexpr std::array<std::string_view, 4> kRefusalTriggers{"weapon", "bomb", "poison", "hurt someone"};
constexpr std::array<std::string_view, 2> kOneWordTriggers{"one word", "one-word"};
constexpr std::array<std::string_view, 7> kVerboseTriggers{
    "story", "imagine", "pretend", "explain", "describe", "tell me about", "why"};

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

template <std::size_t N>
bool contains_any(std::string_view haystack, const std::array<std::string_view, N>& needles) {
  return std::any_of(needles.begin(), needles.end(), [&](std::string_view n) {
    return haystack.find(n) != std::string_view::npos;
  });
}

std::uint64_t fnv1a(std::uint64_t seed, std::string_view text) noexcept {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](unsigned char byte) {
    h ^= byte;
    h *= 1099511628211ULL;
  };
  for (int i = 0; i < 8; ++i) mix(static_cast<unsigned char>(seed >> (8 * i)));
  for (char c : text) mix(static_cast<unsigned char>(c));
  return h;
}

std::string_view trim(std::string_view s) noexcept {
  const auto ws = " \t\r\n\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::string truncate_code_points(std::string_view text, long long max_points) {
  long long seen = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if ((static_cast<unsigned char>(text[i]) & 0xC0) != 0x80) {
      if (seen == max_points) return std::string(text.substr(0, i));
      ++seen;
    }
  }
  return std::string(text);
}

}  // namespace

void validate(const ProviderRequest& request) {
  if (trim(request.prompt_text).empty()) {
    throw Error(ErrorCode::validation, "prompt text is empty");
  }
  if (request.max_output_tokens && *request.max_output_tokens <= 0) {
    throw Error(ErrorCode::validation, "max_output_tokens must be positive");
  }
}

long long count_tokens(std::string_view text) noexcept {
  long long points = 0;
  for (char c : text) {
    if ((static_cast<unsigned char>(c) & 0xC0) != 0x80) ++points;
  }
  return (points + 3) / 4;
}

MockProvider::MockProvider(std::uint64_t seed, ModelProfile profile)
    : seed_(seed), profile_(std::move(profile)) {
  ecoprompt::validate(profile_);
}

MockProvider::LengthClass MockProvider::classify(std::string_view prompt) noexcept {
  const std::string p = lower(prompt);
  if (contains_any(p, kRefusalTriggers)) return LengthClass::refusal;
  if (contains_any(p, kOneWordTriggers)) return LengthClass::one_word;
  if (contains_any(p, kVerboseTriggers)) return LengthClass::verbose;
  return LengthClass::short_answer;
}

ProviderResult MockProvider::complete(const ProviderRequest& request) const {
  ecoprompt::validate(request);

  const std::string normalized = lower(trim(request.prompt_text));
  const std::uint64_t h = fnv1a(seed_, normalized);

  std::string_view text;
  const LengthClass cls = classify(normalized);
  switch (cls) {
    case LengthClass::one_word: text = kOneWord[h % kOneWord.size()]; break;
    case LengthClass::short_answer: text = kShort[h % kShort.size()]; break;
    case LengthClass::verbose: text = kVerbose[h % kVerbose.size()]; break;
    case LengthClass::refusal: text = kRefusal; break;
  }

  ProviderResult result;
  result.response_text = request.max_output_tokens
                             ? truncate_code_points(text, *request.max_output_tokens * 4)
                             : std::string(text);
  result.input_tokens = count_tokens(request.prompt_text) +
                        (request.system_hint ? count_tokens(*request.system_hint) : 0);
  result.output_tokens = count_tokens(result.response_text);
  result.measured_latency_s =
      profile_.ttft_s + static_cast<double>(result.output_tokens) / profile_.gen_speed_tps;
  result.provider_name = std::string(name());
  result.refused = cls == LengthClass::refusal;
  return result;
}

}  // namespace ecoprompt
