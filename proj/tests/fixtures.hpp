#pragma once

#include <filesystem>
#include <random>
#include <string>
#include <string_view>

#include "s2t/serialization.hpp"
#include "s2t/word.hpp"

namespace s2t::fixtures {

inline std::filesystem::path group_file(const std::string& name) {
  return std::filesystem::path(S2T_DATA_DIR) / "groups" / (name + ".json");
}

inline BaseGroup group(const std::string& name) { return group_from_json(read_json_file(group_file(name))); }
inline BaseAction action(const std::string& name) { return action_from_json(read_json_file(group_file(name))); }

inline Word w(std::string_view text) { return parse_word(text); }

inline NormalForm nf(std::string_view text, const BaseGroup& g) { return normalize(parse_word(text, g), g); }

/// Letters drawn from a small alphabet so that cancellations and t-moves
/// occur often: base letters (t with extra weight), s0..s(gens-1) and
/// r0..r(gens-1) with both signs.
inline Letter random_letter(std::mt19937_64& rng, const BaseGroup& g, std::uint32_t gens = 2) {
  const auto roll = std::uniform_int_distribution<int>(0, 9)(rng);
  const auto sign = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
  const auto index = std::uniform_int_distribution<std::uint32_t>(0, gens - 1)(rng);
  if (roll < 2) return Letter::base(g.t());
  if (roll < 5) {
    ElementId e = g.identity();
    while (e == g.identity()) e = std::uniform_int_distribution<ElementId>(0, static_cast<ElementId>(g.order() - 1))(rng);
    return Letter::base(e);
  }
  if (roll < 8) return Letter::s(index, sign);
  return Letter::r(index, sign);
}

inline Word random_word(std::mt19937_64& rng, const BaseGroup& g, std::size_t max_len, std::uint32_t gens = 2) {
  const auto len = std::uniform_int_distribution<std::size_t>(0, max_len)(rng);
  Word out;
  for (std::size_t i = 0; i < len; ++i) out.push_back(random_letter(rng, g, gens));
  return out;
}

}  // namespace s2t::fixtures
