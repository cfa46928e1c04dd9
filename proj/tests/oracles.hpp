#pragma once

#include <functional>
#include <random>

#include "s2t/partial_action.hpp"

namespace s2t::oracles {

/// Letters acting somewhere in `st`, plus every nontrivial base letter.
inline Word alphabet(const ActionState& st) {
  Word out;
  for (ElementId g = 0; g < st.group().order(); ++g) {
    if (g != st.group().identity()) out.push_back(Letter::base(g));
  }
  for (const auto* maps : {&st.s_maps(), &st.r_maps()}) {
    for (const GeneratorMap& m : *maps) {
      if (m.empty()) continue;
      for (int sign : {1, -1}) {
        out.push_back(m.kind == GeneratorKind::S ? Letter::s(m.index, sign) : Letter::r(m.index, sign));
      }
    }
  }
  return out;
}

struct BruteForceResult {
  std::size_t stabilizers = 0;  // nontrivial words fixing a pair
  std::size_t bad_flips = 0;    // words flipping a pair that do not have order 2
  std::size_t t_fixed = 0;
  std::uint64_t words = 0;

  bool good() const { return stabilizers == 0 && bad_flips == 0 && t_fixed == 0; }
};

/// Exhaustive search over all words (not only normal forms) up to length L.
/// An element flipping a pair must have order 2; in this group those are
/// exactly the conjugates of involutions of G0.
inline BruteForceResult brute_force_goodness(const ActionState& st, std::size_t max_length) {
  BruteForceResult out;
  const BaseGroup& g = st.group();
  for (std::uint32_t x = 0; x < st.point_count(); ++x) {
    if (st.times_t(PointId{x}) == PointId{x}) ++out.t_fixed;
  }
  const Word letters = alphabet(st);
  Word w;
  std::function<void(PairRef, PairRef)> dfs = [&](PairRef start, PairRef cur) {
    for (const Letter& l : letters) {
      auto next = st.pair_step(cur, l);
      if (!next) continue;
      w.push_back(l);
      ++out.words;
      if (*next == start && !normalize(w, g).empty()) ++out.stabilizers;
      if (*next == start.flip()) {
        Word twice = w;
        twice.insert(twice.end(), w.begin(), w.end());
        if (normalize(w, g).empty() || !normalize(twice, g).empty()) ++out.bad_flips;
      }
      if (w.size() < max_length) dfs(start, *next);
      w.pop_back();
    }
  };
  for (std::uint32_t x = 0; x < st.point_count(); ++x) {
    for (std::uint32_t y = 0; y < st.point_count(); ++y) {
      if (x != y) dfs({PointId{x}, PointId{y}}, {PointId{x}, PointId{y}});
    }
  }
  return out;
}

/// Applies `ops` random extension operations; rejected ones are skipped.
inline void random_extensions(ActionState& st, std::mt19937_64& rng, int ops) {
  auto point = [&] {
    return PointId{std::uniform_int_distribution<std::uint32_t>(0, static_cast<std::uint32_t>(st.point_count() - 1))(rng)};
  };
  auto pair = [&] {
    PointId a = point(), b = point();
    while (b == a) b = point();
    return PairRef{a, b};
  };
  auto t_pair = [&] {
    const PointId a = point();
    return PairRef{a, st.times_t(a)};
  };
  for (int i = 0; i < ops; ++i) {
    const int sign = std::uniform_int_distribution<int>(0, 1)(rng) ? 1 : -1;
    try {
      switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0: st.extend_s(point(), std::uniform_int_distribution<std::uint32_t>(0, st.next_s())(rng), sign); break;
        case 1: st.extend_r(point(), std::uniform_int_distribution<std::uint32_t>(0, st.next_r())(rng), sign); break;
        case 2: st.join_t_pairs(t_pair(), t_pair(), st.next_s()); break;
        default: st.join_pairs(t_pair(), pair(), st.next_r()); break;
      }
    } catch (const PreconditionError&) {
    }
  }
}

}  // namespace s2t::oracles
