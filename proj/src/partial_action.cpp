#include "s2t/partial_action.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <stdexcept>
#include <thread>

namespace s2t {

namespace {

Letter generator_letter(GeneratorKind kind, std::uint32_t index, int sign) {
  return kind == GeneratorKind::S ? Letter::s(index, sign) : Letter::r(index, sign);
}

std::string generator_name(GeneratorKind kind, std::uint32_t index) {
  return (kind == GeneratorKind::S ? "s" : "r") + std::to_string(index);
}

std::string pair_name(const ActionState& st, PairRef a) {
  return "(" + st.point_name(a.first) + ", " + st.point_name(a.second) + ")";
}

void insert_move(std::vector<std::pair<Letter, PointId>>& moves, Letter l, PointId to) {
  auto pos = std::lower_bound(moves.begin(), moves.end(), l,
                              [](const auto& entry, const Letter& key) { return entry.first < key; });
  moves.insert(pos, {l, to});
}

}  // namespace

std::optional<PointId> GeneratorMap::image(PointId x, int sign) const {
  const auto& m = sign > 0 ? forward : backward;
  auto it = m.find(x);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

std::string clause_name(PreconditionError::Clause clause) {
  using C = PreconditionError::Clause;
  switch (clause) {
    case C::UnknownPoint: return "unknown_point";
    case C::AlreadyDefined: return "already_defined";
    case C::NotTPair: return "not_t_pair";
    case C::AlreadyConnected: return "already_connected";
    case C::ConnectedToFlip: return "connected_to_flip";
    case C::Flippable: return "flippable";
    case C::GeneratorNotFresh: return "generator_not_fresh";
    case C::InvalidSign: return "invalid_sign";
  }
  return "unknown";
}

ActionState::ActionState(BaseAction base) : base_(std::move(base)) { moves_.resize(base_.points()); }

PointInfo ActionState::describe(PointId x) const {
  require_live(x);
  if (x.value < base_.points()) return {true, x.value, 0, 0};
  const std::uint32_t offset = x.value - static_cast<std::uint32_t>(base_.points());
  const auto order = static_cast<std::uint32_t>(group().order());
  return {false, 0, offset / order, offset % order};
}

PointId ActionState::base_point(std::uint32_t index) const {
  if (index >= base_.points()) throw std::out_of_range("base point index out of range");
  return PointId{index};
}

PointId ActionState::orbit_point(std::uint32_t orbit, ElementId g) const {
  if (orbit >= orbits_ || g >= group().order()) throw std::out_of_range("orbit point out of range");
  return PointId{static_cast<std::uint32_t>(base_.points() + orbit * group().order() + g)};
}

std::string ActionState::point_name(PointId x) const {
  if (!is_live(x)) return "?" + std::to_string(x.value);
  PointInfo info = describe(x);
  if (info.is_base) return "x" + std::to_string(info.index);
  return "o" + std::to_string(info.orbit) + "." + std::to_string(info.element);
}

PointId ActionState::apply_base(PointId x, ElementId g) const {
  if (x.value < base_.points()) return PointId{base_.apply(x.value, g)};
  PointInfo info = describe(x);
  return orbit_point(info.orbit, group().mul(info.element, g));
}

std::optional<PointId> ActionState::step(PointId x, const Letter& l) const {
  if (l.is_base()) return apply_base(x, l.index);
  const GeneratorMap* m = map(l.is_s() ? GeneratorKind::S : GeneratorKind::R, l.index);
  if (m == nullptr) return std::nullopt;
  return m->image(x, l.sign);
}

std::optional<PointId> ActionState::act(PointId x, std::span<const Letter> w) const {
  require_live(x);
  std::optional<PointId> cur = x;
  for (const Letter& l : w) {
    cur = step(*cur, l);
    if (!cur) return std::nullopt;
  }
  return cur;
}

std::optional<PairRef> ActionState::pair_step(PairRef a, const Letter& l) const {
  auto x = step(a.first, l);
  if (!x) return std::nullopt;
  auto y = step(a.second, l);
  if (!y) return std::nullopt;
  return PairRef{*x, *y};
}

std::optional<PairRef> ActionState::pair_act(PairRef a, std::span<const Letter> w) const {
  auto x = act(a.first, w);
  if (!x) return std::nullopt;
  auto y = act(a.second, w);
  if (!y) return std::nullopt;
  return PairRef{*x, *y};
}

const GeneratorMap* ActionState::map(GeneratorKind kind, std::uint32_t index) const {
  const auto& maps = kind == GeneratorKind::S ? smaps_ : rmaps_;
  if (index >= maps.size()) return nullptr;
  return &maps[index];
}

bool ActionState::is_fresh(GeneratorKind kind, std::uint32_t index) const {
  const GeneratorMap* m = map(kind, index);
  return m == nullptr || m->empty();
}

bool ActionState::is_t_pair(PairRef a) const {
  return is_live(a.first) && is_live(a.second) && times_t(a.first) == a.second;
}

GeneratorMap& ActionState::map_for(GeneratorKind kind, std::uint32_t index) {
  auto& maps = kind == GeneratorKind::S ? smaps_ : rmaps_;
  while (maps.size() <= index) {
    GeneratorMap m;
    m.kind = kind;
    m.index = static_cast<std::uint32_t>(maps.size());
    maps.push_back(std::move(m));
  }
  auto& next = kind == GeneratorKind::S ? next_s_ : next_r_;
  next = std::max(next, index + 1);
  return maps[index];
}

std::uint32_t ActionState::add_orbit() {
  moves_.resize(moves_.size() + group().order());
  return orbits_++;
}

void ActionState::set_entry(GeneratorKind kind, std::uint32_t index, PointId from, PointId to) {
  GeneratorMap& m = map_for(kind, index);
  m.forward.emplace(from, to);
  m.backward.emplace(to, from);
  insert_move(moves_[from.value], generator_letter(kind, index, 1), to);
  insert_move(moves_[to.value], generator_letter(kind, index, -1), from);
}

void ActionState::restore_entry(GeneratorKind kind, std::uint32_t index, PointId from, PointId to) {
  if (!is_live(from) || !is_live(to)) {
    throw std::out_of_range("map entry endpoint is not a live point");
  }
  GeneratorMap& m = map_for(kind, index);
  if (m.forward.emplace(from, to).second) {
    insert_move(moves_[from.value], generator_letter(kind, index, 1), to);
  }
  if (m.backward.emplace(to, from).second) {
    insert_move(moves_[to.value], generator_letter(kind, index, -1), from);
  }
}

void ActionState::restore_orbits(std::uint32_t orbits) {
  while (orbits_ < orbits) add_orbit();
}

void ActionState::restore_counters(std::uint32_t next_s, std::uint32_t next_r) {
  next_s_ = std::max(next_s_, next_s);
  next_r_ = std::max(next_r_, next_r);
}

void ActionState::require_live(PointId x) const {
  if (!is_live(x)) {
    throw PreconditionError(PreconditionError::Clause::UnknownPoint,
                            "point " + std::to_string(x.value) + " is not live");
  }
}

void ActionState::require_fresh(GeneratorKind kind, std::uint32_t index) const {
  if (!is_fresh(kind, index)) {
    throw PreconditionError(PreconditionError::Clause::GeneratorNotFresh,
                            generator_name(kind, index) + " already acts");
  }
}

void ActionState::extend_s(PointId x, std::uint32_t index, int sign) {
  if (sign != 1 && sign != -1) throw PreconditionError(PreconditionError::Clause::InvalidSign, "sign must be +1 or -1");
  require_live(x);
  const Letter l = Letter::s(index, sign);
  const PointId xt = times_t(x);
  if (step(x, l) || step(xt, l)) {
    throw PreconditionError(PreconditionError::Clause::AlreadyDefined,
                            format_letter(l) + " is already defined at " + point_name(x));
  }
  const std::uint32_t orbit = add_orbit();
  const PointId fresh = orbit_point(orbit, group().identity());
  const PointId fresh_t = times_t(fresh);
  if (sign > 0) {
    set_entry(GeneratorKind::S, index, x, fresh);
    set_entry(GeneratorKind::S, index, xt, fresh_t);
  } else {
    set_entry(GeneratorKind::S, index, fresh, x);
    set_entry(GeneratorKind::S, index, fresh_t, xt);
  }
}

void ActionState::extend_r(PointId x, std::uint32_t index, int sign) {
  if (sign != 1 && sign != -1) throw PreconditionError(PreconditionError::Clause::InvalidSign, "sign must be +1 or -1");
  require_live(x);
  const Letter l = Letter::r(index, sign);
  if (step(x, l)) {
    throw PreconditionError(PreconditionError::Clause::AlreadyDefined,
                            format_letter(l) + " is already defined at " + point_name(x));
  }
  const std::uint32_t orbit = add_orbit();
  const PointId fresh = orbit_point(orbit, group().identity());
  if (sign > 0) {
    set_entry(GeneratorKind::R, index, x, fresh);
  } else {
    set_entry(GeneratorKind::R, index, fresh, x);
  }
}

void ActionState::join_t_pairs(PairRef a, PairRef b, std::uint32_t s_index) {
  require_live(a.first);
  require_live(a.second);
  require_live(b.first);
  require_live(b.second);
  for (PairRef p : {a, b}) {
    if (!is_t_pair(p)) {
      throw PreconditionError(PreconditionError::Clause::NotTPair, pair_name(*this, p) + " is not a t-pair");
    }
  }
  require_fresh(GeneratorKind::S, s_index);
  if (auto g = connected(*this, a, b)) {
    throw PreconditionError(PreconditionError::Clause::AlreadyConnected,
                            pair_name(*this, a) + " is carried to " + pair_name(*this, b) + " by " +
                                format_word(*g));
  }
  set_entry(GeneratorKind::S, s_index, a.first, b.first);
  set_entry(GeneratorKind::S, s_index, a.second, b.second);
}

void ActionState::join_pairs(PairRef a, PairRef b, std::uint32_t r_index) {
  require_live(a.first);
  require_live(a.second);
  require_live(b.first);
  require_live(b.second);
  if (a.first == a.second || b.first == b.second) {
    throw PreconditionError(PreconditionError::Clause::UnknownPoint, "pair components must be distinct");
  }
  require_fresh(GeneratorKind::R, r_index);
  if (auto g = connected(*this, a, b)) {
    throw PreconditionError(PreconditionError::Clause::AlreadyConnected,
                            pair_name(*this, a) + " is carried to " + pair_name(*this, b) + " by " +
                                format_word(*g));
  }
  if (auto g = connected(*this, a, b.flip())) {
    throw PreconditionError(PreconditionError::Clause::ConnectedToFlip,
                            pair_name(*this, a) + " is carried to the flip of " + pair_name(*this, b) +
                                " by " + format_word(*g));
  }
  if (auto g = flippable(*this, b)) {
    throw PreconditionError(PreconditionError::Clause::Flippable,
                            pair_name(*this, b) + " is flipped by " + format_word(*g));
  }
  set_entry(GeneratorKind::R, r_index, a.first, b.first);
  set_entry(GeneratorKind::R, r_index, a.second, b.second);
}

std::vector<PairRef> t_pairs(const ActionState& st) {
  std::vector<PairRef> out;
  out.reserve(st.point_count());
  for (std::uint32_t x = 0; x < st.point_count(); ++x) {
    out.push_back({PointId{x}, st.times_t(PointId{x})});
  }
  return out;
}

std::vector<PairRef> pairs_in_order(const ActionState& st, std::size_t limit) {
  std::vector<PairRef> out;
  const auto n = static_cast<std::uint32_t>(st.point_count());
  for (std::uint32_t x = 0; x < n && out.size() < limit; ++x) {
    for (std::uint32_t y = 0; y < n && out.size() < limit; ++y) {
      if (x != y) out.push_back({PointId{x}, PointId{y}});
    }
  }
  return out;
}

namespace {

std::uint64_t pair_key(PairRef a) {
  return (static_cast<std::uint64_t>(a.first.value) << 32) | a.second.value;
}

// Calls f(letter, neighbour) for every edge leaving a in the pair graph:
// every nontrivial base letter, then every generator letter defined at both
// components.
template <typename F>
void for_each_edge(const ActionState& st, PairRef a, F&& f) {
  const BaseGroup& group = st.group();
  for (ElementId g = 0; g < group.order(); ++g) {
    if (g == group.identity()) continue;
    f(Letter::base(g), PairRef{st.apply_base(a.first, g), st.apply_base(a.second, g)});
  }
  for (const auto& [letter, target] : st.moves(a.first)) {
    if (auto other = st.step(a.second, letter)) {
      f(letter, PairRef{target, *other});
    }
  }
}

}  // namespace

std::optional<NormalForm> connected(const ActionState& st, PairRef a, PairRef b) {
  if (!st.is_live(a.first) || !st.is_live(a.second) || !st.is_live(b.first) || !st.is_live(b.second)) {
    return std::nullopt;
  }
  if (a == b) return NormalForm{};
  struct Parent {
    std::uint64_t prev;
    Letter letter;
  };
  std::unordered_map<std::uint64_t, Parent> parent;
  std::deque<PairRef> queue{a};
  parent.emplace(pair_key(a), Parent{pair_key(a), Letter{}});
  const std::uint64_t target = pair_key(b);
  while (!queue.empty()) {
    const PairRef cur = queue.front();
    queue.pop_front();
    bool found = false;
    for_each_edge(st, cur, [&](const Letter& l, PairRef next) {
      if (found) return;
      const std::uint64_t k = pair_key(next);
      if (!parent.emplace(k, Parent{pair_key(cur), l}).second) return;
      if (k == target) {
        found = true;
        return;
      }
      queue.push_back(next);
    });
    if (found) {
      Word path;
      for (std::uint64_t k = target; k != pair_key(a);) {
        const Parent& p = parent.at(k);
        path.push_back(p.letter);
        k = p.prev;
      }
      std::reverse(path.begin(), path.end());
      return normalize(path, st.group());
    }
  }
  return std::nullopt;
}

std::optional<NormalForm> flippable(const ActionState& st, PairRef b) { return connected(st, b, b.flip()); }

std::uint64_t PairComponents::key(PairRef a) const { return pair_key(a); }

std::uint32_t PairComponents::component(PairRef a) {
  if (auto it = label_.find(key(a)); it != label_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(members_.size());
  std::vector<PairRef> members{a};
  label_.emplace(key(a), id);
  for (std::size_t head = 0; head < members.size(); ++head) {
    const PairRef cur = members[head];
    for_each_edge(st_, cur, [&](const Letter&, PairRef next) {
      if (label_.emplace(key(next), id).second) members.push_back(next);
    });
  }
  members_.push_back(std::move(members));
  return id;
}

std::size_t PairComponents::size_of(PairRef a) { return members_[component(a)].size(); }

std::vector<PairRef> PairComponents::members(PairRef a) { return members_[component(a)]; }

GoodnessReport check_goodness_bounded(const ActionState& st, std::size_t max_length, std::size_t max_violations) {
  if (max_length < 1) throw std::invalid_argument("verification length must be at least 1");
  GoodnessReport report;
  report.max_length = max_length;
  const BaseGroup& group = st.group();

  auto record = [&](Violation v) {
    if (report.violations.size() >= max_violations) {
      report.truncated = true;
      return;
    }
    report.violations.push_back(std::move(v));
  };

  // Map-level invariants.
  for (const auto* maps : {&st.s_maps(), &st.r_maps()}) {
    for (const GeneratorMap& m : *maps) {
      const Letter l = generator_letter(m.kind, m.index, 1);
      for (const auto& [x, y] : m.forward) {
        auto back = m.backward.find(y);
        if (back == m.backward.end() || back->second != x) {
          PairRef collapsed{x, back == m.backward.end() ? x : back->second};
          record({1, collapsed, y, {l},
                  format_letter(l) + " is not injective: " + st.point_name(collapsed.first) + " and " +
                      st.point_name(collapsed.second) + " both map to " + st.point_name(y)});
        }
        if (m.kind == GeneratorKind::S) {
          auto partner = m.image(st.times_t(x), 1);
          if (!partner || *partner != st.times_t(y)) {
              record({0, std::nullopt, x, {l},
                    format_letter(l) + " is not t-compatible at " + st.point_name(x)});
          }
        }
      }
      for (const auto& [y, x] : m.backward) {
        auto fwd = m.forward.find(x);
        if (fwd == m.forward.end() || fwd->second != y) {
          record({1, std::nullopt, y, {l.flipped()},
                  format_letter(l) + " has an inverse entry without forward entry at " + st.point_name(y)});
        }
      }
    }
  }

  for (std::uint32_t x = 0; x < st.point_count(); ++x) {
    if (st.times_t(PointId{x}) == PointId{x}) {
      record({3, std::nullopt, PointId{x}, {Letter::base(group.t())}, "t fixes " + st.point_name(PointId{x})});
    }
  }

  // Pair-level clauses over every normal-form word of bounded length. Start
  // points are shared out between threads; results are merged in point order.
  struct Slot {
    std::vector<Violation> found;
    bool overflow = false;
    std::uint64_t words = 0;
  };
  const auto n = static_cast<std::uint32_t>(st.point_count());
  std::vector<Slot> slots(n);
  std::atomic<std::uint32_t> next_x{0};

  auto worker = [&] {
    Word word;
    word.reserve(max_length);
    PairRef start{};
    Slot* slot = nullptr;
    auto note = [&](Violation v) {
      if (slot->found.size() >= max_violations) {
        slot->overflow = true;
        return;
      }
      slot->found.push_back(std::move(v));
    };
    auto visit = [&](auto&& self, PairRef cur) -> void {
      auto consider = [&](const Letter& l, PairRef next) {
        if (next.first == next.second) return;
        if (!extends_normal(word, l, group)) return;
        word.push_back(l);
        ++slot->words;
        if (next == start) {
          note({1, start, std::nullopt, word, "nontrivial word stabilizes " + pair_name(st, start)});
        } else if (next == start.flip() && !is_conjugate_to_t(normalize(word, group), group)) {
          note({2, start, std::nullopt, word, "word flips " + pair_name(st, start) + " but is not conjugate to t"});
        }
        if (word.size() < max_length) self(self, next);
        word.pop_back();
      };
      for_each_edge(st, cur, consider);
    };
    for (std::uint32_t x; (x = next_x.fetch_add(1)) < n;) {
      slot = &slots[x];
      for (std::uint32_t y = 0; y < n; ++y) {
        if (x == y) continue;
        start = {PointId{x}, PointId{y}};
        visit(visit, start);
      }
    }
  };

  const unsigned threads = std::clamp<unsigned>(std::thread::hardware_concurrency(), 1, 16);
  if (threads == 1 || n < 64) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
  }
  for (Slot& slot : slots) {
    report.words_checked += slot.words;
    for (Violation& v : slot.found) record(std::move(v));
    if (slot.overflow) report.truncated = true;
  }
  return report;
}

}  // namespace s2t
