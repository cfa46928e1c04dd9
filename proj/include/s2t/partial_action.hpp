#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "s2t/base_group.hpp"
#include "s2t/word.hpp"

namespace s2t {

/// Dense point id. Base points come first (by index), then orbit points
/// ordered by (orbit, element); this is also the canonical point order.
struct PointId {
  std::uint32_t value = 0;
  friend auto operator<=>(const PointId&, const PointId&) = default;
};

/// Structured view of a point: either a base point or x'g in a fresh orbit.
struct PointInfo {
  bool is_base = true;
  std::uint32_t index = 0;   // base points
  std::uint32_t orbit = 0;   // orbit points
  ElementId element = 0;     // orbit points
};

struct PairRef {
  PointId first;
  PointId second;

  PairRef flip() const { return {second, first}; }
  friend auto operator<=>(const PairRef&, const PairRef&) = default;
};

enum class GeneratorKind : std::uint8_t { S, R };

/// Partial injective map of one generator. `backward` mirrors `forward`.
struct GeneratorMap {
  GeneratorKind kind = GeneratorKind::S;
  std::uint32_t index = 0;
  std::map<PointId, PointId> forward;
  std::map<PointId, PointId> backward;

  bool empty() const { return forward.empty() && backward.empty(); }
  std::optional<PointId> image(PointId x, int sign) const;
};

/// Rejected extension operation. The state is left untouched.
class PreconditionError : public Error {
 public:
  enum class Clause {
    UnknownPoint,
    AlreadyDefined,
    NotTPair,
    AlreadyConnected,
    ConnectedToFlip,
    Flippable,
    GeneratorNotFresh,
    InvalidSign,
  };

  PreconditionError(Clause clause, const std::string& what) : Error(what), clause_(clause) {}
  Clause clause() const { return clause_; }

 private:
  Clause clause_;
};

std::string clause_name(PreconditionError::Clause clause);

/// One stage of the partial action of G on Y, where Y is the initial base
/// point set plus regular G0-orbits added by the extension operations.
///
/// Only the four extension operations mutate a state; each checks its
/// preconditions first and never removes or overwrites entries.
class ActionState {
 public:
  explicit ActionState(BaseAction base);

  const BaseAction& base() const { return base_; }
  const BaseGroup& group() const { return base_.group(); }

  std::size_t point_count() const { return base_.points() + orbits_ * group().order(); }
  std::uint32_t orbit_count() const { return orbits_; }
  bool is_live(PointId x) const { return x.value < point_count(); }
  PointInfo describe(PointId x) const;
  PointId base_point(std::uint32_t index) const;
  PointId orbit_point(std::uint32_t orbit, ElementId g) const;
  std::string point_name(PointId x) const;

  PointId apply_base(PointId x, ElementId g) const;
  PointId times_t(PointId x) const { return apply_base(x, group().t()); }

  /// Single letter step; base letters are total, generator letters consult
  /// the maps.
  std::optional<PointId> step(PointId x, const Letter& l) const;

  /// x*w, defined iff every prefix is defined.
  std::optional<PointId> act(PointId x, std::span<const Letter> w) const;
  std::optional<PairRef> pair_act(PairRef a, std::span<const Letter> w) const;
  std::optional<PairRef> pair_step(PairRef a, const Letter& l) const;

  std::uint32_t next_s() const { return next_s_; }
  std::uint32_t next_r() const { return next_r_; }
  const std::vector<GeneratorMap>& s_maps() const { return smaps_; }
  const std::vector<GeneratorMap>& r_maps() const { return rmaps_; }
  const GeneratorMap* map(GeneratorKind kind, std::uint32_t index) const;
  bool is_fresh(GeneratorKind kind, std::uint32_t index) const;

  /// Generator letters defined at x, sorted by letter, with their targets.
  const std::vector<std::pair<Letter, PointId>>& moves(PointId x) const { return moves_[x.value]; }

  bool is_t_pair(PairRef a) const;

  /// Puts x s^sign = x' and (x t) s^sign = x' t for a fresh regular orbit x'G0.
  void extend_s(PointId x, std::uint32_t index, int sign);
  /// Puts x r^sign = x' for a fresh regular orbit x'G0.
  void extend_r(PointId x, std::uint32_t index, int sign);
  /// Sets a s = b for t-pairs a, b with no g carrying a to b and s fresh.
  void join_t_pairs(PairRef a, PairRef b, std::uint32_t s_index);
  /// Sets a r = b when neither b nor its flip is reachable from a, b cannot
  /// be flipped, and r is fresh.
  void join_pairs(PairRef a, PairRef b, std::uint32_t r_index);

  /// Raw entry insertion used when loading a snapshot; performs no precondition
  /// checks so that corrupted fixtures can be represented.
  void restore_entry(GeneratorKind kind, std::uint32_t index, PointId from, PointId to);
  void restore_orbits(std::uint32_t orbits);
  void restore_counters(std::uint32_t next_s, std::uint32_t next_r);

 private:
  GeneratorMap& map_for(GeneratorKind kind, std::uint32_t index);
  std::uint32_t add_orbit();
  void set_entry(GeneratorKind kind, std::uint32_t index, PointId from, PointId to);
  void require_live(PointId x) const;
  void require_fresh(GeneratorKind kind, std::uint32_t index) const;

  BaseAction base_;
  std::uint32_t orbits_ = 0;
  std::vector<GeneratorMap> smaps_;
  std::vector<GeneratorMap> rmaps_;
  std::uint32_t next_s_ = 0;
  std::uint32_t next_r_ = 0;
  std::vector<std::vector<std::pair<Letter, PointId>>> moves_;
};

/// t-pairs (x, x t) for every live point in point order.
std::vector<PairRef> t_pairs(const ActionState& st);

/// All pairs of distinct live points in lexicographic order, truncated to
/// `limit` entries.
std::vector<PairRef> pairs_in_order(const ActionState& st, std::size_t limit);

/// Breadth-first search over the pair graph. Returns a normalized g with
/// a g = b, or nothing when b is not reachable from a.
std::optional<NormalForm> connected(const ActionState& st, PairRef a, PairRef b);

/// connected(b, flip(b)).
std::optional<NormalForm> flippable(const ActionState& st, PairRef b);

/// Connected components of the pair graph of a fixed state, labelled on
/// demand. Must not outlive changes to the state it was built from.
class PairComponents {
 public:
  explicit PairComponents(const ActionState& st) : st_(st) {}

  std::uint32_t component(PairRef a);
  bool same(PairRef a, PairRef b) { return component(a) == component(b); }
  bool flippable(PairRef a) { return same(a, a.flip()); }
  std::size_t size_of(PairRef a);
  /// Members of the component of a, in breadth-first order.
  std::vector<PairRef> members(PairRef a);

 private:
  std::uint64_t key(PairRef a) const;

  const ActionState& st_;
  std::unordered_map<std::uint64_t, std::uint32_t> label_;
  std::vector<std::vector<PairRef>> members_;
};

struct Violation {
  /// 1: nontrivial pair stabilizer (or a non-injective map); 2: flip by a
  /// non-conjugate of t; 3: t fixes a point.
  int clause = 0;
  std::optional<PairRef> pair;
  std::optional<PointId> point;
  Word word;
  std::string detail;
};

struct GoodnessReport {
  std::size_t max_length = 0;
  std::uint64_t words_checked = 0;
  std::vector<Violation> violations;
  bool truncated = false;

  bool good() const { return violations.empty(); }
};

/// Checks the goodness clauses for every pair and every normal-form word of
/// length at most `max_length` that acts on it, plus structural invariants
/// of the generator maps. At most `max_violations` are recorded.
GoodnessReport check_goodness_bounded(const ActionState& st, std::size_t max_length,
                                      std::size_t max_violations = 64);

}  // namespace s2t
