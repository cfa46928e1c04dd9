#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "s2t/errors.hpp"

namespace s2t {

using ElementId = std::uint32_t;

/// Finite group given by its multiplication table, with a designated
/// involution t. Instances only exist after validation.
class BaseGroup {
 public:
  /// Validates `table` (row-major, table[a * order + b] = a * b) and builds
  /// the group. Throws GroupError naming a witness for the first violated
  /// axiom.
  static BaseGroup validate(std::size_t order, std::vector<ElementId> table, ElementId identity,
                            ElementId t, std::vector<std::string> labels = {});

  std::size_t order() const { return order_; }
  ElementId identity() const { return identity_; }
  ElementId t() const { return t_; }

  ElementId mul(ElementId a, ElementId b) const { return table_[a * order_ + b]; }
  ElementId inverse(ElementId a) const { return inverse_[a]; }
  bool contains(ElementId a) const { return a < order_; }
  bool is_involution(ElementId a) const { return a != identity_ && mul(a, a) == identity_; }

  /// Canonical representative of the left coset {a, a*t}: the identity when
  /// the coset is <t>, otherwise the smaller id.
  ElementId left_coset_rep(ElementId a) const { return left_rep_[a]; }

  const std::vector<ElementId>& table() const { return table_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(ElementId a) const;

  friend bool operator==(const BaseGroup& a, const BaseGroup& b) {
    return a.order_ == b.order_ && a.identity_ == b.identity_ && a.t_ == b.t_ && a.table_ == b.table_;
  }

 private:
  BaseGroup() = default;

  std::size_t order_ = 0;
  ElementId identity_ = 0;
  ElementId t_ = 0;
  std::vector<ElementId> table_;
  std::vector<ElementId> inverse_;
  std::vector<ElementId> left_rep_;
  std::vector<std::string> labels_;
};

/// Right action of a BaseGroup on the points {0, ..., points-1}.
class BaseAction {
 public:
  /// act[x * order + g] = x * g. Throws GroupError if the grid is not an
  /// action.
  static BaseAction validate(BaseGroup group, std::size_t points, std::vector<std::uint32_t> act);

  const BaseGroup& group() const { return group_; }
  std::size_t points() const { return points_; }
  std::uint32_t apply(std::uint32_t x, ElementId g) const { return act_[x * group_.order() + g]; }
  const std::vector<std::uint32_t>& grid() const { return act_; }

  friend bool operator==(const BaseAction& a, const BaseAction& b) {
    return a.group_ == b.group_ && a.points_ == b.points_ && a.act_ == b.act_;
  }

 private:
  BaseAction(BaseGroup group, std::size_t points, std::vector<std::uint32_t> act)
      : group_(std::move(group)), points_(points), act_(std::move(act)) {}

  BaseGroup group_;
  std::size_t points_ = 0;
  std::vector<std::uint32_t> act_;
};

/// The group acting on itself by right translation.
BaseAction regular_action(const BaseGroup& group);

bool check_2_sharp(const BaseAction& action);
bool check_involutions_conjugate(const BaseGroup& group);
bool check_t_fixed_point_free(const BaseAction& action);

struct HypothesisReport {
  bool two_sharp = false;
  bool involutions_conjugate = false;
  bool t_fixed_point_free = false;

  bool passed() const { return two_sharp && involutions_conjugate && t_fixed_point_free; }
  /// Names of the failed checks, in the order listed above.
  std::vector<std::string> failures() const;
};

HypothesisReport check_hypotheses(const BaseAction& action);

}  // namespace s2t
