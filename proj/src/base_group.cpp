#include "s2t/base_group.hpp"

#include <algorithm>
#include <sstream>

namespace s2t {

namespace {

std::string triple(ElementId a, ElementId b, ElementId c) {
  std::ostringstream os;
  os << "(" << a << "," << b << "," << c << ")";
  return os.str();
}

}  // namespace

BaseGroup BaseGroup::validate(std::size_t order, std::vector<ElementId> table, ElementId identity,
                              ElementId t, std::vector<std::string> labels) {
  if (order == 0) {
    throw GroupError("group order must be positive");
  }
  if (table.size() != order * order) {
    throw GroupError("table has " + std::to_string(table.size()) + " entries, expected " +
                     std::to_string(order * order));
  }
  if (!labels.empty() && labels.size() != order) {
    throw GroupError("label count " + std::to_string(labels.size()) + " does not match order");
  }
  if (identity >= order || t >= order) {
    throw GroupError("identity or t id out of range");
  }
  auto at = [&](ElementId a, ElementId b) { return table[a * order + b]; };

  for (ElementId a = 0; a < order; ++a) {
    for (ElementId b = 0; b < order; ++b) {
      if (at(a, b) >= order) {
        throw GroupError("closure violated: " + std::to_string(a) + "*" + std::to_string(b) + " = " +
                         std::to_string(at(a, b)) + " is not an element");
      }
    }
  }
  for (ElementId a = 0; a < order; ++a) {
    if (at(identity, a) != a || at(a, identity) != a) {
      throw GroupError("identity law violated at element " + std::to_string(a));
    }
  }
  for (ElementId a = 0; a < order; ++a) {
    for (ElementId b = 0; b < order; ++b) {
      for (ElementId c = 0; c < order; ++c) {
        if (at(at(a, b), c) != at(a, at(b, c))) {
          throw GroupError("associativity violated at " + triple(a, b, c));
        }
      }
    }
  }

  BaseGroup g;
  g.order_ = order;
  g.identity_ = identity;
  g.t_ = t;
  g.table_ = std::move(table);
  g.labels_ = std::move(labels);
  g.inverse_.assign(order, order);
  for (ElementId a = 0; a < order; ++a) {
    for (ElementId b = 0; b < order; ++b) {
      if (g.mul(a, b) == identity && g.mul(b, a) == identity) {
        g.inverse_[a] = b;
        break;
      }
    }
    if (g.inverse_[a] == order) {
      throw GroupError("element " + std::to_string(a) + " has no inverse");
    }
  }
  if (t == identity) {
    throw GroupError("designated involution t is the identity");
  }
  if (g.mul(t, t) != identity) {
    throw GroupError("designated element t does not square to the identity");
  }
  g.left_rep_.resize(order);
  for (ElementId a = 0; a < order; ++a) {
    ElementId other = g.mul(a, t);
    if (a == identity || other == identity) {
      g.left_rep_[a] = identity;
    } else {
      g.left_rep_[a] = std::min(a, other);
    }
  }
  return g;
}

std::string BaseGroup::label(ElementId a) const {
  if (a < labels_.size()) {
    return labels_[a];
  }
  return "g" + std::to_string(a);
}

BaseAction BaseAction::validate(BaseGroup group, std::size_t points, std::vector<std::uint32_t> act) {
  const std::size_t n = group.order();
  if (act.size() != points * n) {
    throw GroupError("action grid has " + std::to_string(act.size()) + " entries, expected " +
                     std::to_string(points * n));
  }
  for (std::uint32_t x = 0; x < points; ++x) {
    for (ElementId g = 0; g < n; ++g) {
      if (act[x * n + g] >= points) {
        throw GroupError("action of " + std::to_string(g) + " on point " + std::to_string(x) +
                         " leaves the point set");
      }
    }
    if (act[x * n + group.identity()] != x) {
      throw GroupError("identity moves point " + std::to_string(x));
    }
  }
  for (std::uint32_t x = 0; x < points; ++x) {
    for (ElementId g = 0; g < n; ++g) {
      for (ElementId h = 0; h < n; ++h) {
        if (act[act[x * n + g] * n + h] != act[x * n + group.mul(g, h)]) {
          throw GroupError("compatibility violated at point " + std::to_string(x) + " with (" +
                           std::to_string(g) + "," + std::to_string(h) + ")");
        }
      }
    }
  }
  return BaseAction(std::move(group), points, std::move(act));
}

BaseAction regular_action(const BaseGroup& group) {
  const std::size_t n = group.order();
  std::vector<std::uint32_t> act(n * n);
  for (ElementId x = 0; x < n; ++x) {
    for (ElementId g = 0; g < n; ++g) {
      act[x * n + g] = group.mul(x, g);
    }
  }
  return BaseAction::validate(group, n, std::move(act));
}

bool check_2_sharp(const BaseAction& action) {
  const BaseGroup& group = action.group();
  for (ElementId g = 0; g < group.order(); ++g) {
    if (g == group.identity()) continue;
    std::size_t fixed = 0;
    for (std::uint32_t x = 0; x < action.points(); ++x) {
      if (action.apply(x, g) == x && ++fixed > 1) {
        return false;
      }
    }
  }
  return true;
}

bool check_involutions_conjugate(const BaseGroup& group) {
  std::vector<bool> conjugate_to_t(group.order(), false);
  for (ElementId h = 0; h < group.order(); ++h) {
    conjugate_to_t[group.mul(group.mul(h, group.t()), group.inverse(h))] = true;
  }
  for (ElementId g = 0; g < group.order(); ++g) {
    if (group.is_involution(g) && !conjugate_to_t[g]) {
      return false;
    }
  }
  return true;
}

bool check_t_fixed_point_free(const BaseAction& action) {
  for (std::uint32_t x = 0; x < action.points(); ++x) {
    if (action.apply(x, action.group().t()) == x) {
      return false;
    }
  }
  return true;
}

std::vector<std::string> HypothesisReport::failures() const {
  std::vector<std::string> out;
  if (!two_sharp) out.emplace_back("two_sharp");
  if (!involutions_conjugate) out.emplace_back("involutions_conjugate");
  if (!t_fixed_point_free) out.emplace_back("t_fixed_point_free");
  return out;
}

HypothesisReport check_hypotheses(const BaseAction& action) {
  HypothesisReport report;
  report.two_sharp = check_2_sharp(action);
  report.involutions_conjugate = check_involutions_conjugate(action.group());
  report.t_fixed_point_free = check_t_fixed_point_free(action);
  return report;
}

}  // namespace s2t
