#include "s2t/engine.hpp"

#include <cstdio>

namespace s2t {

namespace {

std::string pair_text(const ActionState& st, PairRef a) {
  return "(" + st.point_name(a.first) + ", " + st.point_name(a.second) + ")";
}

// Enumerates demands (point, n) along Cantor diagonals so that every point
// eventually sees every demand. Demand n asks for generator n/2 with sign
// + for even n and - for odd n.
class DemandCursor {
 public:
  std::pair<std::uint32_t, std::uint32_t> next() {
    auto out = std::pair{static_cast<std::uint32_t>(x_), static_cast<std::uint32_t>(diagonal_ - x_)};
    if (++x_ > diagonal_) {
      ++diagonal_;
      x_ = 0;
    }
    return out;
  }

 private:
  std::uint64_t diagonal_ = 0;
  std::uint64_t x_ = 0;
};

class Engine {
 public:
  Engine(const EngineConfig& cfg, PairRef anchor) : st_(cfg.base), anchor_(anchor) {}

  ActionState& state() { return st_; }

  // Next open demand for the given kind; demands that are already served
  // are skipped and counted as lapsed.
  Task next_define(TaskKind kind, std::uint64_t& lapsed) {
    DemandCursor& cursor = kind == TaskKind::DefineS ? s_cursor_ : r_cursor_;
    for (;;) {
      auto [x, n] = cursor.next();
      if (x >= st_.point_count()) continue;
      const std::uint32_t index = n / 2;
      const int sign = n % 2 == 0 ? 1 : -1;
      const PointId p{x};
      const Letter l = kind == TaskKind::DefineS ? Letter::s(index, sign) : Letter::r(index, sign);
      if (st_.step(p, l)) {
        ++lapsed;
        continue;
      }
      if (kind == TaskKind::DefineS) return task::DefineS{p, index, sign};
      return task::DefineR{p, index, sign};
    }
  }

  std::optional<Task> next_join(PairComponents& pc) {
    for (const PairRef& b : t_pairs(st_)) {
      if (!pc.same(anchor_, b)) return task::JoinTPairs{anchor_, b};
    }
    return std::nullopt;
  }

  std::optional<Task> next_flip(PairComponents& pc) {
    const auto n = static_cast<std::uint32_t>(st_.point_count());
    for (std::uint32_t x = 0; x < n; ++x) {
      for (std::uint32_t y = 0; y < n; ++y) {
        if (x == y) continue;
        const PairRef b{PointId{x}, PointId{y}};
        if (!pc.flippable(b)) return task::MakeFlippable{b};
      }
    }
    return std::nullopt;
  }

  std::optional<Task> discover(TaskKind kind, std::uint64_t& lapsed) {
    switch (kind) {
      case TaskKind::DefineS:
      case TaskKind::DefineR:
        return next_define(kind, lapsed);
      case TaskKind::JoinTPairs: {
        PairComponents pc(st_);
        return next_join(pc);
      }
      case TaskKind::MakeFlippable: {
        PairComponents pc(st_);
        return next_flip(pc);
      }
    }
    return std::nullopt;
  }

  // Returns false if the task's preconditions no longer hold.
  bool execute(const Task& t) {
    try {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, task::DefineS>) {
              st_.extend_s(v.point, v.index, v.sign);
            } else if constexpr (std::is_same_v<T, task::DefineR>) {
              st_.extend_r(v.point, v.index, v.sign);
            } else if constexpr (std::is_same_v<T, task::JoinTPairs>) {
              st_.join_t_pairs(v.a, v.b, st_.next_s());
            } else {
              // Pairs reachable from the anchor are flipped through it.
              if (connected(st_, anchor_, v.b)) return;
              st_.join_pairs(anchor_, v.b, st_.next_r());
            }
          },
          t);
    } catch (const PreconditionError&) {
      return false;
    }
    return true;
  }

 private:
  ActionState st_;
  PairRef anchor_;
  DemandCursor s_cursor_;
  DemandCursor r_cursor_;
};

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json violation_to_json(const ActionState& st, const Violation& v) {
  json out = {{"clause", v.clause}, {"word", format_word(v.word)}, {"detail", v.detail}};
  if (v.pair) out["pair"] = {st.point_name(v.pair->first), st.point_name(v.pair->second)};
  if (v.point) out["point"] = st.point_name(*v.point);
  return out;
}

}  // namespace

std::string task_kind_name(TaskKind kind) {
  switch (kind) {
    case TaskKind::DefineS: return "define_s";
    case TaskKind::DefineR: return "define_r";
    case TaskKind::JoinTPairs: return "join_t_pairs";
    case TaskKind::MakeFlippable: return "make_flippable";
  }
  return "unknown";
}

TaskKind kind_of(const Task& t) { return static_cast<TaskKind>(t.index()); }

std::string describe(const ActionState& st, const Task& t) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, task::DefineS>) {
          return "define " + format_letter(Letter::s(v.index, v.sign)) + " at " + st.point_name(v.point);
        } else if constexpr (std::is_same_v<T, task::DefineR>) {
          return "define " + format_letter(Letter::r(v.index, v.sign)) + " at " + st.point_name(v.point);
        } else if constexpr (std::is_same_v<T, task::JoinTPairs>) {
          return "join " + pair_text(st, v.a) + " with " + pair_text(st, v.b);
        } else {
          return "make " + pair_text(st, v.b) + " flippable";
        }
      },
      t);
}

bool operator==(const Report& a, const Report& b) {
  auto same_violations = [](const std::vector<Violation>& x, const std::vector<Violation>& y) {
    if (x.size() != y.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i].clause != y[i].clause || x[i].pair != y[i].pair || x[i].point != y[i].point ||
          x[i].word != y[i].word) {
        return false;
      }
    }
    return true;
  };
  return a.executed == b.executed && a.lapsed == b.lapsed && a.steps == b.steps && a.points == b.points &&
         a.t_pairs == b.t_pairs && a.anchor == b.anchor && a.progress.window == b.progress.window &&
         a.progress.connected == b.progress.connected && a.progress.flippable == b.progress.flippable &&
         a.progress.problems == b.progress.problems && a.verify_length == b.verify_length &&
         a.stages_verified == b.stages_verified && a.goodness_passed == b.goodness_passed &&
         same_violations(a.violations, b.violations) && a.state_hash == b.state_hash;
}

RunResult run(const EngineConfig& cfg, const StepObserver& observer) {
  const HypothesisReport hyp = check_hypotheses(cfg.base);
  if (!hyp.passed()) {
    std::string names;
    for (const auto& f : hyp.failures()) names += (names.empty() ? "" : ", ") + f;
    throw HypothesisError("base action fails hypotheses: " + names);
  }

  ActionState initial(cfg.base);
  const PairRef anchor = cfg.anchor.value_or(t_pairs(initial).front());
  if (!initial.is_t_pair(anchor)) {
    throw HypothesisError("anchor " + pair_text(initial, anchor) + " is not a t-pair of the initial state");
  }

  Engine engine(cfg, anchor);
  Report report;
  report.anchor = anchor;
  report.verify_length = cfg.verify_length;

  auto verify = [&]() {
    if (cfg.verify_length == 0) return true;
    GoodnessReport g = check_goodness_bounded(engine.state(), cfg.verify_length);
    ++report.stages_verified;
    if (g.good()) return true;
    report.goodness_passed = false;
    report.violations = std::move(g.violations);
    return false;
  };

  std::size_t rotation = 0;
  bool healthy = true;
  while (report.steps < cfg.step_budget) {
    std::optional<Task> next;
    for (std::size_t tried = 0; tried < kTaskKinds && !next; ++tried) {
      next = engine.discover(static_cast<TaskKind>((rotation + tried) % kTaskKinds), report.lapsed);
    }
    if (!next) break;
    rotation = (static_cast<std::size_t>(kind_of(*next)) + 1) % kTaskKinds;
    if (!engine.execute(*next)) {
      ++report.lapsed;
      continue;
    }
    ++report.executed[static_cast<std::size_t>(kind_of(*next))];
    ++report.steps;
    if (observer) observer(engine.state(), *next);
    if (cfg.verify_every > 0 && report.steps % cfg.verify_every == 0) {
      healthy = verify();
      if (!healthy) break;
    }
  }
  if (healthy && (cfg.verify_every == 0 || report.steps % cfg.verify_every != 0 || report.steps == 0)) {
    verify();
  }

  const ActionState& st = engine.state();
  report.points = st.point_count();
  report.t_pairs = t_pairs(st).size();
  report.progress = verify_progress(st, anchor, cfg.window);
  report.state_hash = state_hash(st);
  return {st, std::move(report)};
}

ProgressReport verify_progress(const ActionState& st, PairRef anchor, std::size_t window) {
  ProgressReport out;
  PairComponents pc(st);
  const BaseGroup& group = st.group();
  for (const PairRef& b : pairs_in_order(st, window)) {
    ++out.window;
    if (pc.same(anchor, b)) ++out.connected;
    if (!pc.flippable(b)) continue;
    ++out.flippable;
    const auto g = flippable(st, b);
    const std::string name = "(" + st.point_name(b.first) + ", " + st.point_name(b.second) + ")";
    if (!g) {
      out.problems.push_back(name + ": component contains the flip but no witness was found");
      continue;
    }
    if (!is_conjugate_to_t(*g, group)) {
      out.problems.push_back(name + ": flip witness " + format_word(*g) + " is not conjugate to t");
    }
    if (!multiply(*g, *g, group).empty()) {
      out.problems.push_back(name + ": flip witness " + format_word(*g) + " does not square to 1");
    }
    bool has_t_pair = false;
    for (const PairRef& c : pc.members(b)) {
      if (st.is_t_pair(c)) {
        has_t_pair = true;
        break;
      }
    }
    if (!has_t_pair) out.problems.push_back(name + ": no t-pair in the component of a flippable pair");
  }
  return out;
}

std::string state_hash(const ActionState& st) {
  const std::string text = state_to_json(st).dump();
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return "fnv1a64:" + hex64(h);
}

EngineConfig config_from_json(const json& doc, const std::filesystem::path& base_dir) {
  if (!doc.is_object() || !doc.contains("group")) throw FormatError("manifest needs a \"group\" field");
  const json& g = doc.at("group");
  json group_doc;
  if (g.is_string()) {
    std::filesystem::path p = g.get<std::string>();
    if (p.is_relative()) p = base_dir / p;
    group_doc = read_json_file(p);
  } else {
    group_doc = g;
  }
  EngineConfig cfg{action_from_json(group_doc)};
  try {
    cfg.step_budget = doc.value("steps", std::uint64_t{0});
    cfg.verify_every = doc.value("verify_every", std::uint64_t{0});
    cfg.verify_length = doc.value("verify_length", std::size_t{6});
    cfg.window = doc.value("window", std::size_t{20});
    if (doc.contains("anchor")) {
      const auto a = doc.at("anchor").get<std::vector<std::uint32_t>>();
      if (a.size() != 2) throw FormatError("anchor must be [x, y]");
      cfg.anchor = PairRef{PointId{a[0]}, PointId{a[1]}};
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("manifest: ") + e.what());
  }
  return cfg;
}

json report_to_json(const Report& report, const ActionState& st) {
  json steps = json::object();
  for (std::size_t k = 0; k < kTaskKinds; ++k) steps[task_kind_name(static_cast<TaskKind>(k))] = report.executed[k];
  steps["lapsed"] = report.lapsed;
  steps["total"] = report.steps;
  json violations = json::array();
  for (const Violation& v : report.violations) violations.push_back(violation_to_json(st, v));
  return {{"steps", std::move(steps)},
          {"points", report.points},
          {"t_pairs", report.t_pairs},
          {"orbits", st.orbit_count()},
          {"anchor", {report.anchor.first.value, report.anchor.second.value}},
          {"progress",
           {{"window", report.progress.window},
            {"connected_to_anchor", report.progress.connected},
            {"flippable", report.progress.flippable},
            {"problems", report.progress.problems}}},
          {"goodness",
           {{"length", report.verify_length},
            {"stages_verified", report.stages_verified},
            {"passed", report.goodness_passed},
            {"violations", std::move(violations)}}},
          {"state_hash", report.state_hash}};
}

}  // namespace s2t
