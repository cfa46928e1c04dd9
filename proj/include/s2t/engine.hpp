#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "s2t/partial_action.hpp"
#include "s2t/serialization.hpp"

namespace s2t {

enum class TaskKind : std::uint8_t { DefineS = 0, DefineR = 1, JoinTPairs = 2, MakeFlippable = 3 };
inline constexpr std::size_t kTaskKinds = 4;

std::string task_kind_name(TaskKind kind);

namespace task {
struct DefineS {
  PointId point;
  std::uint32_t index;
  int sign;
};
struct DefineR {
  PointId point;
  std::uint32_t index;
  int sign;
};
struct JoinTPairs {
  PairRef a;
  PairRef b;
};
struct MakeFlippable {
  PairRef b;
};
}  // namespace task

using Task = std::variant<task::DefineS, task::DefineR, task::JoinTPairs, task::MakeFlippable>;

TaskKind kind_of(const Task& t);
std::string describe(const ActionState& st, const Task& t);

struct EngineConfig {
  explicit EngineConfig(BaseAction base_action) : base(std::move(base_action)) {}

  BaseAction base;
  std::uint64_t step_budget = 0;
  /// Check goodness every this many executed steps; 0 checks the final state only.
  std::uint64_t verify_every = 0;
  /// Word length bound for goodness checks; 0 disables them.
  std::size_t verify_length = 6;
  /// Number of pairs (canonical order) counted in the progress summary.
  std::size_t window = 20;
  /// Defaults to the first t-pair of the initial state.
  std::optional<PairRef> anchor;
};

struct ProgressReport {
  std::size_t window = 0;
  std::size_t connected = 0;
  std::size_t flippable = 0;
  /// Flip witnesses that are not conjugate to t or do not square to 1, and
  /// flippable pairs whose component holds no t-pair.
  std::vector<std::string> problems;
};

struct Report {
  std::array<std::uint64_t, kTaskKinds> executed{};
  std::uint64_t lapsed = 0;
  std::uint64_t steps = 0;
  std::size_t points = 0;
  std::size_t t_pairs = 0;
  PairRef anchor;
  ProgressReport progress;
  std::size_t verify_length = 0;
  std::size_t stages_verified = 0;
  bool goodness_passed = true;
  std::vector<Violation> violations;
  std::string state_hash;

  friend bool operator==(const Report& a, const Report& b);
};

struct RunResult {
  ActionState state;
  Report report;
};

/// Called after every executed task with the updated state.
using StepObserver = std::function<void(const ActionState&, const Task&)>;

/// Drives the extension operations round-robin over the four task kinds.
/// Throws HypothesisError if the base action fails a hypothesis.
RunResult run(const EngineConfig& cfg, const StepObserver& observer = {});

ProgressReport verify_progress(const ActionState& st, PairRef anchor, std::size_t window);

/// Digest of the canonical JSON serialization.
std::string state_hash(const ActionState& st);

/// Manifest: {"group": path-or-object, "steps", "verify_every",
/// "verify_length", "window", "anchor": [x, y]}. Relative group paths are
/// resolved against `base_dir`.
EngineConfig config_from_json(const json& doc, const std::filesystem::path& base_dir = {});
json report_to_json(const Report& report, const ActionState& st);

}  // namespace s2t
