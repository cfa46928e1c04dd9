#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "s2t/base_group.hpp"
#include "s2t/partial_action.hpp"

namespace s2t {

using json = nlohmann::json;

// Group files: {"order", "table" (row-major ids, flat or nested rows),
// "identity", "t", optional "labels"}. An action is described by optional
// "points" and "act" (row-major, act[x][g]) fields next to the group fields;
// without them the group acts regularly on itself.

BaseGroup group_from_json(const json& doc);
json group_to_json(const BaseGroup& group);

BaseAction action_from_json(const json& doc);
json action_to_json(const BaseAction& action);

json state_to_json(const ActionState& st);
ActionState state_from_json(const json& doc);

/// Reads a JSON document. Throws IoError if the file cannot be read and
/// FormatError if it does not parse.
json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

/// Pair graph in Graphviz syntax: one node per pair of distinct points, one
/// edge per nontrivial base letter and per positive generator letter, t-pairs
/// drawn bold.
std::string export_dot(const ActionState& st);

}  // namespace s2t
