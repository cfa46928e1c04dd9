#include "s2t/serialization.hpp"

#include <fstream>
#include <sstream>

namespace s2t {

namespace {

template <typename T>
T field(const json& doc, const char* name) {
  if (!doc.is_object() || !doc.contains(name)) {
    throw FormatError(std::string("missing field '") + name + "'");
  }
  try {
    return doc.at(name).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field '") + name + "': " + e.what());
  }
}

std::vector<std::uint32_t> flat_grid(const json& doc, const char* name) {
  if (!doc.contains(name) || !doc.at(name).is_array()) {
    throw FormatError(std::string("missing array '") + name + "'");
  }
  std::vector<std::uint32_t> out;
  try {
    for (const json& row : doc.at(name)) {
      if (row.is_array()) {
        for (const json& v : row) out.push_back(v.get<std::uint32_t>());
      } else {
        out.push_back(row.get<std::uint32_t>());
      }
    }
  } catch (const json::exception& e) {
    throw FormatError(std::string("array '") + name + "': " + e.what());
  }
  return out;
}

json entries_to_json(const std::vector<GeneratorMap>& maps) {
  json out = json::array();
  for (const GeneratorMap& m : maps) {
    if (m.forward.empty()) continue;
    json entries = json::array();
    for (const auto& [from, to] : m.forward) entries.push_back({from.value, to.value});
    out.push_back({{"index", m.index}, {"entries", std::move(entries)}});
  }
  return out;
}

void entries_from_json(ActionState& st, const json& doc, const char* name, GeneratorKind kind) {
  if (!doc.contains(name)) return;
  for (const json& m : doc.at(name)) {
    const auto index = field<std::uint32_t>(m, "index");
    for (const json& e : field<json>(m, "entries")) {
      if (!e.is_array() || e.size() != 2) throw FormatError("map entry must be a [from, to] pair");
      const PointId from{e[0].get<std::uint32_t>()};
      const PointId to{e[1].get<std::uint32_t>()};
      if (!st.is_live(from) || !st.is_live(to)) {
        throw FormatError(std::string(name) + std::to_string(index) + " entry refers to a point that does not exist");
      }
      st.restore_entry(kind, index, from, to);
    }
  }
}

}  // namespace

BaseGroup group_from_json(const json& doc) {
  const auto order = field<std::size_t>(doc, "order");
  std::vector<std::string> labels;
  if (doc.contains("labels")) labels = field<std::vector<std::string>>(doc, "labels");
  return BaseGroup::validate(order, flat_grid(doc, "table"), field<ElementId>(doc, "identity"),
                             field<ElementId>(doc, "t"), std::move(labels));
}

json group_to_json(const BaseGroup& group) {
  json doc = {{"order", group.order()},
              {"table", group.table()},
              {"identity", group.identity()},
              {"t", group.t()}};
  if (!group.labels().empty()) doc["labels"] = group.labels();
  return doc;
}

BaseAction action_from_json(const json& doc) {
  BaseGroup group = group_from_json(doc);
  if (!doc.contains("act")) return regular_action(group);
  return BaseAction::validate(std::move(group), field<std::size_t>(doc, "points"), flat_grid(doc, "act"));
}

json action_to_json(const BaseAction& action) {
  json doc = group_to_json(action.group());
  doc["points"] = action.points();
  doc["act"] = action.grid();
  return doc;
}

json state_to_json(const ActionState& st) {
  return {{"format", "s2t-state"},
          {"version", 1},
          {"base", action_to_json(st.base())},
          {"orbits", st.orbit_count()},
          {"next_s", st.next_s()},
          {"next_r", st.next_r()},
          {"s", entries_to_json(st.s_maps())},
          {"r", entries_to_json(st.r_maps())}};
}

ActionState state_from_json(const json& doc) {
  if (!doc.is_object() || doc.value("format", "") != "s2t-state") {
    throw FormatError("not a state document (expected \"format\": \"s2t-state\")");
  }
  if (field<int>(doc, "version") != 1) throw FormatError("unsupported state version");
  ActionState st(action_from_json(field<json>(doc, "base")));
  st.restore_orbits(field<std::uint32_t>(doc, "orbits"));
  try {
    entries_from_json(st, doc, "s", GeneratorKind::S);
    entries_from_json(st, doc, "r", GeneratorKind::R);
  } catch (const json::exception& e) {
    throw FormatError(std::string("map entries: ") + e.what());
  }
  st.restore_counters(doc.value("next_s", 0u), doc.value("next_r", 0u));
  return st;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

std::string export_dot(const ActionState& st) {
  std::ostringstream os;
  auto node = [&](PairRef a) { return "\"" + st.point_name(a.first) + "," + st.point_name(a.second) + "\""; };
  const auto n = static_cast<std::uint32_t>(st.point_count());
  const BaseGroup& group = st.group();
  os << "digraph pairs {\n";
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      if (x == y) continue;
      const PairRef a{PointId{x}, PointId{y}};
      os << "  " << node(a);
      if (st.is_t_pair(a)) os << " [style=bold, color=red]";
      os << ";\n";
    }
  }
  for (std::uint32_t x = 0; x < n; ++x) {
    for (std::uint32_t y = 0; y < n; ++y) {
      if (x == y) continue;
      const PairRef a{PointId{x}, PointId{y}};
      for (ElementId g = 0; g < group.order(); ++g) {
        if (g == group.identity()) continue;
        const PairRef b{st.apply_base(a.first, g), st.apply_base(a.second, g)};
        os << "  " << node(a) << " -> " << node(b) << " [label=\"" << format_letter(Letter::base(g)) << "\"];\n";
      }
      for (const auto& [letter, target] : st.moves(a.first)) {
        if (letter.sign < 0) continue;
        if (auto other = st.step(a.second, letter)) {
          os << "  " << node(a) << " -> " << node(PairRef{target, *other}) << " [label=\"" << format_letter(letter)
             << "\"];\n";
        }
      }
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace s2t
