#include "s2t/cli.hpp"

#include <CLI11.hpp>
#include <iostream>
#include <set>
#include <sstream>

#include "s2t/engine.hpp"

namespace s2t::cli {

namespace {

PairRef parse_pair(const std::string& text, const ActionState& st) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw FormatError("pair must be written as x,y");
  try {
    const PairRef p{PointId{static_cast<std::uint32_t>(std::stoul(text.substr(0, comma)))},
                    PointId{static_cast<std::uint32_t>(std::stoul(text.substr(comma + 1)))}};
    if (!st.is_live(p.first) || !st.is_live(p.second) || p.first == p.second) {
      throw FormatError("pair " + text + " does not name two distinct live points");
    }
    return p;
  } catch (const std::logic_error&) {
    throw FormatError("pair must be written as x,y");
  }
}

std::string describe_violation(const Violation& v) {
  std::ostringstream os;
  os << "clause " << v.clause << ": " << v.detail;
  if (!v.word.empty()) os << " [word " << format_word(v.word) << "]";
  return os.str();
}

int cmd_build(const std::string& group_file, const std::string& config_file, std::uint64_t steps,
              std::uint64_t verify_every, std::size_t length, std::size_t window, const std::string& out_file,
              std::ostream& out, std::ostream& err) {
  EngineConfig cfg = [&] {
    if (!config_file.empty()) {
      const std::filesystem::path p(config_file);
      return config_from_json(read_json_file(p), p.parent_path());
    }
    EngineConfig c{action_from_json(read_json_file(group_file))};
    c.step_budget = steps;
    c.verify_every = verify_every;
    c.verify_length = length;
    c.window = window;
    return c;
  }();
  RunResult result = [&] {
    try {
      return run(cfg);
    } catch (const HypothesisError& e) {
      err << "hypothesis failure: " << e.what() << "\n";
      throw;
    }
  }();
  if (!out_file.empty()) write_text_file(out_file, state_to_json(result.state).dump(1) + "\n");
  out << report_to_json(result.report, result.state).dump(2) << "\n";
  return result.report.goodness_passed ? kSuccess : kGoodness;
}

int cmd_verify(const std::string& state_file, std::size_t length, std::ostream& out) {
  const ActionState st = state_from_json(read_json_file(state_file));
  const GoodnessReport report = check_goodness_bounded(st, length);
  if (report.good()) {
    out << "good up to length " << length << " (" << st.point_count() << " points, " << report.words_checked
        << " word applications)\n";
    return kSuccess;
  }
  for (const Violation& v : report.violations) out << describe_violation(v) << "\n";
  if (report.truncated) out << "(further violations omitted)\n";
  return kGoodness;
}

int cmd_reduce(const std::string& group_file, const std::string& word, bool legend, std::ostream& out) {
  const BaseGroup group = group_from_json(read_json_file(group_file));
  const NormalForm nf = normalize(parse_word(word, group), group);
  out << format_word(nf) << "\n";
  if (legend) {
    std::set<ElementId> used;
    for (const Letter& l : nf) {
      if (l.is_base()) used.insert(l.index);
    }
    for (ElementId g : used) out << "g" << g << " = " << group.label(g) << "\n";
  }
  return kSuccess;
}

int cmd_connect(const std::string& state_file, const std::string& a_text, const std::string& b_text,
                std::ostream& out) {
  const ActionState st = state_from_json(read_json_file(state_file));
  const PairRef a = parse_pair(a_text, st);
  const PairRef b = b_text.empty() ? a.flip() : parse_pair(b_text, st);
  if (auto g = connected(st, a, b)) {
    out << format_word(*g) << "\n";
  } else {
    out << "none\n";
  }
  return kSuccess;
}

int cmd_export(const std::string& state_file, const std::string& format, std::ostream& out) {
  const ActionState st = state_from_json(read_json_file(state_file));
  if (format == "dot") {
    out << export_dot(st);
  } else {
    out << state_to_json(st).dump(1) << "\n";
  }
  return kSuccess;
}

int cmd_check_group(const std::string& group_file, std::ostream& out) {
  const BaseAction action = action_from_json(read_json_file(group_file));
  const HypothesisReport report = check_hypotheses(action);
  out << "two_sharp: " << (report.two_sharp ? "pass" : "fail") << "\n"
      << "involutions_conjugate: " << (report.involutions_conjugate ? "pass" : "fail") << "\n"
      << "t_fixed_point_free: " << (report.t_fixed_point_free ? "pass" : "fail") << "\n";
  return report.passed() ? kSuccess : kHypothesis;
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Builds and verifies finite stages of sharply 2-transitive partial actions", "s2t"};
  app.require_subcommand(1);

  std::string group_file, state_file, config_file, out_file, word, pair_a, pair_b, format = "json";
  std::uint64_t steps = 0, verify_every = 0;
  std::size_t length = 6, window = 20;
  bool legend = false;

  auto* build = app.add_subcommand("build", "Run the construction engine from a base group");
  build->add_option("group-file", group_file, "Group (or action) JSON file");
  build->add_option("--config", config_file, "Run manifest (JSON) instead of a group file");
  build->add_option("--steps", steps, "Step budget");
  build->add_option("--verify-every", verify_every, "Check goodness every k steps (0: final state only)");
  build->add_option("--length", length, "Word length bound for goodness checks (0 disables)");
  build->add_option("--window", window, "Pairs counted in the progress summary");
  build->add_option("--out", out_file, "Write the final state here");

  auto* verify = app.add_subcommand("verify", "Check goodness of a state up to a word length");
  verify->add_option("state-file", state_file)->required();
  verify->add_option("--length", length)->check(CLI::PositiveNumber);

  auto* reduce = app.add_subcommand("reduce", "Print the normal form of a word");
  reduce->add_option("group-file", group_file)->required();
  reduce->add_option("word", word)->required();
  reduce->add_flag("--legend", legend, "Also print labels of the base letters used");

  auto* connect = app.add_subcommand("connect", "Find g with a g = b (default b: the flip of a)");
  connect->add_option("state-file", state_file)->required();
  connect->add_option("a", pair_a, "Pair x,y")->required();
  connect->add_option("b", pair_b, "Pair x,y");

  auto* exp = app.add_subcommand("export", "Export a state as JSON or as a DOT pair graph");
  exp->add_option("state-file", state_file)->required();
  exp->add_option("--format", format)->check(CLI::IsMember({"dot", "json"}));

  auto* check = app.add_subcommand("check-group", "Check the base action hypotheses");
  check->add_option("group-file", group_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsage;
  }

  try {
    if (build->parsed()) {
      if (group_file.empty() == config_file.empty()) {
        err << "build: give exactly one of group-file or --config\n";
        return kUsage;
      }
      return cmd_build(group_file, config_file, steps, verify_every, length, window, out_file, out, err);
    }
    if (verify->parsed()) return cmd_verify(state_file, length, out);
    if (reduce->parsed()) return cmd_reduce(group_file, word, legend, out);
    if (connect->parsed()) return cmd_connect(state_file, pair_a, pair_b, out);
    if (exp->parsed()) return cmd_export(state_file, format, out);
    if (check->parsed()) return cmd_check_group(group_file, out);
  } catch (const HypothesisError&) {
    return kHypothesis;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace s2t::cli
