#include "defuse/puzzles/who.hpp"

#include <algorithm>
#include <map>

#include "defuse/error.hpp"

namespace defuse {

namespace {

using P = WhoPosition;

const std::vector<std::pair<std::string, WhoPosition>>& step1_table() {
  static const std::vector<std::pair<std::string, WhoPosition>> t = {
      {"YES", P::middle_left},      {"FIRST", P::top_right},       {"DISPLAY", P::bottom_right},
      {"OKAY", P::top_right},       {"SAYS", P::bottom_right},     {"NOTHING", P::middle_left},
      {"(No Text)", P::bottom_left}, {"BLANK", P::middle_right},   {"NO", P::bottom_right},
      {"LED", P::middle_left},      {"LEAD", P::bottom_right},     {"READ", P::middle_right},
      {"RED", P::middle_right},     {"REED", P::bottom_left},      {"LEED", P::bottom_left},
      {"HOLD ON", P::bottom_right}, {"YOU", P::middle_right},      {"YOU ARE", P::bottom_right},
      {"YOUR", P::middle_right},    {"YOU'RE", P::middle_right},   {"UR", P::top_left},
      {"THERE", P::bottom_right},   {"THEY'RE", P::bottom_left},   {"THEIR", P::middle_right},
      {"THEY ARE", P::middle_left}, {"SEE", P::bottom_right},      {"C", P::top_right},
      {"CEE", P::bottom_right},
  };
  return t;
}

using Step2 = std::vector<std::pair<std::string, std::vector<std::string>>>;

const Step2& step2_table() {
  static const Step2 t = {
      {"READY", {"YES", "OKAY", "WHAT", "MIDDLE", "LEFT", "PRESS", "RIGHT", "BLANK", "READY", "NO", "FIRST", "UHHH",
                 "NOTHING", "WAIT"}},
      {"FIRST", {"LEFT", "OKAY", "YES", "MIDDLE", "NO", "RIGHT", "NOTHING", "UHHH", "WAIT", "READY", "BLANK", "WHAT",
                 "PRESS", "FIRST"}},
      {"NO", {"BLANK", "UHHH", "WAIT", "FIRST", "WHAT", "READY", "RIGHT", "YES", "NOTHING", "LEFT", "PRESS", "OKAY",
              "NO", "MIDDLE"}},
      {"BLANK", {"WAIT", "RIGHT", "OKAY", "MIDDLE", "BLANK", "PRESS", "READY", "NOTHING", "NO", "WHAT", "LEFT",
                 "UHHH", "YES", "FIRST"}},
      {"NOTHING", {"UHHH", "RIGHT", "OKAY", "MIDDLE", "YES", "BLANK", "NO", "PRESS", "LEFT", "WHAT", "WAIT", "FIRST",
                   "NOTHING", "READY"}},
      {"YES", {"OKAY", "RIGHT", "UHHH", "MIDDLE", "FIRST", "WHAT", "PRESS", "READY", "NOTHING", "YES", "LEFT",
               "BLANK", "NO", "WAIT"}},
      {"WHAT", {"UHHH", "WHAT", "LEFT", "NOTHING", "READY", "BLANK", "MIDDLE", "NO", "OKAY", "FIRST", "WAIT", "YES",
                "PRESS", "RIGHT"}},
      {"UHHH", {"READY", "NOTHING", "LEFT", "WHAT", "OKAY", "YES", "RIGHT", "NO", "PRESS", "BLANK", "UHHH",
                "MIDDLE", "WAIT", "FIRST"}},
      {"LEFT", {"RIGHT", "LEFT", "FIRST", "NO", "MIDDLE", "YES", "BLANK", "WHAT", "UHHH", "WAIT", "PRESS", "READY",
                "OKAY", "NOTHING"}},
      {"RIGHT", {"YES", "NOTHING", "READY", "PRESS", "NO", "WAIT", "WHAT", "RIGHT", "MIDDLE", "LEFT", "UHHH",
                 "BLANK", "OKAY", "FIRST"}},
      {"MIDDLE", {"BLANK", "READY", "OKAY", "WHAT", "NOTHING", "PRESS", "NO", "WAIT", "LEFT", "MIDDLE", "RIGHT",
                  "FIRST", "UHHH", "YES"}},
      {"OKAY", {"MIDDLE", "NO", "FIRST", "YES", "UHHH", "NOTHING", "WAIT", "OKAY", "LEFT", "READY", "BLANK",
                "PRESS", "WHAT", "RIGHT"}},
      {"WAIT", {"UHHH", "NO", "BLANK", "OKAY", "YES", "LEFT", "FIRST", "PRESS", "WHAT", "WAIT", "NOTHING", "READY",
                "RIGHT", "MIDDLE"}},
      {"PRESS", {"RIGHT", "MIDDLE", "YES", "READY", "PRESS", "OKAY", "NOTHING", "UHHH", "BLANK", "LEFT", "FIRST",
                 "WHAT", "NO", "WAIT"}},
      {"YOU", {"SURE", "YOU ARE", "YOUR", "YOU'RE", "NEXT", "UH HUH", "UR", "HOLD", "WHAT?", "YOU", "UH UH", "LIKE",
               "DONE", "U"}},
      {"YOU ARE", {"YOUR", "NEXT", "LIKE", "UH HUH", "WHAT?", "DONE", "UH UH", "HOLD", "YOU", "U", "YOU'RE", "SURE",
                   "UR", "YOU ARE"}},
      {"YOUR", {"UH UH", "YOU ARE", "UH HUH", "YOUR", "NEXT", "UR", "SURE", "U", "YOU'RE", "YOU", "WHAT?", "HOLD",
                "LIKE", "DONE"}},
      {"YOU'RE", {"YOU", "YOU'RE", "UR", "NEXT", "UH UH", "YOU ARE", "U", "YOUR", "WHAT?", "UH HUH", "SURE", "DONE",
                  "LIKE", "HOLD"}},
      {"UR", {"DONE", "U", "UR", "UH HUH", "WHAT?", "SURE", "YOUR", "HOLD", "YOU'RE", "LIKE", "NEXT", "UH UH",
              "YOU ARE", "YOU"}},
      {"U", {"UH HUH", "SURE", "NEXT", "WHAT?", "YOU'RE", "UR", "UH UH", "DONE", "U", "YOU", "LIKE", "HOLD",
             "YOU ARE", "YOUR"}},
      {"UH HUH", {"UH HUH", "YOUR", "YOU ARE", "YOU", "DONE", "HOLD", "UH UH", "NEXT", "SURE", "LIKE", "YOU'RE", "UR",
                  "U", "WHAT?"}},
      {"UH UH", {"UR", "U", "YOU ARE", "YOU'RE", "NEXT", "UH UH", "DONE", "YOU", "UH HUH", "LIKE", "YOUR", "SURE",
                 "HOLD", "WHAT?"}},
      {"WHAT?", {"YOU", "HOLD", "YOU'RE", "YOUR", "U", "DONE", "UH UH", "LIKE", "YOU ARE", "UH HUH", "UR", "NEXT",
                 "WHAT?", "SURE"}},
      {"DONE", {"SURE", "UH HUH", "NEXT", "WHAT?", "YOUR", "UR", "YOU'RE", "HOLD", "LIKE", "YOU", "U", "YOU ARE",
                "UH UH", "DONE"}},
      {"NEXT", {"WHAT?", "UH HUH", "UH UH", "YOUR", "HOLD", "SURE", "NEXT", "LIKE", "DONE", "YOU ARE", "UR",
                "YOU'RE", "U", "YOU"}},
      {"HOLD", {"YOU ARE", "U", "DONE", "UH UH", "YOU", "UR", "SURE", "WHAT?", "YOU'RE", "NEXT", "HOLD", "UH HUH",
                "YOUR", "LIKE"}},
      {"SURE", {"YOU ARE", "DONE", "LIKE", "YOU'RE", "YOU", "HOLD", "UH HUH", "UR", "SURE", "U", "WHAT?", "NEXT",
                "YOUR", "UH UH"}},
      {"LIKE", {"YOU'RE", "NEXT", "U", "UR", "HOLD", "DONE", "UH UH", "WHAT?", "UH HUH", "YOU", "LIKE", "SURE",
                "YOU ARE", "YOUR"}},
  };
  return t;
}

} // namespace

std::string_view who_position_name(WhoPosition p) {
  switch (p) {
  case P::top_left: return "top left";
  case P::top_right: return "top right";
  case P::middle_left: return "middle left";
  case P::middle_right: return "middle right";
  case P::bottom_left: return "bottom left";
  case P::bottom_right: return "bottom right";
  }
  return "?";
}

std::string who_press_token(WhoPosition p) {
  std::string name(who_position_name(p));
  std::replace(name.begin(), name.end(), ' ', '_');
  return "press_" + name;
}

const std::vector<std::string>& who_display_words() {
  static const std::vector<std::string> words = [] {
    std::vector<std::string> w;
    for (const auto& [k, _] : step1_table()) w.push_back(k);
    return w;
  }();
  return words;
}

const std::vector<std::string>& who_label_words() {
  static const std::vector<std::string> words = [] {
    std::vector<std::string> w;
    for (const auto& [k, _] : step2_table()) w.push_back(k);
    return w;
  }();
  return words;
}

const std::vector<std::string>& who_step2_list(std::string_view label) {
  for (const auto& [k, list] : step2_table())
    if (k == label) return list;
  throw RuleError("no step 2 list for label '" + std::string(label) + "'");
}

WhoPosition who_step1(std::string_view display_word) {
  for (const auto& [k, pos] : step1_table())
    if (k == display_word) return pos;
  throw RuleError("no step 1 entry for display '" + std::string(display_word) + "'");
}

std::string who_step2(std::string_view referenced_label, std::span<const std::string> on_module_labels) {
  for (const auto& candidate : who_step2_list(referenced_label))
    if (std::find(on_module_labels.begin(), on_module_labels.end(), candidate) != on_module_labels.end())
      return candidate;
  throw RuleError("no entry of '" + std::string(referenced_label) + "' list is on the module");
}

std::string WhoState::referenced_label() const {
  return labels[static_cast<std::size_t>(who_step1(display_word))];
}

std::string WhoState::target_label() const { return who_step2(referenced_label(), labels); }

WhoState generate_who(Rng& rng, const GenParams&) {
  WhoState s;
  const auto& displays = who_display_words();
  const auto& vocab = who_label_words();
  s.display_word = displays[rng.below(displays.size())];
  const auto picks = rng.sample(static_cast<int>(vocab.size()), kWhoButtons);
  for (int i = 0; i < kWhoButtons; ++i) s.labels[i] = vocab[picks[i]];
  return s;
}

bool validate(const WhoState& s) {
  const auto& vocab = who_label_words();
  for (std::size_t i = 0; i < s.labels.size(); ++i) {
    if (std::find(vocab.begin(), vocab.end(), s.labels[i]) == vocab.end()) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (s.labels[i] == s.labels[j]) return false;
  }
  try {
    (void)s.target_label();
  } catch (const RuleError&) {
    return false;
  }
  return true;
}

std::vector<std::string> actions(const WhoState& s) {
  std::vector<std::string> out;
  if (s.solved) return out;
  for (int i = 0; i < kWhoButtons; ++i) out.push_back(who_press_token(static_cast<WhoPosition>(i)));
  return out;
}

StepResult apply(WhoState& s, std::string_view token, int) {
  const int pos = index_of(actions(s), token);
  if (pos < 0) return {OutcomeKind::noop, "action not available"};
  const std::string& label = s.labels[pos];
  if (label == s.target_label()) {
    s.solved = true;
    return {OutcomeKind::solved, "pressed " + label};
  }
  return {OutcomeKind::mistake, "pressed " + label + ": wrong button"};
}

double progress(const WhoState& s) { return s.solved ? 100.0 : 0.0; }

std::vector<std::string> oracle_plan(const WhoState& s, int, int) {
  if (s.solved) return {};
  const auto target = s.target_label();
  for (int i = 0; i < kWhoButtons; ++i)
    if (s.labels[i] == target) return {who_press_token(static_cast<WhoPosition>(i))};
  return {};
}

ordered_json to_json(const WhoState& s) {
  return {{"display", s.display_word}, {"labels", s.labels}, {"solved", s.solved}};
}

} // namespace defuse
