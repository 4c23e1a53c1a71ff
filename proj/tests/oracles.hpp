#pragma once

// Reference implementations written straight from the manual text, kept
// apart from the library so the two can be compared.

#include <algorithm>
#include <array>
#include <map>
#include <queue>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

inline int count(const std::vector<std::string>& w, const std::string& c) {
  return static_cast<int>(std::count(w.begin(), w.end(), c));
}

inline int last_of(const std::vector<std::string>& w, const std::string& c) {
  for (int i = static_cast<int>(w.size()); i >= 1; --i)
    if (w[static_cast<std::size_t>(i - 1)] == c) return i;
  return -1;
}

/// 1-based wire to cut.
inline int wire(const std::vector<std::string>& w, bool serial_odd) {
  const int n = static_cast<int>(w.size());
  const std::string& last = w.back();
  if (n == 3) {
    if (count(w, "red") == 0) return 2;
    if (last == "white") return 3;
    if (count(w, "blue") > 1) return last_of(w, "blue");
    return 3;
  }
  if (n == 4) {
    if (count(w, "red") > 1 && serial_odd) return last_of(w, "red");
    if (last == "yellow" && count(w, "red") == 0) return 1;
    if (count(w, "blue") == 1) return 1;
    if (count(w, "yellow") > 1) return 4;
    return 2;
  }
  if (n == 5) {
    if (last == "black" && serial_odd) return 4;
    if (count(w, "red") == 1 && count(w, "yellow") > 1) return 1;
    if (count(w, "black") == 0) return 2;
    return 1;
  }
  if (count(w, "yellow") == 0 && serial_odd) return 3;
  if (count(w, "yellow") == 1 && count(w, "white") > 1) return 4;
  if (count(w, "red") == 0) return 6;
  return 4;
}

/// Memory rule tables: {kind, value} per stage and display, 'P' = position,
/// 'L' = label, 'p' = same position as stage v, 'l' = same label as stage v.
struct MemRule {
  char kind;
  int value;
};
inline const std::array<std::array<MemRule, 4>, 5>& memory_rules() {
  static const std::array<std::array<MemRule, 4>, 5> r = {{
      {{{'P', 2}, {'P', 2}, {'P', 3}, {'P', 4}}},
      {{{'L', 4}, {'p', 1}, {'P', 1}, {'p', 1}}},
      {{{'l', 2}, {'l', 1}, {'P', 3}, {'L', 4}}},
      {{{'p', 1}, {'P', 1}, {'p', 2}, {'p', 2}}},
      {{{'l', 1}, {'l', 2}, {'l', 4}, {'l', 3}}},
  }};
  return r;
}

/// Solves a whole memory instance; returns the 1-based positions pressed.
inline std::vector<int> memory(const std::array<int, 5>& displays, const std::array<std::array<int, 4>, 5>& labels) {
  std::vector<int> pos, lab;
  for (int st = 0; st < 5; ++st) {
    const auto rule = memory_rules()[static_cast<std::size_t>(st)][static_cast<std::size_t>(displays[st] - 1)];
    const auto& row = labels[static_cast<std::size_t>(st)];
    int p = 0;
    auto by_label = [&](int l) {
      for (int i = 0; i < 4; ++i)
        if (row[static_cast<std::size_t>(i)] == l) return i + 1;
      return -1;
    };
    switch (rule.kind) {
    case 'P': p = rule.value; break;
    case 'L': p = by_label(rule.value); break;
    case 'p': p = pos[static_cast<std::size_t>(rule.value - 1)]; break;
    case 'l': p = by_label(lab[static_cast<std::size_t>(rule.value - 1)]); break;
    }
    pos.push_back(p);
    lab.push_back(row[static_cast<std::size_t>(p - 1)]);
  }
  return pos;
}

/// LED: positions 0..3 laid out TL TR / BL BR; diagonal partner of i is 3-i.
inline std::vector<int> led(const std::string& letters, int mult) {
  std::vector<int> out;
  for (int i = 0; i < 4; ++i) {
    const int v = letters[static_cast<std::size_t>(i)] - 'A';
    const int d = letters[static_cast<std::size_t>(3 - i)] - 'A';
    if ((v * mult) % 26 == d) out.push_back(i);
  }
  return out;
}

inline int led_mult(const std::string& color) {
  static const std::map<std::string, int> m = {{"red", 2},    {"green", 3},  {"blue", 4},
                                               {"yellow", 5}, {"purple", 6}, {"orange", 7}};
  return m.at(color);
}

/// All words reachable from the five 3-letter windows (243 combinations).
inline std::vector<std::string> password(const std::string& window_start, const std::vector<std::string>& words) {
  std::vector<std::string> hits;
  for (int code = 0; code < 243; ++code) {
    std::string w;
    int c = code;
    for (int i = 0; i < 5; ++i) {
      w += static_cast<char>(window_start[static_cast<std::size_t>(i)] + c % 3);
      c /= 3;
    }
    if (std::find(words.begin(), words.end(), w) != words.end()) hits.push_back(w);
  }
  std::sort(hits.begin(), hits.end());
  hits.erase(std::unique(hits.begin(), hits.end()), hits.end());
  return hits;
}

/// Plain grid BFS; rows are strings with '#' for walls.
inline int maze_bfs(const std::vector<std::string>& rows, int r0, int c0, int r1, int c1) {
  const int n = static_cast<int>(rows.size());
  std::vector<std::vector<int>> dist(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), -1));
  std::queue<std::pair<int, int>> q;
  dist[static_cast<std::size_t>(r0)][static_cast<std::size_t>(c0)] = 0;
  q.push({r0, c0});
  const int dr[4] = {-1, 1, 0, 0}, dc[4] = {0, 0, -1, 1};
  while (!q.empty()) {
    auto [r, c] = q.front();
    q.pop();
    for (int k = 0; k < 4; ++k) {
      const int nr = r + dr[k], nc = c + dc[k];
      if (nr < 0 || nc < 0 || nr >= n || nc >= n) continue;
      if (rows[static_cast<std::size_t>(nr)][static_cast<std::size_t>(nc)] == '#') continue;
      auto& d = dist[static_cast<std::size_t>(nr)][static_cast<std::size_t>(nc)];
      if (d >= 0) continue;
      d = dist[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] + 1;
      q.push({nr, nc});
    }
  }
  return dist[static_cast<std::size_t>(r1)][static_cast<std::size_t>(c1)];
}

/// Parses "N: {A, B, ...}" table lines of the color manual into
/// table[white_count][previous column] = lowercase group name.
inline std::map<int, std::vector<std::string>> color_table(const std::string& manual) {
  std::map<int, std::vector<std::string>> t;
  std::istringstream in(manual);
  std::string line;
  while (std::getline(in, line)) {
    const auto colon = line.find(": {");
    if (colon == std::string::npos || line.rfind("Previously", 0) == 0) continue;
    const int key = std::stoi(line.substr(0, colon));
    std::string body = line.substr(colon + 3);
    body = body.substr(0, body.find('}'));
    std::vector<std::string> cells;
    std::istringstream parts(body);
    std::string cell;
    while (std::getline(parts, cell, ',')) {
      cell.erase(0, cell.find_first_not_of(' '));
      for (auto& ch : cell) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
      cells.push_back(cell);
    }
    t[key] = cells;
  }
  return t;
}

struct WhoTables {
  std::map<std::string, std::string> step1;               // display -> "middle left"
  std::map<std::string, std::vector<std::string>> step2; // label -> list
};

/// Reads the two Who tables from the manual's '- "KEY": value' lines.
inline WhoTables who_tables(const std::string& manual) {
  WhoTables t;
  std::istringstream in(manual);
  std::string line;
  int section = 0;
  while (std::getline(in, line)) {
    if (line.rfind("Step 1:", 0) == 0) section = 1;
    if (line.rfind("Step 2:", 0) == 0) section = 2;
    if (line.rfind("- \"", 0) != 0) continue;
    const auto close = line.find("\": ");
    const std::string key = line.substr(3, close - 3);
    const std::string rest = line.substr(close + 3);
    if (section == 1) {
      std::string low = rest;
      for (auto& c : low) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      t.step1[key] = low;
    } else if (section == 2) {
      std::vector<std::string> items;
      std::size_t start = 0;
      while (start <= rest.size()) {
        const auto comma = rest.find(", ", start);
        items.push_back(rest.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
        if (comma == std::string::npos) break;
        start = comma + 2;
      }
      t.step2[key] = items;
    }
  }
  return t;
}

} // namespace oracle
