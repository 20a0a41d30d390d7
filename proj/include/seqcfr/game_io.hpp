// Copyright 2026 The seqcfr Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>

#include "json.hpp"
#include "seqcfr/errors.hpp"
#include "seqcfr/game.hpp"

// Game files are line-oriented JSON. The first line is a header
//   {"players":2,"name":"..."}
// and every following non-blank line is one node
//   {"id":3,"kind":"decision","parent":1,"label_from_parent":"b",
//    "player":2,"infoset":"2:Q:b"}
// with "player"/"infoset" present exactly on decision nodes, "payoff" (player
// 1's payoff) exactly on terminals, and "prob" exactly on children of chance
// nodes. Ids are dense from 0; the root is id 0 with a null parent. A node's
// children are ordered by id. Unknown fields are rejected.

namespace seqcfr {

namespace internal {

using Json = nlohmann::json;

inline std::optional<NodeKind> ParseNodeKind(std::string_view s) {
  if (s == "chance") return NodeKind::kChance;
  if (s == "decision") return NodeKind::kDecision;
  if (s == "terminal") return NodeKind::kTerminal;
  return std::nullopt;
}

struct LineParser {
  int line = 0;

  [[noreturn]] void Fail(const std::string& what, int position = 1) const {
    throw ParseError(what, line, position);
  }

  Json Parse(const std::string& text) const {
    try {
      return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      Fail(std::string("malformed JSON: ") + e.what(), static_cast<int>(e.byte));
    }
  }

  void RejectUnknown(const Json& obj, const std::set<std::string>& allowed) const {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (!allowed.count(it.key())) Fail("unknown field \"" + it.key() + "\"");
    }
  }

  template <typename T>
  T Get(const Json& obj, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end()) Fail(std::string("missing field \"") + key + "\"");
    try {
      return it->get<T>();
    } catch (const nlohmann::json::exception&) {
      Fail(std::string("field \"") + key + "\" has the wrong type");
    }
  }

  int GetInt(const Json& obj, const char* key) const {
    auto it = obj.find(key);
    if (it == obj.end()) Fail(std::string("missing field \"") + key + "\"");
    if (!it->is_number_integer()) Fail(std::string("field \"") + key + "\" must be an integer");
    return it->get<int>();
  }
};

}  // namespace internal

inline std::string SaveGame(const Game& game) {
  using Json = nlohmann::ordered_json;
  std::string out;
  out += Json{{"players", Game::kNumPlayers}, {"name", game.name}}.dump();
  out += '\n';
  for (int id = 0; id < game.num_nodes(); ++id) {
    const GameNode& node = game.nodes[id];
    Json line;
    line["id"] = id;
    line["kind"] = NodeKindName(node.kind);
    line["parent"] = node.parent == kNoNode ? Json(nullptr) : Json(node.parent);
    line["label_from_parent"] = node.label;
    if (node.kind == NodeKind::kDecision) {
      line["player"] = node.player;
      line["infoset"] = game.infosets.at(node.infoset);
    }
    if (node.parent != kNoNode && game.nodes[node.parent].kind == NodeKind::kChance) {
      line["prob"] = node.prob;
    }
    if (node.kind == NodeKind::kTerminal) line["payoff"] = node.payoff;
    out += line.dump();
    out += '\n';
  }
  return out;
}

// Parses and validates a game. Throws ParseError for malformed text and
// ValidationError when the parsed game breaks an invariant.
inline Game LoadGame(std::string_view text) {
  using internal::Json;
  internal::LineParser p;
  Game game;
  bool have_header = false;
  std::vector<std::pair<int, Json>> node_lines;

  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++p.line;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (raw.find_first_not_of(" \t") == std::string::npos) continue;
    Json obj = p.Parse(raw);
    if (!obj.is_object()) p.Fail("expected a JSON object");
    if (!have_header) {
      p.RejectUnknown(obj, {"players", "name"});
      if (p.GetInt(obj, "players") != Game::kNumPlayers) p.Fail("only two-player games are supported");
      game.name = p.Get<std::string>(obj, "name");
      have_header = true;
      continue;
    }
    node_lines.emplace_back(p.line, std::move(obj));
  }
  if (!have_header) throw ParseError("missing header line", p.line + 1, 1);
  if (node_lines.empty()) throw ParseError("game has no nodes", p.line + 1, 1);

  // First pass: fields that do not depend on other nodes.
  game.nodes.resize(node_lines.size());
  for (size_t i = 0; i < node_lines.size(); ++i) {
    const auto& [line, obj] = node_lines[i];
    p.line = line;
    p.RejectUnknown(obj, {"id", "kind", "parent", "label_from_parent", "player",
                          "infoset", "prob", "payoff"});
    if (p.GetInt(obj, "id") != static_cast<int>(i)) {
      p.Fail("node ids must be dense and in order; expected " + std::to_string(i));
    }
    GameNode& node = game.nodes[i];
    const auto kind = internal::ParseNodeKind(p.Get<std::string>(obj, "kind"));
    if (!kind) p.Fail("unknown node kind");
    node.kind = *kind;

    auto parent = obj.find("parent");
    if (parent == obj.end()) p.Fail("missing field \"parent\"");
    if (parent->is_null()) {
      if (i != 0) p.Fail("only the root may have a null parent");
      node.parent = kNoNode;
    } else {
      if (!parent->is_number_integer()) p.Fail("field \"parent\" must be an integer or null");
      node.parent = parent->get<int>();
      if (i == 0) p.Fail("the root must have a null parent");
      if (node.parent < 0 || node.parent >= static_cast<int>(node_lines.size())) {
        p.Fail("parent id out of range");
      }
    }
    node.label = p.Get<std::string>(obj, "label_from_parent");

    const bool is_decision = node.kind == NodeKind::kDecision;
    if (obj.contains("player") != is_decision || obj.contains("infoset") != is_decision) {
      p.Fail("\"player\" and \"infoset\" are required on decision nodes only");
    }
    if (is_decision) {
      node.player = p.GetInt(obj, "player");
      node.infoset = game.InternInfoset(p.Get<std::string>(obj, "infoset"));
    }
    const bool is_terminal = node.kind == NodeKind::kTerminal;
    if (obj.contains("payoff") != is_terminal) p.Fail("\"payoff\" is required on terminal nodes only");
    if (is_terminal) node.payoff = p.Get<double>(obj, "payoff");
  }

  // Second pass: links and chance probabilities.
  for (size_t i = 0; i < node_lines.size(); ++i) {
    const auto& [line, obj] = node_lines[i];
    p.line = line;
    GameNode& node = game.nodes[i];
    const bool chance_child =
        node.parent != kNoNode && game.nodes[node.parent].kind == NodeKind::kChance;
    if (obj.contains("prob") != chance_child) p.Fail("\"prob\" is required on chance outcomes only");
    if (chance_child) node.prob = p.Get<double>(obj, "prob");
    if (node.parent != kNoNode) game.nodes[node.parent].children.push_back(static_cast<int>(i));
  }

  if (auto report = ValidateGame(game); !report) throw ValidationError(report.message);
  return game;
}

inline Game LoadGameFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open game file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return LoadGame(buf.str());
}

}  // namespace seqcfr
