// Copyright 2026 The pauliprop authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pauliprop/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "pauliprop/errors.hpp"
#include "pauliprop/rng.hpp"

namespace pauliprop {

std::vector<std::size_t> Graph::degrees() const {
  std::vector<std::size_t> deg(nodes, 0);
  for (const auto &[a, b] : edges) {
    ++deg[a];
    ++deg[b];
  }
  return deg;
}

Graph random_regular_graph(std::size_t nodes, std::size_t degree,
                           std::uint64_t seed) {
  if ((nodes * degree) % 2 != 0) {
    throw SchemaError("random_regular_graph: nodes * degree must be even");
  }
  if (nodes <= degree) {
    throw SchemaError("random_regular_graph: need nodes > degree");
  }
  constexpr int kRestartBudget = 10000;
  CounterRng rng(seed, /*stream=*/0x67726170);
  std::vector<std::uint32_t> stubs(nodes * degree);
  for (int attempt = 0; attempt < kRestartBudget; ++attempt) {
    for (std::size_t i = 0; i < stubs.size(); ++i) {
      stubs[i] = static_cast<std::uint32_t>(i / degree);
    }
    // Fisher-Yates; integer draws only.
    for (std::size_t i = stubs.size() - 1; i > 0; --i) {
      std::size_t j = rng.next_below(i + 1);
      std::swap(stubs[i], stubs[j]);
    }
    Graph g;
    g.nodes = nodes;
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      std::uint32_t a = stubs[i], b = stubs[i + 1];
      if (a == b) {
        ok = false;
        break;
      }
      if (a > b) std::swap(a, b);
      if (!seen.insert({a, b}).second) {
        ok = false;
        break;
      }
      g.edges.emplace_back(a, b);
    }
    if (!ok) continue;
    std::sort(g.edges.begin(), g.edges.end());
    for (std::size_t d : g.degrees()) {
      if (d != degree) {
        throw ResourceError("random_regular_graph: internal degree check "
                            "failed");
      }
    }
    return g;
  }
  throw ResourceError("random_regular_graph: restart budget (10^4) exhausted");
}

std::string format_graph(const Graph &g) {
  std::ostringstream out;
  for (const auto &[a, b] : g.edges) {
    out << a << ' ' << b << '\n';
  }
  return out.str();
}

Graph parse_graph(const std::string &text) {
  Graph g;
  std::istringstream in(text);
  std::string line;
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::uint32_t a, b;
    if (!(ls >> a >> b)) {
      throw SchemaError("graph: bad edge line: " + line);
    }
    if (a == b) throw SchemaError("graph: self-loop on node " +
                                  std::to_string(a));
    if (a > b) std::swap(a, b);
    if (!seen.insert({a, b}).second) {
      throw SchemaError("graph: duplicate edge " + std::to_string(a) + " " +
                        std::to_string(b));
    }
    g.edges.emplace_back(a, b);
    g.nodes = std::max<std::size_t>(g.nodes, std::max(a, b) + 1);
  }
  std::sort(g.edges.begin(), g.edges.end());
  return g;
}

}  // namespace pauliprop
