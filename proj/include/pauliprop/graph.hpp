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

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace pauliprop {

/// Simple undirected graph, edges stored with the smaller endpoint first.
struct Graph {
  std::size_t nodes = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;

  std::vector<std::size_t> degrees() const;
};

/// Pairing-model generator with rejection of loops and multi-edges and full
/// restarts; deterministic for a fixed seed. Throws SchemaError on parity
/// violation and ResourceError when the restart budget (10^4) is exhausted.
Graph random_regular_graph(std::size_t nodes, std::size_t degree,
                           std::uint64_t seed);

/// Edge-list text format, one "i j" pair per line.
std::string format_graph(const Graph &g);
Graph parse_graph(const std::string &text);

}  // namespace pauliprop
