#include "faircut/generators.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "faircut/random.hpp"

namespace faircut {
namespace {

void check_size(Vertex n) {
  if (n < 2) throw std::invalid_argument("graph families need at least two vertices");
}

Capacity draw(Rng& rng, Capacity max_capacity) { return rng.uniform_int(1, std::max<Capacity>(1, max_capacity)); }

}  // namespace

CapacitatedGraph path_graph(Vertex n, Capacity max_capacity, std::uint64_t seed) {
  check_size(n);
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, draw(rng, max_capacity)});
  return CapacitatedGraph(n, edges);
}

CapacitatedGraph cycle_graph(Vertex n, Capacity max_capacity, std::uint64_t seed) {
  check_size(n);
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.push_back({v, (v + 1) % n, draw(rng, max_capacity)});
  if (n == 2) edges.pop_back();
  return CapacitatedGraph(n, edges);
}

CapacitatedGraph grid_graph(Vertex n, Capacity max_capacity, std::uint64_t seed) {
  check_size(n);
  Rng rng(seed);
  const auto width = static_cast<Vertex>(std::ceil(std::sqrt(static_cast<double>(n))));
  std::vector<Edge> edges;
  for (Vertex v = 0; v < n; ++v) {
    if ((v + 1) % width != 0 && v + 1 < n) edges.push_back({v, v + 1, draw(rng, max_capacity)});
    if (v + width < n) edges.push_back({v, v + width, draw(rng, max_capacity)});
  }
  return CapacitatedGraph(n, edges);
}

CapacitatedGraph random_connected_graph(Vertex n, EdgeId m, Capacity max_capacity, std::uint64_t seed) {
  check_size(n);
  Rng rng(seed);
  const auto most = static_cast<std::int64_t>(n) * (n - 1) / 2;
  const auto target = std::clamp<std::int64_t>(m, n - 1, most);
  std::set<std::pair<Vertex, Vertex>> used;
  std::vector<Edge> edges;
  auto add = [&](Vertex a, Vertex b) {
    auto key = std::minmax(a, b);
    if (a == b || !used.insert(key).second) return;
    edges.push_back({key.first, key.second, draw(rng, max_capacity)});
  };
  for (Vertex v = 1; v < n; ++v) add(static_cast<Vertex>(rng.uniform_int(0, v - 1)), v);
  while (static_cast<std::int64_t>(edges.size()) < target) {
    add(static_cast<Vertex>(rng.uniform_int(0, n - 1)), static_cast<Vertex>(rng.uniform_int(0, n - 1)));
  }
  return CapacitatedGraph(n, edges);
}

CapacitatedGraph family_graph(const std::string& family, Vertex n, Capacity max_capacity,
                              std::uint64_t seed) {
  if (family == "path") return path_graph(n, max_capacity, seed);
  if (family == "cycle") return cycle_graph(n, max_capacity, seed);
  if (family == "grid") return grid_graph(n, max_capacity, seed);
  if (family == "random") return random_connected_graph(n, 3 * n, max_capacity, seed);
  throw std::invalid_argument("unknown graph family: " + family);
}

}  // namespace faircut
