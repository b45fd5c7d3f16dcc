#include "faircut/approximator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include <json.hpp>

#include "faircut/errors.hpp"
#include "faircut/oracles.hpp"
#include "faircut/random.hpp"

namespace faircut {
namespace {

// Boundary capacity of a sorted member list, via the incidence lists.
Capacity boundary_capacity(const CapacitatedGraph& g, std::span<const Vertex> members,
                           std::vector<std::uint8_t>& scratch) {
  for (Vertex v : members) scratch[v] = 1;
  Capacity total = 0;
  for (Vertex v : members) {
    for (const Incidence& inc : g.incident(v)) {
      if (!scratch[inc.neighbor]) total += g.capacity(inc.out_arc);
    }
  }
  for (Vertex v : members) scratch[v] = 0;
  return total;
}

struct UnionFind {
  explicit UnionFind(Vertex n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  Vertex find(Vertex v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  }
  bool unite(Vertex a, Vertex b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
  std::vector<Vertex> parent;
};

struct SpanningTree {
  std::vector<Vertex> order;
  std::vector<Vertex> parent;
  std::vector<Vertex> preorder;          // DFS preorder
  std::vector<std::int64_t> enter, exit;  // subtree of v = preorder[enter, exit)
};

SpanningTree max_spanning_tree(const CapacitatedGraph& g, std::optional<std::uint64_t> seed) {
  const Vertex n = g.vertex_count();
  std::vector<double> key(g.edge_count());
  Rng rng(seed.value_or(0));
  for (EdgeId e = 0; e < g.edge_count(); ++e) {
    key[e] = static_cast<double>(g.edge(e).capacity);
    if (seed) key[e] *= 0.5 + rng.unit();
  }
  std::vector<EdgeId> by_weight(g.edge_count());
  std::iota(by_weight.begin(), by_weight.end(), 0);
  std::stable_sort(by_weight.begin(), by_weight.end(),
                   [&](EdgeId a, EdgeId b) { return key[a] > key[b]; });

  UnionFind forest(n);
  std::vector<std::vector<Vertex>> adjacent(n);
  for (EdgeId e : by_weight) {
    const Edge& edge = g.edge(e);
    if (forest.unite(edge.u, edge.v)) {
      adjacent[edge.u].push_back(edge.v);
      adjacent[edge.v].push_back(edge.u);
    }
  }
  for (auto& list : adjacent) std::sort(list.begin(), list.end());

  SpanningTree tree;
  tree.parent.assign(n, -1);
  std::vector<std::uint8_t> seen(n, 0);
  tree.order.push_back(0);
  seen[0] = 1;
  for (std::size_t i = 0; i < tree.order.size(); ++i) {
    const Vertex v = tree.order[i];
    for (Vertex w : adjacent[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        tree.parent[w] = v;
        tree.order.push_back(w);
      }
    }
  }

  tree.enter.assign(n, 0);
  tree.exit.assign(n, 0);
  std::vector<std::pair<Vertex, std::size_t>> stack{{0, 0}};
  tree.enter[0] = 0;
  tree.preorder.push_back(0);
  while (!stack.empty()) {
    auto& [v, next] = stack.back();
    if (next < adjacent[v].size()) {
      const Vertex w = adjacent[v][next++];
      if (w == tree.parent[v]) continue;
      tree.enter[w] = static_cast<std::int64_t>(tree.preorder.size());
      tree.preorder.push_back(w);
      stack.push_back({w, 0});
    } else {
      tree.exit[v] = static_cast<std::int64_t>(tree.preorder.size());
      stack.pop_back();
    }
  }
  return tree;
}

std::uint64_t mix(std::uint64_t x) { return derive_seed(x, 1); }

class RowDeduplicator {
 public:
  explicit RowDeduplicator(Vertex n) : vertex_key_(n) {
    for (Vertex v = 0; v < n; ++v) vertex_key_[v] = mix(static_cast<std::uint64_t>(v) + 1);
  }

  // Row index of an identical existing row, or -1.
  std::int64_t find(const CutMatrix& m, std::span<const Vertex> members, std::uint64_t& key) const {
    key = members.size();
    for (Vertex v : members) key ^= vertex_key_[v];
    auto [lo, hi] = index_.equal_range(key);
    for (auto it = lo; it != hi; ++it) {
      auto existing = m.row(it->second);
      if (std::equal(existing.begin(), existing.end(), members.begin(), members.end())) {
        return static_cast<std::int64_t>(it->second);
      }
    }
    return -1;
  }
  void insert(std::uint64_t key, std::size_t row) { index_.emplace(key, row); }

 private:
  std::vector<std::uint64_t> vertex_key_;
  std::unordered_multimap<std::uint64_t, std::size_t> index_;
};

}  // namespace

void CutMatrix::append_row(const CapacitatedGraph& g, std::span<const Vertex> sorted_members) {
  thread_local std::vector<std::uint8_t> scratch;
  scratch.assign(g.vertex_count(), 0);
  if (sorted_members.empty() || sorted_members.size() >= static_cast<std::size_t>(vertex_count_)) {
    throw std::invalid_argument("approximator row must be a proper nonempty subset");
  }
  const Capacity boundary = boundary_capacity(g, sorted_members, scratch);
  if (boundary <= 0) {
    throw std::invalid_argument("approximator row has zero cut capacity");
  }
  members_.insert(members_.end(), sorted_members.begin(), sorted_members.end());
  offsets_.push_back(static_cast<std::int64_t>(members_.size()));
  weights_.push_back(1.0 / static_cast<double>(boundary));
}

void CutMatrix::build_columns() {
  column_offsets_.assign(vertex_count_ + 1, 0);
  for (Vertex v : members_) ++column_offsets_[v + 1];
  for (Vertex v = 0; v < vertex_count_; ++v) column_offsets_[v + 1] += column_offsets_[v];
  column_rows_.assign(members_.size(), 0);
  std::vector<std::int64_t> cursor(column_offsets_.begin(), column_offsets_.end() - 1);
  for (std::size_t r = 0; r < row_count(); ++r) {
    for (Vertex v : row(r)) column_rows_[cursor[v]++] = static_cast<std::uint32_t>(r);
  }
}

CutMatrix CutMatrix::from_rows(const CapacitatedGraph& g,
                               const std::vector<std::vector<Vertex>>& rows,
                               std::string descriptor) {
  CutMatrix m;
  m.vertex_count_ = g.vertex_count();
  m.descriptor_ = std::move(descriptor);
  for (const auto& r : rows) {
    std::vector<Vertex> sorted(r);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (Vertex v : sorted) {
      if (v < 0 || v >= m.vertex_count_) throw std::invalid_argument("row vertex out of range");
    }
    m.append_row(g, sorted);
  }
  m.build_columns();
  return m;
}

CutMatrix CutMatrix::from_weighted_rows(Vertex vertex_count,
                                        const std::vector<std::vector<Vertex>>& rows,
                                        const std::vector<double>& weights, std::string descriptor) {
  if (rows.size() != weights.size()) throw std::invalid_argument("one weight per row required");
  CutMatrix m;
  m.vertex_count_ = vertex_count;
  m.descriptor_ = std::move(descriptor);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    std::vector<Vertex> sorted(rows[r]);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (Vertex v : sorted) {
      if (v < 0 || v >= vertex_count) throw std::invalid_argument("row vertex out of range");
    }
    if (sorted.empty() || sorted.size() >= static_cast<std::size_t>(vertex_count)) {
      throw std::invalid_argument("approximator row must be a proper nonempty subset");
    }
    if (!(weights[r] > 0.0) || !std::isfinite(weights[r])) {
      throw std::invalid_argument("approximator row weight must be finite and positive");
    }
    m.members_.insert(m.members_.end(), sorted.begin(), sorted.end());
    m.offsets_.push_back(static_cast<std::int64_t>(m.members_.size()));
    m.weights_.push_back(weights[r]);
  }
  m.build_columns();
  return m;
}

void CutMatrix::apply(std::span<const double> x, std::span<double> out) const {
  if (!trees_.empty()) {
    thread_local std::vector<double> acc;
    for (const RootedTree& tree : trees_) {
      acc.assign(x.begin(), x.end());
      for (std::size_t i = tree.order.size(); i-- > 1;) {
        const Vertex v = tree.order[i];
        acc[tree.parent[v]] += acc[v];
        if (tree.row[v] >= 0) out[tree.row[v]] = weights_[tree.row[v]] * acc[v];
      }
    }
    return;
  }
  for (std::size_t r = 0; r < row_count(); ++r) {
    double total = 0.0;
    for (Vertex v : row(r)) total += x[v];
    out[r] = weights_[r] * total;
  }
}

std::vector<double> CutMatrix::apply(const Demand& d) const {
  std::vector<double> out(row_count(), 0.0);
  apply(d.values(), out);
  return out;
}

void CutMatrix::apply_transpose(std::span<const double> y, std::span<double> out) const {
  std::fill(out.begin(), out.end(), 0.0);
  if (!trees_.empty()) {
    thread_local std::vector<double> acc;
    for (const RootedTree& tree : trees_) {
      acc.assign(vertex_count_, 0.0);
      for (std::size_t i = 1; i < tree.order.size(); ++i) {
        const Vertex v = tree.order[i];
        const std::int64_t r = tree.row[v];
        acc[v] = acc[tree.parent[v]] + (r >= 0 ? y[r] * weights_[r] : 0.0);
        out[v] += acc[v];
      }
    }
    return;
  }
  for (std::size_t r = 0; r < row_count(); ++r) {
    const double scaled = y[r] * weights_[r];
    if (scaled == 0.0) continue;
    for (Vertex v : row(r)) out[v] += scaled;
  }
}

double CutMatrix::congestion_estimate(const Demand& d) const {
  double worst = 0.0;
  for (double x : apply(d)) worst = std::max(worst, std::abs(x));
  return worst;
}

void CutMatrix::set_alpha(double alpha) {
  if (!(alpha >= 1.0) || !std::isfinite(alpha)) {
    throw std::invalid_argument("approximator alpha must be finite and >= 1");
  }
  alpha_ = alpha;
}

std::string CutMatrix::to_json() const {
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["index_base"] = 0;
  doc["vertices"] = vertex_count_;
  doc["descriptor"] = descriptor_;
  doc["exact"] = exact_;
  doc["alpha"] = alpha_ ? nlohmann::ordered_json(*alpha_) : nlohmann::ordered_json(nullptr);
  auto rows = nlohmann::ordered_json::array();
  for (std::size_t r = 0; r < row_count(); ++r) {
    auto span = row(r);
    rows.push_back({{"cut", std::vector<Vertex>(span.begin(), span.end())}, {"weight", weights_[r]}});
  }
  doc["rows"] = std::move(rows);
  return doc.dump();
}

CutMatrix CutMatrix::from_json(const CapacitatedGraph& g, const std::string& text) {
  const auto doc = nlohmann::json::parse(text);
  if (doc.at("schema").get<int>() != 1) throw std::invalid_argument("unsupported cut matrix schema");
  if (doc.at("vertices").get<Vertex>() != g.vertex_count()) {
    throw std::invalid_argument("cut matrix vertex count does not match the graph");
  }
  std::vector<std::vector<Vertex>> rows;
  for (const auto& row : doc.at("rows")) rows.push_back(row.at("cut").get<std::vector<Vertex>>());
  CutMatrix m = from_rows(g, rows, doc.at("descriptor").get<std::string>());
  m.exact_ = doc.value("exact", false);
  if (!doc.at("alpha").is_null()) m.set_alpha(doc.at("alpha").get<double>());
  return m;
}

CutMatrix build_exhaustive(const CapacitatedGraph& g) {
  const Vertex n = g.vertex_count();
  if (n < 2 || n > 20) throw std::invalid_argument("exhaustive approximator needs 2 <= n <= 20");
  require_connected(g);

  CutMatrix m;
  m.vertex_count_ = n;
  m.descriptor_ = "exhaustive";
  const std::uint32_t subsets = std::uint32_t{1} << (n - 1);
  std::vector<Vertex> members;
  for (std::uint32_t mask = 0; mask + 1 < subsets; ++mask) {
    members.assign(1, 0);
    for (Vertex v = 1; v < n; ++v) {
      if (mask & (std::uint32_t{1} << (v - 1))) members.push_back(v);
    }
    m.append_row(g, members);
  }
  m.build_columns();
  m.exact_ = true;
  m.alpha_ = 1.0;
  return m;
}

CutMatrix CutMatrix::from_trees(const CapacitatedGraph& g,
                                const std::vector<std::optional<std::uint64_t>>& seeds,
                                std::string descriptor) {
  require_connected(g);
  if (g.vertex_count() < 2) throw std::invalid_argument("approximator needs at least two vertices");

  CutMatrix m;
  m.vertex_count_ = g.vertex_count();
  m.descriptor_ = std::move(descriptor);
  RowDeduplicator dedup(g.vertex_count());
  std::vector<Vertex> members;
  for (const auto& seed : seeds) {
    const SpanningTree tree = max_spanning_tree(g, seed);
    RootedTree rooted{tree.order, tree.parent, std::vector<std::int64_t>(g.vertex_count(), -1)};
    for (Vertex v : tree.order) {
      if (v == 0) continue;
      members.assign(tree.preorder.begin() + tree.enter[v], tree.preorder.begin() + tree.exit[v]);
      std::sort(members.begin(), members.end());
      std::uint64_t key = 0;
      if (dedup.find(m, members, key) >= 0) continue;
      dedup.insert(key, m.row_count());
      rooted.row[v] = static_cast<std::int64_t>(m.row_count());
      m.append_row(g, members);
    }
    m.trees_.push_back(std::move(rooted));
  }
  m.build_columns();
  return m;
}

CutMatrix build_tree(const CapacitatedGraph& g, std::optional<std::uint64_t> seed) {
  return CutMatrix::from_trees(g, {seed}, "tree");
}

CutMatrix build_multi_tree(const CapacitatedGraph& g, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("multi-tree approximator needs at least one tree");
  std::vector<std::optional<std::uint64_t>> seeds;
  for (int i = 0; i < count; ++i) seeds.emplace_back(derive_seed(seed, static_cast<std::uint64_t>(i)));
  return CutMatrix::from_trees(g, seeds, "multitree:" + std::to_string(count));
}

double measure_alpha(const CutMatrix& r, const CapacitatedGraph& g, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("measure_alpha needs at least one trial");
  const Vertex n = g.vertex_count();
  Rng rng(seed);
  double worst = 1.0;
  for (int trial = 0; trial < trials; ++trial) {
    Demand d(n);
    if (trial % 2 == 0) {
      const auto s = static_cast<Vertex>(rng.uniform_int(0, n - 1));
      auto t = static_cast<Vertex>(rng.uniform_int(0, n - 2));
      if (t >= s) ++t;
      d[s] = 1.0;
      d[t] = -1.0;
    } else {
      const auto support = static_cast<Vertex>(rng.uniform_int(2, std::min<Vertex>(n, 5)));
      std::vector<Vertex> picked;
      while (static_cast<Vertex>(picked.size()) < support) {
        const auto v = static_cast<Vertex>(rng.uniform_int(0, n - 1));
        if (std::find(picked.begin(), picked.end(), v) == picked.end()) picked.push_back(v);
      }
      double total = 0.0;
      for (std::size_t i = 0; i + 1 < picked.size(); ++i) {
        d[picked[i]] = static_cast<double>(rng.uniform_int(-10, 10));
        total += d[picked[i]];
      }
      d[picked.back()] = -total;
    }
    if (d.is_zero()) continue;
    const double opt = min_congestion_routing(g, d).opt;
    const double estimate = r.congestion_estimate(d);
    if (estimate <= 0.0) {
      if (opt > 0.0) return std::numeric_limits<double>::infinity();
      continue;
    }
    const double ratio = opt / estimate;
    if (ratio > 1.0 + 1e-9) worst = std::max(worst, ratio);
  }
  return worst;
}

double calibrate_alpha(CutMatrix& r, const CapacitatedGraph& g, int trials, std::uint64_t seed) {
  if (r.exact()) {
    r.set_alpha(1.0);
    return 1.0;
  }
  const double measured = measure_alpha(r, g, trials, seed);
  if (!std::isfinite(measured)) {
    throw std::runtime_error("approximator " + r.descriptor() +
                             " misses a sampled demand entirely (alpha = inf)");
  }
  r.set_alpha(2.0 * measured);
  return 2.0 * measured;
}

std::vector<double> operator_row_norms(const CutMatrix& r, const ArcCapacityView& view) {
  const CapacitatedGraph& g = view.graph();
  std::vector<std::uint8_t> inside(g.vertex_count(), 0);
  std::vector<double> norms(r.row_count(), 0.0);
  for (std::size_t row = 0; row < r.row_count(); ++row) {
    auto members = r.row(row);
    for (Vertex v : members) inside[v] = 1;
    double total = 0.0;
    for (Vertex v : members) {
      for (const Incidence& inc : g.incident(v)) {
        if (inside[inc.neighbor]) continue;
        total += view.capacity(inc.out_arc) + view.capacity(reverse_arc(inc.out_arc));
      }
    }
    for (Vertex v : members) inside[v] = 0;
    norms[row] = r.weight(row) * total;
  }
  return norms;
}

}  // namespace faircut
