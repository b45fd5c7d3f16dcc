#include "faircut/result_document.hpp"

#include <json.hpp>

namespace faircut {

std::string ResultDocument::to_json(bool include_timing) const {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["schema"] = kResultSchema;
  doc["instance"] = {{"vertices", vertices},
                     {"edges", edges},
                     {"capacity_sum", capacity_sum},
                     {"source", source + 1},
                     {"sink", sink + 1}};
  doc["epsilon"] = epsilon;
  doc["seed"] = seed;
  doc["approximator"] = {
      {"descriptor", approximator}, {"rows", approximator_rows}, {"alpha", approximator_alpha}};
  std::vector<Vertex> ids;
  for (Vertex v : side) ids.push_back(v + 1);
  doc["cut"] = {{"side", ids}, {"value", cut_value}};
  doc["achieved_alpha"] = achieved_alpha ? ordered_json(*achieved_alpha) : ordered_json(nullptr);
  auto rows = ordered_json::array();
  for (const TraceRow& row : trace) {
    rows.push_back({{"index", row.index},
                    {"potential", row.potential},
                    {"branch", branch_name(row.branch)},
                    {"primal_gap", row.primal_gap},
                    {"next_potential", row.next_potential},
                    {"contraction_ok", row.contraction_ok},
                    {"solver_iterations", row.solver_iterations}});
  }
  doc["iterations"] = std::move(rows);
  doc["final_potential"] = final_potential;
  if (include_timing) doc["timing"] = {{"wall_clock_ms", wall_clock_ms}};
  return doc.dump(2) + "\n";
}

ResultDocument make_result_document(const CapacitatedGraph& g, Vertex s, Vertex t,
                                    const FairCutOptions& options, const FairCutResult& result,
                                    double wall_clock_ms) {
  ResultDocument doc;
  doc.vertices = g.vertex_count();
  doc.edges = g.edge_count();
  doc.capacity_sum = g.total_capacity();
  doc.source = s;
  doc.sink = t;
  doc.epsilon = options.epsilon;
  doc.seed = options.seed;
  doc.approximator = result.approximator;
  doc.approximator_rows = result.approximator_rows;
  doc.approximator_alpha = result.approximator_alpha;
  doc.side = result.cut.members();
  doc.cut_value = result.cut_value;
  doc.achieved_alpha = result.achieved_alpha;
  doc.trace = result.trace;
  doc.final_potential = result.final_potential;
  doc.wall_clock_ms = wall_clock_ms;
  return doc;
}

}  // namespace faircut
