#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "faircut/driver.hpp"
#include "faircut/graph.hpp"

namespace faircut {

inline constexpr int kResultSchema = 1;

// JSON summary of one solve. Vertex ids are written 1-based, matching DIMACS.
struct ResultDocument {
  Vertex vertices = 0;
  EdgeId edges = 0;
  Capacity capacity_sum = 0;
  Vertex source = 0;  // 0-based in memory
  Vertex sink = 0;
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  std::string approximator;
  std::size_t approximator_rows = 0;
  double approximator_alpha = 1.0;
  std::vector<Vertex> side;  // 0-based, sorted
  double cut_value = 0.0;
  std::optional<double> achieved_alpha;
  std::vector<TraceRow> trace;
  double final_potential = 0.0;
  double wall_clock_ms = 0.0;

  // Without timing the output is a pure function of the inputs and seed.
  std::string to_json(bool include_timing = true) const;
};

ResultDocument make_result_document(const CapacitatedGraph& g, Vertex s, Vertex t,
                                    const FairCutOptions& options, const FairCutResult& result,
                                    double wall_clock_ms);

}  // namespace faircut
