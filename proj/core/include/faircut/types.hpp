#pragma once

#include <cstdint>

namespace faircut {

using Vertex = std::int32_t;
using EdgeId = std::int32_t;
using ArcId = std::int32_t;
using Capacity = std::int64_t;

// Arc 2e runs edge e from its first endpoint to its second, arc 2e+1 back.
constexpr ArcId forward_arc(EdgeId e) { return 2 * e; }
constexpr ArcId backward_arc(EdgeId e) { return 2 * e + 1; }
constexpr EdgeId edge_of(ArcId a) { return a >> 1; }
constexpr ArcId reverse_arc(ArcId a) { return a ^ 1; }

}  // namespace faircut
