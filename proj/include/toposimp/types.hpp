#pragma once

#include <cstdint>

namespace toposimp {

using VertexId = std::uint32_t;
using TopoEdgeId = std::uint64_t;
using Weight = double;

inline constexpr VertexId kNoVertex = static_cast<VertexId>(-1);
inline constexpr TopoEdgeId kNoEdge = 0;

enum class VertexClass : std::uint8_t { Singular, Regular };

} // namespace toposimp
