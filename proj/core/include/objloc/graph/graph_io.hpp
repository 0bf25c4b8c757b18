#pragma once

#include <filesystem>
#include <iosfwd>

#include "objloc/graph/pose_graph.hpp"

namespace objloc::graph {

// Line-based pose graph format. Agents are written as `robot` / `object`,
// numbers in shortest round-trip form:
//
//   VERTEX <agent> <t> <x> <y> <theta>
//   FIX <agent> <t>
//   EDGE robot_odom|object_odom <agent> <t-1> <agent> <t> <dx> <dy> <dtheta> <i11> <i12> <i13> <i22> <i23> <i33>
//   EDGE uwb_range robot <t> object <t> <r> <i11>
//   EDGE lidar_position robot <t> object <t> <x> <y> <i11> <i12> <i22>
//   EDGE lidar_direction robot <t> object <t> <theta> <i11>
//
// Vertices come first in node order, then FIX lines, then edges in insertion
// order. Reading a written graph reproduces it exactly.

void write_graph(std::ostream& os, const PoseGraph& graph);
[[nodiscard]] PoseGraph read_graph(std::istream& is);

void save_graph(const std::filesystem::path& path, const PoseGraph& graph);
[[nodiscard]] PoseGraph load_graph(const std::filesystem::path& path);

}  // namespace objloc::graph
