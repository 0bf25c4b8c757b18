#pragma once

#include <filesystem>
#include <iosfwd>

#include "objloc/sim/scenario.hpp"

namespace objloc::sim {

// Line-delimited SensorLog format, one record per line, space separated:
//
//   OBJLOC_LOG 1
//   META <ticks> <dt>
//   INIT <rx> <ry> <rtheta> <ox> <oy> <otheta>
//   GT <t> <rx> <ry> <rtheta> <ox> <oy> <otheta>
//   ODOM_R <t> <dx> <dy> <dtheta>
//   ODOM_O <t> <dx> <dy> <dtheta>
//   UWB <t> <range> <los:0|1>
//   SCAN <t> <n> <x1> <y1> ... <xn> <yn>
//
// Records are grouped by tick in the order above. See docs/formats.md.

void write_log(std::ostream& os, const SensorLog& log);

/// Throws ParseError on malformed input.
[[nodiscard]] SensorLog read_log(std::istream& is);

void save_log(const std::filesystem::path& path, const SensorLog& log);
[[nodiscard]] SensorLog load_log(const std::filesystem::path& path);

}  // namespace objloc::sim
