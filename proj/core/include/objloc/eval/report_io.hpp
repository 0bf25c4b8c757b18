#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string_view>

#include "objloc/eval/metrics.hpp"

namespace objloc::eval {

enum class Format { csv, jsonl };

[[nodiscard]] std::string_view to_string(Format f) noexcept;
[[nodiscard]] std::optional<Format> format_from_string(std::string_view s) noexcept;

// Report CSV:
//   tick,trans_error_m,rot_error_rad
//   <t>,<trans>,<rot>           one row per tick
//   #summary
//   stat,trans_error_m,rot_error_rad
//   mean,..  std,..  max,..     std is the population standard deviation
//
// Report JSONL: one {"tick","trans_error_m","rot_error_rad"} object per tick,
// then one {"stat","trans_error_m","rot_error_rad"} object per statistic.
//
// Sweep CSV: the first column is named after the swept parameter.
//   <param>,tick,trans_error_m,rot_error_rad
//   ...per-tick rows for every value...
//   #summary
//   <param>,stat,trans_error_m,rot_error_rad
//   ...mean/std/max rows for every value...
//
// Sweep JSONL: a {"parameter": name} line, then one object per value with the
// per-tick series and the statistics.
//
// An empty table yields only the header lines.

void write_report(std::ostream& os, const ErrorReport& report, Format format);
[[nodiscard]] ErrorReport read_report(std::istream& is, Format format);

void write_sweep(std::ostream& os, const SweepTable& table, Format format);
[[nodiscard]] SweepTable read_sweep(std::istream& is, Format format);

/// Throw IoError when the destination cannot be written.
void save_report(const std::filesystem::path& path, const ErrorReport& report, Format format);
void save_sweep(const std::filesystem::path& path, const SweepTable& table, Format format);
[[nodiscard]] ErrorReport load_report(const std::filesystem::path& path, Format format);
[[nodiscard]] SweepTable load_sweep(const std::filesystem::path& path, Format format);

}  // namespace objloc::eval
