#pragma once

#include <filesystem>
#include <string>

#include "desenat/pointcloud.hpp"

namespace desenat {

// PCT v1: plain-text point cloud files.
//
//   line 1:   PCT v1 <N> <C>      C = 3, or 4 when a label column is present
//   lines 2+: N rows of C whitespace-separated decimal numbers
//
// '#' starts a comment line, blank lines are skipped, LF endings.
// With C = 4 the fourth column is the class label and must be the same
// integer on every row. Coordinates are written with the shortest decimal
// representation that reparses to the identical double, so a save/load
// round trip is exact.

PointCloud load_pointcloud(const std::filesystem::path& path);
void save_pointcloud(const PointCloud& pc, const std::filesystem::path& path);

// Dataset manifest: JSON {name, class_count, entries: [{path, label}]}.
// Entry paths are relative to the manifest's directory.
Dataset load_dataset(const std::filesystem::path& manifest_path);

// Writes one PCT file per sample under dir plus dir/<name>.manifest.json,
// and returns the manifest path.
std::filesystem::path save_dataset(const Dataset& ds, const std::filesystem::path& dir);

// Shortest decimal form of x that reparses bitwise equal.
std::string format_double(double x);

// Strict full-token parse; throws DataError on failure.
double parse_double(const std::string& token, const std::string& context);
long parse_long(const std::string& token, const std::string& context);

}  // namespace desenat
