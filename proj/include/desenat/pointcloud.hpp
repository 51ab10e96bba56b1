#pragma once

#include <optional>
#include <string>
#include <vector>

namespace desenat {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool operator==(const Vec3&) const = default;
};

// One sample: an ordered list of 3-D points plus an optional class label.
// Order matters only for file round-trips and index-based bookkeeping;
// the classifier itself is permutation invariant.
struct PointCloud {
  std::vector<Vec3> points;
  std::optional<int> label;

  int size() const { return static_cast<int>(points.size()); }
  bool operator==(const PointCloud&) const = default;
};

struct Dataset {
  std::string name;
  int class_count = 0;
  std::vector<PointCloud> samples;

  int size() const { return static_cast<int>(samples.size()); }
};

// True when every coordinate is finite and the cloud is non-empty.
bool is_valid_cloud(const PointCloud& pc);

// Throws DataError when is_valid_cloud fails.
void require_valid_cloud(const PointCloud& pc, const std::string& context);

// Per-axis affine map onto [0, 1]. A degenerate axis (max == min) maps
// to 0.5. Relative geometry is preserved up to per-axis scale.
PointCloud normalize_unit_cube(const PointCloud& pc);

// Throws DataError when a label is missing or >= class_count.
void validate_dataset(const Dataset& ds);

}  // namespace desenat
