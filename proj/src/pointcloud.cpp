#include "desenat/pointcloud.hpp"

#include <cmath>
#include <limits>

#include "desenat/errors.hpp"

namespace desenat {

bool is_valid_cloud(const PointCloud& pc) {
  if (pc.points.empty()) return false;
  for (const Vec3& p : pc.points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) return false;
  }
  return true;
}

void require_valid_cloud(const PointCloud& pc, const std::string& context) {
  if (pc.points.empty()) throw DataError(context + ": empty point cloud");
  for (size_t i = 0; i < pc.points.size(); ++i) {
    const Vec3& p = pc.points[i];
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw DataError(context + ": non-finite coordinate at point " + std::to_string(i));
    }
  }
}

PointCloud normalize_unit_cube(const PointCloud& pc) {
  require_valid_cloud(pc, "normalize_unit_cube");
  double lo[3], hi[3];
  for (int a = 0; a < 3; ++a) {
    lo[a] = std::numeric_limits<double>::infinity();
    hi[a] = -std::numeric_limits<double>::infinity();
  }
  for (const Vec3& p : pc.points) {
    const double c[3] = {p.x, p.y, p.z};
    for (int a = 0; a < 3; ++a) {
      lo[a] = std::min(lo[a], c[a]);
      hi[a] = std::max(hi[a], c[a]);
    }
  }
  PointCloud out;
  out.label = pc.label;
  out.points.reserve(pc.points.size());
  for (const Vec3& p : pc.points) {
    const double c[3] = {p.x, p.y, p.z};
    double m[3];
    for (int a = 0; a < 3; ++a) {
      const double span = hi[a] - lo[a];
      m[a] = span > 0.0 ? (c[a] - lo[a]) / span : 0.5;
    }
    out.points.push_back(Vec3{m[0], m[1], m[2]});
  }
  return out;
}

void validate_dataset(const Dataset& ds) {
  if (ds.class_count <= 0) throw DataError("dataset '" + ds.name + "': class_count must be positive");
  for (int i = 0; i < ds.size(); ++i) {
    const PointCloud& pc = ds.samples[i];
    require_valid_cloud(pc, "dataset '" + ds.name + "' sample " + std::to_string(i));
    if (!pc.label.has_value()) {
      throw DataError("dataset '" + ds.name + "' sample " + std::to_string(i) + ": missing label");
    }
    if (*pc.label < 0 || *pc.label >= ds.class_count) {
      throw DataError("dataset '" + ds.name + "' sample " + std::to_string(i) +
                      ": label " + std::to_string(*pc.label) + " out of range [0, " +
                      std::to_string(ds.class_count) + ")");
    }
  }
}

}  // namespace desenat
