#include "desenat/synthetic.hpp"

#include <cmath>

#include "desenat/errors.hpp"

namespace desenat {

namespace {

constexpr double kTwoPi = 6.283185307179586477;
constexpr double kJitterSigma = 0.02;

Vec3 on_sphere(RngStream& rng) {
  double cz = rng.uniform(-1.0, 1.0);
  double phi = rng.uniform(0.0, kTwoPi);
  double s = std::sqrt(std::max(0.0, 1.0 - cz * cz));
  return {s * std::cos(phi), s * std::sin(phi), cz};
}

Vec3 on_cube(RngStream& rng) {
  int face = static_cast<int>(rng.next_below(6));
  double u = rng.uniform(-1.0, 1.0);
  double v = rng.uniform(-1.0, 1.0);
  switch (face) {
    case 0: return {1.0, u, v};
    case 1: return {-1.0, u, v};
    case 2: return {u, 1.0, v};
    case 3: return {u, -1.0, v};
    case 4: return {u, v, 1.0};
    default: return {u, v, -1.0};
  }
}

Vec3 on_cylinder(RngStream& rng) {
  double t = rng.uniform(0.0, kTwoPi);
  double z = rng.uniform(-1.0, 1.0);
  return {std::cos(t), std::sin(t), z};
}

Vec3 on_cone(RngStream& rng) {
  double h = rng.uniform(0.0, 1.0);  // apex at z = 1
  double t = rng.uniform(0.0, kTwoPi);
  double r = 1.0 - h;
  return {r * std::cos(t), r * std::sin(t), 2.0 * h - 1.0};
}

Vec3 on_torus(RngStream& rng) {
  double u = rng.uniform(0.0, kTwoPi);
  double v = rng.uniform(0.0, kTwoPi);
  const double R = 1.0, r = 0.35;
  return {(R + r * std::cos(v)) * std::cos(u), (R + r * std::cos(v)) * std::sin(u),
          r * std::sin(v)};
}

Vec3 on_plane(RngStream& rng) {
  return {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0), 0.0};
}

Vec3 on_pyramid(RngStream& rng) {
  // Square base at z = 0, apex at (0, 0, 1.5); four triangular faces.
  int face = static_cast<int>(rng.next_below(4));
  const Vec3 apex{0.0, 0.0, 1.5};
  const Vec3 corners[4] = {{1, 1, 0}, {-1, 1, 0}, {-1, -1, 0}, {1, -1, 0}};
  const Vec3& a = corners[face];
  const Vec3& b = corners[(face + 1) % 4];
  double u = rng.next_double();
  double v = rng.next_double();
  if (u + v > 1.0) {  // fold back into the triangle
    u = 1.0 - u;
    v = 1.0 - v;
  }
  double w = 1.0 - u - v;
  return {w * apex.x + u * a.x + v * b.x, w * apex.y + u * a.y + v * b.y,
          w * apex.z + u * a.z + v * b.z};
}

Vec3 on_helix(RngStream& rng) {
  double t = rng.uniform(0.0, 2.0 * kTwoPi);  // two turns
  return {std::cos(t), std::sin(t), t / kTwoPi - 1.0};
}

Vec3 surface_point(int label, RngStream& rng) {
  switch (label) {
    case 0: return on_sphere(rng);
    case 1: return on_cube(rng);
    case 2: return on_cylinder(rng);
    case 3: return on_cone(rng);
    case 4: return on_torus(rng);
    case 5: return on_plane(rng);
    case 6: return on_pyramid(rng);
    default: return on_helix(rng);
  }
}

}  // namespace

const char* synthetic_class_name(int label) {
  static const char* names[kMaxSyntheticClasses] = {"sphere",  "cube",  "cylinder", "cone",
                                                    "torus",   "plane", "pyramid",  "helix"};
  if (label < 0 || label >= kMaxSyntheticClasses) return "unknown";
  return names[label];
}

Dataset gen_synthetic_dataset(int class_count, int samples_per_class, int points_per_sample,
                              RngSpec seed) {
  if (class_count < 2 || class_count > kMaxSyntheticClasses) {
    throw DataError("gen_synthetic_dataset: class_count must be in [2, " +
                    std::to_string(kMaxSyntheticClasses) + "], got " + std::to_string(class_count));
  }
  if (samples_per_class < 1 || points_per_sample < 1) {
    throw DataError("gen_synthetic_dataset: samples_per_class and points_per_sample must be >= 1");
  }
  Dataset ds;
  ds.name = "synthetic";
  ds.class_count = class_count;
  ds.samples.reserve(static_cast<size_t>(class_count) * samples_per_class);
  uint64_t sample_id = 0;
  for (int label = 0; label < class_count; ++label) {
    for (int s = 0; s < samples_per_class; ++s, ++sample_id) {
      RngStream rng(seed.child(sample_id));
      PointCloud pc;
      pc.label = label;
      pc.points.reserve(static_cast<size_t>(points_per_sample));
      for (int p = 0; p < points_per_sample; ++p) {
        Vec3 q = surface_point(label, rng);
        q.x += kJitterSigma * rng.normal();
        q.y += kJitterSigma * rng.normal();
        q.z += kJitterSigma * rng.normal();
        pc.points.push_back(q);
      }
      ds.samples.push_back(normalize_unit_cube(pc));
    }
  }
  return ds;
}

}  // namespace desenat
