#pragma once

#include "desenat/pointcloud.hpp"
#include "desenat/rng.hpp"

namespace desenat {

// Number of distinct parametric shape generators available as classes.
constexpr int kMaxSyntheticClasses = 8;

// Labeled desk-scale dataset: class k samples points on the k-th
// parametric surface (sphere, cube, cylinder, cone, torus, plane,
// pyramid, helix), adds small jitter, and normalizes to the unit cube.
// Deterministic under seed.
Dataset gen_synthetic_dataset(int class_count, int samples_per_class, int points_per_sample,
                              RngSpec seed);

const char* synthetic_class_name(int label);

}  // namespace desenat
