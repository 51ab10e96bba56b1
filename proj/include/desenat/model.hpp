#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "desenat/pointcloud.hpp"
#include "desenat/rng.hpp"

namespace desenat {

// Per-point MLP (3 -> h1 -> h2, tanh) followed by a max-pool over points
// and a classifier head (h2 -> h3 -> classes). Max pooling makes the
// forward pass exactly permutation invariant and lets the network score
// point subsets of any size N >= 1.
struct ModelShape {
  int h1 = 32;
  int h2 = 64;
  int h3 = 32;
  int classes = 0;

  bool operator==(const ModelShape&) const = default;
};

struct Model {
  ModelShape shape;
  // Row-major [out][in] weight matrices and bias vectors.
  std::vector<double> w1, b1;  // h1 x 3, h1
  std::vector<double> w2, b2;  // h2 x h1, h2
  std::vector<double> w3, b3;  // h3 x h2, h3
  std::vector<double> w4, b4;  // classes x h3, classes

  static Model init(ModelShape shape, RngSpec seed);
  int parameter_count() const;
  bool operator==(const Model&) const = default;
};

struct ProbVector {
  std::vector<double> probs;  // softmax output, sums to 1

  int argmax() const;
};

// Everything the backward pass needs from one forward evaluation.
struct ForwardTrace {
  int n = 0;
  std::vector<double> a1;      // n x h1, tanh activations of layer 1
  std::vector<double> a2;      // n x h2, tanh activations of layer 2
  std::vector<int> pool_src;   // h2, point index selected by max pool
  std::vector<double> pooled;  // h2
  std::vector<double> a3;      // h3, tanh activations of the head
  std::vector<double> logits;  // classes
  ProbVector p;
};

ProbVector forward(const Model& m, const PointCloud& pc);
ForwardTrace forward_trace(const Model& m, const PointCloud& pc);

// Softmax over the head applied to pooled per-point features.
ProbVector head_forward(const Model& m, const std::vector<double>& pooled);

// Probability of class_idx for a point subset; the empty subset scores
// the uniform baseline 1/classes.
double target_score(const Model& m, const PointCloud& subset, int class_idx);

// Scores many subsets of one cloud against one model. The per-point
// features are computed once; a subset evaluation is then a pooled max
// over the selected rows plus one head pass, and permutation-sampling
// code can grow a prefix one point at a time.
class SubsetScorer {
 public:
  SubsetScorer(const Model& m, const PointCloud& pc, int class_idx);

  int point_count() const { return n_; }
  double empty_value() const;
  double full_value() const;

  double score_mask(uint32_t mask) const;  // bit i selects point i; n <= 32

  struct Prefix {
    std::vector<double> pooled;
    int count = 0;
  };
  Prefix empty_prefix() const;
  void extend(Prefix& prefix, int point) const;
  double score(const Prefix& prefix) const;

 private:
  const Model& model_;
  int class_idx_;
  int n_;
  std::vector<double> features_;  // n x h2
};

// Versioned text checkpoint; round-trips parameters exactly.
void save_model(const Model& m, const std::filesystem::path& path);
Model load_model(const std::filesystem::path& path);

}  // namespace desenat
