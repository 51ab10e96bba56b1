#include "desenat/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "desenat/errors.hpp"
#include "desenat/io.hpp"

namespace desenat {

namespace {

// Uniform(-s, s) with s = 1/sqrt(fan_in); keeps tanh units unsaturated.
void fill_layer(std::vector<double>& w, std::vector<double>& b, int out, int in, RngStream& rng) {
  const double s = 1.0 / std::sqrt(static_cast<double>(in));
  w.resize(static_cast<size_t>(out) * in);
  b.assign(static_cast<size_t>(out), 0.0);
  for (double& v : w) v = rng.uniform(-s, s);
}

void affine(const std::vector<double>& w, const std::vector<double>& b, const double* in, int in_n,
            double* out, int out_n) {
  for (int o = 0; o < out_n; ++o) {
    double acc = b[static_cast<size_t>(o)];
    const double* row = w.data() + static_cast<size_t>(o) * in_n;
    for (int i = 0; i < in_n; ++i) acc += row[i] * in[i];
    out[o] = acc;
  }
}

void softmax(const double* logits, int c, double* out) {
  double mx = logits[0];
  for (int i = 1; i < c; ++i) mx = std::max(mx, logits[i]);
  double sum = 0.0;
  for (int i = 0; i < c; ++i) {
    out[i] = std::exp(logits[i] - mx);
    sum += out[i];
  }
  for (int i = 0; i < c; ++i) out[i] /= sum;
}

}  // namespace

Model Model::init(ModelShape shape, RngSpec seed) {
  if (shape.classes < 2) throw DataError("Model::init: need at least 2 classes");
  if (shape.h1 < 1 || shape.h2 < 1 || shape.h3 < 1) throw DataError("Model::init: hidden sizes must be >= 1");
  Model m;
  m.shape = shape;
  RngStream rng(seed);
  fill_layer(m.w1, m.b1, shape.h1, 3, rng);
  fill_layer(m.w2, m.b2, shape.h2, shape.h1, rng);
  fill_layer(m.w3, m.b3, shape.h3, shape.h2, rng);
  fill_layer(m.w4, m.b4, shape.classes, shape.h3, rng);
  return m;
}

int Model::parameter_count() const {
  return static_cast<int>(w1.size() + b1.size() + w2.size() + b2.size() + w3.size() + b3.size() +
                          w4.size() + b4.size());
}

int ProbVector::argmax() const {
  return static_cast<int>(std::max_element(probs.begin(), probs.end()) - probs.begin());
}

ProbVector head_forward(const Model& m, const std::vector<double>& pooled) {
  const ModelShape& s = m.shape;
  std::vector<double> z3(s.h3), a3(s.h3), logits(s.classes);
  affine(m.w3, m.b3, pooled.data(), s.h2, z3.data(), s.h3);
  for (int i = 0; i < s.h3; ++i) a3[i] = std::tanh(z3[i]);
  affine(m.w4, m.b4, a3.data(), s.h3, logits.data(), s.classes);
  ProbVector p;
  p.probs.resize(s.classes);
  softmax(logits.data(), s.classes, p.probs.data());
  return p;
}

ForwardTrace forward_trace(const Model& m, const PointCloud& pc) {
  require_valid_cloud(pc, "forward");
  const ModelShape& s = m.shape;
  const int n = pc.size();

  ForwardTrace t;
  t.n = n;
  t.a1.resize(static_cast<size_t>(n) * s.h1);
  t.a2.resize(static_cast<size_t>(n) * s.h2);
  t.pooled.assign(static_cast<size_t>(s.h2), -std::numeric_limits<double>::infinity());
  t.pool_src.assign(static_cast<size_t>(s.h2), -1);

  std::vector<double> z(std::max(s.h1, s.h2));
  for (int i = 0; i < n; ++i) {
    const double in[3] = {pc.points[i].x, pc.points[i].y, pc.points[i].z};
    double* a1 = t.a1.data() + static_cast<size_t>(i) * s.h1;
    affine(m.w1, m.b1, in, 3, z.data(), s.h1);
    for (int k = 0; k < s.h1; ++k) a1[k] = std::tanh(z[k]);
    double* a2 = t.a2.data() + static_cast<size_t>(i) * s.h2;
    affine(m.w2, m.b2, a1, s.h1, z.data(), s.h2);
    for (int k = 0; k < s.h2; ++k) {
      a2[k] = std::tanh(z[k]);
      // Strict > keeps the lowest point index on ties, so the gradient
      // route is deterministic.
      if (a2[k] > t.pooled[static_cast<size_t>(k)]) {
        t.pooled[static_cast<size_t>(k)] = a2[k];
        t.pool_src[static_cast<size_t>(k)] = i;
      }
    }
  }

  std::vector<double> z3(s.h3);
  affine(m.w3, m.b3, t.pooled.data(), s.h2, z3.data(), s.h3);
  t.a3.resize(s.h3);
  for (int i = 0; i < s.h3; ++i) t.a3[i] = std::tanh(z3[i]);
  t.logits.resize(s.classes);
  affine(m.w4, m.b4, t.a3.data(), s.h3, t.logits.data(), s.classes);
  t.p.probs.resize(s.classes);
  softmax(t.logits.data(), s.classes, t.p.probs.data());
  return t;
}

ProbVector forward(const Model& m, const PointCloud& pc) {
  // Cheaper than forward_trace: no per-point activations kept.
  require_valid_cloud(pc, "forward");
  const ModelShape& s = m.shape;
  std::vector<double> pooled(static_cast<size_t>(s.h2), -std::numeric_limits<double>::infinity());
  std::vector<double> z(std::max(s.h1, s.h2)), a1(s.h1);
  for (const Vec3& pt : pc.points) {
    const double in[3] = {pt.x, pt.y, pt.z};
    affine(m.w1, m.b1, in, 3, z.data(), s.h1);
    for (int k = 0; k < s.h1; ++k) a1[k] = std::tanh(z[k]);
    affine(m.w2, m.b2, a1.data(), s.h1, z.data(), s.h2);
    for (int k = 0; k < s.h2; ++k) pooled[k] = std::max(pooled[k], std::tanh(z[k]));
  }
  return head_forward(m, pooled);
}

double target_score(const Model& m, const PointCloud& subset, int class_idx) {
  if (class_idx < 0 || class_idx >= m.shape.classes) {
    throw DataError("target_score: class " + std::to_string(class_idx) + " out of range [0, " +
                    std::to_string(m.shape.classes) + ")");
  }
  if (subset.points.empty()) return 1.0 / m.shape.classes;
  return forward(m, subset).probs[static_cast<size_t>(class_idx)];
}

SubsetScorer::SubsetScorer(const Model& m, const PointCloud& pc, int class_idx)
    : model_(m), class_idx_(class_idx), n_(pc.size()) {
  require_valid_cloud(pc, "SubsetScorer");
  if (class_idx < 0 || class_idx >= m.shape.classes) {
    throw DataError("SubsetScorer: class " + std::to_string(class_idx) + " out of range");
  }
  const ModelShape& s = m.shape;
  features_.resize(static_cast<size_t>(n_) * s.h2);
  std::vector<double> z(std::max(s.h1, s.h2)), a1(s.h1);
  for (int i = 0; i < n_; ++i) {
    const double in[3] = {pc.points[i].x, pc.points[i].y, pc.points[i].z};
    affine(m.w1, m.b1, in, 3, z.data(), s.h1);
    for (int k = 0; k < s.h1; ++k) a1[k] = std::tanh(z[k]);
    double* f = features_.data() + static_cast<size_t>(i) * s.h2;
    affine(m.w2, m.b2, a1.data(), s.h1, z.data(), s.h2);
    for (int k = 0; k < s.h2; ++k) f[k] = std::tanh(z[k]);
  }
}

double SubsetScorer::empty_value() const { return 1.0 / model_.shape.classes; }

double SubsetScorer::full_value() const {
  Prefix p = empty_prefix();
  for (int i = 0; i < n_; ++i) extend(p, i);
  return score(p);
}

double SubsetScorer::score_mask(uint32_t mask) const {
  Prefix p = empty_prefix();
  for (int i = 0; i < n_; ++i) {
    if (mask & (1u << i)) extend(p, i);
  }
  return score(p);
}

SubsetScorer::Prefix SubsetScorer::empty_prefix() const {
  Prefix p;
  p.pooled.assign(static_cast<size_t>(model_.shape.h2), -std::numeric_limits<double>::infinity());
  return p;
}

void SubsetScorer::extend(Prefix& prefix, int point) const {
  const int h2 = model_.shape.h2;
  const double* f = features_.data() + static_cast<size_t>(point) * h2;
  for (int k = 0; k < h2; ++k) prefix.pooled[static_cast<size_t>(k)] = std::max(prefix.pooled[static_cast<size_t>(k)], f[k]);
  ++prefix.count;
}

double SubsetScorer::score(const Prefix& prefix) const {
  if (prefix.count == 0) return empty_value();
  return head_forward(model_, prefix.pooled).probs[static_cast<size_t>(class_idx_)];
}

namespace {

void write_array(std::ofstream& out, const char* tag, const std::vector<double>& v) {
  out << tag;
  for (double x : v) out << ' ' << format_double(x);
  out << '\n';
}

std::vector<double> read_array(std::istream& in, const std::string& tag, size_t expect,
                               const std::filesystem::path& path) {
  std::string line;
  if (!std::getline(in, line)) throw DataError(path.string() + ": truncated, missing '" + tag + "'");
  std::istringstream ss(line);
  std::string got;
  ss >> got;
  if (got != tag) throw DataError(path.string() + ": expected '" + tag + "', got '" + got + "'");
  std::vector<double> v;
  v.reserve(expect);
  std::string tok;
  while (ss >> tok) v.push_back(parse_double(tok, path.string() + " " + tag));
  if (v.size() != expect) {
    throw DataError(path.string() + ": '" + tag + "' expects " + std::to_string(expect) +
                    " values, got " + std::to_string(v.size()));
  }
  return v;
}

}  // namespace

void save_model(const Model& m, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  out << "NET v1 " << m.shape.h1 << ' ' << m.shape.h2 << ' ' << m.shape.h3 << ' '
      << m.shape.classes << '\n';
  write_array(out, "w1", m.w1);
  write_array(out, "b1", m.b1);
  write_array(out, "w2", m.w2);
  write_array(out, "b2", m.b2);
  write_array(out, "w3", m.w3);
  write_array(out, "b3", m.b3);
  write_array(out, "w4", m.w4);
  write_array(out, "b4", m.b4);
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

Model load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");
  std::string magic, version;
  Model m;
  in >> magic >> version >> m.shape.h1 >> m.shape.h2 >> m.shape.h3 >> m.shape.classes;
  if (!in || magic != "NET" || version != "v1") {
    throw DataError(path.string() + ": malformed checkpoint header");
  }
  in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
  const ModelShape& s = m.shape;
  if (s.h1 < 1 || s.h2 < 1 || s.h3 < 1 || s.classes < 2) {
    throw DataError(path.string() + ": bad layer sizes in header");
  }
  m.w1 = read_array(in, "w1", static_cast<size_t>(s.h1) * 3, path);
  m.b1 = read_array(in, "b1", static_cast<size_t>(s.h1), path);
  m.w2 = read_array(in, "w2", static_cast<size_t>(s.h2) * s.h1, path);
  m.b2 = read_array(in, "b2", static_cast<size_t>(s.h2), path);
  m.w3 = read_array(in, "w3", static_cast<size_t>(s.h3) * s.h2, path);
  m.b3 = read_array(in, "b3", static_cast<size_t>(s.h3), path);
  m.w4 = read_array(in, "w4", static_cast<size_t>(s.classes) * s.h3, path);
  m.b4 = read_array(in, "b4", static_cast<size_t>(s.classes), path);
  return m;
}

}  // namespace desenat
