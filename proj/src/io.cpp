#include "desenat/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "desenat/errors.hpp"

namespace desenat {

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

double parse_double(const std::string& token, const std::string& context) {
  double v = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw DataError(context + ": bad number '" + token + "'");
  }
  return v;
}

long parse_long(const std::string& token, const std::string& context) {
  long v = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw DataError(context + ": bad integer '" + token + "'");
  }
  return v;
}

namespace {

std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream ss(line);
  std::string tok;
  while (ss >> tok) out.push_back(tok);
  return out;
}

std::string at_line(const std::filesystem::path& path, int line_no) {
  return path.string() + ":" + std::to_string(line_no);
}

}  // namespace

PointCloud load_pointcloud(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open '" + path.string() + "'");

  std::string line;
  int line_no = 0;
  auto next_content_line = [&](std::string& out) -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      size_t i = line.find_first_not_of(" \t");
      if (i == std::string::npos) continue;
      if (line[i] == '#') continue;
      out = line;
      return true;
    }
    return false;
  };

  std::string header;
  if (!next_content_line(header)) throw DataError(at_line(path, line_no) + ": missing header");
  auto toks = split_ws(header);
  if (toks.size() != 4 || toks[0] != "PCT" || toks[1] != "v1") {
    throw DataError(at_line(path, line_no) + ": malformed header, expected 'PCT v1 <N> <C>'");
  }
  const long n = parse_long(toks[2], at_line(path, line_no));
  const long cols = parse_long(toks[3], at_line(path, line_no));
  if (n < 1) throw DataError(at_line(path, line_no) + ": point count must be >= 1");
  if (cols != 3 && cols != 4) {
    throw DataError(at_line(path, line_no) + ": column count must be 3 or 4, got " + toks[3]);
  }

  PointCloud pc;
  pc.points.reserve(static_cast<size_t>(n));
  std::string row;
  long label = -1;
  for (long i = 0; i < n; ++i) {
    if (!next_content_line(row)) {
      throw DataError(at_line(path, line_no) + ": count mismatch, expected " + std::to_string(n) +
                      " points but file ends after " + std::to_string(i));
    }
    auto vals = split_ws(row);
    if (static_cast<long>(vals.size()) != cols) {
      throw DataError(at_line(path, line_no) + ": expected " + std::to_string(cols) +
                      " values, got " + std::to_string(vals.size()));
    }
    Vec3 p;
    p.x = parse_double(vals[0], at_line(path, line_no));
    p.y = parse_double(vals[1], at_line(path, line_no));
    p.z = parse_double(vals[2], at_line(path, line_no));
    if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z)) {
      throw DataError(at_line(path, line_no) + ": non-finite coordinate");
    }
    if (cols == 4) {
      long l = parse_long(vals[3], at_line(path, line_no));
      if (i == 0) {
        label = l;
      } else if (l != label) {
        throw DataError(at_line(path, line_no) + ": label column disagrees (" + std::to_string(l) +
                        " vs " + std::to_string(label) + ")");
      }
    }
    pc.points.push_back(p);
  }
  std::string extra;
  if (next_content_line(extra)) {
    throw DataError(at_line(path, line_no) + ": count mismatch, header declares " +
                    std::to_string(n) + " points but more data follows");
  }
  if (cols == 4) pc.label = static_cast<int>(label);
  return pc;
}

void save_pointcloud(const PointCloud& pc, const std::filesystem::path& path) {
  require_valid_cloud(pc, "save_pointcloud('" + path.string() + "')");
  std::ofstream out(path, std::ios::binary);  // binary: keep LF endings everywhere
  if (!out) throw DataError("cannot write '" + path.string() + "'");
  const int cols = pc.label.has_value() ? 4 : 3;
  out << "PCT v1 " << pc.points.size() << ' ' << cols << '\n';
  for (const Vec3& p : pc.points) {
    out << format_double(p.x) << ' ' << format_double(p.y) << ' ' << format_double(p.z);
    if (cols == 4) out << ' ' << *pc.label;
    out << '\n';
  }
  if (!out) throw DataError("write failed for '" + path.string() + "'");
}

Dataset load_dataset(const std::filesystem::path& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw DataError("cannot open manifest '" + manifest_path.string() + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError("manifest '" + manifest_path.string() + "': " + e.what());
  }
  Dataset ds;
  try {
    ds.name = j.at("name").get<std::string>();
    ds.class_count = j.at("class_count").get<int>();
    const auto base = manifest_path.parent_path();
    for (const auto& entry : j.at("entries")) {
      auto rel = entry.at("path").get<std::string>();
      PointCloud pc = load_pointcloud(base / rel);
      int label = entry.at("label").get<int>();
      if (pc.label.has_value() && *pc.label != label) {
        throw DataError("manifest '" + manifest_path.string() + "': label for '" + rel +
                        "' disagrees with the file's label column");
      }
      pc.label = label;
      ds.samples.push_back(std::move(pc));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DataError("manifest '" + manifest_path.string() + "': " + e.what());
  }
  validate_dataset(ds);
  return ds;
}

std::filesystem::path save_dataset(const Dataset& ds, const std::filesystem::path& dir) {
  validate_dataset(ds);
  std::filesystem::create_directories(dir);
  nlohmann::json entries = nlohmann::json::array();
  for (int i = 0; i < ds.size(); ++i) {
    char name[64];
    std::snprintf(name, sizeof(name), "%s_%05d.pct", ds.name.c_str(), i);
    save_pointcloud(ds.samples[i], dir / name);
    entries.push_back({{"path", name}, {"label", *ds.samples[i].label}});
  }
  nlohmann::json j{{"name", ds.name}, {"class_count", ds.class_count}, {"entries", entries}};
  const auto manifest = dir / (ds.name + ".manifest.json");
  std::ofstream out(manifest, std::ios::binary);
  if (!out) throw DataError("cannot write manifest '" + manifest.string() + "'");
  out << j.dump(2) << '\n';
  return manifest;
}

}  // namespace desenat
