#include "qfract/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qfract {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

int clamp_index(double v, int n) {
  const int i = static_cast<int>(std::floor(v));
  return std::clamp(i, 0, n - 1);
}

// Deterministic tangent frame (e1, e2) for a view axis.
void view_frame(const UnitVector3& axis, Vec3& e1, Vec3& e2) {
  if (std::abs(axis.z()) > 1.0 - 1e-12) {
    e1 = {1, 0, 0};
    e2 = {0, axis.z() > 0 ? 1.0 : -1.0, 0};
    return;
  }
  e1 = cross(Vec3{0, 0, 1}, axis.vec());
  const double n = norm(e1);
  e1 = (1.0 / n) * e1;
  e2 = cross(axis.vec(), e1);
}

}  // namespace

std::string projection_kind_name(ProjectionKind k) {
  switch (k) {
    case ProjectionKind::ortho_north: return "ortho_north";
    case ProjectionKind::ortho_south: return "ortho_south";
    case ProjectionKind::equirectangular: return "equirectangular";
    case ProjectionKind::stereographic_south_pole_center_north: return "stereographic";
  }
  throw std::invalid_argument("projection_kind_name: unknown kind");
}

std::optional<ProjectionKind> projection_kind_from_name(const std::string& name) {
  if (name == "ortho_north") return ProjectionKind::ortho_north;
  if (name == "ortho_south") return ProjectionKind::ortho_south;
  if (name == "equirectangular") return ProjectionKind::equirectangular;
  if (name == "stereographic" || name == "stereographic_south_pole_center_north")
    return ProjectionKind::stereographic_south_pole_center_north;
  return std::nullopt;
}

std::optional<size_t> Projection::bin(const UnitVector3& r) const {
  double u = 0.0, v = 0.0;  // both in [-1,1] when the point is kept

  switch (kind) {
    case ProjectionKind::ortho_north:
    case ProjectionKind::ortho_south: {
      UnitVector3 axis = kind == ProjectionKind::ortho_north
                             ? UnitVector3::unchecked(0, 0, 1)
                             : UnitVector3::unchecked(0, 0, -1);
      double radius = 0.5 * kPi;
      double cos_radius = 0.0;  // exact hemisphere boundary
      if (zoom) {
        axis = zoom->center;
        radius = std::clamp(zoom->angular_radius, 1e-6, 0.5 * kPi);
        cos_radius = std::cos(radius);
      }
      const double along = dot(r, axis);
      if (along < cos_radius) return std::nullopt;  // outside cap / back hemisphere
      Vec3 e1, e2;
      view_frame(axis, e1, e2);
      const double s = std::sin(radius);
      u = dot(r.vec(), e1) / s;
      v = dot(r.vec(), e2) / s;
      break;
    }
    case ProjectionKind::equirectangular: {
      const double lon = std::atan2(r.y(), r.x());                      // (-pi, pi]
      const double colat = std::acos(std::clamp(r.z(), -1.0, 1.0));     // [0, pi]
      const int col = clamp_index((lon + kPi) / (2.0 * kPi) * width, width);
      const int row = clamp_index(colat / kPi * height, height);
      return size_t(row) * width + col;
    }
    case ProjectionKind::stereographic_south_pole_center_north: {
      double radius = 0.75 * kPi;
      if (zoom) radius = std::clamp(zoom->angular_radius, 1e-6, kPi - 1e-6);
      if (r.z() <= -1.0 + 1e-15) return std::nullopt;  // projection point itself
      const double s = std::tan(0.5 * radius);
      u = r.x() / (1.0 + r.z()) / s;
      v = r.y() / (1.0 + r.z()) / s;
      if (u * u + v * v > 1.0) return std::nullopt;
      break;
    }
  }

  const int col = clamp_index((u + 1.0) * 0.5 * width, width);
  const int row = clamp_index((1.0 - v) * 0.5 * height, height);
  return size_t(row) * width + col;
}

bool Projection::operator==(const Projection& other) const {
  if (kind != other.kind || width != other.width || height != other.height) return false;
  if (zoom.has_value() != other.zoom.has_value()) return false;
  if (zoom && !(zoom->center == other.zoom->center &&
                zoom->angular_radius == other.zoom->angular_radius))
    return false;
  return true;
}

void SphereHistogram::merge(const SphereHistogram& other) {
  if (!(projection_ == other.projection_))
    throw std::invalid_argument("SphereHistogram::merge: projection mismatch");
  for (size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
  total_in_ += other.total_in_;
  total_dropped_ += other.total_dropped_;
}

uint64_t SphereHistogram::max_count() const {
  uint64_t m = 0;
  for (uint64_t c : counts_) m = std::max(m, c);
  return m;
}

std::string tonemap_name(TonemapScale t) {
  return t == TonemapScale::log ? "log" : "loglog";
}

std::optional<TonemapScale> tonemap_from_name(const std::string& name) {
  if (name == "log") return TonemapScale::log;
  if (name == "loglog") return TonemapScale::loglog;
  return std::nullopt;
}

GrayImage tonemap(const SphereHistogram& h, TonemapScale scale) {
  const uint64_t cmax = h.max_count();
  if (cmax == 0) throw EmptyHistogram("tonemap: histogram has no nonzero bin");

  auto s = [scale](uint64_t c) {
    const double l = std::log1p(double(c));
    return scale == TonemapScale::log ? l : std::log1p(l);
  };
  const double smax = s(cmax);

  GrayImage img;
  img.width = h.projection().width;
  img.height = h.projection().height;
  img.pixels.resize(h.counts().size());
  for (size_t i = 0; i < h.counts().size(); ++i) {
    img.pixels[i] = static_cast<uint8_t>(std::lround(255.0 * s(h.counts()[i]) / smax));
  }
  return img;
}

void write_pgm(const GrayImage& img, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_pgm: cannot open " + path);
  out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
  if (!out) throw std::runtime_error("write_pgm: write failed: " + path);
}

void write_csv(const SphereHistogram& h, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_csv: cannot open " + path);
  out << "row,col,count\n";
  const int w = h.projection().width;
  for (size_t i = 0; i < h.counts().size(); ++i) {
    if (h.counts()[i] == 0) continue;
    out << i / w << ',' << i % w << ',' << h.counts()[i] << '\n';
  }
  if (!out) throw std::runtime_error("write_csv: write failed: " + path);
}

std::vector<std::tuple<int, int, uint64_t>> read_csv_counts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_csv_counts: cannot open " + path);
  std::vector<std::tuple<int, int, uint64_t>> rows;
  std::string line;
  if (!std::getline(in, line) || line != "row,col,count")
    throw std::runtime_error("read_csv_counts: missing header in " + path);
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    int r, c;
    uint64_t n;
    if (!(row >> r >> c >> n))
      throw std::runtime_error("read_csv_counts: bad line in " + path);
    rows.emplace_back(r, c, n);
  }
  return rows;
}

}  // namespace qfract
