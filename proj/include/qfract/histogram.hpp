#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "qfract/vec3.hpp"

namespace qfract {

class EmptyHistogram : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ProjectionKind {
  ortho_north,
  ortho_south,
  equirectangular,
  stereographic_south_pole_center_north,
};

std::string projection_kind_name(ProjectionKind k);
std::optional<ProjectionKind> projection_kind_from_name(const std::string& name);

// Optional view window: a spherical cap about `center` of angular radius
// `angular_radius` (radians) filling the image. Honored by the orthographic
// projections (radius clamped to pi/2) and, radius only, by the stereographic
// one (its center is fixed at the north pole by construction). Ignored by
// equirectangular, which always spans the full sphere.
struct ZoomWindow {
  UnitVector3 center;
  double angular_radius = 1.5707963267948966;  // pi/2
};

// Pixel-grid projection of S^2.
//
// Conventions:
//  - ortho_north looks down the +z axis: u = x right, v = y up; the back
//    hemisphere (z < 0) is dropped. ortho_south looks up the -z axis with
//    u = x, v = -y so the view stays right-handed from outside the sphere.
//  - equirectangular: column from longitude atan2(y,x) in (-pi,pi], row from
//    colatitude arccos(z) in [0,pi], row 0 at the north pole.
//  - stereographic_south_pole_center_north projects from (0,0,-1) onto the
//    tangent plane at the north pole, (u,v) = (x,y)/(1+z); points beyond the
//    window radius (default 3pi/4 from the pole) are dropped.
// Rows run top to bottom in image space; +v maps to smaller row indices.
struct Projection {
  ProjectionKind kind = ProjectionKind::ortho_north;
  int width = 1024;
  int height = 1024;
  std::optional<ZoomWindow> zoom;

  size_t pixel_count() const { return size_t(width) * size_t(height); }

  // Bin index (row * width + col) for a unit vector, or nullopt if the point
  // falls outside the projected window.
  std::optional<size_t> bin(const UnitVector3& r) const;

  bool operator==(const Projection& other) const;
};

// Visit-count accumulator over a projected pixel grid. 64-bit counters: long
// runs overflow 32-bit bins near the detector vertices.
// Invariant: sum(counts) + total_dropped == total points offered.
class SphereHistogram {
 public:
  explicit SphereHistogram(const Projection& proj)
      : projection_(proj), counts_(proj.pixel_count(), 0) {}

  void accumulate(const UnitVector3& r) {
    if (const auto idx = projection_.bin(r)) {
      ++counts_[*idx];
      ++total_in_;
    } else {
      ++total_dropped_;
    }
  }

  // Integer addition of counts; requires identical projections.
  void merge(const SphereHistogram& other);

  const Projection& projection() const { return projection_; }
  const std::vector<uint64_t>& counts() const { return counts_; }
  uint64_t count_at(int row, int col) const {
    return counts_[size_t(row) * projection_.width + col];
  }
  uint64_t total_in() const { return total_in_; }
  uint64_t total_dropped() const { return total_dropped_; }
  uint64_t max_count() const;

 private:
  Projection projection_;
  std::vector<uint64_t> counts_;
  uint64_t total_in_ = 0;
  uint64_t total_dropped_ = 0;
};

enum class TonemapScale { log, loglog };

std::string tonemap_name(TonemapScale t);
std::optional<TonemapScale> tonemap_from_name(const std::string& name);

struct GrayImage {
  int width = 0;
  int height = 0;
  std::vector<uint8_t> pixels;  // row-major, row 0 on top
};

// pixel = round(255 * s(count) / s(max count)) with s(x) = ln(1+x) for log
// and s(x) = ln(1+ln(1+x)) for loglog. Zero-count bins map to 0, the maximum
// bin to 255. Throws EmptyHistogram when no bin was hit.
GrayImage tonemap(const SphereHistogram& h, TonemapScale scale);

// Binary PGM: "P5\n<width> <height>\n255\n" followed by row-major bytes.
// Bit-exact across platforms. Throws std::runtime_error on I/O failure.
void write_pgm(const GrayImage& img, const std::string& path);

// CSV of nonzero bins, header "row,col,count", row-major order.
void write_csv(const SphereHistogram& h, const std::string& path);
std::vector<std::tuple<int, int, uint64_t>> read_csv_counts(const std::string& path);

}  // namespace qfract
