#include "qfract/histogram.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qfract/jump_process.hpp"
#include "test_support.hpp"

using namespace qfract;

namespace {
const UnitVector3 kNorth = UnitVector3::unchecked(0, 0, 1);

std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}
}  // namespace

TEST_CASE("ortho_north binning conventions") {
  const Projection proj{ProjectionKind::ortho_north, 101, 101, std::nullopt};
  SphereHistogram h(proj);
  h.accumulate(kNorth);
  CHECK(h.count_at(50, 50) == 1);  // axis maps to the image center
  h.accumulate(-kNorth);           // back hemisphere
  CHECK(h.total_dropped() == 1);
  CHECK(h.total_in() == 1);

  // +x maps to the right edge on the center row, +y to the top center.
  h.accumulate(UnitVector3::unchecked(1, 0, 0));
  CHECK(h.count_at(50, 100) == 1);
  h.accumulate(UnitVector3::unchecked(0, 1, 0));
  CHECK(h.count_at(0, 50) == 1);
}

TEST_CASE("ortho_south keeps the view right-handed") {
  const Projection proj{ProjectionKind::ortho_south, 101, 101, std::nullopt};
  SphereHistogram h(proj);
  h.accumulate(-kNorth);
  CHECK(h.count_at(50, 50) == 1);
  h.accumulate(kNorth);
  CHECK(h.total_dropped() == 1);
  h.accumulate(UnitVector3::unchecked(0, 1, 0));  // -e2 for the south view
  CHECK(h.count_at(100, 50) == 1);
}

TEST_CASE("equirectangular binning conventions") {
  const Projection proj{ProjectionKind::equirectangular, 360, 180, std::nullopt};
  SphereHistogram h(proj);
  h.accumulate(UnitVector3::unchecked(1, 0, 0));
  CHECK(h.count_at(90, 180) == 1);  // lambda = 0 column, equator row
  h.accumulate(kNorth);
  CHECK(h.count_at(0, 180) == 1);
  h.accumulate(UnitVector3::unchecked(0, 0, -1));
  CHECK(h.count_at(179, 180) == 1);
  CHECK(h.total_dropped() == 0);  // full-sphere projection never drops
}

TEST_CASE("stereographic projection centered on the north pole") {
  const Projection proj{ProjectionKind::stereographic_south_pole_center_north, 101, 101,
                        std::nullopt};
  SphereHistogram h(proj);
  h.accumulate(kNorth);
  CHECK(h.count_at(50, 50) == 1);
  h.accumulate(-kNorth);  // the projection point itself
  CHECK(h.total_dropped() == 1);
}

TEST_CASE("zoom window scales the orthographic view") {
  Projection proj{ProjectionKind::ortho_north, 101, 101,
                  ZoomWindow{kNorth, 0.2}};
  SphereHistogram h(proj);
  h.accumulate(kNorth);
  CHECK(h.count_at(50, 50) == 1);
  // 0.3 rad off axis: inside the hemisphere but outside the window.
  h.accumulate(UnitVector3::normalized(std::sin(0.3), 0, std::cos(0.3)));
  CHECK(h.total_dropped() == 1);
  // 0.1 rad off axis lands halfway to the right edge.
  h.accumulate(UnitVector3::normalized(std::sin(0.1), 0, std::cos(0.1)));
  CHECK(h.count_at(50, 75) == 1);
}

TEST_CASE("conservation of offered points") {
  const Projection proj{ProjectionKind::ortho_north, 32, 32, std::nullopt};
  SphereHistogram h(proj);
  Xoshiro256PlusPlus rng(41);
  const int offered = 20000;
  for (int i = 0; i < offered; ++i) h.accumulate(random_unit_vector(rng));
  uint64_t total = 0;
  for (uint64_t c : h.counts()) total += c;
  CHECK(total == h.total_in());
  CHECK(h.total_in() + h.total_dropped() == uint64_t(offered));
  CHECK(h.total_dropped() > 0);  // back hemisphere really dropped
}

TEST_CASE("merge adds counts and requires matching projections") {
  const Projection proj{ProjectionKind::equirectangular, 16, 8, std::nullopt};
  SphereHistogram a(proj), b(proj);
  Xoshiro256PlusPlus rng(42);
  for (int i = 0; i < 500; ++i) a.accumulate(random_unit_vector(rng));
  for (int i = 0; i < 700; ++i) b.accumulate(random_unit_vector(rng));
  SphereHistogram sum(proj);
  sum.merge(a);
  sum.merge(b);
  CHECK(sum.total_in() == a.total_in() + b.total_in());
  for (size_t i = 0; i < sum.counts().size(); ++i)
    REQUIRE(sum.counts()[i] == a.counts()[i] + b.counts()[i]);

  SphereHistogram other(Projection{ProjectionKind::equirectangular, 8, 8, std::nullopt});
  CHECK_THROWS_AS(sum.merge(other), std::invalid_argument);
}

TEST_CASE("tonemap endpoints and monotonicity") {
  const Projection proj{ProjectionKind::equirectangular, 4, 2, std::nullopt};
  SphereHistogram h(proj);
  CHECK_THROWS_AS(tonemap(h, TonemapScale::log), EmptyHistogram);

  h.accumulate(kNorth);  // single nonzero bin
  const GrayImage single = tonemap(h, TonemapScale::log);
  int nonzero = 0;
  for (uint8_t v : single.pixels) {
    if (v != 0) {
      ++nonzero;
      CHECK(v == 255);
    }
  }
  CHECK(nonzero == 1);

  for (int i = 0; i < 37; ++i) h.accumulate(UnitVector3::unchecked(1, 0, 0));
  for (int i = 0; i < 37; ++i) h.accumulate(UnitVector3::unchecked(-1, 0, 0));
  for (int i = 0; i < 6; ++i) h.accumulate(UnitVector3::unchecked(0, 1, 0));
  for (TonemapScale scale : {TonemapScale::log, TonemapScale::loglog}) {
    const GrayImage img = tonemap(h, scale);
    // Equal counts map to equal values; ordering follows count ordering.
    const auto& c = h.counts();
    for (size_t i = 0; i < c.size(); ++i)
      for (size_t j = 0; j < c.size(); ++j) {
        if (c[i] == c[j]) REQUIRE(img.pixels[i] == img.pixels[j]);
        if (c[i] < c[j]) REQUIRE(img.pixels[i] <= img.pixels[j]);
      }
    // Max bin saturates, empty bins stay black.
    uint8_t maxpix = 0;
    for (uint8_t v : img.pixels) maxpix = std::max(maxpix, v);
    CHECK(maxpix == 255);
  }

  // Integer rescaling of all counts preserves the pixel ordering.
  SphereHistogram scaled(proj);
  for (int k = 0; k < 3; ++k) scaled.merge(h);
  const GrayImage before = tonemap(h, TonemapScale::log);
  const GrayImage after = tonemap(scaled, TonemapScale::log);
  for (size_t i = 0; i < before.pixels.size(); ++i)
    for (size_t j = 0; j < before.pixels.size(); ++j)
      if (before.pixels[i] < before.pixels[j]) REQUIRE(after.pixels[i] <= after.pixels[j]);
}

TEST_CASE("PGM bytes are exact") {
  GrayImage img;
  img.width = 2;
  img.height = 2;
  img.pixels = {0, 85, 170, 255};
  const std::string path = "qfract_test_img.pgm";
  write_pgm(img, path);
  const std::string bytes = read_bytes(path);
  const std::string header = "P5\n2 2\n255\n";
  REQUIRE(bytes.size() == header.size() + 4);
  CHECK(bytes.substr(0, header.size()) == header);
  CHECK(uint8_t(bytes[header.size() + 0]) == 0);
  CHECK(uint8_t(bytes[header.size() + 1]) == 85);
  CHECK(uint8_t(bytes[header.size() + 2]) == 170);
  CHECK(uint8_t(bytes[header.size() + 3]) == 255);
  std::remove(path.c_str());
}

TEST_CASE("CSV round trip reproduces counts exactly") {
  const Projection proj{ProjectionKind::equirectangular, 12, 6, std::nullopt};
  SphereHistogram h(proj);
  Xoshiro256PlusPlus rng(43);
  for (int i = 0; i < 2000; ++i) h.accumulate(random_unit_vector(rng));

  const std::string path = "qfract_test_hist.csv";
  write_csv(h, path);
  const auto rows = read_csv_counts(path);
  SphereHistogram back(proj);
  uint64_t restored = 0;
  for (const auto& [row, col, count] : rows) {
    REQUIRE(h.count_at(row, col) == count);
    restored += count;
  }
  CHECK(restored == h.total_in());
  std::remove(path.c_str());
}

TEST_CASE("identical runs produce byte-identical images") {
  auto render_once = [] {
    const Projection proj{ProjectionKind::ortho_north, 64, 64, std::nullopt};
    std::vector<ChainSpec> specs;
    for (uint32_t i = 0; i < 3; ++i) {
      ChainSpec s;
      s.config = builtin(Solid::octahedron);
      s.epsilon = 0.58;
      s.seed = 7;
      s.chain_id = i;
      s.burn_in = 50;
      s.iterations = 20050;
      specs.push_back(s);
    }
    return tonemap(run_ensemble(specs, proj, 2).histogram, TonemapScale::loglog).pixels;
  };
  CHECK(render_once() == render_once());
}
