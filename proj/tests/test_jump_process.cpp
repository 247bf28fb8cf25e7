#include "qfract/jump_process.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "doctest.h"
#include "test_support.hpp"

using namespace qfract;
using qfract::testing::max_component_diff;

namespace {
const UnitVector3 kNorth = UnitVector3::unchecked(0, 0, 1);

ChainSpec small_spec(Solid solid, uint32_t chain_id = 0) {
  ChainSpec spec;
  spec.config = builtin(solid);
  spec.epsilon = spec.config.default_epsilon;
  spec.seed = 42;
  spec.chain_id = chain_id;
  spec.burn_in = 10;
  spec.iterations = 1010;
  return spec;
}
}  // namespace

TEST_CASE("probabilities on the octahedron from the pole") {
  for (double eps : {0.2, 0.58, 0.9}) {
    const auto p = probabilities(builtin(Solid::octahedron), eps, kNorth);
    const double base = 1 + eps * eps;
    const double denom = 6.0 * base;
    REQUIRE(p.size() == 6);
    CHECK(p[0] == doctest::Approx((1 + eps) * (1 + eps) / denom).epsilon(1e-14));
    for (int i = 1; i <= 4; ++i) CHECK(p[i] == doctest::Approx(base / denom).epsilon(1e-14));
    CHECK(p[5] == doctest::Approx((1 - eps) * (1 - eps) / denom).epsilon(1e-14));
  }
}

TEST_CASE("probabilities on the tetrahedron from the pole") {
  const auto p = probabilities(builtin(Solid::tetrahedron), 0.5, kNorth);
  CHECK(p[0] == doctest::Approx(0.45).epsilon(1e-14));
  for (int i = 1; i < 4; ++i) CHECK(p[i] == doctest::Approx(0.55 / 3.0).epsilon(1e-13));
}

TEST_CASE("zero fuzziness gives the uniform distribution") {
  Xoshiro256PlusPlus rng(31);
  for (Solid s : all_solids()) {
    const DetectorConfig cfg = builtin(s);
    const auto p = probabilities(cfg, 0.0, random_unit_vector(rng));
    for (double v : p) CHECK(v == doctest::Approx(1.0 / cfg.count()).epsilon(1e-14));
  }
}

TEST_CASE("probabilities sum to one and match explicit normalization") {
  Xoshiro256PlusPlus rng(32);
  for (Solid s : all_solids()) {
    const DetectorConfig cfg = builtin(s);
    for (int trial = 0; trial < 500; ++trial) {
      const UnitVector3 r = random_unit_vector(rng);
      const double eps = rng.next_double();
      const auto p = probabilities(cfg, eps, r);
      CHECK(std::abs(std::accumulate(p.begin(), p.end(), 0.0) - 1.0) < 1e-12);

      // General path: normalize the raw weights.
      double total = 0.0;
      std::vector<double> w(cfg.count());
      for (int i = 0; i < cfg.count(); ++i) {
        w[i] = jump_weight(FuzzyProjector(cfg.directions[i], eps), r);
        total += w[i];
      }
      for (int i = 0; i < cfg.count(); ++i) REQUIRE(std::abs(p[i] - w[i] / total) < 1e-12);
    }
  }
}

TEST_CASE("general normalization path for a lopsided config") {
  DetectorConfig cfg;
  cfg.name = "lopsided";
  cfg.directions = {kNorth, UnitVector3::unchecked(1, 0, 0)};
  CHECK(!cfg.zero_sum());
  const auto p = probabilities(cfg, 0.5, kNorth);
  const double w0 = 0.5625, w1 = 0.3125;
  CHECK(p[0] == doctest::Approx(w0 / (w0 + w1)).epsilon(1e-14));
  CHECK(p[1] == doctest::Approx(w1 / (w0 + w1)).epsilon(1e-14));
}

TEST_CASE("all weights zero is reported") {
  DetectorConfig cfg;
  cfg.name = "antipodal";
  cfg.directions = {kNorth, kNorth};
  Xoshiro256PlusPlus rng(33);
  CHECK_THROWS_AS(probabilities(cfg, 1.0, -kNorth), AllWeightsZero);
  CHECK_THROWS_AS(step(cfg, 1.0, -kNorth, rng), AllWeightsZero);
}

TEST_CASE("step at zero fuzziness never moves the state") {
  Xoshiro256PlusPlus rng(34);
  const DetectorConfig cfg = builtin(Solid::cube);
  UnitVector3 r = random_unit_vector(rng);
  std::vector<int> hits(cfg.count(), 0);
  for (int i = 0; i < 8000; ++i) {
    const auto res = step(cfg, 0.0, r, rng);
    REQUIRE(max_component_diff(res.new_state, r) < 1e-12);
    ++hits[res.detector_index];
  }
  // Uniform selection: 8000 draws over 8 detectors, 5 sigma band.
  for (int h : hits) CHECK(std::abs(h - 1000.0) < 5.0 * std::sqrt(1000.0 * 7.0 / 8.0));
}

TEST_CASE("step choosing the occupied vertex keeps the state there") {
  Xoshiro256PlusPlus rng(35);
  int hits = 0;
  for (int i = 0; i < 200; ++i) {
    const auto res = step(builtin(Solid::tetrahedron), 0.5, kNorth, rng);
    if (res.detector_index == 0) {
      ++hits;
      CHECK(max_component_diff(res.new_state, kNorth) < 1e-12);
    }
  }
  CHECK(hits > 50);  // p[0] = 0.45
}

TEST_CASE("frozen-state selection frequencies match the distribution") {
  const DetectorConfig cfg = builtin(Solid::tetrahedron);
  const UnitVector3 r = UnitVector3::normalized(0.3, -0.5, 0.81);
  const double eps = 0.6;
  const auto p = probabilities(cfg, eps, r);

  Xoshiro256PlusPlus rng(36);
  const int draws = 100000;
  std::vector<int> hits(cfg.count(), 0);
  for (int i = 0; i < draws; ++i) ++hits[step(cfg, eps, r, rng).detector_index];
  for (int i = 0; i < cfg.count(); ++i) {
    const double expect = p[i] * draws;
    const double sigma = std::sqrt(draws * p[i] * (1 - p[i]));
    CHECK(std::abs(hits[i] - expect) <= 3.0 * sigma);
  }
}

TEST_CASE("chain emits exactly iterations minus burn-in points") {
  ChainSpec spec = small_spec(Solid::tetrahedron);
  spec.burn_in = 100;
  spec.iterations = 101;
  int count = 0;
  run_chain(spec, [&](const UnitVector3&) { ++count; });
  CHECK(count == 1);

  spec.iterations = 100;
  CHECK_THROWS_AS(run_chain(spec, [](const UnitVector3&) {}), std::invalid_argument);
}

TEST_CASE("chains are deterministic and substreams differ") {
  auto collect = [](const ChainSpec& spec) {
    std::vector<UnitVector3> pts;
    run_chain(spec, [&](const UnitVector3& r) { pts.push_back(r); });
    return pts;
  };
  const ChainSpec spec = small_spec(Solid::icosahedron);
  const auto a = collect(spec);
  const auto b = collect(spec);
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) REQUIRE(a[i] == b[i]);  // bit exact

  const auto c = collect(small_spec(Solid::icosahedron, 1));
  bool differs = false;
  for (size_t i = 0; i < a.size(); ++i)
    if (!(a[i] == c[i])) differs = true;
  CHECK(differs);

  for (const UnitVector3& r : a) REQUIRE(std::abs(norm(r.vec()) - 1.0) < 1e-12);
}

TEST_CASE("random-uniform initial state is reproducible") {
  ChainSpec spec = small_spec(Solid::octahedron);
  spec.initial_state = std::nullopt;
  std::vector<UnitVector3> a, b;
  run_chain(spec, [&](const UnitVector3& r) { a.push_back(r); });
  run_chain(spec, [&](const UnitVector3& r) { b.push_back(r); });
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) REQUIRE(a[i] == b[i]);
}

TEST_CASE("sink failure carries the partial manifest") {
  const ChainSpec spec = small_spec(Solid::tetrahedron);
  int seen = 0;
  try {
    run_chain(spec, [&](const UnitVector3&) {
      if (++seen == 5) throw std::runtime_error("disk full");
    });
    FAIL("expected SinkFailure");
  } catch (const SinkFailure& e) {
    // Four points were fully consumed; the fifth failed in the sink.
    CHECK(e.partial_manifest.points_emitted == 4);
    CHECK(std::string(e.what()).find("disk full") != std::string::npos);
  }
}

TEST_CASE("manifest echoes the spec") {
  const ChainSpec spec = small_spec(Solid::dodecahedron, 3);
  const RunManifest m = run_chain(spec, [](const UnitVector3&) {});
  CHECK(m.config_name == "dodecahedron");
  CHECK(m.detector_count == 20);
  CHECK(m.chain_id == 3);
  CHECK(m.points_emitted == spec.iterations - spec.burn_in);
  const std::string kv = m.to_key_values();
  CHECK(kv.find("config=dodecahedron\n") != std::string::npos);
  CHECK(kv.find("seed=42\n") != std::string::npos);
  CHECK(kv.find("rng=xoshiro256++/splitmix64-stream/v1\n") != std::string::npos);
  CHECK(kv.find("initial_state=0 0 1\n") != std::string::npos);
}

TEST_CASE("ensemble merge equals the union of its chains") {
  const Projection proj{ProjectionKind::equirectangular, 24, 12, std::nullopt};
  std::vector<ChainSpec> specs;
  for (uint32_t i = 0; i < 4; ++i) specs.push_back(small_spec(Solid::tetrahedron, i));

  const EnsembleResult merged = run_ensemble(specs, proj, 2);
  REQUIRE(merged.manifests.size() == 4);

  SphereHistogram manual(proj);
  for (const ChainSpec& s : specs)
    run_chain(s, [&](const UnitVector3& r) { manual.accumulate(r); });
  CHECK(merged.histogram.counts() == manual.counts());
  CHECK(merged.histogram.total_in() == manual.total_in());

  // Permuted spec order and different worker counts change nothing.
  std::vector<ChainSpec> permuted = {specs[2], specs[0], specs[3], specs[1]};
  CHECK(run_ensemble(permuted, proj, 1).histogram.counts() == merged.histogram.counts());
  CHECK(run_ensemble(specs, proj, 4).histogram.counts() == merged.histogram.counts());
}

TEST_CASE("ensemble rejects duplicate chain ids and allows empty input") {
  const Projection proj{ProjectionKind::equirectangular, 8, 4, std::nullopt};
  CHECK(run_ensemble({}, proj).histogram.total_in() == 0);
  std::vector<ChainSpec> dup = {small_spec(Solid::cube, 1), small_spec(Solid::cube, 1)};
  CHECK_THROWS_AS(run_ensemble(dup, proj), std::invalid_argument);
}

TEST_CASE("sierpinski step applies one of the three affine maps exactly") {
  Xoshiro256PlusPlus rng(37);
  PlanePoint fixed{2.0, 2.0};
  bool map0_seen = false;
  for (int i = 0; i < 200; ++i) {
    const PlanePoint out = sierpinski_step(fixed, rng);
    const PlanePoint candidates[3] = {{2.0, 2.0}, {2.0, 1.5}, {1.5, 2.0}};
    bool matched = false;
    for (const PlanePoint& c : candidates)
      if (out.x == c.x && out.y == c.y) matched = true;
    REQUIRE(matched);
    if (out.x == 2.0 && out.y == 2.0) map0_seen = true;  // fixed point of A[1]
  }
  CHECK(map0_seen);

  // Each map is drawn with probability 1/3.
  int counts[3] = {0, 0, 0};
  PlanePoint p{1.3, 1.7};
  for (int i = 0; i < 30000; ++i) {
    const PlanePoint q = sierpinski_step(p, rng);
    const double tx = q.x - 0.5 * p.x, ty = q.y - 0.5 * p.y;
    if (std::abs(ty - 1.0) < 1e-9 && std::abs(tx - 1.0) < 1e-9) ++counts[0];
    else if (std::abs(tx - 1.0) < 1e-9) ++counts[1];
    else ++counts[2];
    p = q;
  }
  for (int c : counts) CHECK(std::abs(c - 10000.0) < 5.0 * std::sqrt(10000.0 * 2.0 / 3.0));
}

TEST_CASE("point stream round trips in both formats") {
  std::vector<UnitVector3> pts;
  Xoshiro256PlusPlus rng(38);
  for (int i = 0; i < 257; ++i) pts.push_back(random_unit_vector(rng));

  for (PointFormat fmt : {PointFormat::binary, PointFormat::text}) {
    const std::string path = fmt == PointFormat::binary ? "qfract_test_pts.bin"
                                                        : "qfract_test_pts.txt";
    {
      PointStreamWriter w(path, fmt);
      for (const UnitVector3& p : pts) w.write(p);
      w.close();
    }
    const auto back = read_point_stream(path, fmt);
    REQUIRE(back.size() == pts.size());
    for (size_t i = 0; i < pts.size(); ++i)
      REQUIRE(max_component_diff(back[i], pts[i]) < (fmt == PointFormat::binary ? 1e-15 : 1e-15));
    std::remove(path.c_str());
  }
}
