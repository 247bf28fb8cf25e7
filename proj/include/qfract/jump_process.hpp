#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qfract/detector_config.hpp"
#include "qfract/histogram.hpp"
#include "qfract/rng.hpp"
#include "qfract/spin_geometry.hpp"

namespace qfract {

inline constexpr const char* kSoftwareVersion = "0.1.0";

class AllWeightsZero : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Per-detector flip probabilities for the current state; entries sum to one.
using ProbabilityVector = std::vector<double>;

// p_i proportional to the jump weight lambda_i = (1 + eps^2 + 2 eps n_i.r)/4.
// When the directions sum to zero this reduces to the closed form
// p_i = (1 + eps^2 + 2 eps n_i.r) / (N (1 + eps^2)); otherwise the weights
// are normalized explicitly. Throws AllWeightsZero if every weight vanishes
// (possible only at eps = 1 with pathological configs).
ProbabilityVector probabilities(const DetectorConfig& cfg, double epsilon,
                                const UnitVector3& r);

struct StepResult {
  int detector_index = -1;
  UnitVector3 new_state;
};

// One chaos-game step: draws the flipping detector by inverse CDF over the
// jump weights using exactly one uniform variate, then applies the jump.
// Zero-weight detectors are never selected.
StepResult step(const DetectorConfig& cfg, double epsilon, const UnitVector3& r,
                Xoshiro256PlusPlus& rng);

// Everything needed to reproduce one chain bit-exactly.
struct ChainSpec {
  DetectorConfig config;
  double epsilon = 0.0;
  uint64_t seed = 0;
  uint32_t chain_id = 0;
  uint64_t burn_in = 100;     // leading steps not emitted
  uint64_t iterations = 0;    // total steps; must exceed burn_in
  // nullopt draws the start uniformly from the chain's own substream.
  std::optional<UnitVector3> initial_state = UnitVector3{};

  void validate_or_throw() const;
};

// Provenance record sufficient to rerun a chain bit-exactly (wall time aside).
struct RunManifest {
  std::string config_name;
  int detector_count = 0;
  double epsilon = 0.0;
  uint64_t seed = 0;
  uint32_t chain_id = 0;
  uint64_t burn_in = 0;
  uint64_t iterations = 0;
  std::string initial_state;  // "x y z" or "random-uniform"
  std::string rng_algorithm;
  std::string software_version;
  uint64_t points_emitted = 0;
  double wall_time_seconds = 0.0;

  std::string to_key_values() const;
};

// Raised when the point consumer fails mid-run; carries the partial manifest.
class SinkFailure : public std::runtime_error {
 public:
  SinkFailure(const std::string& what, RunManifest partial)
      : std::runtime_error(what), partial_manifest(std::move(partial)) {}
  RunManifest partial_manifest;
};

namespace detail {

// Inverse-CDF selection over the jump weights, consuming the single uniform
// variate u. weights is caller-provided scratch of size N.
inline int select_detector(const DetectorConfig& cfg, double epsilon, const UnitVector3& r,
                           double u, std::vector<double>& weights) {
  const size_t n = cfg.directions.size();
  const double base = 1.0 + epsilon * epsilon;
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double w = 0.25 * (base + 2.0 * epsilon * dot(cfg.directions[i], r));
    weights[i] = w;
    total += w;
  }
  if (total <= 1e-300) throw AllWeightsZero("select_detector: all jump weights vanish");
  const double target = u * total;
  double cum = 0.0;
  int last_positive = -1;
  for (size_t i = 0; i < n; ++i) {
    if (weights[i] > 0.0) last_positive = static_cast<int>(i);
    cum += weights[i];
    if (target < cum && weights[i] > 0.0) return static_cast<int>(i);
  }
  return last_positive;  // u rounded past the accumulated total
}

RunManifest make_manifest(const ChainSpec& spec);

}  // namespace detail

// Runs one chain and feeds every post-burn-in state to `sink`. Emits exactly
// iterations - burn_in unit vectors; identical specs produce identical
// sequences. The sink is invoked inline, so a callable visible to the
// compiler costs nothing over a hand-written loop.
template <typename Sink>
RunManifest run_chain(const ChainSpec& spec, Sink&& sink) {
  spec.validate_or_throw();
  RunManifest manifest = detail::make_manifest(spec);

  const auto t0 = std::chrono::steady_clock::now();
  Xoshiro256PlusPlus rng(spec.seed, spec.chain_id);
  UnitVector3 r = spec.initial_state ? *spec.initial_state : random_unit_vector(rng);

  const double eps = spec.epsilon;
  std::vector<double> weights(spec.config.directions.size());
  uint64_t emitted = 0;
  try {
    for (uint64_t i = 0; i < spec.iterations; ++i) {
      const double u = rng.next_double();
      const int idx = detail::select_detector(spec.config, eps, r, u, weights);
      r = jump(FuzzyProjector(spec.config.directions[idx], eps), r).new_state;
      if (i >= spec.burn_in) {
        sink(r);
        ++emitted;
      }
    }
  } catch (const AllWeightsZero&) {
    throw;
  } catch (const DegenerateJump&) {
    throw;  // unreachable from here: zero-weight jumps have probability zero
  } catch (const std::exception& e) {
    manifest.points_emitted = emitted;
    manifest.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    throw SinkFailure(std::string("run_chain: sink failed: ") + e.what(), manifest);
  }

  manifest.points_emitted = emitted;
  manifest.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return manifest;
}

struct EnsembleResult {
  SphereHistogram histogram;
  std::vector<RunManifest> manifests;  // in spec order
};

// Runs the chains on `worker_threads` workers (0 = all hardware threads) and
// merges their private histograms. Chains own their RNG substreams, so the
// merged counts are independent of scheduling, execution order and the degree
// of parallelism. Chain ids must be pairwise distinct.
EnsembleResult run_ensemble(std::span<const ChainSpec> specs, const Projection& projection,
                            unsigned worker_threads = 0);

// Classical Sierpinski baseline: one of three area-halving affine maps chosen
// with probability 1/3 each, encoded as 3x3 matrices acting on (x, y, 1).
struct PlanePoint {
  double x = 0.0, y = 0.0;
};

PlanePoint sierpinski_step(const PlanePoint& v, Xoshiro256PlusPlus& rng);

// Raw point stream: binary little-endian triples of 64-bit floats, or
// "x y z" text lines.
enum class PointFormat { binary, text };

class PointStreamWriter {
 public:
  PointStreamWriter(const std::string& path, PointFormat format);
  ~PointStreamWriter();
  PointStreamWriter(const PointStreamWriter&) = delete;
  PointStreamWriter& operator=(const PointStreamWriter&) = delete;

  void write(const UnitVector3& r);
  void close();  // throws std::runtime_error on flush failure

 private:
  struct Impl;
  Impl* impl_;
};

std::vector<UnitVector3> read_point_stream(const std::string& path, PointFormat format);

}  // namespace qfract
