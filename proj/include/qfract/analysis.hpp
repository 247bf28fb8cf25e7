#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qfract/detector_config.hpp"
#include "qfract/jump_process.hpp"
#include "qfract/matrix_oracle.hpp"
#include "qfract/rng.hpp"
#include "qfract/vec3.hpp"

namespace qfract {

// Box-counting dimension estimate: least-squares slope of ln N(delta) against
// ln(1/delta) over the scale window that survived the occupancy guard.
struct DimensionEstimate {
  std::string source;          // solid or reference identifier
  double epsilon = 0.0;        // 0 for references
  uint64_t points = 0;
  std::vector<int> levels;             // subdivision levels used in the fit
  std::vector<double> cell_sizes;      // angular cell size per level (radians)
  std::vector<uint64_t> cell_counts;   // occupied cells N(delta) per level
  double slope = 0.0;                  // fitted dimension d
  double residual = 0.0;               // rms residual of the fit
  bool degenerate_fit = false;         // reported, never hidden
};

// Occupied-cell counter over a recursively subdivided octahedral
// triangulation of S^2. The eight octant triangles are split into four
// children through geodesic edge midpoints; a point descends the hierarchy by
// exact great-circle side tests, so every level partitions the sphere into
// near-equal cells of angular size about (pi/2) / 2^level.
class BoxCounter {
 public:
  // Counts occupied cells for every level in [min_level, max_level].
  explicit BoxCounter(int min_level = 3, int max_level = 9);

  void insert(const UnitVector3& r);

  // Set union of occupied cells per level; counters must share the level
  // range. Union is associative and commutative, so partial counters filled
  // in parallel merge to an order-independent result.
  void merge(const BoxCounter& other);

  uint64_t points() const { return points_; }
  int min_level() const { return min_level_; }
  int max_level() const { return max_level_; }
  uint64_t occupied_cells(int level) const;
  // Median visit count over the occupied cells of a level. The occupancy
  // distribution of a concentrated invariant measure is heavy-tailed, so the
  // median, not the mean, tells whether the sample resolves a scale.
  double occupancy_median(int level) const;
  static double cell_angular_size(int level);

  // Fit over the counted levels, dropping levels from the fine end while the
  // median occupancy per occupied cell falls below min_occupancy (the
  // box-counting starvation guard). The fit is degenerate when fewer than 4
  // levels survive or the rms residual exceeds the threshold.
  DimensionEstimate estimate(double min_occupancy = 3.0,
                             double residual_threshold = 0.15) const;

 private:
  int min_level_;
  int max_level_;
  uint64_t points_ = 0;
  std::vector<std::unordered_map<uint64_t, uint32_t>> cells_;  // id -> visits, per level
};

// One-shot form over a point list. scales are target angular sizes, mapped to
// the nearest subdivision levels; requires >= 4 distinct scales spanning at
// least 1.5 decades and >= 1e6 points.
DimensionEstimate box_counting_dimension(std::span<const UnitVector3> points,
                                         std::span<const double> scales);

// Tangent-plane embedding used to run planar baselines (the Sierpinski
// triangle) through the spherical box counter; smooth embeddings leave the
// box dimension unchanged.
UnitVector3 embed_plane_point(const PlanePoint& p);

struct LiouvilleParams {
  double kappa = 1.0;       // coupling rate, 1/time
  double epsilon = 0.5;
  Vec3 m0{1.0, 0.0, 0.0};   // initial Bloch vector, |m0| <= 1
  double t_max = 3.0;
  double dt = 1e-3;
};

struct BlochTrajectory {
  std::vector<double> times;
  std::vector<Vec3> m;                    // Tr(rho sigma_i) at each time
  double closed_form_rate = 0.0;          // N kappa eps^2 / 3
  double measured_rate = 0.0;             // from the integrated |m| decay
  double max_closed_form_deviation = 0.0; // max |m(t) - exp(-rate t) m0|
  double max_trace_deviation = 0.0;       // max |Tr rho - 1|
  double max_hermiticity_deviation = 0.0;
  double min_eigenvalue = 0.0;            // most negative rho eigenvalue seen
};

// Integrates rho' = kappa (sum_i P_i rho P_i - 1/2 {sum_i P_i^2, rho}) with a
// classical fixed-step RK4 scheme, P_i = P(n_i, eps), rho(0) = (I + sigma.m0)/2.
// Requires a zero-sum config (the closed-form decay is only claimed there)
// and throws std::runtime_error if the state norm grows (step-size
// instability).
BlochTrajectory lindblad_bloch_evolution(const LiouvilleParams& params,
                                         const DetectorConfig& cfg);

// Per-detector distribution of Fubini-Study distance ratios
// d(F(r), F(s)) / d(r, s) over random state pairs. For eps in (0,1) the maps
// both contract (near the detector axis) and stretch (beyond the z = -eps
// circle), so the ratios straddle 1: the system is not uniformly hyperbolic.
struct ContractionStats {
  int detector_index = -1;
  uint64_t samples = 0;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  double fraction_above_one = 0.0;
};

std::vector<ContractionStats> contraction_statistics(const DetectorConfig& cfg, double epsilon,
                                                     uint64_t samples, uint64_t seed = 1);

// Reference point generators for estimator calibration.
std::vector<UnitVector3> uniform_sphere_points(uint64_t count, uint64_t seed);
std::vector<UnitVector3> great_circle_points(uint64_t count, uint64_t seed);
std::vector<UnitVector3> sierpinski_sphere_points(uint64_t count, uint64_t seed);

}  // namespace qfract
