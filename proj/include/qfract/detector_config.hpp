#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qfract/vec3.hpp"

namespace qfract {

// Closed-form radical constants a[1..17] from which every built-in vertex
// table is assembled. Values are computed from the radicals at startup,
// never from rounded decimals, so validation tolerances can stay tight.
namespace constants {

// a(i) for i in 1..17; throws std::out_of_range otherwise.
double a(int i);

double golden_ratio();  // (1 + sqrt 5)/2

}  // namespace constants

enum class Solid {
  tetrahedron,
  octahedron,
  cube,
  icosahedron,
  dodecahedron,
  double_tetrahedron,
  icosidodecahedron,
};

const std::vector<Solid>& all_solids();
std::string solid_name(Solid s);
std::optional<Solid> solid_from_name(const std::string& name);

// Named array of detector axes with an optional default fuzziness.
// Immutable after construction; safe to share across threads.
struct DetectorConfig {
  std::string name;
  std::vector<UnitVector3> directions;
  // Fuzziness used when the caller does not supply one; negative means the
  // config carries no default (custom configs must state epsilon explicitly).
  double default_epsilon = -1.0;

  int count() const { return static_cast<int>(directions.size()); }
  bool has_default_epsilon() const { return default_epsilon >= 0.0; }

  Vec3 direction_sum() const;
  // Whether sum(n_i) vanishes, which admits the simplified probability
  // formula p_i = (1 + eps^2 + 2 eps n_i.r) / (N (1 + eps^2)).
  bool zero_sum(double tol = 1e-12) const;
};

// The five Platonic solids plus double tetrahedron and icosidodecahedron,
// with exact radical vertex coordinates. The first direction is always the
// north pole (0,0,1) and each built-in sums to the zero vector. Default
// epsilon values follow the reference renderings per solid: tetrahedron 0.5,
// octahedron 0.58, cube 0.7, icosahedron 0.75, dodecahedron 0.78, double
// tetrahedron 0.7, icosidodecahedron 0.85.
DetectorConfig builtin(Solid s);

struct ValidationReport {
  std::vector<double> norm_deviation;           // | |n_i| - 1 | per direction
  double max_norm_deviation = 0.0;
  double sum_norm = 0.0;                        // | sum n_i |
  std::vector<std::pair<int, int>> duplicates;  // index pairs closer than 1e-12
  std::vector<double> nearest_neighbor_distance;  // chord distance per vertex
  bool all_unit = false;   // within 1e-9
  bool zero_sum = false;   // within 1e-12; gates the simplified formula
  bool count_ok = false;   // N >= 2

  bool passed() const { return all_unit && zero_sum && count_ok && duplicates.empty(); }
};

ValidationReport validate(const DetectorConfig& cfg);

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Line-oriented plain-text config file:
//   # comments and blank lines are ignored
//   <name> <N> <default_epsilon or '-'>
//   x y z          (N lines)
// Doubles are written with 17 significant digits so a save/load round trip
// is bit exact.
//
// load throws ConfigError on parse failure or a non-unit direction beyond
// 1e-9 (naming the offending index). A non-zero direction sum is only a
// warning: the general probability normalization still applies.
DetectorConfig load_config(const std::string& path,
                           std::vector<std::string>* warnings = nullptr);
void save_config(const DetectorConfig& cfg, const std::string& path);

}  // namespace qfract
