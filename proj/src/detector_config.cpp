#include "qfract/detector_config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace qfract {

namespace constants {

namespace {
const std::array<double, 18>& table() {
  static const std::array<double, 18> t = [] {
    const double s2 = std::sqrt(2.0);
    const double s3 = std::sqrt(3.0);
    const double s5 = std::sqrt(5.0);
    std::array<double, 18> a{};
    a[1] = (3.0 - s5) / 6.0;
    a[2] = (5.0 - s5) / 10.0;
    a[3] = 1.0 / 3.0;
    a[4] = (s5 - 1.0) / (2.0 * s3);
    a[5] = 1.0 / s5;
    a[6] = s2 / 3.0;
    a[7] = std::sqrt((5.0 - s5) / 10.0);
    a[8] = 1.0 / s3;
    a[9] = 2.0 / 3.0;
    a[10] = (5.0 + s5) / 10.0;
    a[11] = s5 / 3.0;
    a[12] = std::sqrt(2.0 / 3.0);
    a[13] = std::sqrt((5.0 + s5) / 10.0);
    a[14] = (3.0 + s5) / 6.0;
    a[15] = 2.0 / s5;
    a[16] = std::sqrt((3.0 + s5) / 6.0);
    a[17] = 2.0 * s2 / 3.0;
    return a;
  }();
  return t;
}
}  // namespace

double a(int i) {
  if (i < 1 || i > 17) throw std::out_of_range("constants::a: index must be 1..17");
  return table()[static_cast<size_t>(i)];
}

double golden_ratio() { return (1.0 + std::sqrt(5.0)) / 2.0; }

}  // namespace constants

const std::vector<Solid>& all_solids() {
  static const std::vector<Solid> all = {
      Solid::tetrahedron,        Solid::octahedron,   Solid::cube,
      Solid::icosahedron,        Solid::dodecahedron, Solid::double_tetrahedron,
      Solid::icosidodecahedron};
  return all;
}

std::string solid_name(Solid s) {
  switch (s) {
    case Solid::tetrahedron: return "tetrahedron";
    case Solid::octahedron: return "octahedron";
    case Solid::cube: return "cube";
    case Solid::icosahedron: return "icosahedron";
    case Solid::dodecahedron: return "dodecahedron";
    case Solid::double_tetrahedron: return "double_tetrahedron";
    case Solid::icosidodecahedron: return "icosidodecahedron";
  }
  throw std::invalid_argument("solid_name: unknown solid");
}

std::optional<Solid> solid_from_name(const std::string& name) {
  for (Solid s : all_solids())
    if (solid_name(s) == name) return s;
  return std::nullopt;
}

Vec3 DetectorConfig::direction_sum() const {
  Vec3 s;
  for (const UnitVector3& n : directions) s = s + n.vec();
  return s;
}

bool DetectorConfig::zero_sum(double tol) const { return norm(direction_sum()) <= tol; }

namespace {

using constants::a;

UnitVector3 uv(double x, double y, double z) { return UnitVector3::unchecked(x, y, z); }

std::vector<UnitVector3> tetrahedron_directions() {
  return {uv(0, 0, 1), uv(a(17), 0, -a(3)), uv(-a(6), a(12), -a(3)), uv(-a(6), -a(12), -a(3))};
}

std::vector<UnitVector3> octahedron_directions() {
  return {uv(0, 0, 1), uv(1, 0, 0), uv(0, 1, 0), uv(-1, 0, 0), uv(0, -1, 0), uv(0, 0, -1)};
}

std::vector<UnitVector3> cube_directions() {
  return {uv(0, 0, 1),
          uv(a(17), 0, a(3)),
          uv(-a(6), a(12), a(3)),
          uv(-a(6), -a(12), a(3)),
          uv(a(6), a(12), -a(3)),
          uv(a(6), -a(12), -a(3)),
          uv(-a(17), 0, -a(3)),
          uv(0, 0, -1)};
}

std::vector<UnitVector3> icosahedron_directions() {
  // The second vertex is (a[15], 0, a[5]); the source table's "0.a[15]" is a
  // typographical artifact, a[15] = 2/sqrt(5) being the only unit-norm reading.
  return {uv(0, 0, 1),
          uv(a(15), 0, a(5)),
          uv(a(2), a(13), a(5)),
          uv(-a(10), a(7), a(5)),
          uv(-a(10), -a(7), a(5)),
          uv(a(2), -a(13), a(5)),
          uv(a(10), a(7), -a(5)),
          uv(a(10), -a(7), -a(5)),
          uv(-a(2), a(13), -a(5)),
          uv(-a(15), 0, -a(5)),
          uv(-a(2), -a(13), -a(5)),
          uv(0, 0, -1)};
}

std::vector<UnitVector3> dodecahedron_directions() {
  return {uv(0, 0, 1),
          uv(a(9), 0, a(11)),
          uv(-a(3), a(8), a(11)),
          uv(-a(3), -a(8), a(11)),
          uv(a(11), a(8), a(3)),
          uv(a(11), -a(8), a(3)),
          uv(-a(14), a(4), a(3)),
          uv(a(1), a(16), a(3)),
          uv(a(1), -a(16), a(3)),
          uv(-a(14), -a(4), a(3)),
          uv(a(14), a(4), -a(3)),
          uv(a(14), -a(4), -a(3)),
          uv(-a(11), a(8), -a(3)),
          uv(-a(1), a(16), -a(3)),
          uv(-a(1), -a(16), -a(3)),
          uv(-a(11), -a(8), -a(3)),
          uv(a(3), a(8), -a(11)),
          uv(a(3), -a(8), -a(11)),
          uv(-a(9), 0, -a(11)),
          uv(0, 0, -1)};
}

std::vector<UnitVector3> double_tetrahedron_directions() {
  std::vector<UnitVector3> dirs = tetrahedron_directions();
  const size_t n = dirs.size();
  for (size_t i = 0; i < n; ++i) dirs.push_back(-dirs[i]);
  return dirs;
}

std::vector<UnitVector3> icosidodecahedron_directions() {
  // 30 unit vertices: (+-1,0,0) with cyclic permutations, and
  // (s1/2, s2 phi/2, s3/(2 phi)) with cyclic permutations, phi the golden
  // ratio. (0,0,1) is listed first so a vertex sits at the north pole.
  const double phi = constants::golden_ratio();
  std::vector<UnitVector3> dirs;
  dirs.reserve(30);
  dirs.push_back(uv(0, 0, 1));
  dirs.push_back(uv(1, 0, 0));
  dirs.push_back(uv(0, 1, 0));
  dirs.push_back(uv(-1, 0, 0));
  dirs.push_back(uv(0, -1, 0));
  dirs.push_back(uv(0, 0, -1));
  for (int cyc = 0; cyc < 3; ++cyc) {
    for (int s1 : {1, -1})
      for (int s2 : {1, -1})
        for (int s3 : {1, -1}) {
          const double c[3] = {s1 * 0.5, s2 * phi / 2.0, s3 / (2.0 * phi)};
          dirs.push_back(uv(c[(0 + cyc) % 3], c[(1 + cyc) % 3], c[(2 + cyc) % 3]));
        }
  }
  return dirs;
}

}  // namespace

DetectorConfig builtin(Solid s) {
  DetectorConfig cfg;
  cfg.name = solid_name(s);
  switch (s) {
    case Solid::tetrahedron:
      cfg.directions = tetrahedron_directions();
      cfg.default_epsilon = 0.5;
      break;
    case Solid::octahedron:
      cfg.directions = octahedron_directions();
      cfg.default_epsilon = 0.58;
      break;
    case Solid::cube:
      cfg.directions = cube_directions();
      cfg.default_epsilon = 0.7;
      break;
    case Solid::icosahedron:
      cfg.directions = icosahedron_directions();
      cfg.default_epsilon = 0.75;
      break;
    case Solid::dodecahedron:
      cfg.directions = dodecahedron_directions();
      cfg.default_epsilon = 0.78;
      break;
    case Solid::double_tetrahedron:
      cfg.directions = double_tetrahedron_directions();
      cfg.default_epsilon = 0.7;
      break;
    case Solid::icosidodecahedron:
      cfg.directions = icosidodecahedron_directions();
      cfg.default_epsilon = 0.85;
      break;
  }
  return cfg;
}

ValidationReport validate(const DetectorConfig& cfg) {
  ValidationReport rep;
  const int n = cfg.count();
  rep.count_ok = n >= 2;
  rep.norm_deviation.reserve(n);
  for (const UnitVector3& d : cfg.directions) {
    const double dev = std::abs(norm(d.vec()) - 1.0);
    rep.norm_deviation.push_back(dev);
    rep.max_norm_deviation = std::max(rep.max_norm_deviation, dev);
  }
  rep.all_unit = rep.max_norm_deviation <= 1e-9;
  rep.sum_norm = norm(cfg.direction_sum());
  rep.zero_sum = rep.sum_norm <= 1e-12;
  for (int i = 0; i < n; ++i) {
    double nearest = std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double d = norm(cfg.directions[i].vec() - cfg.directions[j].vec());
      nearest = std::min(nearest, d);
      if (j > i && d <= 1e-12) rep.duplicates.emplace_back(i, j);
    }
    rep.nearest_neighbor_distance.push_back(nearest);
  }
  return rep;
}

namespace {
std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace

DetectorConfig load_config(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);

  auto next_line = [&in](std::string& out) {
    while (std::getline(in, out)) {
      const auto pos = out.find('#');
      if (pos != std::string::npos) out.erase(pos);
      if (out.find_first_not_of(" \t\r\n") != std::string::npos) return true;
    }
    return false;
  };

  std::string line;
  if (!next_line(line)) throw ConfigError(path + ": missing header line");
  std::istringstream header(line);
  DetectorConfig cfg;
  long n = 0;
  std::string eps_token;
  if (!(header >> cfg.name >> n >> eps_token))
    throw ConfigError(path + ": header must be '<name> <N> <epsilon|->'");
  if (n < 1) throw ConfigError(path + ": detector count must be >= 1");
  if (eps_token == "-") {
    cfg.default_epsilon = -1.0;
  } else {
    try {
      cfg.default_epsilon = std::stod(eps_token);
    } catch (const std::exception&) {
      throw ConfigError(path + ": bad default epsilon '" + eps_token + "'");
    }
    if (cfg.default_epsilon < 0.0 || cfg.default_epsilon > 1.0)
      throw ConfigError(path + ": default epsilon must lie in [0,1]");
  }

  for (long i = 0; i < n; ++i) {
    if (!next_line(line))
      throw ConfigError(path + ": expected " + std::to_string(n) + " direction lines");
    std::istringstream row(line);
    double x, y, z;
    if (!(row >> x >> y >> z))
      throw ConfigError(path + ": bad direction on line for vector " + std::to_string(i));
    const double nn = std::sqrt(x * x + y * y + z * z);
    if (std::abs(nn - 1.0) > 1e-9)
      throw ConfigError(path + ": vector " + std::to_string(i) + " has norm " +
                        format_double(nn) + " (must be unit within 1e-9)");
    cfg.directions.push_back(UnitVector3::unchecked(x, y, z));
  }

  // Same gate probabilities() uses to pick the simplified formula.
  if (!cfg.zero_sum() && warnings) {
    warnings->push_back("direction sum has norm " + format_double(norm(cfg.direction_sum())) +
                        "; the simplified probability formula does not apply, using general "
                        "normalization");
  }
  return cfg;
}

void save_config(const DetectorConfig& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path);
  out << cfg.name << ' ' << cfg.count() << ' ';
  if (cfg.has_default_epsilon())
    out << format_double(cfg.default_epsilon);
  else
    out << '-';
  out << '\n';
  for (const UnitVector3& d : cfg.directions) {
    out << format_double(d.x()) << ' ' << format_double(d.y()) << ' ' << format_double(d.z())
        << '\n';
  }
  if (!out) throw ConfigError("write failed: " + path);
}

}  // namespace qfract
