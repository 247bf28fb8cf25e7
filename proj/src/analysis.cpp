#include "qfract/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <set>

namespace qfract {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double det3(const Vec3& a, const Vec3& b, const Vec3& c) { return dot(cross(a, b), c); }

Vec3 midpoint_on_sphere(const Vec3& a, const Vec3& b) {
  const Vec3 m = a + b;
  return (1.0 / norm(m)) * m;
}

}  // namespace

BoxCounter::BoxCounter(int min_level, int max_level)
    : min_level_(min_level), max_level_(max_level) {
  if (min_level < 1 || max_level < min_level || max_level > 20)
    throw std::invalid_argument("BoxCounter: need 1 <= min_level <= max_level <= 20");
  cells_.resize(size_t(max_level_ - min_level_ + 1));
}

double BoxCounter::cell_angular_size(int level) {
  return 0.5 * kPi / double(1ULL << level);
}

uint64_t BoxCounter::occupied_cells(int level) const {
  if (level < min_level_ || level > max_level_)
    throw std::out_of_range("BoxCounter::occupied_cells: level outside counted range");
  return cells_[size_t(level - min_level_)].size();
}

double BoxCounter::occupancy_median(int level) const {
  if (level < min_level_ || level > max_level_)
    throw std::out_of_range("BoxCounter::occupancy_median: level outside counted range");
  const auto& cells = cells_[size_t(level - min_level_)];
  if (cells.empty()) return 0.0;
  std::vector<uint32_t> visits;
  visits.reserve(cells.size());
  for (const auto& [id, n] : cells) visits.push_back(n);
  const size_t mid = visits.size() / 2;
  std::nth_element(visits.begin(), visits.begin() + mid, visits.end());
  double median = visits[mid];
  if (visits.size() % 2 == 0) {
    const auto lower = std::max_element(visits.begin(), visits.begin() + mid);
    median = 0.5 * (median + double(*lower));
  }
  return median;
}

void BoxCounter::merge(const BoxCounter& other) {
  if (other.min_level_ != min_level_ || other.max_level_ != max_level_)
    throw std::invalid_argument("BoxCounter::merge: level range mismatch");
  for (size_t i = 0; i < cells_.size(); ++i)
    for (const auto& [id, n] : other.cells_[i]) cells_[i][id] += n;
  points_ += other.points_;
}

void BoxCounter::insert(const UnitVector3& r) {
  ++points_;
  const Vec3 p = r.vec();

  // Root cell: octant by coordinate signs. Boundary points go to the
  // non-negative side, which keeps the assignment a true partition.
  const int sx = p.x >= 0.0 ? 1 : -1;
  const int sy = p.y >= 0.0 ? 1 : -1;
  const int sz = p.z >= 0.0 ? 1 : -1;
  Vec3 a{double(sx), 0, 0}, b{0, double(sy), 0}, c{0, 0, double(sz)};
  uint64_t id = uint64_t((sx > 0) | ((sy > 0) << 1) | ((sz > 0) << 2));

  for (int level = 1; level <= max_level_; ++level) {
    const Vec3 mab = midpoint_on_sphere(a, b);
    const Vec3 mbc = midpoint_on_sphere(b, c);
    const Vec3 mca = midpoint_on_sphere(c, a);

    // Child containment by great-circle side tests against the three
    // midpoint planes; ties fall to the first matching corner.
    uint64_t child;
    if (det3(mab, mca, p) * det3(mab, mca, a) >= 0.0) {
      child = 0;
      b = mab;
      c = mca;
    } else if (det3(mbc, mab, p) * det3(mbc, mab, b) >= 0.0) {
      child = 1;
      a = mab;
      c = mbc;
    } else if (det3(mca, mbc, p) * det3(mca, mbc, c) >= 0.0) {
      child = 2;
      a = mca;
      b = mbc;
    } else {
      child = 3;
      a = mab;
      b = mbc;
      c = mca;
    }
    id = (id << 2) | child;
    if (level >= min_level_) ++cells_[size_t(level - min_level_)][id];
  }
}

DimensionEstimate BoxCounter::estimate(double min_occupancy,
                                       double residual_threshold) const {
  DimensionEstimate est;
  est.points = points_;

  // Starvation guard: drop levels from the fine end while the typical
  // occupied cell holds fewer than min_occupancy points. Cells the sample
  // barely reaches undercount the covering and flatten the fitted slope.
  int top = max_level_;
  while (top > min_level_) {
    if (occupied_cells(top) == 0 || occupancy_median(top) < min_occupancy)
      --top;
    else
      break;
  }

  for (int level = min_level_; level <= top; ++level) {
    const uint64_t n = occupied_cells(level);
    if (n == 0) continue;
    est.levels.push_back(level);
    est.cell_sizes.push_back(cell_angular_size(level));
    est.cell_counts.push_back(n);
  }

  const size_t k = est.levels.size();
  if (k < 2) {
    est.degenerate_fit = true;
    return est;
  }

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (size_t i = 0; i < k; ++i) {
    const double x = std::log(1.0 / est.cell_sizes[i]);
    const double y = std::log(double(est.cell_counts[i]));
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = double(k) * sxx - sx * sx;
  est.slope = (double(k) * sxy - sx * sy) / denom;
  const double intercept = (sy - est.slope * sx) / double(k);

  double ss = 0.0;
  for (size_t i = 0; i < k; ++i) {
    const double x = std::log(1.0 / est.cell_sizes[i]);
    const double y = std::log(double(est.cell_counts[i]));
    const double resid = y - (est.slope * x + intercept);
    ss += resid * resid;
  }
  est.residual = std::sqrt(ss / double(k));
  est.degenerate_fit = k < 4 || est.residual > residual_threshold;
  return est;
}

DimensionEstimate box_counting_dimension(std::span<const UnitVector3> points,
                                         std::span<const double> scales) {
  if (points.size() < 1000000)
    throw std::invalid_argument("box_counting_dimension: need at least 1e6 points");

  std::set<int> levels;
  for (double s : scales) {
    if (!(s > 0.0 && s < kPi))
      throw std::invalid_argument("box_counting_dimension: scale out of range");
    const int level = std::clamp(int(std::lround(std::log2(0.5 * kPi / s))), 1, 20);
    levels.insert(level);
  }
  if (levels.size() < 4)
    throw std::invalid_argument("box_counting_dimension: need >= 4 distinct scales");
  const double span_decades =
      (*levels.rbegin() - *levels.begin()) * std::log10(2.0);
  if (span_decades < 1.5)
    throw std::invalid_argument("box_counting_dimension: scales must span >= 1.5 decades");

  BoxCounter counter(*levels.begin(), *levels.rbegin());
  for (const UnitVector3& p : points) counter.insert(p);
  return counter.estimate();
}

UnitVector3 embed_plane_point(const PlanePoint& p) {
  return UnitVector3::normalized(p.x - 1.5, p.y - 1.5, 1.0);
}

BlochTrajectory lindblad_bloch_evolution(const LiouvilleParams& params,
                                         const DetectorConfig& cfg) {
  if (!(params.kappa > 0.0)) throw std::invalid_argument("lindblad: kappa must be positive");
  if (!(params.dt > 0.0)) throw std::invalid_argument("lindblad: dt must be positive");
  if (!(params.epsilon >= 0.0 && params.epsilon <= 1.0))
    throw std::invalid_argument("lindblad: epsilon must lie in [0,1]");
  if (norm(params.m0) > 1.0 + 1e-12)
    throw std::invalid_argument("lindblad: |m0| must not exceed 1");
  if (!cfg.zero_sum(1e-9))
    throw std::invalid_argument("lindblad: config must have zero direction sum");

  const int n = cfg.count();
  std::vector<Complex2x2> lind;
  lind.reserve(n);
  Complex2x2 lambda{};  // sum_i P_i^2
  for (const UnitVector3& d : cfg.directions) {
    const Complex2x2 p = fuzzy_projector(d, params.epsilon);
    lind.push_back(p);
    lambda = lambda + p * p;
  }
  // For symmetric configs the dissipator's anti-commutator term is pure norm
  // decay: sum_i P_i^2 = N (1 + eps^2)/4 * I. Checked, not assumed.
  {
    const double expectation = n * (1.0 + params.epsilon * params.epsilon) / 4.0;
    if (max_abs_diff(lambda, expectation * Complex2x2::identity()) > 1e-10)
      throw std::logic_error("lindblad: sum P(n_i,eps)^2 is not proportional to I");
  }

  auto deriv = [&](const Complex2x2& rho) {
    Complex2x2 gain{};
    for (const Complex2x2& p : lind) gain = gain + p * rho * p;
    const Complex2x2 anti = 0.5 * (lambda * rho + rho * lambda);
    return params.kappa * (gain - anti);
  };

  const Vec3 m0 = params.m0;
  Complex2x2 rho = 0.5 * (Complex2x2::identity() +
                          m0.x * pauli(1) + m0.y * pauli(2) + m0.z * pauli(3));

  BlochTrajectory traj;
  traj.closed_form_rate = double(n) * params.kappa * params.epsilon * params.epsilon / 3.0;
  const uint64_t steps = uint64_t(std::llround(params.t_max / params.dt));

  auto record = [&](double t, const Complex2x2& r) {
    traj.times.push_back(t);
    const Vec3 m{(r * pauli(1)).trace().real(), (r * pauli(2)).trace().real(),
                 (r * pauli(3)).trace().real()};
    traj.m.push_back(m);

    const Vec3 expected = std::exp(-traj.closed_form_rate * t) * m0;
    traj.max_closed_form_deviation =
        std::max({traj.max_closed_form_deviation, std::abs(m.x - expected.x),
                  std::abs(m.y - expected.y), std::abs(m.z - expected.z)});
    traj.max_trace_deviation =
        std::max(traj.max_trace_deviation, std::abs(r.trace().real() - 1.0));
    traj.max_hermiticity_deviation =
        std::max(traj.max_hermiticity_deviation, max_abs_diff(r, r.adjoint()));
    // Hermitian 2x2 eigenvalues: (tr +- sqrt(tr^2 - 4 det))/2.
    const double tr = r.trace().real();
    const double disc = std::max(0.0, tr * tr - 4.0 * r.det().real());
    traj.min_eigenvalue = std::min(traj.min_eigenvalue, 0.5 * (tr - std::sqrt(disc)));
  };

  traj.min_eigenvalue = 1.0;
  record(0.0, rho);

  const double dt = params.dt;
  for (uint64_t i = 1; i <= steps; ++i) {
    const Complex2x2 k1 = deriv(rho);
    const Complex2x2 k2 = deriv(rho + (0.5 * dt) * k1);
    const Complex2x2 k3 = deriv(rho + (0.5 * dt) * k2);
    const Complex2x2 k4 = deriv(rho + dt * k3);
    rho = rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (std::abs(rho.trace()) > 10.0)
      throw std::runtime_error("lindblad: state norm growing, step size unstable");
    record(double(i) * dt, rho);
  }

  const double m_start = norm(traj.m.front());
  const double m_end = norm(traj.m.back());
  if (m_start > 1e-12 && m_end > 1e-300 && !traj.times.empty() && traj.times.back() > 0.0)
    traj.measured_rate = std::log(m_start / m_end) / traj.times.back();
  return traj;
}

std::vector<ContractionStats> contraction_statistics(const DetectorConfig& cfg, double epsilon,
                                                     uint64_t samples, uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("contraction_statistics: need samples >= 1");
  Xoshiro256PlusPlus rng(seed, 0xC0 + cfg.count());

  struct Acc {
    double min = 1e300, max = 0.0, sum = 0.0;
    uint64_t above = 0, n = 0;
  };
  std::vector<Acc> acc(cfg.count());

  for (uint64_t s = 0; s < samples; ++s) {
    const UnitVector3 r1 = random_unit_vector(rng);
    const UnitVector3 r2 = random_unit_vector(rng);
    const double d0 = fubini_study_distance(r1, r2);
    if (d0 < 1e-8) continue;  // degenerate pair, ratio ill-conditioned
    for (int i = 0; i < cfg.count(); ++i) {
      const FuzzyProjector p(cfg.directions[i], epsilon);
      const double d1 = fubini_study_distance(jump(p, r1).new_state, jump(p, r2).new_state);
      const double ratio = d1 / d0;
      Acc& a = acc[i];
      a.min = std::min(a.min, ratio);
      a.max = std::max(a.max, ratio);
      a.sum += ratio;
      if (ratio > 1.0) ++a.above;
      ++a.n;
    }
  }

  std::vector<ContractionStats> out;
  out.reserve(cfg.count());
  for (int i = 0; i < cfg.count(); ++i) {
    const Acc& a = acc[i];
    ContractionStats st;
    st.detector_index = i;
    st.samples = a.n;
    st.min_ratio = a.n ? a.min : 0.0;
    st.max_ratio = a.max;
    st.mean_ratio = a.n ? a.sum / double(a.n) : 0.0;
    st.fraction_above_one = a.n ? double(a.above) / double(a.n) : 0.0;
    out.push_back(st);
  }
  return out;
}

std::vector<UnitVector3> uniform_sphere_points(uint64_t count, uint64_t seed) {
  Xoshiro256PlusPlus rng(seed, 0xA1);
  std::vector<UnitVector3> pts;
  pts.reserve(count);
  for (uint64_t i = 0; i < count; ++i) pts.push_back(random_unit_vector(rng));
  return pts;
}

std::vector<UnitVector3> great_circle_points(uint64_t count, uint64_t seed) {
  // A fixed tilted great circle; a circle along octant boundaries would be a
  // degenerate special case for the cell walk.
  Xoshiro256PlusPlus rng(seed, 0xA2);
  const Mat3 tilt = Mat3::rotation(UnitVector3::normalized(1.0, 0.4, 0.2), 0.7);
  std::vector<UnitVector3> pts;
  pts.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    const double phi = 2.0 * kPi * rng.next_double();
    pts.push_back(tilt.apply(UnitVector3::normalized(std::cos(phi), std::sin(phi), 0.0)));
  }
  return pts;
}

std::vector<UnitVector3> sierpinski_sphere_points(uint64_t count, uint64_t seed) {
  Xoshiro256PlusPlus rng(seed, 0xA3);
  PlanePoint p{1.5, 1.5};
  for (int i = 0; i < 64; ++i) p = sierpinski_step(p, rng);  // settle onto the attractor
  std::vector<UnitVector3> pts;
  pts.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    p = sierpinski_step(p, rng);
    pts.push_back(embed_plane_point(p));
  }
  return pts;
}

}  // namespace qfract
