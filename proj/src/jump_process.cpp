#include "qfract/jump_process.hpp"

#include <atomic>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

namespace qfract {

ProbabilityVector probabilities(const DetectorConfig& cfg, double epsilon,
                                const UnitVector3& r) {
  const size_t n = cfg.directions.size();
  ProbabilityVector p(n);
  const double base = 1.0 + epsilon * epsilon;

  if (cfg.zero_sum()) {
    // sum(n_i) = 0 makes the weights sum to N (1 + eps^2)/4 identically.
    const double inv = 1.0 / (double(n) * base);
    for (size_t i = 0; i < n; ++i)
      p[i] = (base + 2.0 * epsilon * dot(cfg.directions[i], r)) * inv;
    return p;
  }

  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    p[i] = 0.25 * (base + 2.0 * epsilon * dot(cfg.directions[i], r));
    total += p[i];
  }
  if (total <= 1e-300) throw AllWeightsZero("probabilities: all jump weights vanish");
  for (double& v : p) v /= total;
  return p;
}

StepResult step(const DetectorConfig& cfg, double epsilon, const UnitVector3& r,
                Xoshiro256PlusPlus& rng) {
  std::vector<double> weights(cfg.directions.size());
  const int idx = detail::select_detector(cfg, epsilon, r, rng.next_double(), weights);
  return {idx, jump(FuzzyProjector(cfg.directions[idx], epsilon), r).new_state};
}

void ChainSpec::validate_or_throw() const {
  if (config.directions.empty())
    throw std::invalid_argument("ChainSpec: config has no detectors");
  if (!(epsilon >= 0.0 && epsilon <= 1.0))
    throw std::invalid_argument("ChainSpec: epsilon must lie in [0,1]");
  if (iterations <= burn_in)
    throw std::invalid_argument("ChainSpec: iterations must exceed burn_in");
}

namespace detail {

RunManifest make_manifest(const ChainSpec& spec) {
  RunManifest m;
  m.config_name = spec.config.name;
  m.detector_count = spec.config.count();
  m.epsilon = spec.epsilon;
  m.seed = spec.seed;
  m.chain_id = spec.chain_id;
  m.burn_in = spec.burn_in;
  m.iterations = spec.iterations;
  if (spec.initial_state) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g", spec.initial_state->x(),
                  spec.initial_state->y(), spec.initial_state->z());
    m.initial_state = buf;
  } else {
    m.initial_state = "random-uniform";
  }
  m.rng_algorithm = Xoshiro256PlusPlus::kAlgorithmId;
  m.software_version = kSoftwareVersion;
  return m;
}

}  // namespace detail

std::string RunManifest::to_key_values() const {
  std::ostringstream out;
  char buf[64];
  out << "config=" << config_name << '\n';
  out << "detectors=" << detector_count << '\n';
  std::snprintf(buf, sizeof buf, "%.17g", epsilon);
  out << "epsilon=" << buf << '\n';
  out << "seed=" << seed << '\n';
  out << "chain_id=" << chain_id << '\n';
  out << "burn_in=" << burn_in << '\n';
  out << "iterations=" << iterations << '\n';
  out << "initial_state=" << initial_state << '\n';
  out << "rng=" << rng_algorithm << '\n';
  out << "version=" << software_version << '\n';
  out << "points_emitted=" << points_emitted << '\n';
  std::snprintf(buf, sizeof buf, "%.6f", wall_time_seconds);
  out << "wall_time_s=" << buf << '\n';
  return out.str();
}

EnsembleResult run_ensemble(std::span<const ChainSpec> specs, const Projection& projection,
                            unsigned worker_threads) {
  {
    std::set<uint32_t> ids;
    for (const ChainSpec& s : specs)
      if (!ids.insert(s.chain_id).second)
        throw std::invalid_argument("run_ensemble: chain ids must be pairwise distinct");
  }

  EnsembleResult result{SphereHistogram(projection), {}};
  result.manifests.resize(specs.size());
  if (specs.empty()) return result;

  unsigned workers = worker_threads != 0 ? worker_threads : std::thread::hardware_concurrency();
  workers = std::max(1u, std::min<unsigned>(workers, specs.size()));

  std::vector<SphereHistogram> parts(workers, SphereHistogram(projection));
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);

  // Each worker accumulates into a stack-local histogram and publishes it
  // once at the end; the hot counters of different workers must not share
  // cache lines.
  auto work = [&](unsigned w) {
    try {
      SphereHistogram local(projection);
      for (size_t i = next.fetch_add(1); i < specs.size(); i = next.fetch_add(1)) {
        result.manifests[i] =
            run_chain(specs[i], [&local](const UnitVector3& r) { local.accumulate(r); });
      }
      parts[w] = std::move(local);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  for (const SphereHistogram& h : parts) result.histogram.merge(h);
  return result;
}

PlanePoint sierpinski_step(const PlanePoint& v, Xoshiro256PlusPlus& rng) {
  // A[i] = ((0.5, 0, ax_i), (0, 0.5, ay_i), (0, 0, 1)) acting on (x, y, 1).
  static constexpr double maps[3][3][3] = {
      {{0.5, 0.0, 1.0}, {0.0, 0.5, 1.0}, {0.0, 0.0, 1.0}},
      {{0.5, 0.0, 1.0}, {0.0, 0.5, 0.5}, {0.0, 0.0, 1.0}},
      {{0.5, 0.0, 0.5}, {0.0, 0.5, 1.0}, {0.0, 0.0, 1.0}},
  };
  const double u = rng.next_double();
  const int pick = u < 1.0 / 3.0 ? 0 : (u < 2.0 / 3.0 ? 1 : 2);
  const auto& A = maps[pick];
  const double h[3] = {v.x, v.y, 1.0};
  double out[3];
  for (int row = 0; row < 3; ++row)
    out[row] = A[row][0] * h[0] + A[row][1] * h[1] + A[row][2] * h[2];
  return {out[0] / out[2], out[1] / out[2]};  // out[2] stays exactly 1
}

struct PointStreamWriter::Impl {
  std::ofstream out;
  PointFormat format;
  std::string path;
};

PointStreamWriter::PointStreamWriter(const std::string& path, PointFormat format)
    : impl_(new Impl{std::ofstream(path, format == PointFormat::binary
                                             ? std::ios::binary | std::ios::out
                                             : std::ios::out),
                     format, path}) {
  if (!impl_->out) {
    delete impl_;
    impl_ = nullptr;
    throw std::runtime_error("PointStreamWriter: cannot open " + path);
  }
}

PointStreamWriter::~PointStreamWriter() { delete impl_; }

namespace {
void put_le64(std::ofstream& out, double v) {
  uint64_t bits;
  std::memcpy(&bits, &v, sizeof bits);
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = char((bits >> (8 * i)) & 0xFF);
  out.write(bytes, 8);
}
}  // namespace

void PointStreamWriter::write(const UnitVector3& r) {
  if (impl_->format == PointFormat::binary) {
    put_le64(impl_->out, r.x());
    put_le64(impl_->out, r.y());
    put_le64(impl_->out, r.z());
  } else {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", r.x(), r.y(), r.z());
    impl_->out << buf;
  }
  if (!impl_->out) throw std::runtime_error("PointStreamWriter: write failed: " + impl_->path);
}

void PointStreamWriter::close() {
  impl_->out.flush();
  if (!impl_->out) throw std::runtime_error("PointStreamWriter: flush failed: " + impl_->path);
  impl_->out.close();
}

std::vector<UnitVector3> read_point_stream(const std::string& path, PointFormat format) {
  std::vector<UnitVector3> points;
  if (format == PointFormat::binary) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_point_stream: cannot open " + path);
    char bytes[24];
    while (in.read(bytes, 24)) {
      double c[3];
      for (int k = 0; k < 3; ++k) {
        uint64_t bits = 0;
        for (int i = 7; i >= 0; --i) bits = (bits << 8) | uint8_t(bytes[8 * k + i]);
        std::memcpy(&c[k], &bits, sizeof(double));
      }
      points.push_back(UnitVector3::normalized(c[0], c[1], c[2]));
    }
    if (in.gcount() != 0)
      throw std::runtime_error("read_point_stream: truncated triple in " + path);
  } else {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_point_stream: cannot open " + path);
    double x, y, z;
    while (in >> x >> y >> z) points.push_back(UnitVector3::normalized(x, y, z));
  }
  return points;
}

}  // namespace qfract
