// qfract: quantum-jump fractal simulator on the Bloch sphere.
//
// Subcommands: render (attractor images), dimension (box-counting
// estimates), liouville (ensemble Bloch decay), validate (config files),
// list (built-in detector configurations).
//
// Exit codes: 0 success, 2 argument error, 3 config validation failure,
// 4 I/O failure.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "qfract/analysis.hpp"
#include "qfract/detector_config.hpp"
#include "qfract/histogram.hpp"
#include "qfract/jump_process.hpp"

using namespace qfract;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Work decomposition is fixed at 2^20 emitted points per chain so results do
// not depend on the worker-thread count.
constexpr uint64_t kPointsPerChain = 1ULL << 20;

class ArgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Accepts plain integers and scientific notation (1e7).
uint64_t parse_count(const std::string& text) {
  try {
    size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size() || v < 0 || v > 9.2e18 || v != std::floor(v))
      throw ArgError("not a whole number: " + text);
    return static_cast<uint64_t>(v);
  } catch (const ArgError&) {
    throw;
  } catch (const std::exception&) {
    throw ArgError("cannot parse count: " + text);
  }
}

UnitVector3 parse_direction(const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  double x, y, z;
  if (!(in >> x >> y >> z)) throw ArgError("expected x,y,z direction: " + text);
  return UnitVector3::normalized(x, y, z);
}

struct ConfigSource {
  DetectorConfig config;
  std::string origin;  // builtin name or file path
};

ConfigSource resolve_config(const std::string& solid, const std::string& file) {
  if (!solid.empty() && !file.empty())
    throw ArgError("--solid and --config are mutually exclusive");
  if (!solid.empty()) {
    const auto s = solid_from_name(solid);
    if (!s) throw ArgError("unknown solid '" + solid + "' (see `qfract list`)");
    return {builtin(*s), solid};
  }
  if (!file.empty()) {
    std::vector<std::string> warnings;
    DetectorConfig cfg = load_config(file, &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << '\n';
    return {cfg, file};
  }
  throw ArgError("one of --solid or --config is required");
}

double resolve_epsilon(const ConfigSource& src, double flag_epsilon) {
  if (flag_epsilon >= 0.0) {
    if (flag_epsilon > 1.0) throw ArgError("--epsilon must lie in [0,1]");
    return flag_epsilon;
  }
  if (src.config.has_default_epsilon()) return src.config.default_epsilon;
  throw ArgError("config '" + src.origin + "' carries no default epsilon; pass --epsilon");
}

std::optional<UnitVector3> parse_initial(const std::string& text) {
  if (text == "north") return UnitVector3{};
  if (text == "random") return std::nullopt;
  return parse_direction(text);
}

std::vector<ChainSpec> make_chain_specs(const DetectorConfig& cfg, double epsilon,
                                        uint64_t seed, uint64_t total_points,
                                        uint64_t burn_in,
                                        const std::optional<UnitVector3>& initial) {
  if (total_points == 0) throw ArgError("--iterations/--points must be positive");
  std::vector<ChainSpec> specs;
  uint64_t remaining = total_points;
  uint32_t id = 0;
  while (remaining > 0) {
    const uint64_t share = std::min(remaining, kPointsPerChain);
    ChainSpec spec;
    spec.config = cfg;
    spec.epsilon = epsilon;
    spec.seed = seed;
    spec.chain_id = id++;
    spec.burn_in = burn_in;
    spec.iterations = burn_in + share;
    spec.initial_state = initial;
    specs.push_back(std::move(spec));
    remaining -= share;
  }
  return specs;
}

std::string format_g(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------- render

struct RenderArgs {
  std::string solid, config_file;
  double epsilon = -1.0;
  std::string iterations = "1e7";
  uint64_t burn_in = 100;
  unsigned chains = 0;  // worker threads; 0 = hardware
  uint64_t seed = 1;
  std::string initial = "north";
  std::string projection = "ortho_north";
  int width = 1024, height = 1024;
  std::string zoom_center;
  double zoom_radius_deg = 0.0;
  std::string tonemap_scale = "log";
  std::string output, manifest, csv, points_out;
  std::string points_format = "binary";
  bool quiet = false;
};

int cmd_render(const RenderArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  const ConfigSource src = resolve_config(args.solid, args.config_file);
  const double epsilon = resolve_epsilon(src, args.epsilon);
  const uint64_t total = parse_count(args.iterations);
  const auto initial = parse_initial(args.initial);

  Projection proj;
  const auto kind = projection_kind_from_name(args.projection);
  if (!kind) throw ArgError("unknown projection '" + args.projection + "'");
  proj.kind = *kind;
  proj.width = args.width;
  proj.height = args.height;
  if (proj.width < 1 || proj.height < 1) throw ArgError("image size must be positive");
  if (!args.zoom_center.empty() || args.zoom_radius_deg > 0.0) {
    ZoomWindow zoom;
    zoom.center = args.zoom_center.empty() ? UnitVector3{} : parse_direction(args.zoom_center);
    zoom.angular_radius =
        (args.zoom_radius_deg > 0.0 ? args.zoom_radius_deg : 90.0) * kPi / 180.0;
    proj.zoom = zoom;
  }
  const auto scale = tonemap_from_name(args.tonemap_scale);
  if (!scale) throw ArgError("unknown tonemap '" + args.tonemap_scale + "'");

  const auto specs =
      make_chain_specs(src.config, epsilon, args.seed, total, args.burn_in, initial);

  SphereHistogram merged(proj);
  std::vector<RunManifest> manifests;
  if (!args.points_out.empty()) {
    // Stream points in chain order; forces sequential chain processing but
    // leaves the histogram identical to a parallel run.
    if (args.points_format != "binary" && args.points_format != "text")
      throw ArgError("unknown points format '" + args.points_format + "'");
    const auto fmt =
        args.points_format == "text" ? PointFormat::text : PointFormat::binary;
    PointStreamWriter writer(args.points_out, fmt);
    for (const ChainSpec& spec : specs) {
      manifests.push_back(run_chain(spec, [&](const UnitVector3& r) {
        writer.write(r);
        merged.accumulate(r);
      }));
      if (!args.quiet)
        std::cerr << "\rchains " << manifests.size() << '/' << specs.size() << std::flush;
    }
    writer.close();
  } else {
    EnsembleResult result = run_ensemble(specs, proj, args.chains);
    merged = std::move(result.histogram);
    manifests = std::move(result.manifests);
  }
  if (!args.quiet) std::cerr << '\r';

  const GrayImage img = tonemap(merged, *scale);
  const std::string output = args.output.empty() ? src.config.name + ".pgm" : args.output;
  write_pgm(img, output);
  if (!args.csv.empty()) write_csv(merged, args.csv);

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  std::ostringstream mf;
  mf << "command=render\n";
  mf << "version=" << kSoftwareVersion << '\n';
  mf << "config=" << src.config.name << '\n';
  if (!args.config_file.empty()) mf << "config_file=" << args.config_file << '\n';
  mf << "detectors=" << src.config.count() << '\n';
  mf << "epsilon=" << format_g(epsilon) << '\n';
  mf << "seed=" << args.seed << '\n';
  mf << "iterations_total=" << total << '\n';
  mf << "burn_in=" << args.burn_in << '\n';
  mf << "chain_points=" << kPointsPerChain << '\n';
  mf << "chains_total=" << specs.size() << '\n';
  mf << "initial_state=" << manifests.front().initial_state << '\n';
  mf << "projection=" << projection_kind_name(proj.kind) << '\n';
  mf << "width=" << proj.width << '\n';
  mf << "height=" << proj.height << '\n';
  if (proj.zoom) {
    mf << "zoom_center=" << format_g(proj.zoom->center.x()) << ' '
       << format_g(proj.zoom->center.y()) << ' ' << format_g(proj.zoom->center.z()) << '\n';
    mf << "zoom_radius_deg=" << format_g(proj.zoom->angular_radius * 180.0 / kPi) << '\n';
  }
  mf << "tonemap=" << tonemap_name(*scale) << '\n';
  mf << "rng=" << Xoshiro256PlusPlus::kAlgorithmId << '\n';
  mf << "points_emitted=" << merged.total_in() + merged.total_dropped() << '\n';
  mf << "points_binned=" << merged.total_in() << '\n';
  mf << "points_dropped=" << merged.total_dropped() << '\n';
  mf << "output=" << output << '\n';
  mf << "wall_time_s=" << std::fixed << std::setprecision(3) << wall << '\n';

  const std::string manifest_path = args.manifest.empty() ? output + ".manifest" : args.manifest;
  std::ofstream mfile(manifest_path);
  if (!mfile) throw std::runtime_error("cannot write manifest: " + manifest_path);
  mfile << mf.str();
  if (!mfile.flush()) throw std::runtime_error("manifest write failed: " + manifest_path);

  std::cout << "wrote " << output << " (" << merged.total_in() << " binned, "
            << merged.total_dropped() << " dropped) and " << manifest_path << '\n';
  return 0;
}

// ------------------------------------------------------------- dimension

struct DimensionArgs {
  std::string solid, config_file, reference, points_in;
  std::string epsilons;
  std::string points = "1e6";
  uint64_t seed = 1;
  uint64_t burn_in = 100;
  unsigned chains = 0;
  int min_level = 3, max_level = 9;
  std::string points_format = "binary";
  std::string csv;
};

std::vector<double> parse_epsilons(const std::string& text) {
  std::vector<double> out;
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  double v;
  while (in >> v) {
    if (v < 0.0 || v > 1.0) throw ArgError("epsilon out of range: " + std::to_string(v));
    out.push_back(v);
  }
  if (out.empty()) throw ArgError("no epsilon values in '" + text + "'");
  return out;
}

void print_estimate(const DimensionEstimate& est, std::ostream& os) {
  os << est.source;
  if (est.epsilon > 0.0) os << " eps=" << est.epsilon;
  os << "  points=" << est.points << '\n';
  os << "  level  cell(deg)   occupied\n";
  for (size_t i = 0; i < est.levels.size(); ++i) {
    char line[96];
    std::snprintf(line, sizeof line, "  %5d  %9.4f %10llu\n", est.levels[i],
                  est.cell_sizes[i] * 180.0 / kPi,
                  static_cast<unsigned long long>(est.cell_counts[i]));
    os << line;
  }
  char fit[96];
  std::snprintf(fit, sizeof fit, "  d = %.4f  (rms residual %.4f)%s\n", est.slope,
                est.residual, est.degenerate_fit ? "  DEGENERATE FIT" : "");
  os << fit;
}

DimensionEstimate estimate_from_chains(const DetectorConfig& cfg, double epsilon,
                                       uint64_t seed, uint64_t total, uint64_t burn_in,
                                       int min_level, int max_level, unsigned workers) {
  const auto specs = make_chain_specs(cfg, epsilon, seed, total, burn_in, UnitVector3{});
  unsigned n_workers = workers ? workers : std::thread::hardware_concurrency();
  n_workers = std::max(1u, std::min<unsigned>(n_workers, specs.size()));

  std::vector<BoxCounter> counters(n_workers, BoxCounter(min_level, max_level));
  std::atomic<size_t> next{0};
  auto work = [&](unsigned w) {
    BoxCounter local(min_level, max_level);  // keep hot counters thread-local
    for (size_t i = next.fetch_add(1); i < specs.size(); i = next.fetch_add(1))
      run_chain(specs[i], [&](const UnitVector3& r) { local.insert(r); });
    counters[w] = std::move(local);
  };
  if (n_workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < n_workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (unsigned w = 1; w < n_workers; ++w) counters[0].merge(counters[w]);

  DimensionEstimate est = counters[0].estimate();
  est.source = cfg.name;
  est.epsilon = epsilon;
  return est;
}

int cmd_dimension(const DimensionArgs& args) {
  if (args.min_level < 1 || args.max_level < args.min_level)
    throw ArgError("need 1 <= --min-level <= --max-level");
  const uint64_t total = parse_count(args.points);
  std::vector<DimensionEstimate> estimates;

  if (!args.reference.empty()) {
    std::vector<UnitVector3> pts;
    if (args.reference == "uniform")
      pts = uniform_sphere_points(total, args.seed);
    else if (args.reference == "circle")
      pts = great_circle_points(total, args.seed);
    else if (args.reference == "sierpinski")
      pts = sierpinski_sphere_points(total, args.seed);
    else
      throw ArgError("unknown reference '" + args.reference + "'");
    BoxCounter counter(args.min_level, args.max_level);
    for (const UnitVector3& p : pts) counter.insert(p);
    DimensionEstimate est = counter.estimate();
    est.source = args.reference;
    estimates.push_back(std::move(est));
  } else if (!args.points_in.empty()) {
    const auto fmt =
        args.points_format == "text" ? PointFormat::text : PointFormat::binary;
    const auto pts = read_point_stream(args.points_in, fmt);
    BoxCounter counter(args.min_level, args.max_level);
    for (const UnitVector3& p : pts) counter.insert(p);
    DimensionEstimate est = counter.estimate();
    est.source = args.points_in;
    estimates.push_back(std::move(est));
  } else {
    const ConfigSource src = resolve_config(args.solid, args.config_file);
    const std::vector<double> eps_list =
        args.epsilons.empty() ? std::vector<double>{resolve_epsilon(src, -1.0)}
                              : parse_epsilons(args.epsilons);
    for (double eps : eps_list) {
      estimates.push_back(estimate_from_chains(src.config, eps, args.seed, total,
                                               args.burn_in, args.min_level,
                                               args.max_level, args.chains));
    }
  }

  for (const DimensionEstimate& est : estimates) print_estimate(est, std::cout);

  if (!args.csv.empty()) {
    std::ofstream out(args.csv);
    if (!out) throw std::runtime_error("cannot write " + args.csv);
    out << "source,epsilon,level,cell_size_rad,occupied,slope,residual,degenerate\n";
    for (const DimensionEstimate& est : estimates)
      for (size_t i = 0; i < est.levels.size(); ++i)
        out << est.source << ',' << format_g(est.epsilon) << ',' << est.levels[i] << ','
            << format_g(est.cell_sizes[i]) << ',' << est.cell_counts[i] << ','
            << format_g(est.slope) << ',' << format_g(est.residual) << ','
            << (est.degenerate_fit ? 1 : 0) << '\n';
  }
  return 0;
}

// ------------------------------------------------------------- liouville

struct LiouvilleArgs {
  std::string solid, config_file;
  double epsilon = -1.0;
  double kappa = 1.0;
  double t_max = 3.0;
  double dt = 1e-3;
  std::string m0 = "1,0,0";
  std::string csv;
};

int cmd_liouville(const LiouvilleArgs& args) {
  const ConfigSource src = resolve_config(args.solid, args.config_file);
  LiouvilleParams params;
  params.kappa = args.kappa;
  params.epsilon = resolve_epsilon(src, args.epsilon);
  params.t_max = args.t_max;
  params.dt = args.dt;
  params.m0 = parse_direction(args.m0).vec();

  const BlochTrajectory traj = lindblad_bloch_evolution(params, src.config);

  char line[160];
  std::snprintf(line, sizeof line,
                "config=%s N=%d epsilon=%.6g kappa=%.6g t=[0,%.6g] dt=%.3g\n",
                src.config.name.c_str(), src.config.count(), params.epsilon, params.kappa,
                params.t_max, params.dt);
  std::cout << line;
  std::snprintf(line, sizeof line, "closed-form rate N*kappa*eps^2/3 = %.9g\n",
                traj.closed_form_rate);
  std::cout << line;
  std::snprintf(line, sizeof line, "measured decay rate              = %.9g\n",
                traj.measured_rate);
  std::cout << line;
  std::snprintf(line, sizeof line,
                "max |m(t) - closed form| = %.3g, trace dev %.3g, min eigenvalue %.3g\n",
                traj.max_closed_form_deviation, traj.max_trace_deviation,
                traj.min_eigenvalue);
  std::cout << line;

  if (!args.csv.empty()) {
    std::ofstream out(args.csv);
    if (!out) throw std::runtime_error("cannot write " + args.csv);
    out << "t,mx,my,mz,norm,closed_form_norm\n";
    const double m0n = norm(params.m0);
    for (size_t i = 0; i < traj.times.size(); ++i) {
      out << format_g(traj.times[i]) << ',' << format_g(traj.m[i].x) << ','
          << format_g(traj.m[i].y) << ',' << format_g(traj.m[i].z) << ','
          << format_g(norm(traj.m[i])) << ','
          << format_g(m0n * std::exp(-traj.closed_form_rate * traj.times[i])) << '\n';
    }
  }
  return 0;
}

// ------------------------------------------------------- validate / list

int cmd_validate(const std::string& solid, const std::string& file, const std::string& csv) {
  const ConfigSource src = resolve_config(solid, file);
  const ValidationReport rep = validate(src.config);

  if (!csv.empty()) {
    std::ofstream out(csv);
    if (!out) throw std::runtime_error("cannot write " + csv);
    out << "index,norm_deviation,nearest_neighbor_distance\n";
    for (size_t i = 0; i < rep.norm_deviation.size(); ++i)
      out << i << ',' << format_g(rep.norm_deviation[i]) << ','
          << format_g(rep.nearest_neighbor_distance[i]) << '\n';
  }

  std::cout << "config " << src.config.name << " (" << src.config.count() << " detectors)\n";
  char line[128];
  std::snprintf(line, sizeof line, "  max norm deviation : %.3g  [%s]\n",
                rep.max_norm_deviation, rep.all_unit ? "ok" : "FAIL");
  std::cout << line;
  std::snprintf(line, sizeof line, "  |sum of directions|: %.3g  [%s]\n", rep.sum_norm,
                rep.zero_sum ? "ok, simplified probabilities apply" : "FAIL");
  std::cout << line;
  std::cout << "  detector count     : " << src.config.count() << "  ["
            << (rep.count_ok ? "ok" : "FAIL") << "]\n";
  if (!rep.duplicates.empty()) {
    std::cout << "  duplicate directions:";
    for (const auto& [i, j] : rep.duplicates) std::cout << " (" << i << ',' << j << ')';
    std::cout << "  [FAIL]\n";
  }
  std::cout << (rep.passed() ? "PASSED\n" : "FAILED\n");
  return rep.passed() ? 0 : 3;
}

int cmd_list(const std::string& csv) {
  if (!csv.empty()) {
    std::ofstream out(csv);
    if (!out) throw std::runtime_error("cannot write " + csv);
    out << "name,detectors,default_epsilon\n";
    for (Solid s : all_solids()) {
      const DetectorConfig cfg = builtin(s);
      out << cfg.name << ',' << cfg.count() << ',' << format_g(cfg.default_epsilon) << '\n';
    }
  }
  std::cout << "name                  N   default_epsilon\n";
  for (Solid s : all_solids()) {
    const DetectorConfig cfg = builtin(s);
    char line[96];
    std::snprintf(line, sizeof line, "%-20s %3d   %.2f\n", cfg.name.c_str(), cfg.count(),
                  cfg.default_epsilon);
    std::cout << line;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum-jump fractal simulator on the Bloch sphere"};
  app.require_subcommand(1);

  RenderArgs render_args;
  CLI::App* render = app.add_subcommand("render", "simulate jumps and write a PGM image");
  render->add_option("--solid", render_args.solid, "built-in configuration name");
  render->add_option("--config", render_args.config_file, "detector config file");
  render->add_option("--epsilon", render_args.epsilon, "fuzziness in [0,1]");
  render->add_option("--iterations", render_args.iterations,
                     "total emitted points (accepts 1e7)");
  render->add_option("--burn-in", render_args.burn_in, "discarded leading jumps per chain");
  render->add_option("--chains", render_args.chains,
                     "worker threads (default: all cores; output independent of this)");
  render->add_option("--seed", render_args.seed, "RNG seed");
  render->add_option("--initial", render_args.initial, "north | random | x,y,z");
  render->add_option("--projection", render_args.projection,
                     "ortho_north | ortho_south | equirectangular | stereographic");
  render->add_option("--width", render_args.width, "image width");
  render->add_option("--height", render_args.height, "image height");
  render->add_option("--zoom-center", render_args.zoom_center, "zoom cap center x,y,z");
  render->add_option("--zoom-radius", render_args.zoom_radius_deg, "zoom cap radius, degrees");
  render->add_option("--tonemap", render_args.tonemap_scale, "log | loglog");
  render->add_option("--output", render_args.output, "output PGM path (default <name>.pgm)");
  render->add_option("--manifest", render_args.manifest,
                     "manifest path (default <output>.manifest)");
  render->add_option("--csv", render_args.csv, "also write bin counts as CSV");
  render->add_option("--points-out", render_args.points_out, "raw point stream path");
  render->add_option("--points-format", render_args.points_format, "binary | text");
  render->add_flag("--quiet", render_args.quiet, "suppress the progress counter");

  DimensionArgs dim_args;
  CLI::App* dim = app.add_subcommand("dimension", "box-counting dimension estimates");
  dim->add_option("--solid", dim_args.solid, "built-in configuration name");
  dim->add_option("--config", dim_args.config_file, "detector config file");
  dim->add_option("--reference", dim_args.reference, "uniform | circle | sierpinski");
  dim->add_option("--points-in", dim_args.points_in, "estimate a stored point stream");
  dim->add_option("--points-format", dim_args.points_format, "binary | text");
  dim->add_option("--epsilons", dim_args.epsilons, "comma-separated fuzziness values");
  dim->add_option("--points", dim_args.points, "points per estimate (accepts 1e7)");
  dim->add_option("--seed", dim_args.seed, "RNG seed");
  dim->add_option("--burn-in", dim_args.burn_in, "discarded leading jumps per chain");
  dim->add_option("--chains", dim_args.chains, "worker threads");
  dim->add_option("--min-level", dim_args.min_level, "coarsest subdivision level");
  dim->add_option("--max-level", dim_args.max_level, "finest subdivision level");
  dim->add_option("--csv", dim_args.csv, "write the estimates as CSV");

  LiouvilleArgs liou_args;
  CLI::App* liou = app.add_subcommand("liouville", "ensemble Bloch decay vs closed form");
  liou->add_option("--solid", liou_args.solid, "built-in configuration name");
  liou->add_option("--config", liou_args.config_file, "detector config file");
  liou->add_option("--epsilon", liou_args.epsilon, "fuzziness in [0,1]");
  liou->add_option("--kappa", liou_args.kappa, "coupling rate");
  liou->add_option("--t", liou_args.t_max, "integration horizon");
  liou->add_option("--dt", liou_args.dt, "RK4 step size");
  liou->add_option("--m0", liou_args.m0, "initial Bloch vector x,y,z");
  liou->add_option("--csv", liou_args.csv, "write the trajectory as CSV");

  std::string validate_solid, validate_file_flag, validate_positional, validate_csv;
  CLI::App* val = app.add_subcommand("validate", "check a detector configuration");
  val->add_option("file", validate_positional, "config file path");
  val->add_option("--solid", validate_solid, "built-in configuration name");
  val->add_option("--config", validate_file_flag, "config file path");
  val->add_option("--csv", validate_csv, "write per-vector diagnostics as CSV");

  std::string list_csv;
  CLI::App* list = app.add_subcommand("list", "list built-in configurations");
  list->add_option("--csv", list_csv, "write the listing as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (render->parsed()) return cmd_render(render_args);
    if (dim->parsed()) return cmd_dimension(dim_args);
    if (liou->parsed()) return cmd_liouville(liou_args);
    if (val->parsed()) {
      const std::string file =
          !validate_positional.empty() ? validate_positional : validate_file_flag;
      return cmd_validate(validate_solid, file, validate_csv);
    }
    if (list->parsed()) return cmd_list(list_csv);
  } catch (const ArgError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  }
  return 2;
}
