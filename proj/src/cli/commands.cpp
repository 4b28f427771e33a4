#include "qcc/cli/commands.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <ostream>

#include <CLI11.hpp>
#include <omp.h>

#include "qcc/crystal1d.hpp"
#include "qcc/crystal2d.hpp"
#include "qcc/csv.hpp"
#include "qcc/disorder.hpp"
#include "qcc/greens.hpp"

#ifndef QCC_VERSION
#define QCC_VERSION "unknown"
#endif

namespace qcc::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Output files of one run, staged as *.partial until commit().
class OutputSet {
 public:
  explicit OutputSet(fs::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec || !fs::is_directory(dir_)) {
      throw IoError("cannot create output directory " + dir_.string() + ": " + ec.message());
    }
  }

  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;

  ~OutputSet() {
    if (committed_) return;
    for (auto& f : files_) {
      f.stream->close();
      std::error_code ec;
      fs::remove(f.partial, ec);
    }
  }

  std::ostream& open(const std::string& name) {
    File f{dir_ / name, dir_ / (name + ".partial"), std::make_unique<std::ofstream>()};
    f.stream->open(f.partial, std::ios::binary | std::ios::trunc);
    if (!*f.stream) throw IoError("cannot open " + f.partial.string() + " for writing");
    files_.push_back(std::move(f));
    return *files_.back().stream;
  }

  void commit() {
    for (auto& f : files_) {
      f.stream->flush();
      if (!*f.stream) throw IoError("write failed for " + f.partial.string());
      f.stream->close();
    }
    for (auto& f : files_) {
      std::error_code ec;
      fs::rename(f.partial, f.target, ec);
      if (ec) throw IoError("cannot rename " + f.partial.string() + ": " + ec.message());
    }
    committed_ = true;
  }

 private:
  struct File {
    fs::path target;
    fs::path partial;
    std::unique_ptr<std::ofstream> stream;
  };
  fs::path dir_;
  std::vector<File> files_;
  bool committed_ = false;
};

json body_of(const LoadedConfig& loaded) {
  json body = loaded.effective;
  body.erase("seed");
  return body;
}

void run_scatter(const ScatterConfig& c, OutputSet& out) {
  CsvWriter csv(out.open("scatter.csv"), {"omega", "abs_r", "abs_t", "arg_t"});
  for (double w : c.omega.values()) {
    const RT rt = junction_rt(c.junction, w);
    csv.row({w, std::abs(rt.r), std::abs(rt.t), std::arg(rt.t)});
  }
}

void run_bands1d(const Bands1dConfig& c, OutputSet& out) {
  const CrystalChain cell = to_chain(c.cell);
  const auto grid = c.omega.values();
  const auto points = band_structure(cell, grid);
  CsvWriter bands(out.open("bands1d.csv"), {"omega", "re_p", "im_p"});
  for (const auto& p : points) bands.row({p.omega, p.p.real(), p.p.imag()});
  CsvWriter gaps(out.open("gaps1d.csv"), {"omega_lo", "omega_hi"});
  for (const auto& g : find_gaps(points, cell)) gaps.row({g.omega_lo, g.omega_hi});
}

void run_bands2d(const Bands2dConfig& c, OutputSet& out) {
  const CrystalChain cell_h = to_chain(c.cell);
  const CrystalChain cell_v = c.cell_v ? to_chain(*c.cell_v) : cell_h;
  CsvWriter csv(out.open("contours.csv"), {"omega", "px", "py"});
  for (double w : c.omegas) {
    std::vector<Bloch2D> contour;
    try {
      contour = isofrequency_contour(cell_h, cell_v, w, c.resolution);
    } catch (const EmptyContour&) {
      continue;  // frequency inside a 2D gap: no rows
    }
    for (const auto& p : contour) csv.row({p.omega, p.px, p.py});
  }
}

void run_refract(const RefractConfig& c, OutputSet& out) {
  Interface iface;
  iface.c1 = c.c1;
  iface.cell = to_chain(c.cell);
  iface.rotated = c.rotated;
  const auto omegas = c.omega.values();
  const auto thetas = c.theta_in.values();
  const auto rows = refraction_scan(iface, omegas, thetas);
  CsvWriter csv(out.open("refract.csv"), {"omega", "theta_in", "theta_R"});
  for (const auto& row : rows) {
    csv.row({row.omega, row.theta_in,
             row.result ? row.result->theta_R : std::numeric_limits<double>::quiet_NaN()});
  }
  CsvWriter windows(out.open("negative_windows.csv"), {"omega_lo", "omega_hi"});
  for (const auto& w : negative_refraction_windows(rows)) windows.row({w.omega_lo, w.omega_hi});
}

void run_entangle(const EntangleConfig& c, std::uint64_t seed, int workers, OutputSet& out) {
  DisorderSpec spec;
  spec.base_chain = regular_chain(c.n_junctions, wavelengths(c.length), c.junction);
  spec.n_realizations = c.realizations;
  spec.seed = seed;
  spec.correlated_draws = c.correlated_draws;
  QubitParams qubits{c.gamma0, c.f, c.lambda_nr};
  EnsembleOptions options{c.d_points, workers};
  const auto omegas = c.omega.values();
  const auto deltas = c.delta.values();
  const EnsembleResult result = ensemble_map(spec, omegas, deltas, qubits, options);

  CsvWriter csv(out.open("entangle.csv"), {"omega", "delta", "mean_C", "mean_T2", "n_failed"});
  CsvWriter dopt(out.open("entangle_dopt.csv"), {"omega", "delta", "mean_D_opt"});
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    for (std::size_t j = 0; j < deltas.size(); ++j) {
      const std::size_t k = result.index(i, j);
      csv.row({omegas[i], deltas[j], result.mean_concurrence[k], result.mean_T2[k],
               static_cast<double>(result.n_failed[k])});
      // Separations are reported in reference wavelengths, like the config.
      dopt.row({omegas[i], deltas[j], result.mean_D_opt[k] / wavelengths(1.0)});
    }
  }
}

void run_greens(const GreensConfig& c, OutputSet& out) {
  const CrystalChain chain = to_chain(c.chain);
  const ScatteringSummary region = chain_scattering(chain, c.omega);
  const double source = wavelengths(c.source);
  CsvWriter csv(out.open("greens.csv"), {"x", "re_G", "im_G"});
  for (double x : c.x.values()) {
    const Complex g = scatterer_green(region, wavelengths(x), source, c.omega);
    csv.row({x, g.real(), g.imag()});
  }
}

int workers_from_env() {
  const char* env = std::getenv("QCC_WORKERS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || n < 1 || n > 4096) {
    throw ConfigError(std::string("QCC_WORKERS: expected a positive integer, got \"") + env + "\"");
  }
  return static_cast<int>(n);
}

}  // namespace

std::string version() { return QCC_VERSION; }

void run(const RunRequest& request) {
  const LoadedConfig loaded = load_config(request.command, request.config, request.seed);
  const json body = body_of(loaded);
  if (request.workers > 0) omp_set_num_threads(request.workers);

  OutputSet out(request.output_dir);
  const std::string& cmd = request.command;
  if (cmd == "scatter") {
    run_scatter(parse_scatter(body), out);
  } else if (cmd == "bands1d") {
    run_bands1d(parse_bands1d(body), out);
  } else if (cmd == "bands2d") {
    run_bands2d(parse_bands2d(body), out);
  } else if (cmd == "refract") {
    run_refract(parse_refract(body), out);
  } else if (cmd == "entangle") {
    run_entangle(parse_entangle(body), loaded.seed, request.workers, out);
  } else if (cmd == "greens") {
    run_greens(parse_greens(body), out);
  }

  const json manifest{{"command", cmd},
                      {"version", version()},
                      {"seed", loaded.seed},
                      {"config", loaded.effective}};
  out.open("manifest.json") << manifest.dump(2) << '\n';
  out.commit();
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Photon transport in Josephson-junction transmission lines", "qcc"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);

  struct Options {
    std::string config;
    std::string output = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> workers;
  } opts;

  const std::vector<std::pair<std::string, std::string>> commands{
      {"scatter", "single-junction reflection and transmission sweep"},
      {"bands1d", "1D Bloch bands and band gaps of a periodic cell"},
      {"bands2d", "isofrequency contours of the square junction lattice"},
      {"refract", "refraction angles at a free-space / lattice interface"},
      {"entangle", "disorder-averaged steady-state concurrence of two qubits"},
      {"greens", "Green function of a line with an embedded chain"},
  };
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", opts.config, "JSON config file or a previous run's manifest.json");
    sub->add_option("--output", opts.output, "output directory")->capture_default_str();
    sub->add_option("--seed", opts.seed, "random seed (overrides the config)");
    sub->add_option("--workers", opts.workers, "worker threads (default: QCC_WORKERS or all cores)")
        ->check(CLI::PositiveNumber);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  if (!reversed.empty()) reversed.pop_back();  // program name
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  RunRequest request;
  request.command = app.get_subcommands().front()->get_name();
  request.output_dir = opts.output;
  request.seed = opts.seed;
  try {
    request.workers = opts.workers ? *opts.workers : workers_from_env();
    if (!opts.config.empty()) request.config = read_json_file(opts.config);
    run(request);
  } catch (const IoError& e) {
    err << "qcc: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const fs::filesystem_error& e) {
    err << "qcc: I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const InvalidArgument& e) {
    err << "qcc: config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericalError& e) {
    err << "qcc: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    err << "qcc: error: " << e.what() << '\n';
    return 1;
  }
  out << "qcc " << request.command << ": wrote outputs to " << request.output_dir.string() << '\n';
  return kExitOk;
}

}  // namespace qcc::cli
