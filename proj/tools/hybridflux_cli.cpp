// hybridflux: command-line front end for the dissipation sampler and the
// scalar / MHD scenario runners.
//
// Exit codes: 0 success, 1 numeric or I/O failure, 2 bad configuration.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hybridflux/csv.hpp"
#include "hybridflux/errors.hpp"
#include "hybridflux/run_config.hpp"
#include "hybridflux/scenarios.hpp"

namespace fs = std::filesystem;
using namespace hybridflux;

namespace {

constexpr int kExitNumeric = 1;
constexpr int kExitConfig = 2;

// Flags are stored as strings and merged over the config file afterwards,
// so "given on the command line" is simply "count() > 0".
struct FlagSet {
  std::string config_path;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;

  void add(CLI::App& app, const std::string& flag, const std::string& key,
           const std::string& help) {
    options[key] = app.add_option(flag, values[key], help);
  }

  KeyValueConfig merged() const {
    KeyValueConfig config =
        config_path.empty() ? KeyValueConfig{} : KeyValueConfig::load(config_path);
    for (const auto& [key, option] : options) {
      if (option->count() > 0) config.set(key, values.at(key));
    }
    return config;
  }
};

struct ManifestEntry {
  std::string file;
  std::string description;
};

void write_manifest(const fs::path& out_dir, const std::vector<ManifestEntry>& entries) {
  write_file(out_dir / "manifest.txt", [&](std::ostream& os) {
    for (const auto& e : entries) os << e.file << '\t' << e.description << '\n';
  });
}

FluxOptions flux_options(const KeyValueConfig& c) {
  FluxOptions options;
  try {
    if (auto s = c.get_string("bounds")) options.bounds_mode = parse_bounds_mode(*s);
    if (auto s = c.get_string("bounds_mode")) options.bounds_mode = parse_bounds_mode(*s);
    if (auto s = c.get_string("jacobian_mode")) {
      options.jacobian_mode = parse_jacobian_mode(*s);
    }
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  return options;
}

std::string describe_flux(const FluxOptions& f) {
  return "bounds_mode=" + std::string(to_string(f.bounds_mode)) +
         " jacobian_mode=" + std::string(to_string(f.jacobian_mode));
}

fs::path out_dir_of(const KeyValueConfig& c) {
  return c.get_string("out_dir").value_or("out");
}

std::size_t workers_of(const KeyValueConfig& c) { return c.get_size("workers").value_or(0); }

ScalarSignConfig scalar_config(const KeyValueConfig& c) {
  ScalarSignConfig s;
  s.n_cells = c.get_size("cells").value_or(s.n_cells);
  s.cfl = c.get_double("cfl").value_or(s.cfl);
  s.t_end = c.get_double("t_end").value_or(s.t_end);
  s.flux = flux_options(c);
  if (s.n_cells == 0) throw ConfigError("cells must be positive");
  if (!(s.cfl > 0.0 && s.cfl <= 1.0)) throw ConfigError("cfl must lie in (0, 1]");
  return s;
}

MhdRiemannConfig mhd_config(const KeyValueConfig& c) {
  MhdRiemannConfig m;
  m.n_cells = c.get_size("cells").value_or(m.n_cells);
  m.dt = c.get_double("dt").value_or(m.dt);
  m.t_end = c.get_double("t_end").value_or(m.t_end);
  m.cfl = c.get_double("cfl").value_or(m.cfl);
  m.courant_limit = c.get_double("courant_limit").value_or(std::max(m.courant_limit, m.cfl));
  m.bx = c.get_double("bx").value_or(m.bx);
  m.gamma = c.get_double("gamma").value_or(m.gamma);
  m.flux = flux_options(c);
  if (m.n_cells == 0) throw ConfigError("cells must be positive");
  if (!(m.dt > 0.0)) throw ConfigError("dt must be positive");
  return m;
}

std::string describe_scalar(const ScenarioResult& r, const ScalarSignConfig& s) {
  std::ostringstream os;
  os << "scenario=scalar solver=" << to_string(r.solver.kind)
     << " omega=" << format_double(r.solver.omega) << " cells=" << s.n_cells
     << " cfl=" << format_double(s.cfl) << " t_end=" << format_double(s.t_end)
     << " steps=" << r.steps << ' ' << describe_flux(s.flux);
  return os.str();
}

std::string describe_mhd(const ScenarioResult& r, const MhdRiemannConfig& m) {
  std::ostringstream os;
  os << "scenario=mhd solver=" << to_string(r.solver.kind)
     << " omega=" << format_double(r.solver.omega) << " cells=" << m.n_cells
     << " dt=" << format_double(m.dt) << " cfl=" << format_double(m.cfl)
     << " t_end=" << format_double(m.t_end) << " bx=" << format_double(m.bx)
     << " gamma=" << format_double(m.gamma) << " steps=" << r.steps << ' '
     << describe_flux(m.flux);
  return os.str();
}

// Writes profile + timeseries for each scalar run; returns failed-run count.
int emit_scalar(const std::vector<ScenarioResult>& results, const ScalarSignConfig& s,
                const fs::path& out_dir, std::vector<ManifestEntry>& manifest) {
  int failures = 0;
  for (const auto& r : results) {
    if (!r.ok()) {
      std::cerr << "error: " << r.solver.label() << ": " << *r.error << '\n';
      ++failures;
      continue;
    }
    const std::string stem = run_stem("scalar", r.solver);
    const AdvectionModel model(s.speed);
    write_file(out_dir / (stem + "_profile.csv"), [&](std::ostream& os) {
      write_profile_csv(os, r.final, r.grid, model.variable_names());
    });
    write_file(out_dir / (stem + "_timeseries.csv"),
               [&](std::ostream& os) { write_timeseries_csv(os, r.timeseries); });
    manifest.push_back({stem + "_profile.csv", describe_scalar(r, s)});
    manifest.push_back({stem + "_timeseries.csv", describe_scalar(r, s)});
    std::printf("%-16s steps=%zu final max|u|=%.6f\n", r.solver.label().c_str(), r.steps,
                r.timeseries.empty() ? 1.0 : r.timeseries.back().max_value);
  }
  return failures;
}

int emit_mhd(const std::vector<ScenarioResult>& results, const MhdRiemannConfig& m,
             const fs::path& out_dir, const std::string& prefix,
             std::vector<ManifestEntry>& manifest) {
  int failures = 0;
  for (const auto& r : results) {
    if (!r.ok()) {
      std::cerr << "error: " << r.solver.label() << ": " << *r.error << '\n';
      ++failures;
      continue;
    }
    const std::string stem = run_stem(prefix, r.solver);
    write_file(out_dir / (stem + "_profile.csv"), [&](std::ostream& os) {
      write_mhd_profile_csv(os, r.final, r.grid, m.gamma);
    });
    manifest.push_back({stem + "_profile.csv", describe_mhd(r, m)});
    const auto rho = component(r.final, 0);
    std::printf(
        "%-16s steps=%zu peak_courant=%.4f conservation=%.2e slow_shock_grad=%.6f\n",
        r.solver.label().c_str(), r.steps, r.peak_courant,
        r.conservation ? r.conservation->max_relative() : 0.0,
        max_gradient(rho, r.grid, 1.0, 1.6));
  }
  return failures;
}

int cmd_sample(const KeyValueConfig& c) {
  const auto specs = c.contains("solvers") ? parse_solver_list(*c.get_string("solvers"))
                                           : default_dissipation_specs();
  const NuBounds bounds{c.get_double("nu_min").value_or(-1.0),
                        c.get_double("nu_max").value_or(1.0)};
  const double lo = c.get_double("nu_lo").value_or(bounds.nu_min);
  const double hi = c.get_double("nu_hi").value_or(bounds.nu_max);
  const std::size_t samples = c.get_size("samples").value_or(201);
  std::vector<DissipationSample> rows;
  try {
    bounds.validate();
    rows = sample_dissipation(specs, bounds, lo, hi, samples);
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const fs::path out =
      c.get_string("out").value_or((out_dir_of(c) / "dissipation.csv").string());
  write_file(out, [&](std::ostream& os) { write_dissipation_csv(os, rows); });
  std::printf("wrote %zu rows to %s\n", rows.size(), out.string().c_str());
  return 0;
}

int cmd_run_scalar(const KeyValueConfig& c) {
  SolverSpec spec{SolverKind::DOmega, 0.0};
  if (auto s = c.get_string("solver")) spec = parse_solver_spec(*s);
  if (auto w = c.get_double("omega")) spec.omega = *w;
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  const ScalarSignConfig s = scalar_config(c);
  const fs::path out_dir = out_dir_of(c);
  std::vector<ManifestEntry> manifest;
  const int failures = emit_scalar({run_scalar_sign(spec, s)}, s, out_dir, manifest);
  write_manifest(out_dir, manifest);
  return failures == 0 ? 0 : kExitNumeric;
}

int cmd_run_mhd(const KeyValueConfig& c) {
  std::vector<SolverSpec> solvers = default_mhd_solvers();
  if (auto s = c.get_string("solvers")) solvers = parse_solver_list(*s);
  if (auto s = c.get_string("solver")) {
    SolverSpec spec = parse_solver_spec(*s);
    if (auto w = c.get_double("omega")) spec.omega = *w;
    solvers = {spec};
  }
  for (const auto& s : solvers) {
    try {
      s.validate();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  const MhdRiemannConfig m = mhd_config(c);
  const fs::path out_dir = out_dir_of(c);
  std::vector<ManifestEntry> manifest;
  int failures = emit_mhd(run_mhd_riemann(solvers, m, workers_of(c)), m, out_dir, "mhd",
                          manifest);

  if (const std::size_t n_ref = c.get_size("reference_cells").value_or(0); n_ref > 0) {
    const MhdRiemannConfig fine = m.refined(n_ref);
    failures += emit_mhd(run_mhd_riemann({{SolverKind::HLL, 0.0}}, fine), fine, out_dir,
                         "mhd_reference", manifest);
  }
  write_manifest(out_dir, manifest);
  return failures == 0 ? 0 : kExitNumeric;
}

int cmd_sweep(const KeyValueConfig& c) {
  const std::string scenario = c.get_string("scenario").value_or("scalar");
  const fs::path out_dir = out_dir_of(c);
  std::vector<ManifestEntry> manifest;
  int failures = 0;

  if (scenario == "scalar") {
    const auto omegas = c.contains("omegas") ? parse_double_list(*c.get_string("omegas"))
                                             : default_scalar_omegas();
    for (double w : omegas) {
      if (!(w >= 0.0 && w <= 1.0)) throw ConfigError("omega values must lie in [0, 1]");
    }
    const ScalarSignConfig s = scalar_config(c);
    failures = emit_scalar(run_scalar_sign_test(omegas, s, workers_of(c)), s, out_dir,
                           manifest);
  } else if (scenario == "mhd") {
    const auto omegas = c.contains("omegas") ? parse_double_list(*c.get_string("omegas"))
                                             : std::vector<double>{0.3, 0.5};
    SolverKind kind = SolverKind::P2Omega;
    if (auto s = c.get_string("solver")) kind = parse_solver_spec(*s).kind;
    if (!uses_omega(kind)) throw ConfigError("sweep-omega needs an omega-family solver");
    std::vector<SolverSpec> solvers;
    for (double w : omegas) {
      if (!(w >= 0.0 && w <= 1.0)) throw ConfigError("omega values must lie in [0, 1]");
      solvers.push_back({kind, w});
    }
    const MhdRiemannConfig m = mhd_config(c);
    failures = emit_mhd(run_mhd_riemann(solvers, m, workers_of(c)), m, out_dir, "mhd",
                        manifest);
  } else {
    throw ConfigError("unknown scenario '" + scenario + "' (expected scalar or mhd)");
  }
  write_manifest(out_dir, manifest);
  return failures == 0 ? 0 : kExitNumeric;
}

void add_common(CLI::App& sub, FlagSet& flags) {
  sub.add_option("--config", flags.config_path, "Key-value config file; flags win")
      ->check(CLI::ExistingFile);
  flags.add(sub, "--out-dir", "out_dir", "Output directory (default: out)");
  flags.add(sub, "--workers", "workers", "Worker threads for sweeps (0 = all cores)");
}

void add_run_flags(CLI::App& sub, FlagSet& flags) {
  flags.add(sub, "--solver", "solver", "Solver, e.g. HLL, P2, P2Omega(0.3)");
  flags.add(sub, "--omega", "omega", "omega for the omega-family solvers");
  flags.add(sub, "--cells", "cells", "Number of grid cells");
  flags.add(sub, "--cfl", "cfl", "CFL number");
  flags.add(sub, "--t-end", "t_end", "End time");
  flags.add(sub, "--bounds-mode", "bounds_mode", "paper | both_states");
  flags.add(sub, "--jacobian-mode", "jacobian_mode", "auto | central | one_sided");
}

void add_mhd_flags(CLI::App& sub, FlagSet& flags) {
  flags.add(sub, "--dt", "dt", "Fixed time step");
  flags.add(sub, "--courant-limit", "courant_limit", "Hard Courant-number limit");
  flags.add(sub, "--bx", "bx", "Normal magnetic field");
  flags.add(sub, "--gamma", "gamma", "Adiabatic constant");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume solvers with scalar dissipation functions"};
  app.require_subcommand(1);

  FlagSet sample_flags, scalar_flags, mhd_flags, sweep_flags;

  auto* sample = app.add_subcommand("sample-dissipation", "Tabulate d(nu) per solver");
  add_common(*sample, sample_flags);
  sample_flags.add(*sample, "--solvers", "solvers", "Comma-separated solver list");
  sample_flags.add(*sample, "--nu-min", "nu_min", "Slowest Courant number (default -1)");
  sample_flags.add(*sample, "--nu-max", "nu_max", "Fastest Courant number (default 1)");
  sample_flags.add(*sample, "--nu-lo", "nu_lo", "Sampling range start");
  sample_flags.add(*sample, "--nu-hi", "nu_hi", "Sampling range end");
  sample_flags.add(*sample, "--samples", "samples", "Samples per solver (default 201)");
  sample_flags.add(*sample, "--out", "out", "Output CSV (default <out-dir>/dissipation.csv)");

  auto* scalar = app.add_subcommand("run-scalar", "sign(x) transport test, one solver");
  add_common(*scalar, scalar_flags);
  add_run_flags(*scalar, scalar_flags);

  auto* mhd = app.add_subcommand("run-mhd", "1D ideal MHD Riemann problem");
  add_common(*mhd, mhd_flags);
  add_run_flags(*mhd, mhd_flags);
  add_mhd_flags(*mhd, mhd_flags);
  mhd_flags.add(*mhd, "--solvers", "solvers", "Comma-separated solver list");
  mhd_flags.add(*mhd, "--reference-cells", "reference_cells",
                "Also write an HLL fine-grid reference on this many cells");

  auto* sweep = app.add_subcommand("sweep-omega", "omega sweep of the scalar or MHD test");
  add_common(*sweep, sweep_flags);
  add_run_flags(*sweep, sweep_flags);
  add_mhd_flags(*sweep, sweep_flags);
  sweep_flags.add(*sweep, "--scenario", "scenario", "scalar | mhd");
  sweep_flags.add(*sweep, "--omegas", "omegas", "Comma-separated omega values");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (sample->parsed()) return cmd_sample(sample_flags.merged());
    if (scalar->parsed()) return cmd_run_scalar(scalar_flags.merged());
    if (mhd->parsed()) return cmd_run_mhd(mhd_flags.merged());
    if (sweep->parsed()) return cmd_sweep(sweep_flags.merged());
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return 0;
}
