#include "hybridflux/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "hybridflux/models.hpp"

namespace hybridflux {

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_dissipation_csv(std::ostream& os, const std::vector<DissipationSample>& rows) {
  os << "kind,omega,nu,d\n";
  for (const auto& row : rows) {
    os << to_string(row.spec.kind) << ',' << format_double(row.spec.omega) << ','
       << format_double(row.nu) << ',' << format_double(row.d) << '\n';
  }
}

void write_profile_csv(std::ostream& os, const FieldSnapshot& snapshot, const Grid& grid,
                       const std::vector<std::string>& names) {
  os << 'x';
  for (const auto& name : names) os << ',' << name;
  os << '\n';
  for (std::size_t i = 0; i < snapshot.cells.size(); ++i) {
    os << format_double(grid.center(i));
    for (Eigen::Index k = 0; k < snapshot.cells[i].size(); ++k) {
      os << ',' << format_double(snapshot.cells[i][k]);
    }
    os << '\n';
  }
}

void write_mhd_profile_csv(std::ostream& os, const FieldSnapshot& snapshot,
                           const Grid& grid, double gamma) {
  os << "x,rho,vx,vy,vz,By,Bz,E,p\n";
  for (std::size_t i = 0; i < snapshot.cells.size(); ++i) {
    const State& u = snapshot.cells[i];
    const MhdPrimitive w = mhd_cons_to_prim(u, gamma);
    for (double v : {grid.center(i), w.rho, w.vx, w.vt[0], w.vt[1], w.bt[0], w.bt[1], u[6]}) {
      os << format_double(v) << ',';
    }
    os << format_double(w.p) << '\n';
  }
}

void write_timeseries_csv(std::ostream& os, const std::vector<TimeseriesRow>& rows) {
  os << "step,t,max_u\n";
  for (const auto& row : rows) {
    os << row.step << ',' << format_double(row.t) << ',' << format_double(row.max_value)
       << '\n';
  }
}

void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& writer) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) {
    throw std::runtime_error("cannot create directory " + path.parent_path().string() +
                             ": " + ec.message());
  }
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("cannot open " + path.string() + " for writing");
  writer(os);
  os.flush();
  if (!os) throw std::runtime_error("write failed for " + path.string());
}

std::string run_stem(const std::string& scenario, const SolverSpec& spec) {
  std::string stem = scenario + "_" + std::string(to_string(spec.kind));
  if (uses_omega(spec.kind)) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "_w%g", spec.omega);
    stem += buf;
  }
  return stem;
}

}  // namespace hybridflux
