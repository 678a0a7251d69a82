#pragma once

// CSV emission. Floats use 17 significant digits so identical runs give
// byte-identical files.
//
//   dissipation: kind,omega,nu,d
//   profile:     x,<var1>,...,<varN>
//   MHD profile: x,rho,vx,vy,vz,By,Bz,E,p
//   timeseries:  step,t,max_u

#include <filesystem>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "hybridflux/dissipation.hpp"
#include "hybridflux/scenarios.hpp"

namespace hybridflux {

std::string format_double(double value);

void write_dissipation_csv(std::ostream& os, const std::vector<DissipationSample>& rows);
void write_profile_csv(std::ostream& os, const FieldSnapshot& snapshot, const Grid& grid,
                       const std::vector<std::string>& names);
/// Throws InvalidStateError if a cell is not an admissible MHD state.
void write_mhd_profile_csv(std::ostream& os, const FieldSnapshot& snapshot,
                           const Grid& grid, double gamma);
void write_timeseries_csv(std::ostream& os, const std::vector<TimeseriesRow>& rows);

/// Opens `path` for writing, creating parent directories. Throws
/// std::runtime_error naming the path on failure.
void write_file(const std::filesystem::path& path,
                const std::function<void(std::ostream&)>& writer);

/// File stem for one run, e.g. "scalar_DOmega_w0.4" or "mhd_HLL".
std::string run_stem(const std::string& scenario, const SolverSpec& spec);

}  // namespace hybridflux
