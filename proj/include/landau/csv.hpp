#pragma once

// CSV I/O for the two file contracts: snapshots `step,t,i,vx,vy,vz` and
// diagnostics `step,t,m2,m4,m6,expmom_alpha,mom_res,energy_res,cov_xx,cov_xy,
// cov_xz,cov_yy,cov_yz,cov_zz,w2_ref`. All floats carry 17 significant digits
// so round-trips are exact.

#include <string>
#include <vector>

#include "landau/simulate.hpp"

namespace landau {

// shortest-exact decimal would also work; fixed %.17g keeps files diffable
std::string fmt17(double x);

void write_snapshot_csv(const std::string& path, const std::vector<Snapshot>& snaps);

// Parses a snapshot CSV; rows grouped by step in file order.
std::vector<Snapshot> read_snapshot_csv(const std::string& path);

void write_diagnostics_csv(const std::string& path, const std::vector<DiagRow>& rows);

} // namespace landau
