#pragma once

#include "martinet/analysis.hpp"
#include "martinet/integrators.hpp"

#include <iosfwd>
#include <vector>

namespace martinet::csv {

// Comma separated, '.' decimal point, one header row, 17 significant digits.

/// Header: t,x,y,z,px,py,pz,H
void write_trajectory(std::ostream& os, const Trajectory& traj);

/// Inverse of write_trajectory. Throws std::runtime_error on a malformed file.
Trajectory read_trajectory(std::istream& is);

/// Header: theta0,eps,t1,k,K,R,one_minus_R,status
void write_sweep(std::ostream& os, const std::vector<SweepRecord>& records);

}  // namespace martinet::csv
