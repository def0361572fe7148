#pragma once

#include <string>

#include "ocse/inference.hpp"
#include "ocse/network.hpp"
#include "ocse/process.hpp"
#include "ocse/sweep.hpp"

namespace ocse {

/// Edge-list text format: a JSON header line {"n": ..., "rho": ...} followed
/// by one line per link "i,j,weight" (0-based, 17 significant digits so
/// weights round-trip bit-exactly).
void write_network(const Network& net, const std::string& path);
Network read_network(const std::string& path);

/// CSV with header "t,x0,...,x{n-1}", one row per time step, full decimal
/// precision.
void write_timeseries(const TimeSeries& ts, const std::string& path);
TimeSeries read_timeseries(const std::string& path);

/// JSON document {method, n, edges: [{source, target, statistic}],
/// degenerate_nodes, per_node_traces?}.
void write_inferred(const InferredNetwork& net, const std::string& path,
                    bool include_traces = false);
InferredNetwork read_inferred(const std::string& path);

/// One row per grid cell: parameters, error ratios, standard errors,
/// runtime, critical sample size. 12 significant digits.
void write_sweep_csv(const SweepResult& result, const std::string& path);

/// Same-time and lagged covariance pair as CSV: a "matrix,row,c0,..." header,
/// then one row per matrix row for phi0 and phi1.
void write_covariances_csv(const LaggedCovariance& cov, const std::string& path);

}  // namespace ocse
