#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "obsdrop/gridworld.hpp"

namespace obsdrop {

struct PearsonResult {
  double value = 0.0;
  bool flagged = false;  // zero variance in either input
};

// Sample Pearson correlation; zero-variance inputs yield the flagged 0
// sentinel. Throws on length mismatch or fewer than 2 points.
PearsonResult pearson(const std::vector<double>& xs,
                      const std::vector<double>& ys);

// Per-cell correlation between a world model's pre-threshold prediction and
// the true next observation, over n random transitions in one direction.
// `combined` concatenates both planes' samples per cell (the shared network
// predicts both); per_plane keeps them separate.
struct CorrelationMap {
  GridAction direction = GridAction::noop;
  int window = 5;
  int samples = 0;
  std::vector<double> combined;             // window*window
  std::vector<std::uint8_t> combined_flag;
  std::vector<double> per_plane;            // 2*window*window, plane-major
  std::vector<std::uint8_t> per_plane_flag;
};

// Pre-threshold prediction map of a grid world model.
using GridWmRawFn =
    std::function<void(const double* obs, GridAction a, double* raw_out)>;

// States are fresh uniform placements; transitions where the movement would
// be blocked by the boundary are resampled, so every sample actually moves.
CorrelationMap direction_correlation(const GridWmRawFn& wm,
                                     const GridConfig& config, GridAction dir,
                                     int n, std::uint64_t seed);

// Sweep aggregation (mean and standard error per (p, metric) group).
struct SweepRow {
  double p = 0.0;
  std::string run_id;
  std::string metric;
  double value = 0.0;
};

struct SweepAggregate {
  double p = 0.0;
  std::string metric;
  double mean = 0.0;
  double stderr_mean = 0.0;
  int n = 0;
  bool stderr_available = false;  // needs >= 2 runs
};

std::vector<SweepAggregate> aggregate_sweep(const std::vector<SweepRow>& rows);

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_sweep_csv(const std::string& path);
void write_aggregate_csv(const std::string& path,
                         const std::vector<SweepAggregate>& aggs);

void write_correlation_csv(const std::string& path, const CorrelationMap& map);

}  // namespace obsdrop
