#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hkm/sampling.hpp"
#include "hkm/sdp.hpp"

namespace hkm {

// Recovery experiments over a separation grid.  Cluster means sit at fixed
// unit-norm directions (a regular simplex for coordinate spaces, antipodal
// multiples of sqrt(2) sin(J pi t) for functional spaces) and are rescaled
// so the minimal pairwise separation in the reference space equals delta
// exactly; for two antipodal clusters the scale factor is delta / 2.
//
// Per-cell and per-trial random streams are keyed by (seed, space index,
// cell index, trial index), so results do not depend on the thread count.
struct ExperimentConfig {
  int n = 0;
  int K = 2;
  std::vector<int> cluster_sizes;  // optional; near-even split when empty
  NoiseModel noise;
  std::vector<SpaceSpec> spaces;   // >= 1; first entry scales the means
  std::string mean_layout = "simplex";  // "simplex" | "sine"
  int sine_j = 8;                  // frequency for the "sine" layout
  std::vector<double> delta_grid;
  std::vector<int> n_grid;         // phase diagrams only
  int trials_per_cell = 50;
  SolverConfig solver;
  std::uint64_t seed = 1;
  int threads = 1;
};

void validate_experiment(const ExperimentConfig& cfg);

struct TrialRecord {
  std::string space_tag;
  int cell = 0, trial = 0;
  double delta = 0.0;
  int n = 0;
  double l1_error = 0.0;
  bool recovered = false;
  int iters = 0;
  bool converged = false;
  bool identities_pass = false;  // feasible-set relations at solver tolerance
};

struct CellResult {
  std::string space_tag;
  double delta = 0.0;
  int n = 0;
  double snr2 = 0.0;
  double snr2_threshold = 0.0;  // max(n / n_min, log n)
  bool size_condition = false;  // n_min^2 K >= n
  double median_l1_error = 0.0;
  double recovery_rate = 0.0;
  double mean_iters = 0.0;
};

struct ExperimentResult {
  std::vector<CellResult> cells;
  std::vector<TrialRecord> trials;
};

// One cell per delta in cfg.delta_grid, evaluated in cfg.spaces.front().
ExperimentResult run_error_curve(const ExperimentConfig& cfg);

// Cells over n_grid x delta_grid with near-even cluster sizes per n.
ExperimentResult run_phase_diagram(const ExperimentConfig& cfg);

// Identical datasets clustered under each space in cfg.spaces (expected: an
// L2 grid and a Sobolev space on the same grid), means along the "sine"
// layout; delta_grid holds the L2 separations.  Separations and noise norms
// per space are reported alongside recovery, so the geometry gain
// (delta'^2 / delta^2) is read off directly.
struct SpaceSummary {
  std::string space_tag;
  double delta = 0.0;   // separation of the same means seen by this space
  double snr2 = 0.0;
  OperatorNorms sigma;  // empirical covariance norms in this space
};

struct SobolevComparison {
  // cells/trials carry one entry per (space, epsilon); summaries one entry
  // per (space, epsilon) with the space-specific separation and snr.
  ExperimentResult result;
  std::vector<SpaceSummary> summaries;  // grouped by epsilon, spaces in order
};

SobolevComparison run_sobolev_comparison(const ExperimentConfig& cfg);

// Mean points for the layout at a given separation (reference space scaling).
std::vector<Point> mean_points(const ExperimentConfig& cfg, double delta);

std::string space_tag(const SpaceSpec& s);

}  // namespace hkm
