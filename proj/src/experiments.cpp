#include "hkm/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hkm/errors.hpp"
#include "hkm/rng.hpp"
#include "hkm/util.hpp"

namespace hkm {

namespace {

std::vector<int> near_even_sizes(int n, int K) {
  std::vector<int> sizes(K, n / K);
  for (int i = 0; i < n % K; ++i) ++sizes[i];
  return sizes;
}

// Vertices of a regular simplex, unit norm, in the first K coordinates.
std::vector<Point> simplex_directions(int K, int dim) {
  if (dim < K) {
    std::ostringstream os;
    os << "simplex mean layout needs dim >= K (dim=" << dim << ", K=" << K << ")";
    throw input_error(os.str());
  }
  std::vector<Point> dirs;
  const double scale = std::sqrt(1.0 - 1.0 / K);
  for (int k = 0; k < K; ++k) {
    Point u = Point::Zero(dim);
    for (int j = 0; j < K; ++j) u[j] = (j == k ? 1.0 : 0.0) - 1.0 / K;
    dirs.push_back(u / scale);
  }
  return dirs;
}

int space_dim_or_throw(const SpaceSpec& s) {
  const auto d = expected_dim(s);
  if (!d) throw input_error("experiments need a coordinate space, not a kernel space");
  return *d;
}

const std::vector<double>& space_grid(const SpaceSpec& s) {
  if (const auto* l = std::get_if<L2Grid>(&s)) return l->grid;
  if (const auto* so = std::get_if<Sobolev>(&s)) return so->grid;
  throw input_error("sine mean layout needs a grid space");
}

struct CellSpec {
  int cell_index = 0;
  double delta = 0.0;
  int n = 0;
  std::vector<int> sizes;
};

std::uint64_t trial_seed(std::uint64_t base, int cell, int trial) {
  return mix_seed(mix_seed(base, static_cast<std::uint64_t>(cell)),
                  static_cast<std::uint64_t>(trial));
}

struct TrialEval {
  TrialRecord record;
};

// Feasibility leakage of the reported iterate, used to widen the identity
// tolerances: the relations hold exactly only on the constraint set.  Row-sum
// and sign dust enter the l1 sums once per entry, psd dust once per
// eigenvalue magnitude in the trace term.
double identity_tolerance(const FeasibilityResiduals& r, int n, double tol_primal) {
  const double leak = n * (r.rowsum + r.psd) +
                      static_cast<double>(n) * n * (r.neg + r.sym) + r.trace_gap + tol_primal;
  return std::max(1e-8, 50.0 * leak);
}

TrialRecord run_trial(const ExperimentConfig& cfg, const SpaceSpec& space,
                      const std::vector<Point>& means, const CellSpec& cell, int trial,
                      std::uint64_t mixture_seed) {
  MixtureConfig mc;
  mc.K = cfg.K;
  mc.cluster_sizes = cell.sizes;
  mc.means = means;
  mc.noise = cfg.noise;
  mc.seed = mixture_seed;
  const Sample sample = sample_mixture(mc);

  const SimilarityMatrix a = gram(sample.data, space);
  const SdpSolution sol = solve(a, cfg.K, cfg.solver);
  const MembershipMatrix zs = membership_matrix(sample.truth);

  TrialRecord rec;
  rec.space_tag = space_tag(space);
  rec.cell = cell.cell_index;
  rec.trial = trial;
  rec.delta = cell.delta;
  rec.n = cell.n;
  rec.l1_error = error_l1(sol.z_hat, zs);
  rec.recovered = same_partition(round_solution(sol.z_hat), sample.truth);
  rec.iters = sol.iters;
  rec.converged = sol.converged;
  const double tol = identity_tolerance(sol.residuals, cell.n, cfg.solver.tol_primal);
  rec.identities_pass =
      feasible_set_identities(sol.z_hat, zs, sample.truth.n_min(), tol, tol).all_pass();
  return rec;
}

CellResult summarize(const ExperimentConfig& cfg, const SpaceSpec& space, const CellSpec& cell,
                     double snr2, const std::vector<TrialRecord>& recs) {
  CellResult out;
  out.space_tag = space_tag(space);
  out.delta = cell.delta;
  out.n = cell.n;
  out.snr2 = snr2;
  const int n_min = *std::min_element(cell.sizes.begin(), cell.sizes.end());
  out.snr2_threshold = snr_threshold(cell.n, n_min);
  out.size_condition =
      static_cast<double>(n_min) * n_min * cfg.K >= static_cast<double>(cell.n);
  std::vector<double> errs;
  double rec_cnt = 0.0, iter_acc = 0.0;
  for (const TrialRecord& r : recs) {
    errs.push_back(r.l1_error);
    rec_cnt += r.recovered ? 1.0 : 0.0;
    iter_acc += r.iters;
  }
  out.median_l1_error = median_of(std::move(errs));
  out.recovery_rate = rec_cnt / recs.size();
  out.mean_iters = iter_acc / recs.size();
  return out;
}

OperatorNorms sigma_norms_for(const ExperimentConfig& cfg, const SpaceSpec& space,
                              int space_idx) {
  if (std::holds_alternative<Sobolev>(space)) {
    return empirical_covariance_norms(cfg.noise, space, space_dim_or_throw(space), 2000,
                                      mix_seed(cfg.seed, 0x636f76 + space_idx));
  }
  return noise_gamma_norms(cfg.noise, space_dim_or_throw(space));
}

double snr2_for(const ExperimentConfig& cfg, const std::vector<Point>& means,
                const SpaceSpec& space, const OperatorNorms& sigma, const CellSpec& cell) {
  SnrInputs in;
  in.delta = cell.delta > 0.0 ? min_separation(means, space) : 0.0;
  in.L = noise_psi2_bound(cfg.noise);
  in.sigma_norms = sigma;
  in.n_min = *std::min_element(cell.sizes.begin(), cell.sizes.end());
  return snr_squared(in);
}

}  // namespace

std::string space_tag(const SpaceSpec& s) {
  if (std::holds_alternative<Euclidean>(s)) return "euclidean";
  if (std::holds_alternative<L2Grid>(s)) return "l2";
  if (const auto* so = std::get_if<Sobolev>(&s)) return "sobolev" + std::to_string(so->order);
  return "kernel";
}

void validate_experiment(const ExperimentConfig& cfg) {
  if (cfg.spaces.empty()) throw input_error("experiment: need at least one space");
  for (const SpaceSpec& s : cfg.spaces) {
    validate(s);
    space_dim_or_throw(s);
  }
  if (cfg.K < 2) throw input_error("experiment: K must be >= 2");
  if (cfg.n < cfg.K) throw input_error("experiment: n must be >= K");
  if (!cfg.cluster_sizes.empty()) {
    if (static_cast<int>(cfg.cluster_sizes.size()) != cfg.K)
      throw input_error("experiment: cluster_sizes must have K entries");
    int total = 0;
    for (int s : cfg.cluster_sizes) {
      if (s < 1) throw input_error("experiment: cluster sizes must be >= 1");
      total += s;
    }
    if (total != cfg.n) throw input_error("experiment: cluster sizes must sum to n");
  }
  if (cfg.delta_grid.empty()) throw input_error("experiment: empty delta grid");
  for (double d : cfg.delta_grid)
    if (d < 0.0) throw input_error("experiment: separations must be >= 0");
  if (cfg.trials_per_cell < 1) throw input_error("experiment: trials_per_cell must be >= 1");
  if (cfg.threads < 1) throw input_error("experiment: threads must be >= 1");
  if (cfg.mean_layout != "simplex" && cfg.mean_layout != "sine")
    throw input_error("experiment: mean_layout must be \"simplex\" or \"sine\"");
  if (cfg.mean_layout == "simplex" && space_dim_or_throw(cfg.spaces.front()) < cfg.K)
    throw input_error("experiment: simplex means need space dimension >= K");
  if (cfg.mean_layout == "sine") {
    if (cfg.K != 2) throw input_error("experiment: sine mean layout supports K = 2 only");
    if (cfg.sine_j < 1) throw input_error("experiment: sine frequency must be >= 1");
    space_grid(cfg.spaces.front());
  }
}

std::vector<Point> mean_points(const ExperimentConfig& cfg, double delta) {
  const SpaceSpec& ref = cfg.spaces.front();
  std::vector<Point> dirs;
  if (cfg.mean_layout == "simplex") {
    dirs = simplex_directions(cfg.K, space_dim_or_throw(ref));
  } else {
    const std::vector<double>& grid = space_grid(ref);
    Point u(static_cast<Eigen::Index>(grid.size()));
    for (size_t g = 0; g < grid.size(); ++g)
      u[g] = std::sqrt(2.0) * std::sin(cfg.sine_j * 3.141592653589793238462643 * grid[g]);
    u /= norm(u, ref);
    dirs = {u, -u};
  }
  if (delta == 0.0) {
    for (Point& d : dirs) d.setZero();
    return dirs;
  }
  const double base = min_separation(dirs, ref);
  for (Point& d : dirs) d *= delta / base;
  return dirs;
}

namespace {

ExperimentResult run_cells(const ExperimentConfig& cfg, const std::vector<CellSpec>& cells) {
  const SpaceSpec& space = cfg.spaces.front();
  const OperatorNorms sigma = sigma_norms_for(cfg, space, 0);

  ExperimentResult out;
  for (const CellSpec& cell : cells) {
    const std::vector<Point> means = mean_points(cfg, cell.delta);
    std::vector<TrialRecord> recs(cfg.trials_per_cell);
    parallel_for(cfg.trials_per_cell, cfg.threads, [&](int t) {
      recs[t] = run_trial(cfg, space, means, cell, t,
                          trial_seed(cfg.seed, cell.cell_index, t));
    });
    out.cells.push_back(summarize(cfg, space, cell, snr2_for(cfg, means, space, sigma, cell), recs));
    for (TrialRecord& r : recs) out.trials.push_back(std::move(r));
  }
  return out;
}

}  // namespace

ExperimentResult run_error_curve(const ExperimentConfig& cfg) {
  validate_experiment(cfg);
  std::vector<CellSpec> cells;
  for (size_t c = 0; c < cfg.delta_grid.size(); ++c) {
    CellSpec cs;
    cs.cell_index = static_cast<int>(c);
    cs.delta = cfg.delta_grid[c];
    cs.n = cfg.n;
    cs.sizes = cfg.cluster_sizes.empty() ? near_even_sizes(cfg.n, cfg.K) : cfg.cluster_sizes;
    cells.push_back(std::move(cs));
  }
  return run_cells(cfg, cells);
}

ExperimentResult run_phase_diagram(const ExperimentConfig& cfg) {
  validate_experiment(cfg);
  if (cfg.n_grid.empty()) throw input_error("phase diagram: empty n grid");
  for (int n : cfg.n_grid)
    if (n < cfg.K) throw input_error("phase diagram: every n must be >= K");
  std::vector<CellSpec> cells;
  int idx = 0;
  for (int n : cfg.n_grid) {
    for (double d : cfg.delta_grid) {
      CellSpec cs;
      cs.cell_index = idx++;
      cs.delta = d;
      cs.n = n;
      cs.sizes = near_even_sizes(n, cfg.K);
      cells.push_back(std::move(cs));
    }
  }
  return run_cells(cfg, cells);
}

SobolevComparison run_sobolev_comparison(const ExperimentConfig& cfg) {
  validate_experiment(cfg);
  if (cfg.spaces.size() < 2)
    throw input_error("sobolev comparison: need at least two spaces (reference first)");
  if (cfg.mean_layout != "sine")
    throw input_error("sobolev comparison: requires the sine mean layout");

  std::vector<OperatorNorms> sigmas;
  for (size_t s = 0; s < cfg.spaces.size(); ++s)
    sigmas.push_back(sigma_norms_for(cfg, cfg.spaces[s], static_cast<int>(s)));

  const std::vector<int> sizes =
      cfg.cluster_sizes.empty() ? near_even_sizes(cfg.n, cfg.K) : cfg.cluster_sizes;

  SobolevComparison out;
  for (size_t c = 0; c < cfg.delta_grid.size(); ++c) {
    CellSpec cell;
    cell.cell_index = static_cast<int>(c);
    cell.delta = cfg.delta_grid[c];
    cell.n = cfg.n;
    cell.sizes = sizes;
    const std::vector<Point> means = mean_points(cfg, cell.delta);

    for (size_t s = 0; s < cfg.spaces.size(); ++s) {
      const SpaceSpec& space = cfg.spaces[s];
      std::vector<TrialRecord> recs(cfg.trials_per_cell);
      // Mixture seeds do not involve the space index: every space sees the
      // same sampled functions, only the geometry changes.
      parallel_for(cfg.trials_per_cell, cfg.threads, [&](int t) {
        recs[t] = run_trial(cfg, space, means, cell, t,
                            trial_seed(cfg.seed, cell.cell_index, t));
      });

      SpaceSummary sum;
      sum.space_tag = space_tag(space);
      sum.delta = cell.delta > 0.0 ? min_separation(means, space) : 0.0;
      sum.sigma = sigmas[s];
      sum.snr2 = snr2_for(cfg, means, space, sigmas[s], cell);

      CellResult cr = summarize(cfg, space, cell, sum.snr2, recs);
      cr.delta = sum.delta;
      out.result.cells.push_back(std::move(cr));
      out.summaries.push_back(std::move(sum));
      for (TrialRecord& r : recs) out.result.trials.push_back(std::move(r));
    }
  }
  return out;
}

}  // namespace hkm
