// hkm: generalized K-means clustering through a semidefinite relaxation.
//
// Subcommands:
//   cluster        cluster a CSV dataset under a chosen inner product
//   simulate       recovery experiments over a separation grid (config file)
//   tail-check     Monte Carlo concentration checks (config file)
//   phase-diagram  recovery-rate sweep over (n, separation) (config file)
//   validate       parse and summarize a dataset CSV
//
// Exit codes: 0 success, 1 input error, 2 numerical non-convergence.
// The HKM_SEED environment variable overrides config seeds.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hkm/concentration.hpp"
#include "hkm/csv.hpp"
#include "hkm/errors.hpp"
#include "hkm/experiments.hpp"
#include "hkm/rng.hpp"
#include "hkm/rounding.hpp"
#include "hkm/sdp.hpp"
#include "hkm/similarity.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace hkm;

namespace {

// ---- config plumbing -------------------------------------------------------

json parse_config_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw input_error("cannot open config file: " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw input_error("config " + path.string() + ": " + e.what());
  }
}

[[noreturn]] void missing(const std::string& path) {
  throw input_error("config: missing required field '" + path + "'");
}

const json& field(const json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) missing(path.empty() ? key : path + "." + key);
  return *it;
}

template <typename T>
T typed(const json& j, const std::string& where) {
  try {
    return j.get<T>();
  } catch (const json::exception& e) {
    throw input_error("config: bad value at '" + where + "': " + e.what());
  }
}

template <typename T>
T get(const json& j, const std::string& key, const std::string& path) {
  return typed<T>(field(j, key, path), path.empty() ? key : path + "." + key);
}

template <typename T>
T get_or(const json& j, const std::string& key, const std::string& path, T fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  return typed<T>(*it, path.empty() ? key : path + "." + key);
}

void check_schema_version(const json& cfg) {
  if (get<int>(cfg, "schema_version", "") != 1)
    throw input_error("config: unsupported schema_version (expected 1)");
}

std::optional<std::uint64_t> env_seed() {
  const char* s = std::getenv("HKM_SEED");
  if (s == nullptr || *s == '\0') return std::nullopt;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(s, &end, 10);
  if (end == s || *end != '\0') throw input_error("HKM_SEED is not an unsigned integer");
  return static_cast<std::uint64_t>(v);
}

NoiseModel noise_from_json(const json& j, const std::string& path) {
  const std::string model = get<std::string>(j, "model", path);
  if (model == "gaussian_iso") return GaussianIso{get<double>(j, "sigma", path)};
  if (model == "gaussian_cov") {
    const auto rows = get<std::vector<std::vector<double>>>(j, "cov", path);
    const int n = static_cast<int>(rows.size());
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n)
        throw input_error("config: '" + path + ".cov' must be a square matrix");
      for (int c = 0; c < n; ++c) m(i, c) = rows[i][c];
    }
    return GaussianCov{m};
  }
  if (model == "kl") {
    KLProcess p;
    p.beta = get<double>(j, "beta", path);
    p.d = get<int>(j, "d", path);
    p.grid = uniform_grid(get<int>(j, "grid_m", path));
    return p;
  }
  if (model == "uniform") return BoundedUniform{get<double>(j, "half_width", path)};
  throw input_error("config: unknown noise model '" + model + "' at '" + path +
                    ".model' (gaussian_iso | gaussian_cov | kl | uniform)");
}

SpaceSpec space_from_json(const json& j, const std::string& path) {
  const std::string type = get<std::string>(j, "type", path);
  if (type == "euclidean") return Euclidean{get<int>(j, "dim", path)};
  if (type == "l2") return L2Grid{uniform_grid(get<int>(j, "grid_m", path))};
  if (type == "sobolev")
    return Sobolev{uniform_grid(get<int>(j, "grid_m", path)), get_or<int>(j, "order", path, 1)};
  throw input_error("config: unknown space type '" + type + "' at '" + path +
                    ".type' (euclidean | l2 | sobolev)");
}

SolverConfig solver_from_json(const json& cfg) {
  SolverConfig s;
  auto it = cfg.find("solver");
  if (it == cfg.end()) return s;
  s.rho = get_or<double>(*it, "rho", "solver", s.rho);
  s.max_iters = get_or<int>(*it, "max_iters", "solver", s.max_iters);
  s.tol_primal = get_or<double>(*it, "tol_primal", "solver", s.tol_primal);
  s.tol_dual = get_or<double>(*it, "tol_dual", "solver", s.tol_dual);
  return s;
}

ExperimentConfig experiment_from_json(const json& cfg, int threads_flag) {
  ExperimentConfig e;
  e.n = get_or<int>(cfg, "n", "", 0);  // phase-diagram takes n from n_grid instead
  e.K = get<int>(cfg, "k", "");
  e.cluster_sizes = get_or<std::vector<int>>(cfg, "cluster_sizes", "", {});
  e.noise = noise_from_json(field(cfg, "noise", ""), "noise");
  const json& spaces = field(cfg, "spaces", "");
  if (!spaces.is_array() || spaces.empty())
    throw input_error("config: 'spaces' must be a nonempty array");
  for (size_t i = 0; i < spaces.size(); ++i)
    e.spaces.push_back(space_from_json(spaces[i], "spaces[" + std::to_string(i) + "]"));
  e.mean_layout = get_or<std::string>(cfg, "mean_layout", "", "simplex");
  e.sine_j = get_or<int>(cfg, "sine_j", "", 8);
  e.delta_grid = get<std::vector<double>>(cfg, "delta_grid", "");
  e.n_grid = get_or<std::vector<int>>(cfg, "n_grid", "", {});
  e.trials_per_cell = get<int>(cfg, "trials_per_cell", "");
  e.solver = solver_from_json(cfg);
  e.seed = env_seed().value_or(get_or<std::uint64_t>(cfg, "seed", "", 1));
  e.threads = threads_flag > 0 ? threads_flag : get_or<int>(cfg, "threads", "", 1);
  return e;
}

// ---- artifact writers ------------------------------------------------------

void write_json(const fs::path& path, const json& j) {
  atomic_write_text(path, j.dump(2) + "\n");
}

json echo_config(const json& cfg, std::uint64_t resolved_seed) {
  json out = cfg;
  out["seed"] = resolved_seed;
  return out;
}

std::string cell_csv(const std::vector<CellResult>& cells) {
  std::ostringstream os;
  os << "space,delta,n,snr2,snr2_threshold,size_ok,median_l1_error,recovery_rate,mean_iters\n";
  for (const CellResult& c : cells) {
    os << c.space_tag << ',' << fmt_g17(c.delta) << ',' << c.n << ',' << fmt_g17(c.snr2) << ','
       << fmt_g17(c.snr2_threshold) << ',' << (c.size_condition ? 1 : 0) << ','
       << fmt_g17(c.median_l1_error) << ',' << fmt_g17(c.recovery_rate) << ','
       << fmt_g17(c.mean_iters) << '\n';
  }
  return os.str();
}

std::string trial_csv(const std::vector<TrialRecord>& trials) {
  std::ostringstream os;
  os << "space,cell,trial,delta,n,l1_error,recovered,iters,converged,identities_pass\n";
  for (const TrialRecord& t : trials) {
    os << t.space_tag << ',' << t.cell << ',' << t.trial << ',' << fmt_g17(t.delta) << ',' << t.n
       << ',' << fmt_g17(t.l1_error) << ',' << (t.recovered ? 1 : 0) << ',' << t.iters << ','
       << (t.converged ? 1 : 0) << ',' << (t.identities_pass ? 1 : 0) << '\n';
  }
  return os.str();
}

json residuals_json(const FeasibilityResiduals& r) {
  return json{{"sym", r.sym},
              {"psd", r.psd},
              {"trace_gap", r.trace_gap},
              {"rowsum", r.rowsum},
              {"neg", r.neg}};
}

// ---- cluster ---------------------------------------------------------------

SpaceSpec space_from_flag(const std::string& arg, int data_dim) {
  const auto colon = arg.find(':');
  const std::string head = arg.substr(0, colon);
  const std::string tail = colon == std::string::npos ? "" : arg.substr(colon + 1);
  auto num = [&](const std::string& s, const char* what) {
    try {
      size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw input_error(std::string("--space: cannot parse ") + what + " from '" + s + "'");
    }
  };
  if (head == "euclidean") return Euclidean{data_dim};
  if (head == "l2") return L2Grid{uniform_grid(data_dim)};
  if (head == "sobolev")
    return Sobolev{uniform_grid(data_dim),
                   tail.empty() ? 1 : static_cast<int>(num(tail, "order"))};
  if (head == "poly") {
    const auto comma = tail.find(',');
    if (comma == std::string::npos)
      throw input_error("--space poly needs two parameters: poly:C,R");
    return KernelImplicit{Polynomial{num(tail.substr(0, comma), "offset"),
                                     static_cast<int>(num(tail.substr(comma + 1), "degree"))}};
  }
  if (head == "rbf") return KernelImplicit{RBF{num(tail, "bandwidth")}};
  throw input_error("--space must be euclidean | l2 | sobolev:K | poly:C,R | rbf:H, got '" +
                    arg + "'");
}

int run_cluster(const std::string& data_path, const std::string& space_arg, int K, double rho,
                int max_iters, double tol, bool score, const fs::path& out_dir) {
  const Dataset ds = load_dataset_csv(data_path);
  if (ds.points.empty()) throw input_error(data_path + ": no data rows");
  const int n = static_cast<int>(ds.points.size());
  const int dim = static_cast<int>(ds.points.front().size());
  if (K < 1 || K > n)
    throw input_error("--k must be between 1 and the number of rows (" + std::to_string(n) + ")");

  const SpaceSpec space = space_from_flag(space_arg, dim);
  validate(space);

  SolverConfig sc;
  sc.rho = rho;
  sc.max_iters = max_iters;
  sc.tol_primal = tol;
  sc.tol_dual = tol;

  const SimilarityMatrix a = gram(ds.points, space);
  const SdpSolution sol = solve(a, K, sc);
  const Assignment labels = round_solution(sol.z_hat);

  fs::create_directories(out_dir);
  {
    std::ostringstream os;
    os << "index,label\n";
    for (int i = 0; i < n; ++i) os << i << ',' << labels.labels[i] << '\n';
    atomic_write_text(out_dir / "assignment.csv", os.str());
  }
  write_matrix_csv(out_dir / "zhat.csv", sol.z_hat);

  json diag{{"n", n},
            {"dim", dim},
            {"space", describe(space)},
            {"k", K},
            {"rounded_k", labels.K},
            {"objective", sol.objective},
            {"iters", sol.iters},
            {"converged", sol.converged},
            {"residuals", residuals_json(sol.residuals)}};
  if (score) {
    if (!ds.labels.has_value())
      throw input_error("--score needs a dataset with a trailing 'label' column");
    const Assignment truth = Assignment::from_labels(*ds.labels);
    const bool match = same_partition(labels, truth);
    diag["score"] = match;
    std::cout << "score: " << (match ? "true" : "false") << "\n";
  }
  write_json(out_dir / "diagnostics.json", diag);

  std::cout << "objective " << fmt_g17(sol.objective) << ", " << sol.iters << " iterations, "
            << (sol.converged ? "converged" : "NOT converged") << ", rounded to " << labels.K
            << " clusters -> " << out_dir.string() << "\n";
  return sol.converged ? 0 : 2;
}

// ---- simulate / phase-diagram ----------------------------------------------

std::string summaries_csv(const ExperimentConfig& cfg, const SobolevComparison& cmp) {
  const size_t nspaces = cfg.spaces.size();
  std::ostringstream os;
  os << "epsilon,space,delta,snr2,sigma_op,sigma_hs,sigma_trace\n";
  for (size_t i = 0; i < cmp.summaries.size(); ++i) {
    const SpaceSummary& s = cmp.summaries[i];
    const double eps = cfg.delta_grid[i / nspaces];
    os << fmt_g17(eps) << ',' << s.space_tag << ',' << fmt_g17(s.delta) << ','
       << fmt_g17(s.snr2) << ',' << fmt_g17(s.sigma.op) << ',' << fmt_g17(s.sigma.hs) << ','
       << fmt_g17(s.sigma.trace) << '\n';
  }
  return os.str();
}

int run_simulate(const fs::path& config_path, const fs::path& out_dir, int threads_flag) {
  const json cfg = parse_config_file(config_path);
  check_schema_version(cfg);
  const std::string kind = get<std::string>(cfg, "kind", "");
  if (!cfg.contains("n")) missing("n");
  const ExperimentConfig e = experiment_from_json(cfg, threads_flag);

  fs::create_directories(out_dir);
  if (kind == "error_curve") {
    const ExperimentResult r = run_error_curve(e);
    atomic_write_text(out_dir / "results.csv", cell_csv(r.cells));
    atomic_write_text(out_dir / "trials.csv", trial_csv(r.trials));
  } else if (kind == "sobolev_comparison") {
    const SobolevComparison cmp = run_sobolev_comparison(e);
    atomic_write_text(out_dir / "results.csv", cell_csv(cmp.result.cells));
    atomic_write_text(out_dir / "trials.csv", trial_csv(cmp.result.trials));
    atomic_write_text(out_dir / "summaries.csv", summaries_csv(e, cmp));
  } else {
    throw input_error("config: unknown simulate kind '" + kind +
                      "' (error_curve | sobolev_comparison)");
  }
  write_json(out_dir / "config_echo.json", echo_config(cfg, e.seed));
  std::cout << "simulate " << kind << " -> " << out_dir.string() << "\n";
  return 0;
}

int run_phase_diagram(const fs::path& config_path, const fs::path& out_dir, int threads_flag) {
  const json cfg = parse_config_file(config_path);
  check_schema_version(cfg);
  ExperimentConfig e = experiment_from_json(cfg, threads_flag);
  if (e.n_grid.empty()) missing("n_grid");
  if (e.n <= 0) e.n = e.n_grid.front();

  const ExperimentResult r = run_phase_diagram(e);
  fs::create_directories(out_dir);
  atomic_write_text(out_dir / "results.csv", cell_csv(r.cells));
  atomic_write_text(out_dir / "trials.csv", trial_csv(r.trials));
  write_json(out_dir / "config_echo.json", echo_config(cfg, e.seed));
  std::cout << "phase-diagram: " << r.cells.size() << " cells -> " << out_dir.string() << "\n";
  return 0;
}

// ---- tail-check --------------------------------------------------------------

Eigen::MatrixXd weight_from_json(const json& j, int n) {
  const std::string kind = get<std::string>(j, "kind", "weight");
  if (kind == "identity") return Eigen::MatrixXd::Identity(n, n);
  if (kind == "random_symmetric") {
    Rng rng = Rng::stream(get<std::uint64_t>(j, "seed", "weight"), 0x7765696768740001ULL);
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i)
      for (int c = i; c < n; ++c) {
        m(i, c) = rng.normal();
        m(c, i) = m(i, c);
      }
    return m;
  }
  if (kind == "explicit") {
    const auto rows = get<std::vector<std::vector<double>>>(j, "values", "weight");
    if (static_cast<int>(rows.size()) != n)
      throw input_error("config: 'weight.values' must be " + std::to_string(n) + " rows");
    Eigen::MatrixXd m(n, n);
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(rows[i].size()) != n)
        throw input_error("config: 'weight.values' must be square");
      for (int c = 0; c < n; ++c) m(i, c) = rows[i][c];
    }
    return m;
  }
  throw input_error("config: unknown weight kind '" + kind +
                    "' (identity | random_symmetric | explicit)");
}

json params_json(const BoundParams& p) {
  return json{{"l", p.L},
              {"gamma_op", p.gamma.op},
              {"gamma_hs", p.gamma.hs},
              {"gamma_trace", p.gamma.trace},
              {"a_hs", p.a_hs},
              {"a_op", p.a_op},
              {"d2", p.d2()},
              {"d1", p.d1()}};
}

int run_tail_check(const fs::path& config_path, const fs::path& out_dir, int threads_flag) {
  const json cfg = parse_config_file(config_path);
  check_schema_version(cfg);
  const std::string kind = get<std::string>(cfg, "kind", "");
  const std::uint64_t seed = env_seed().value_or(get_or<std::uint64_t>(cfg, "seed", "", 1));
  fs::create_directories(out_dir);

  if (kind == "two_sided" || kind == "upper_diag") {
    QuadraticFormSpec spec;
    spec.n = get<int>(cfg, "n", "");
    spec.dim = get<int>(cfg, "dim", "");
    spec.noise = noise_from_json(field(cfg, "noise", ""), "noise");
    spec.weight = weight_from_json(field(cfg, "weight", ""), spec.n);
    spec.trials = get<long>(cfg, "trials", "");
    spec.seed = seed;
    spec.threads = threads_flag > 0 ? threads_flag : get_or<int>(cfg, "threads", "", 1);
    const TailReport r =
        kind == "two_sided" ? tail_experiment(spec) : upper_tail_diag_experiment(spec);

    std::ostringstream os;
    os << "t,empirical_tail,bound_value\n";
    for (size_t i = 0; i < r.t_grid.size(); ++i)
      os << fmt_g17(r.t_grid[i]) << ',' << fmt_g17(r.empirical_tail[i]) << ','
         << fmt_g17(hw_bound_value(r.t_grid[i], r.fitted_c, r.params.d2(), r.params.d1()))
         << '\n';
    atomic_write_text(out_dir / "report.csv", os.str());
    write_json(out_dir / "summary.json",
               json{{"kind", kind},
                    {"fitted_c", r.fitted_c},
                    {"params", params_json(r.params)},
                    {"q_mean", r.q_mean},
                    {"q_sd", r.q_sd},
                    {"analytic_center", r.analytic_center},
                    {"center_gap", r.center_gap},
                    {"trials", r.trials},
                    {"usable_points", r.usable_points},
                    {"config", echo_config(cfg, seed)}});
  } else if (kind == "mgf") {
    const NoiseModel noise = noise_from_json(field(cfg, "noise", ""), "noise");
    const MgfReport r = mgf_dominance_check(noise, get<int>(cfg, "dim", ""),
                                            get<std::vector<double>>(cfg, "t_grid", ""),
                                            get<long>(cfg, "trials", ""), seed);
    std::ostringstream os;
    os << "t,mgf_x,mgf_z,ratio\n";
    for (size_t i = 0; i < r.t_grid.size(); ++i)
      os << fmt_g17(r.t_grid[i]) << ',' << fmt_g17(r.mgf_x[i]) << ',' << fmt_g17(r.mgf_z[i])
         << ',' << fmt_g17(r.mgf_x[i] / r.mgf_z[i]) << '\n';
    atomic_write_text(out_dir / "report.csv", os.str());
    write_json(out_dir / "summary.json", json{{"kind", kind},
                                              {"max_ratio", r.max_ratio},
                                              {"config", echo_config(cfg, seed)}});
  } else if (kind == "bernstein" || kind == "bernstein_counterexample") {
    BernsteinReport r;
    if (kind == "bernstein") {
      r = bernstein_moment_check(noise_from_json(field(cfg, "noise", ""), "noise"),
                                 get<int>(cfg, "dim", ""), get<int>(cfg, "k_max", ""),
                                 get<long>(cfg, "trials", ""), seed);
    } else {
      r = bernstein_moment_check_counterexample(get<double>(cfg, "a_n", ""),
                                                get<int>(cfg, "k_max", ""),
                                                get<long>(cfg, "trials", ""), seed);
    }
    std::ostringstream os;
    os << "k,moment,moment_se,c_hat\n";
    for (size_t i = 0; i < r.k.size(); ++i)
      os << r.k[i] << ',' << fmt_g17(r.moment[i]) << ',' << fmt_g17(r.moment_se[i]) << ','
         << fmt_g17(r.c_hat[i]) << '\n';
    atomic_write_text(out_dir / "report.csv", os.str());
    write_json(out_dir / "summary.json", json{{"kind", kind},
                                              {"l", r.L},
                                              {"gamma_op", r.gamma_op},
                                              {"sigma_hs2", r.sigma_hs2},
                                              {"trials", r.trials},
                                              {"config", echo_config(cfg, seed)}});
  } else {
    throw input_error("config: unknown tail-check kind '" + kind +
                      "' (two_sided | upper_diag | mgf | bernstein | bernstein_counterexample)");
  }
  std::cout << "tail-check " << kind << " -> " << out_dir.string() << "\n";
  return 0;
}

// ---- validate ----------------------------------------------------------------

int run_validate(const std::string& data_path) {
  const Dataset ds = load_dataset_csv(data_path);
  const int n = static_cast<int>(ds.points.size());
  const int dim = ds.points.empty() ? 0 : static_cast<int>(ds.points.front().size());
  std::cout << data_path << ": " << n << " rows, " << dim << " columns";
  if (ds.labels.has_value()) {
    const Assignment a = Assignment::from_labels(*ds.labels);
    std::cout << ", labels with " << a.K << " clusters (smallest " << a.n_min() << ")";
  }
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generalized K-means clustering via a semidefinite relaxation"};
  app.require_subcommand(1);

  // cluster
  std::string data_path, space_arg = "euclidean", out_dir = ".";
  int K = 2, max_iters = 20000;
  double rho = 1.0, tol = 1e-5;
  bool score = false;
  CLI::App* cluster = app.add_subcommand("cluster", "Cluster a CSV dataset");
  cluster->add_option("--data", data_path, "dataset CSV path")->required();
  cluster->add_option("--space", space_arg,
                      "euclidean | l2 | sobolev:K | poly:C,R | rbf:H (default euclidean)");
  cluster->add_option("--k", K, "number of clusters")->required();
  cluster->add_option("--rho", rho, "solver penalty multiplier");
  cluster->add_option("--max-iters", max_iters, "solver iteration budget");
  cluster->add_option("--tol", tol, "solver stopping tolerance");
  cluster->add_flag("--score", score, "compare against the dataset's label column");
  cluster->add_option("--out", out_dir, "output directory (default .)");

  // config-driven commands
  std::string sim_config, sim_out = ".";
  int threads_flag = 0;
  CLI::App* simulate = app.add_subcommand("simulate", "Recovery experiments from a config");
  simulate->add_option("--config", sim_config, "JSON config path")->required();
  simulate->add_option("--out", sim_out, "output directory")->required();
  simulate->add_option("--threads", threads_flag, "worker threads (results identical for any N)");

  std::string tail_config, tail_out = ".";
  int tail_threads = 0;
  CLI::App* tail = app.add_subcommand("tail-check", "Concentration checks from a config");
  tail->add_option("--config", tail_config, "JSON config path")->required();
  tail->add_option("--out", tail_out, "output directory")->required();
  tail->add_option("--threads", tail_threads, "worker threads (results identical for any N)");

  std::string phase_config, phase_out = ".";
  int phase_threads = 0;
  CLI::App* phase = app.add_subcommand("phase-diagram", "(n, separation) recovery sweep");
  phase->add_option("--config", phase_config, "JSON config path")->required();
  phase->add_option("--out", phase_out, "output directory")->required();
  phase->add_option("--threads", phase_threads, "worker threads (results identical for any N)");

  std::string validate_path;
  CLI::App* val = app.add_subcommand("validate", "Parse and summarize a dataset CSV");
  val->add_option("--data", validate_path, "dataset CSV path")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return 1;
  }

  try {
    if (*cluster)
      return run_cluster(data_path, space_arg, K, rho, max_iters, tol, score, out_dir);
    if (*simulate) return run_simulate(sim_config, sim_out, threads_flag);
    if (*tail) return run_tail_check(tail_config, tail_out, tail_threads);
    if (*phase) return run_phase_diagram(phase_config, phase_out, phase_threads);
    if (*val) return run_validate(validate_path);
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const numeric_error& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
