#include "hkm/concentration.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "hkm/errors.hpp"
#include "hkm/similarity.hpp"
#include "hkm/util.hpp"

namespace hkm {

double BoundParams::d2() const {
  const double l2 = L * L;
  return l2 * l2 * gamma.hs * gamma.hs * a_hs * a_hs;
}

double BoundParams::d1() const {
  return L * L * gamma.op * a_op;
}

double hw_bound_value(double t, double C, double d2, double d1) {
  if (!(t >= 0.0)) throw input_error("hw_bound_value: t must be >= 0");
  if (t == 0.0) return 2.0;
  return 2.0 * std::exp(-C * std::min(t * t / d2, t / d1));
}

double bernstein_trace_bound_value(double t, double C, double L, double gamma_tr,
                                   double sum_aii_sq, double max_abs_aii) {
  if (!(t >= 0.0)) throw input_error("bernstein_trace_bound_value: t must be >= 0");
  if (t == 0.0) return 2.0;
  const double l2 = L * L;
  const double d2 = l2 * l2 * gamma_tr * gamma_tr * sum_aii_sq;
  const double d1 = l2 * gamma_tr * max_abs_aii;
  return 2.0 * std::exp(-C * std::min(t * t / d2, t / d1));
}

namespace {

// Draw domains; keep disjoint from the sampling module's stream tags.
constexpr std::uint64_t kTagTrial = 3;
constexpr std::uint64_t kTagMgfX = 4;
constexpr std::uint64_t kTagMgfZ = 5;
constexpr std::uint64_t kTagMoment = 6;

void check_weight(const Eigen::MatrixXd& a, int n) {
  if (a.rows() != a.cols() || static_cast<int>(a.rows()) != n) {
    std::ostringstream os;
    os << "weight matrix must be " << n << "x" << n << ", got " << a.rows() << "x" << a.cols();
    throw input_error(os.str());
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw input_error("weight matrix must be symmetric");
}

// sum_ij a_ij <x_i, x_j> with rows of phi the embedded points.
double quad(const Eigen::MatrixXd& a, const Eigen::MatrixXd& phi) {
  return (phi.array() * (a * phi).array()).sum();
}

// Squared native-space norm without re-embedding every draw.
struct SqNorm {
  explicit SqNorm(const SpaceSpec& s) {
    if (const auto* l = std::get_if<L2Grid>(&s)) w = trapezoid_weights(l->grid);
  }
  double operator()(const Point& x) const {
    if (w.size() == 0) return x.squaredNorm();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) acc += w[i] * x[i] * x[i];
    return acc;
  }
  Eigen::VectorXd w;
};

std::vector<double> collect_q(const QuadraticFormSpec& spec, const Eigen::MatrixXd& weight) {
  const NoiseSampler sampler(spec.noise, spec.dim);
  const SpaceSpec space = noise_native_space(spec.noise, spec.dim);
  std::vector<double> q(static_cast<size_t>(spec.trials));
  parallel_for(static_cast<int>(spec.trials), spec.threads, [&](int t) {
    std::vector<Point> pts;
    pts.reserve(spec.n);
    for (int i = 0; i < spec.n; ++i) {
      Rng rng = Rng::stream(spec.seed, kTagTrial, static_cast<std::uint64_t>(t),
                            static_cast<std::uint64_t>(i));
      pts.push_back(sampler.draw(rng));
    }
    q[t] = quad(weight, embed_coordinates(pts, space));
  });
  return q;
}

BoundParams bound_params_for(const QuadraticFormSpec& spec) {
  BoundParams p;
  p.L = noise_psi2_bound(spec.noise);
  p.gamma = noise_subgaussian_proxy_norms(spec.noise, spec.dim);
  p.a_hs = spec.weight.norm();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(spec.weight, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw numeric_error("weight eigensolver failed");
  p.a_op = es.eigenvalues().cwiseAbs().maxCoeff();
  return p;
}

double mean_of(const std::vector<double>& v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

double sd_of(const std::vector<double>& v, double mean) {
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

// Largest C keeping 2 exp(-C min(t^2/d2, t/d1)) >= tail + 2 SE at every
// usable grid point.
double fit_constant(const std::vector<double>& t_grid, const std::vector<double>& tails,
                    long trials, double d2, double d1, int* usable_out) {
  double c = std::numeric_limits<double>::infinity();
  int usable = 0;
  const double floor_tail = 10.0 / static_cast<double>(trials);
  for (size_t i = 0; i < t_grid.size(); ++i) {
    const double p = tails[i];
    if (p < floor_tail) continue;
    ++usable;
    const double se = std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    const double target = p + 2.0 * se;
    const double expo = std::min(t_grid[i] * t_grid[i] / d2, t_grid[i] / d1);
    c = std::min(c, std::log(2.0 / target) / expo);
  }
  if (usable_out) *usable_out = usable;
  if (usable < 3)
    throw numeric_error(
        "tail fit: fewer than 3 grid points carry at least 10 exceedances; increase trials");
  return c;
}

TailReport tail_core(const QuadraticFormSpec& spec, bool two_sided) {
  validate(spec);
  TailReport rep;
  rep.trials = spec.trials;
  rep.params = bound_params_for(spec);
  rep.samples = collect_q(spec, spec.weight);
  rep.q_mean = mean_of(rep.samples);
  rep.q_sd = sd_of(rep.samples, rep.q_mean);
  if (!(rep.q_sd > 0.0)) throw numeric_error("tail experiment: degenerate Q (zero variance)");

  if (two_sided) {
    // E[Q] = sum_i a_ii E|X|^2 for independent centered points.
    rep.analytic_center = spec.weight.diagonal().sum() * noise_mean_sq_norm(spec.noise, spec.dim);
  } else {
    rep.analytic_center =
        spec.weight.diagonal().sum() * rep.params.L * rep.params.L * rep.params.gamma.trace;
  }
  rep.center_gap = rep.q_mean - rep.analytic_center;

  rep.t_grid.resize(20);
  for (int i = 0; i < 20; ++i)
    rep.t_grid[i] = rep.q_sd * (0.5 + 4.5 * static_cast<double>(i) / 19.0);

  rep.empirical_tail.resize(rep.t_grid.size());
  const double center = two_sided ? rep.q_mean : rep.analytic_center;
  for (size_t i = 0; i < rep.t_grid.size(); ++i) {
    long hits = 0;
    if (two_sided) {
      for (double qv : rep.samples)
        if (std::abs(qv - center) >= rep.t_grid[i]) ++hits;
    } else {
      for (double qv : rep.samples)
        if (qv - center >= rep.t_grid[i]) ++hits;
    }
    rep.empirical_tail[i] = static_cast<double>(hits) / static_cast<double>(spec.trials);
    if (i > 0 && rep.empirical_tail[i] > rep.empirical_tail[i - 1] + 1e-15)
      throw numeric_error("tail experiment: empirical tail not monotone");
  }

  rep.fitted_c = fit_constant(rep.t_grid, rep.empirical_tail, spec.trials, rep.params.d2(),
                              rep.params.d1(), &rep.usable_points);
  return rep;
}

}  // namespace

void validate(const QuadraticFormSpec& spec) {
  if (spec.n < 1) throw input_error("quadratic form: n must be >= 1");
  check_weight(spec.weight, spec.n);
  if (spec.trials < 1000) throw input_error("quadratic form: need at least 1000 trials");
  if (spec.threads < 1) throw input_error("quadratic form: threads must be >= 1");
  const NoiseSampler check(spec.noise, spec.dim);  // validates the model
  (void)check;
}

double quadratic_form(const Eigen::MatrixXd& a, const std::vector<Point>& data,
                      const SpaceSpec& s) {
  check_weight(a, static_cast<int>(data.size()));
  if (std::holds_alternative<KernelImplicit>(s)) {
    const SimilarityMatrix g = gram(data, s);
    return (a.array() * g.a.array()).sum();
  }
  return quad(a, embed_coordinates(data, s));
}

double offdiag_quadratic_form(const Eigen::MatrixXd& a, const std::vector<Point>& data,
                              const SpaceSpec& s) {
  Eigen::MatrixXd b = a;
  b.diagonal().setZero();
  return quadratic_form(b, data, s);
}

TailReport tail_experiment(const QuadraticFormSpec& spec) {
  return tail_core(spec, /*two_sided=*/true);
}

TailReport upper_tail_diag_experiment(const QuadraticFormSpec& spec) {
  for (int i = 0; i < spec.n; ++i)
    if (spec.weight(i, i) < 0.0)
      throw input_error("upper tail experiment expects a nonnegative diagonal");
  return tail_core(spec, /*two_sided=*/false);
}

double empirical_tail_two_sided(const std::vector<double>& samples, double center, double t) {
  if (samples.empty()) throw input_error("empirical_tail_two_sided: no samples");
  long hits = 0;
  for (double q : samples)
    if (std::abs(q - center) >= t) ++hits;
  return static_cast<double>(hits) / static_cast<double>(samples.size());
}

MgfReport mgf_dominance_check(const NoiseModel& noise, int dim,
                              const std::vector<double>& t_grid, long trials,
                              std::uint64_t seed) {
  if (t_grid.empty()) throw input_error("mgf check: empty t grid");
  if (trials < 1000) throw input_error("mgf check: need at least 1000 trials");
  const OperatorNorms gamma = noise_subgaussian_proxy_norms(noise, dim);
  for (double t : t_grid) {
    if (t < 0.0 || t > 0.9 / gamma.op) {
      std::ostringstream os;
      os << "mgf check: t = " << t << " outside [0, 0.9/|Gamma|_op = " << 0.9 / gamma.op << "]";
      throw input_error(os.str());
    }
  }

  const NoiseSampler xs(noise, dim);
  const SpaceSpec space = noise_native_space(noise, dim);
  const SqNorm sq(space);

  // Gaussian comparator with the dominating covariance: the model itself
  // when already Gaussian, N(0, w^2 I) for bounded uniform coordinates.
  NoiseModel comparator = noise;
  if (const auto* b = std::get_if<BoundedUniform>(&noise))
    comparator = GaussianIso{b->half_width};
  const NoiseSampler zs(comparator, dim);

  std::vector<double> x2(static_cast<size_t>(trials)), z2(static_cast<size_t>(trials));
  for (long i = 0; i < trials; ++i) {
    Rng rx = Rng::stream(seed, kTagMgfX, static_cast<std::uint64_t>(i));
    Rng rz = Rng::stream(seed, kTagMgfZ, static_cast<std::uint64_t>(i));
    x2[i] = sq(xs.draw(rx));
    z2[i] = sq(zs.draw(rz));
  }

  MgfReport rep;
  rep.t_grid = t_grid;
  rep.mgf_x.resize(t_grid.size());
  rep.mgf_z.resize(t_grid.size());
  rep.max_ratio = 0.0;
  for (size_t k = 0; k < t_grid.size(); ++k) {
    const double t = t_grid[k];
    double ax = 0.0, az = 0.0;
    for (long i = 0; i < trials; ++i) {
      ax += std::exp(0.5 * t * x2[i]);
      az += std::exp(0.5 * t * z2[i]);
    }
    rep.mgf_x[k] = ax / static_cast<double>(trials);
    rep.mgf_z[k] = az / static_cast<double>(trials);
    rep.max_ratio = std::max(rep.max_ratio, rep.mgf_x[k] / rep.mgf_z[k]);
  }
  return rep;
}

namespace {

BernsteinReport moment_core(const std::vector<double>& sq_norms, double mean_sq, int k_max,
                            double L, double gamma_op, double sigma_hs2, long trials) {
  if (k_max < 3 || k_max > 6) throw input_error("bernstein check: k_max must be in [3, 6]");
  BernsteinReport rep;
  rep.L = L;
  rep.gamma_op = gamma_op;
  rep.sigma_hs2 = sigma_hs2;
  rep.trials = trials;
  for (int k = 3; k <= k_max; ++k) {
    double acc = 0.0;
    for (double v : sq_norms) acc += std::pow(std::abs(v - mean_sq), k);
    const double mk = acc / static_cast<double>(trials);
    double var = 0.0;
    for (double v : sq_norms) {
      const double d = std::pow(std::abs(v - mean_sq), k) - mk;
      var += d * d;
    }
    const double se = std::sqrt(var / static_cast<double>(trials)) /
                      std::sqrt(static_cast<double>(trials));
    double kfact = 1.0;
    for (int j = 2; j <= k; ++j) kfact *= j;
    const double denom = kfact * std::pow(L, k - 2) * std::pow(gamma_op, k - 2) * sigma_hs2;
    rep.k.push_back(k);
    rep.moment.push_back(mk);
    rep.moment_se.push_back(se);
    rep.c_hat.push_back(mk / denom);
  }
  return rep;
}

}  // namespace

BernsteinReport bernstein_moment_check(const NoiseModel& noise, int dim, int k_max,
                                       long trials, std::uint64_t seed) {
  if (trials < 1000) throw input_error("bernstein check: need at least 1000 trials");
  const NoiseSampler sampler(noise, dim);
  const SpaceSpec space = noise_native_space(noise, dim);
  const SqNorm sq(space);
  std::vector<double> v(static_cast<size_t>(trials));
  for (long i = 0; i < trials; ++i) {
    Rng rng = Rng::stream(seed, kTagMoment, static_cast<std::uint64_t>(i));
    v[i] = sq(sampler.draw(rng));
  }
  const OperatorNorms gamma = noise_subgaussian_proxy_norms(noise, dim);
  const OperatorNorms sigma = noise_gamma_norms(noise, dim);
  return moment_core(v, noise_mean_sq_norm(noise, dim), k_max, noise_psi2_bound(noise),
                     gamma.op, sigma.hs * sigma.hs, trials);
}

BernsteinReport bernstein_moment_check_counterexample(double a_n, int k_max, long trials,
                                                      std::uint64_t seed) {
  if (trials < 1000) throw input_error("bernstein check: need at least 1000 trials");
  const std::vector<double> y = sample_counterexample(a_n, static_cast<int>(trials), seed);
  std::vector<double> v(y.size());
  for (size_t i = 0; i < y.size(); ++i) v[i] = y[i] * y[i];
  const double var = counterexample_variance(a_n);
  // Sub-gaussian proxy 2 a^2 from the mixture's MGF envelope; Sigma is the
  // scalar variance, so |Sigma|_hs^2 = var^2.
  return moment_core(v, var, k_max, 1.0, 2.0 * a_n * a_n, var * var, trials);
}

}  // namespace hkm
