#include "hkm/sampling.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "hkm/errors.hpp"

namespace hkm {

namespace {

constexpr double kPi = 3.141592653589793238462643;

int noise_dim_of(const NoiseModel& m, int fallback) {
  if (const auto* kl = std::get_if<KLProcess>(&m)) return static_cast<int>(kl->grid.size());
  if (const auto* c = std::get_if<GaussianCov>(&m)) return static_cast<int>(c->cov.rows());
  return fallback;
}

void validate_noise(const NoiseModel& m) {
  if (const auto* g = std::get_if<GaussianIso>(&m)) {
    if (!(g->sigma >= 0.0)) throw input_error("gaussian sigma must be >= 0");
  } else if (const auto* c = std::get_if<GaussianCov>(&m)) {
    CovarianceOp check(c->cov, "coordinates");  // validates shape, symmetry, psd
    (void)check;
  } else if (const auto* kl = std::get_if<KLProcess>(&m)) {
    if (!(kl->beta > 0.0)) throw input_error("kl beta must be > 0");
    if (kl->d < 1) throw input_error("kl d must be >= 1");
    validate(SpaceSpec{L2Grid{kl->grid}});
  } else {
    const auto& b = std::get<BoundedUniform>(m);
    if (!(b.half_width > 0.0)) throw input_error("bounded uniform half_width must be > 0");
  }
}

}  // namespace

NoiseSampler::NoiseSampler(NoiseModel model, int dim) : model_(std::move(model)) {
  validate_noise(model_);
  dim_ = noise_dim_of(model_, dim);
  if (dim_ < 1) throw input_error("noise sampler: dimension must be >= 1");
  if (const auto* c = std::get_if<GaussianCov>(&model_)) {
    op_ = symmetric_sqrt(c->cov);
    factors_ = dim_;
  } else if (const auto* kl = std::get_if<KLProcess>(&model_)) {
    const std::vector<double> lam = kl_eigenvalues(kl->beta, kl->d);
    op_.resize(dim_, kl->d);
    for (int j = 0; j < kl->d; ++j) {
      const double amp = std::sqrt(2.0 * lam[j]);
      for (int g = 0; g < dim_; ++g) op_(g, j) = amp * std::sin((j + 1) * kPi * kl->grid[g]);
    }
    factors_ = kl->d;
  } else {
    factors_ = dim_;
  }
}

Point NoiseSampler::draw(Rng& rng) const {
  if (const auto* g = std::get_if<GaussianIso>(&model_)) {
    return g->sigma * rng.normal_vector(dim_);
  }
  if (const auto* b = std::get_if<BoundedUniform>(&model_)) {
    Point x(dim_);
    for (int i = 0; i < dim_; ++i) x[i] = rng.uniform(-b->half_width, b->half_width);
    return x;
  }
  return op_ * rng.normal_vector(factors_);
}

void validate(const MixtureConfig& cfg) {
  if (cfg.K < 1) throw input_error("mixture: K must be >= 1");
  if (static_cast<int>(cfg.cluster_sizes.size()) != cfg.K)
    throw input_error("mixture: need one cluster size per cluster");
  if (static_cast<int>(cfg.means.size()) != cfg.K)
    throw input_error("mixture: need one mean per cluster");
  for (int s : cfg.cluster_sizes)
    if (s < 1) throw input_error("mixture: cluster sizes must be >= 1");
  const Eigen::Index dim = cfg.means[0].size();
  for (const Point& mu : cfg.means) {
    if (mu.size() != dim) {
      std::ostringstream os;
      os << "mixture: mean length " << mu.size() << " != " << dim;
      throw input_error(os.str());
    }
  }
  validate_noise(cfg.noise);
  const int nd = noise_dim_of(cfg.noise, static_cast<int>(dim));
  if (nd != static_cast<int>(dim)) {
    std::ostringstream os;
    os << "mixture: noise dimension " << nd << " != mean length " << dim;
    throw input_error(os.str());
  }
}

Sample sample_mixture(const MixtureConfig& cfg) {
  validate(cfg);
  const int dim = static_cast<int>(cfg.means[0].size());
  const int n = std::accumulate(cfg.cluster_sizes.begin(), cfg.cluster_sizes.end(), 0);
  const NoiseSampler sampler(cfg.noise, dim);

  Sample out;
  out.data.reserve(n);
  std::vector<int> labels;
  labels.reserve(n);
  int idx = 0;
  for (int c = 0; c < cfg.K; ++c) {
    for (int r = 0; r < cfg.cluster_sizes[c]; ++r, ++idx) {
      Rng rng = Rng::stream(cfg.seed, 0, static_cast<std::uint64_t>(idx));
      out.data.push_back(cfg.means[c] + sampler.draw(rng));
      labels.push_back(c + 1);
    }
  }
  out.truth = Assignment::from_labels(std::move(labels));
  return out;
}

std::vector<double> sample_counterexample(double a_n, int n, std::uint64_t seed) {
  if (!(a_n > 1.0)) throw input_error("counterexample: a_n must be > 1");
  if (n < 1) throw input_error("counterexample: n must be >= 1");
  const double eps = std::pow(a_n, -4.0);
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) {
    Rng rng = Rng::stream(seed, 1, static_cast<std::uint64_t>(i));
    const double u = rng.uniform01();
    const double z = rng.normal();
    out[i] = u < eps ? a_n * z : z;
  }
  return out;
}

double counterexample_variance(double a_n) {
  return 1.0 - std::pow(a_n, -4.0) + std::pow(a_n, -2.0);
}

double min_separation(const std::vector<Point>& means, const SpaceSpec& s) {
  if (means.size() < 2) throw input_error("min_separation needs at least two means");
  double best = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < means.size(); ++i)
    for (size_t j = i + 1; j < means.size(); ++j)
      best = std::min(best, norm(means[i] - means[j], s));
  return best;
}

double snr_squared(const SnrInputs& in) {
  if (!(in.L > 0.0)) throw input_error("snr: L must be > 0");
  if (in.n_min < 1) throw input_error("snr: n_min must be >= 1");
  if (!(in.sigma_norms.op > 0.0)) throw input_error("snr: |Sigma|_op must be > 0");
  const double d2 = in.delta * in.delta;
  const double l2 = in.L * in.L;
  const double a = d2 / (l2 * in.sigma_norms.op);
  const double b = in.n_min * d2 * d2 / (l2 * l2 * in.sigma_norms.hs * in.sigma_norms.hs);
  return std::min(a, b);
}

std::vector<double> kl_eigenvalues(double beta, int d) {
  std::vector<double> lam(d);
  for (int j = 1; j <= d; ++j) lam[j - 1] = std::pow(static_cast<double>(j), -2.0 * beta - 1.0);
  return lam;
}

namespace {

OperatorNorms diag_norms(const std::vector<double>& lam) {
  OperatorNorms out;
  double hs2 = 0.0;
  for (double v : lam) {
    out.op = std::max(out.op, v);
    hs2 += v * v;
    out.trace += v;
  }
  out.hs = std::sqrt(hs2);
  return out;
}

OperatorNorms iso_norms(double v, int dim) {
  OperatorNorms out;
  out.op = v;
  out.hs = v * std::sqrt(static_cast<double>(dim));
  out.trace = v * dim;
  return out;
}

}  // namespace

OperatorNorms noise_gamma_norms(const NoiseModel& m, int dim) {
  validate_noise(m);
  if (const auto* g = std::get_if<GaussianIso>(&m)) return iso_norms(g->sigma * g->sigma, dim);
  if (const auto* c = std::get_if<GaussianCov>(&m))
    return operator_norms(CovarianceOp(c->cov, "coordinates"));
  if (const auto* kl = std::get_if<KLProcess>(&m))
    return diag_norms(kl_eigenvalues(kl->beta, kl->d));
  const auto& b = std::get<BoundedUniform>(m);
  return iso_norms(b.half_width * b.half_width / 3.0, dim);
}

OperatorNorms noise_subgaussian_proxy_norms(const NoiseModel& m, int dim) {
  if (const auto* b = std::get_if<BoundedUniform>(&m))
    return iso_norms(b->half_width * b->half_width, dim);
  return noise_gamma_norms(m, dim);
}

double noise_psi2_bound(const NoiseModel& m) {
  (void)m;
  // Gaussian draws have psi_2 constant 1 with respect to their own
  // covariance; BoundedUniform has psi_2 constant 1 with respect to the
  // Hoeffding proxy w^2 I used by noise_subgaussian_proxy_norms.
  return 1.0;
}

double noise_mean_sq_norm(const NoiseModel& m, int dim) {
  return noise_gamma_norms(m, noise_dim_of(m, dim)).trace;
}

SpaceSpec noise_native_space(const NoiseModel& m, int dim) {
  if (const auto* kl = std::get_if<KLProcess>(&m)) return SpaceSpec{L2Grid{kl->grid}};
  return SpaceSpec{Euclidean{noise_dim_of(m, dim)}};
}

Eigen::MatrixXd embed_coordinates(const std::vector<Point>& data, const SpaceSpec& s) {
  validate(s);
  if (data.empty()) throw input_error("embed_coordinates: empty dataset");
  if (std::holds_alternative<KernelImplicit>(s))
    throw input_error("embed_coordinates: kernel spaces have no finite coordinate embedding");
  const int n = static_cast<int>(data.size());
  for (const Point& x : data) check_point(x, s);

  if (std::holds_alternative<Euclidean>(s)) {
    Eigen::MatrixXd out(n, data[0].size());
    for (int i = 0; i < n; ++i) out.row(i) = data[i].transpose();
    return out;
  }

  const std::vector<double>& grid = std::holds_alternative<L2Grid>(s)
                                        ? std::get<L2Grid>(s).grid
                                        : std::get<Sobolev>(s).grid;
  const int order = std::holds_alternative<L2Grid>(s) ? 0 : std::get<Sobolev>(s).order;
  const int m = static_cast<int>(grid.size());
  const Eigen::VectorXd wsqrt = trapezoid_weights(grid).cwiseSqrt();
  const Eigen::MatrixXd d = order >= 1 ? derivative_matrix(grid) : Eigen::MatrixXd();

  Eigen::MatrixXd out(n, m * (order + 1));
  for (int i = 0; i < n; ++i) {
    Point cur = data[i];
    out.block(i, 0, 1, m) = (wsqrt.array() * cur.array()).matrix().transpose();
    for (int j = 1; j <= order; ++j) {
      cur = d * cur;
      out.block(i, j * m, 1, m) = (wsqrt.array() * cur.array()).matrix().transpose();
    }
  }
  return out;
}

OperatorNorms empirical_covariance_norms(const NoiseModel& m, const SpaceSpec& s, int dim,
                                         int n_samples, std::uint64_t seed) {
  if (n_samples < 2) throw input_error("empirical_covariance_norms needs n_samples >= 2");
  const NoiseSampler sampler(m, dim);
  std::vector<Point> draws;
  draws.reserve(n_samples);
  for (int i = 0; i < n_samples; ++i) {
    Rng rng = Rng::stream(seed, 2, static_cast<std::uint64_t>(i));
    draws.push_back(sampler.draw(rng));
  }
  const Eigen::MatrixXd phi = embed_coordinates(draws, s);
  const Eigen::RowVectorXd mean = phi.colwise().mean();
  const Eigen::MatrixXd centered = phi.rowwise() - mean;
  const Eigen::MatrixXd cov = centered.transpose() * centered / static_cast<double>(n_samples);
  return operator_norms(CovarianceOp(0.5 * (cov + cov.transpose()), describe(s) + " embedding"));
}

}  // namespace hkm
