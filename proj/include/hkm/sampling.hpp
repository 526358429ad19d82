#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "hkm/covariance.hpp"
#include "hkm/rng.hpp"
#include "hkm/rounding.hpp"
#include "hkm/space.hpp"

namespace hkm {

// Noise models for mixture sampling.  Each draws a centered perturbation
// added to the cluster mean; the ambient representation (coordinates or grid
// values) is fixed by the mean points.
struct GaussianIso {
  double sigma = 1.0;
};

struct GaussianCov {
  Eigen::MatrixXd cov;  // symmetric psd, dim x dim
};

// Gaussian process with Karhunen-Loeve expansion
//   X(t) = sum_{j=1..d} sqrt(g_j) xi_j sqrt(2) sin(j pi t),  g_j = j^(-2b-1),
// evaluated on the grid; xi_j iid standard normal.
struct KLProcess {
  double beta = 1.0;
  int d = 30;
  std::vector<double> grid;
};

struct BoundedUniform {
  double half_width = 1.0;  // iid uniform(-w, w) coordinates
};

using NoiseModel = std::variant<GaussianIso, GaussianCov, KLProcess, BoundedUniform>;

struct MixtureConfig {
  int K = 0;
  std::vector<int> cluster_sizes;
  std::vector<Point> means;  // one per cluster, equal coordinate lengths
  NoiseModel noise;
  std::uint64_t seed = 0;
};

void validate(const MixtureConfig& cfg);

struct Sample {
  std::vector<Point> data;  // cluster blocks in order: n_1 points of mean 1, ...
  Assignment truth;
};

// Centered per-point draws with the model's expensive parts (covariance
// square root, KL sine basis) computed once at construction.  Each draw
// consumes a fixed number of values from the stream it is handed, so
// per-point streams stay aligned regardless of evaluation order.
class NoiseSampler {
 public:
  NoiseSampler(NoiseModel model, int dim);
  Point draw(Rng& rng) const;
  int dim() const { return dim_; }

 private:
  NoiseModel model_;
  int dim_ = 0;       // ambient coordinate length
  int factors_ = 0;   // normals consumed per draw (Gaussian models)
  Eigen::MatrixXd op_;  // draw = op_ * xi where applicable
};

// Point i draws from Rng::stream(seed, 0, i), so samples are independent of
// evaluation order and thread count.
Sample sample_mixture(const MixtureConfig& cfg);

// Scalar mixture (1 - a^-4) N(0,1) + a^-4 N(0,a^2): sub-gaussian for every
// a, with variance 1 - a^-4 + a^-2, but its squared-norm moments grow too
// fast for a Bernstein condition with a-independent constants.
std::vector<double> sample_counterexample(double a_n, int n, std::uint64_t seed);

double counterexample_variance(double a_n);

double min_separation(const std::vector<Point>& means, const SpaceSpec& s);

struct SnrInputs {
  double delta = 0.0;        // min pairwise mean separation
  double L = 1.0;            // psi_2 bound of the noise
  OperatorNorms sigma_norms; // covariance operator norms
  int n_min = 1;
};

// min( delta^2 / (L^2 |S|_op),  n_min delta^4 / (L^4 |S|_hs^2) ).
double snr_squared(const SnrInputs& in);

// Recovery threshold the signal-to-noise ratio is compared against.
inline double snr_threshold(int n, int n_min) {
  return std::max(static_cast<double>(n) / n_min, std::log(static_cast<double>(n)));
}

// KL eigenvalues g_j = j^(-2 beta - 1), j = 1..d.
std::vector<double> kl_eigenvalues(double beta, int d);

// Analytic covariance-operator norms of the noise in its native space
// (coordinates for Euclidean models, the KL eigenbasis for KLProcess).  For
// BoundedUniform this is the actual covariance (w^2/3) I, not the
// sub-gaussian proxy; see noise_subgaussian_proxy_norms for that.
OperatorNorms noise_gamma_norms(const NoiseModel& m, int dim);

// Norms of the sub-gaussian dominating operator: equals the covariance for
// Gaussian models (psi_2 constant 1) and w^2 I for BoundedUniform
// (Hoeffding).  Paired with noise_psi2_bound(m) == 1 in both cases.
OperatorNorms noise_subgaussian_proxy_norms(const NoiseModel& m, int dim);
double noise_psi2_bound(const NoiseModel& m);

// E |X|^2 under the model's native inner product.
double noise_mean_sq_norm(const NoiseModel& m, int dim);

// Space the model's draws naturally live in: Euclidean(dim) for coordinate
// models, L2Grid(grid) for KLProcess.
SpaceSpec noise_native_space(const NoiseModel& m, int dim);

// Rows are the isometric Euclidean embeddings of the points for the given
// space: quadrature-weighted values for L2Grid, stacked weighted derivative
// blocks for Sobolev, plain coordinates for Euclidean.  Inner products of
// rows reproduce inner products in the space; kernel spaces are rejected.
Eigen::MatrixXd embed_coordinates(const std::vector<Point>& data, const SpaceSpec& s);

// Operator norms of the sample covariance of the noise as seen by the given
// space, estimated from n_samples fresh draws via embed_coordinates.  Used
// where no analytic form is available (e.g. Sobolev view of a KL process).
OperatorNorms empirical_covariance_norms(const NoiseModel& m, const SpaceSpec& s,
                                         int dim, int n_samples, std::uint64_t seed);

}  // namespace hkm
