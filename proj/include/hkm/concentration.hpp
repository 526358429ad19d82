#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "hkm/sampling.hpp"

namespace hkm {

// Monte Carlo checks of the concentration behaviour of the quadratic form
//   Q = sum_ij a_ij <X_i, X_j>
// for independent centered sub-gaussian X_i with common dominating
// covariance operator Gamma.  The bound family under test is
//
//   2 exp( -C min( t^2 / (L^4 |Gamma|_hs^2 |A|_hs^2),
//                  t   / (L^2 |Gamma|_op   |A|_op  ) ) )
//
// against the two-sided tail P(|Q - EQ| >= t), and the same family against
// one-sided tails with the diagonal centered at sum_i a_ii L^2 |Gamma|_tr.

// Q = sum_ij a_ij <x_i, x_j>; a must be n x n symmetric for n points.
double quadratic_form(const Eigen::MatrixXd& a, const std::vector<Point>& data,
                      const SpaceSpec& s);

// Same with the diagonal of a zeroed.
double offdiag_quadratic_form(const Eigen::MatrixXd& a, const std::vector<Point>& data,
                              const SpaceSpec& s);

struct QuadraticFormSpec {
  Eigen::MatrixXd weight;   // symmetric n x n
  NoiseModel noise;         // single centered cluster
  int n = 0;                // points per trial (must match weight)
  int dim = 0;              // coordinate dimension for Euclidean models
  long trials = 1000;       // >= 1000
  std::uint64_t seed = 0;
  int threads = 1;          // trial evaluation only; results are identical
};

void validate(const QuadraticFormSpec& spec);

struct BoundParams {
  double L = 1.0;
  OperatorNorms gamma;  // dominating operator norms
  double a_hs = 0.0;
  double a_op = 0.0;

  double d2() const;  // L^4 |Gamma|_hs^2 |A|_hs^2
  double d1() const;  // L^2 |Gamma|_op |A|_op
};

// 2 exp(-C min(t^2/d2, t/d1)).
double hw_bound_value(double t, double C, double d2, double d1);

// The weaker trace-based variant with denominators
// L^4 |Gamma|_tr^2 sum_i a_ii^2 and L^2 |Gamma|_tr max_i |a_ii|.
double bernstein_trace_bound_value(double t, double C, double L, double gamma_tr,
                                   double sum_aii_sq, double max_abs_aii);

struct TailReport {
  std::vector<double> t_grid;          // 20 points, 0.5 to 5 empirical sd
  std::vector<double> empirical_tail;  // nonincreasing in t
  BoundParams params;
  double fitted_c = 0.0;
  double q_mean = 0.0;     // Monte Carlo mean of Q
  double q_sd = 0.0;
  double analytic_center = 0.0;  // sum_i a_ii E|X|^2 (two-sided) or the
                                 // L^2 |Gamma|_tr centering (one-sided)
  double center_gap = 0.0;       // q_mean - analytic_center (two-sided only)
  long trials = 0;
  int usable_points = 0;   // grid points with tail >= 10/trials
  std::vector<double> samples;  // the Q values, in trial order
};

// Two-sided experiment: empirical P(|Q - mean| >= t) and the largest C for
// which the bound stays above tail + 2 binomial standard errors at every
// usable grid point.  Fewer than 3 usable points is an error (more trials
// needed).
TailReport tail_experiment(const QuadraticFormSpec& spec);

// One-sided experiment for weights with nonnegative diagonal:
// P(Q >= sum_i a_ii L^2 |Gamma|_tr + t), fitted the same way.
TailReport upper_tail_diag_experiment(const QuadraticFormSpec& spec);

// Fraction of samples with |q - center| >= t (for spot checks at off-grid t).
double empirical_tail_two_sided(const std::vector<double>& samples, double center, double t);

struct MgfReport {
  std::vector<double> t_grid;
  std::vector<double> mgf_x;  // E exp(t |X|^2 / 2), Monte Carlo
  std::vector<double> mgf_z;  // same for Z ~ N(0, Gamma)
  double max_ratio = 0.0;     // max over grid of mgf_x / mgf_z
};

// Empirical check that the Gaussian with matching dominating covariance has
// the largest squared-norm MGF.  t_grid must stay within [0, 1/|Gamma|_op);
// values above 0.9/|Gamma|_op are rejected because the Gaussian MGF estimate
// degenerates near the singularity.
MgfReport mgf_dominance_check(const NoiseModel& noise, int dim,
                              const std::vector<double>& t_grid, long trials,
                              std::uint64_t seed);

struct BernsteinReport {
  std::vector<int> k;           // 3 .. k_max
  std::vector<double> moment;   // MC estimate of E | |X|^2 - E|X|^2 |^k
  std::vector<double> moment_se;
  std::vector<double> c_hat;    // moment / (k! L^(k-2) |Gamma|_op^(k-2) |Sigma|_hs^2)
  double L = 1.0;
  double gamma_op = 0.0;
  double sigma_hs2 = 0.0;
  long trials = 0;
};

// Moment-growth check of E | |X|^2 - E|X|^2 |^k against k! scaling, for the
// mixture noise models (k_max <= 6).
BernsteinReport bernstein_moment_check(const NoiseModel& noise, int dim, int k_max,
                                       long trials, std::uint64_t seed);

// Same check for the scalar counterexample mixture with parameter a_n, using
// the sub-gaussian proxy Gamma = 2 a_n^2 and Sigma = Var.  Under the proxy
// normalization c_hat stays bounded in a_n; normalized by the variance
// instead it would blow up like a_n^(2k-4), which is why the dominating
// operator in the moment condition cannot be replaced by the covariance.
BernsteinReport bernstein_moment_check_counterexample(double a_n, int k_max,
                                                      long trials, std::uint64_t seed);

}  // namespace hkm
