#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "hkm/similarity.hpp"

namespace hkm {

// Solves the clustering relaxation
//
//   maximize  <A, Z>
//   over      Z = Z', Z psd, tr(Z) = K, Z 1 = 1, Z >= 0
//
// by three-set consensus ADMM.  The feasible set splits as
//
//   S1 = { symmetric, row sums 1 }   closed-form affine projection
//   S2 = { psd, trace K }            eigenvalue projection onto the
//                                    scaled simplex {l >= 0, sum l = K}
//   S3 = { entrywise nonnegative }   clamp
//
// with one consensus variable Zbar and per-set duals:
//
//   Zbar <- mean_i(Y_i + U_i) + A / (3 rho)
//   Y_i  <- proj_{S_i}(Zbar - U_i)
//   U_i  <- U_i + Y_i - Zbar
//
// started from Y_i = (K/n) I, U_i = 0.  Convergence requires both
//   max_i |Y_i - Zbar|_F          <= tol_primal * max(1, |Zbar|_F)
//   |Zbar_t - Zbar_{t-1}|_F       <= tol_dual   * max(1, |Zbar|_F).
//
// The iteration runs on A / max(1, |A|_op), which produces the same iterates
// as running on A with penalty rho * max(1, |A|_op); this keeps rho
// dimensionless, so the default works across data scales.  The reported
// objective and the objective window always refer to the unscaled input.
//
// The reported matrix is project_affine(project_nonneg(Zbar)), so row sums
// and symmetry are exact and the leakage moves into the psd/nonnegativity
// residuals, which are recomputed on the reported matrix.

struct SolverConfig {
  double rho = 1.0;
  int max_iters = 20000;
  double tol_primal = 1e-5;
  double tol_dual = 1e-5;
};

struct FeasibilityResiduals {
  double sym = 0.0;        // max_ij |Z_ij - Z_ji|
  double psd = 0.0;        // |min eigenvalue| when negative, else 0
  double trace_gap = 0.0;  // |tr Z - K|
  double rowsum = 0.0;     // max_i |(Z 1)_i - 1|
  double neg = 0.0;        // |min entry| when negative, else 0

  double max() const;
};

struct SdpSolution {
  Eigen::MatrixXd z_hat;
  double objective = 0.0;  // <A, z_hat>
  FeasibilityResiduals residuals;
  int iters = 0;
  bool converged = false;
  // <A, Zbar> over the final iterations (at most 100), oldest first; lets
  // callers check that the objective has stalled rather than still moving.
  std::vector<double> objective_window;
};

// Projection of v onto {l : l >= 0, sum l = total} by the sorted-threshold
// rule.  total must be > 0.
Eigen::VectorXd project_simplex(const Eigen::VectorXd& v, double total);

// Nearest (Frobenius) matrix in { symmetric psd, trace = K }.  Requires a
// symmetric input.
Eigen::MatrixXd project_psd_trace(const Eigen::MatrixXd& m, int K);

// Nearest matrix in { Z = Z', Z 1 = 1 }.  Symmetrizes, then applies the
// closed-form row-sum correction Z = S + u 1' + 1 u' with
// u = (r - (1'r / 2n) 1) / n,  r = 1 - S 1.
Eigen::MatrixXd project_affine(const Eigen::MatrixXd& m);

Eigen::MatrixXd project_nonneg(const Eigen::MatrixXd& m);

FeasibilityResiduals residuals(const Eigen::MatrixXd& z, int K);

SdpSolution solve(const Eigen::MatrixXd& a, int K, const SolverConfig& cfg = {});
SdpSolution solve(const SimilarityMatrix& a, int K, const SolverConfig& cfg = {});

// Feasible point of the constraint set, produced by running Dykstra's
// alternating projections (with the three projections above) from a random
// symmetric start until all residuals are <= tol.  Throws numeric_error if
// the cycle budget runs out first.
Eigen::MatrixXd random_feasible_point(int n, int K, std::uint64_t seed,
                                      double tol = 1e-11, int max_cycles = 50000);

}  // namespace hkm
