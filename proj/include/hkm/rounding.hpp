#pragma once

#include <vector>

#include <Eigen/Core>

namespace hkm {

// Cluster labels, 1-based and surjective: every label in 1..K occurs.
struct Assignment {
  std::vector<int> labels;
  int K = 0;
  std::vector<int> cluster_sizes;  // indexed by label - 1

  int n() const { return static_cast<int>(labels.size()); }
  int n_min() const;

  // Validates and derives K and the sizes; throws input_error on labels
  // outside 1..K or on an empty cluster.
  static Assignment from_labels(std::vector<int> labels);

  // Relabels clusters in order of first appearance; canonical form for
  // comparing partitions.
  Assignment canonical() const;
};

struct MembershipMatrix {
  Eigen::MatrixXd z;  // z_ij = 1/|G_k| when i,j share cluster k, else 0
};

MembershipMatrix membership_matrix(const Assignment& a);

// Reads a clustering off an (approximately) membership-like matrix: take the
// smallest unassigned index j, group every unassigned i with
// z_hat(j, i) >= z_hat(j, j) / 2, repeat until no index is left.  Indices
// assigned earlier are never re-captured, so each index lands in exactly one
// cluster.  A nonpositive diagonal entry yields a singleton: there is no
// usable scale at that index.
Assignment round_solution(const Eigen::MatrixXd& z_hat);

// Entrywise l1 distance sum_ij |z_hat_ij - z*_ij|.
double error_l1(const Eigen::MatrixXd& z_hat, const MembershipMatrix& z_star);

// Same partition up to relabeling.
bool same_partition(const Assignment& a, const Assignment& b);

struct BruteForceResult {
  Assignment assignment;
  double objective = 0.0;
};

// Exact maximizer of sum_k (1/|G_k|) sum_{i,j in G_k} a_ij over all
// partitions of n points into exactly K nonempty clusters, by enumerating
// canonical labelings in lexicographic order (first maximizer wins ties).
// Refuses n > 14.
BruteForceResult brute_force_kmeans(const Eigen::MatrixXd& a, int K);

struct FeasibleSetCheck {
  // Equality chain |Z* - Z* Z Z*|_1 = |Z* - Z* Z|_1 = 2 sum_{k != m} |Z_{G_k x G_m}|_1.
  double lhs1 = 0.0, lhs2 = 0.0, rhs = 0.0;
  double eq_gap = 0.0;  // max relative gap across the chain
  bool eq_pass = false;
  // |(I - Z*) Z (I - Z*)|_tr <= |Z* - Z* Z|_1 / (2 n_min).
  double trace_value = 0.0, trace_bound = 0.0, trace_slack = 0.0;
  bool trace_pass = false;
  // |Z* - Z* Z|_1 <= |Z* - Z|_1 <= (2n / n_min) |Z* - Z* Z|_1.
  double mid = 0.0, lo = 0.0, hi = 0.0;
  double sandwich_slack_lo = 0.0, sandwich_slack_hi = 0.0;
  bool sandwich_pass = false;

  bool all_pass() const { return eq_pass && trace_pass && sandwich_pass; }
};

// Evaluates the three feasible-set relations for a matrix z in (or near) the
// constraint set against a reference membership matrix.  eq_tol is the
// relative tolerance for the equality chain; inequalities allow slack down
// to -ineq_tol * scale.  Iterates that are only feasible to solver tolerance
// need eq_tol scaled accordingly; exactly feasible inputs pass at 1e-8.
FeasibleSetCheck feasible_set_identities(const Eigen::MatrixXd& z,
                                         const MembershipMatrix& z_star,
                                         int n_min, double eq_tol = 1e-8,
                                         double ineq_tol = 1e-10);

// sum_i a_i b_i <= (sum of the ceil(s) largest a_i, last one weighted by the
// fractional part), where s = sum_i b_i; valid for b in [0,1]^n.  Returns
// the bound value.
double rearrangement_bound(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace hkm
