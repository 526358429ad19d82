#include "hkm/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "hkm/errors.hpp"

namespace hkm {

int Assignment::n_min() const {
  return *std::min_element(cluster_sizes.begin(), cluster_sizes.end());
}

Assignment Assignment::from_labels(std::vector<int> labels) {
  if (labels.empty()) throw input_error("assignment: no labels");
  const int k = *std::max_element(labels.begin(), labels.end());
  if (k < 1) throw input_error("assignment: labels must be positive integers");
  std::vector<int> sizes(k, 0);
  for (size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] < 1 || labels[i] > k) {
      std::ostringstream os;
      os << "assignment: label " << labels[i] << " at index " << i << " outside 1.." << k;
      throw input_error(os.str());
    }
    ++sizes[labels[i] - 1];
  }
  for (int c = 0; c < k; ++c) {
    if (sizes[c] == 0) {
      std::ostringstream os;
      os << "assignment: cluster " << (c + 1) << " is empty";
      throw input_error(os.str());
    }
  }
  Assignment a;
  a.labels = std::move(labels);
  a.K = k;
  a.cluster_sizes = std::move(sizes);
  return a;
}

Assignment Assignment::canonical() const {
  std::vector<int> remap(K, 0);
  std::vector<int> out(labels.size());
  int next = 0;
  for (size_t i = 0; i < labels.size(); ++i) {
    int& slot = remap[labels[i] - 1];
    if (slot == 0) slot = ++next;
    out[i] = slot;
  }
  return from_labels(std::move(out));
}

MembershipMatrix membership_matrix(const Assignment& a) {
  const int n = a.n();
  Eigen::MatrixXd z = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    const double w = 1.0 / a.cluster_sizes[a.labels[i] - 1];
    for (int j = 0; j < n; ++j) {
      if (a.labels[j] == a.labels[i]) z(i, j) = w;
    }
  }
  return MembershipMatrix{std::move(z)};
}

Assignment round_solution(const Eigen::MatrixXd& z_hat) {
  const int n = static_cast<int>(z_hat.rows());
  if (z_hat.rows() != z_hat.cols() || n == 0)
    throw input_error("round_solution expects a nonempty square matrix");
  std::vector<int> labels(n, 0);
  int next = 0;
  for (int j = 0; j < n; ++j) {
    if (labels[j] != 0) continue;
    ++next;
    labels[j] = next;
    const double diag = z_hat(j, j);
    if (diag <= 0.0) continue;  // no scale to threshold against: singleton
    const double thr = 0.5 * diag;
    for (int i = j + 1; i < n; ++i) {
      if (labels[i] == 0 && z_hat(j, i) >= thr) labels[i] = next;
    }
  }
  return Assignment::from_labels(std::move(labels));
}

double error_l1(const Eigen::MatrixXd& z_hat, const MembershipMatrix& z_star) {
  if (z_hat.rows() != z_star.z.rows() || z_hat.cols() != z_star.z.cols()) {
    std::ostringstream os;
    os << "error_l1: shape mismatch (" << z_hat.rows() << "x" << z_hat.cols() << " vs "
       << z_star.z.rows() << "x" << z_star.z.cols() << ")";
    throw input_error(os.str());
  }
  return (z_hat - z_star.z).cwiseAbs().sum();
}

bool same_partition(const Assignment& a, const Assignment& b) {
  if (a.n() != b.n()) return false;
  return a.canonical().labels == b.canonical().labels;
}

BruteForceResult brute_force_kmeans(const Eigen::MatrixXd& a, int K) {
  const int n = static_cast<int>(a.rows());
  if (a.rows() != a.cols()) throw input_error("brute_force_kmeans expects a square matrix");
  if (n > 14)
    throw input_error("brute_force_kmeans refuses n > 14 (got n = " + std::to_string(n) + ")");
  if (K < 1 || K > n) throw input_error("brute_force_kmeans: K outside [1, n]");

  // Canonical labelings (label of point 0 is 1, each new label is the
  // smallest unused one), enumerated in lexicographic order; strict
  // improvement keeps the first maximizer, which is the lexicographically
  // smallest one.
  std::vector<int> labels(n, 1);
  std::vector<int> best;
  double best_obj = -std::numeric_limits<double>::infinity();

  std::vector<int> stack_max(n, 1);  // max label used among indices <= i
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      if (stack_max[n - 1] != K) return;
      double obj = 0.0;
      for (int c = 1; c <= K; ++c) {
        double sum = 0.0;
        int size = 0;
        for (int p = 0; p < n; ++p) {
          if (labels[p] != c) continue;
          ++size;
          for (int q = 0; q < n; ++q)
            if (labels[q] == c) sum += a(p, q);
        }
        obj += sum / size;
      }
      if (obj > best_obj) {
        best_obj = obj;
        best = labels;
      }
      return;
    }
    const int used = i == 0 ? 0 : stack_max[i - 1];
    const int hi = std::min(K, used + 1);
    // Prune branches that cannot reach K labels with the points left.
    for (int c = 1; c <= hi; ++c) {
      const int new_used = std::max(used, c);
      if (new_used + (n - i - 1) < K) continue;
      labels[i] = c;
      stack_max[i] = new_used;
      rec(i + 1);
    }
  };
  rec(0);

  BruteForceResult out;
  out.assignment = Assignment::from_labels(std::move(best));
  out.objective = best_obj;
  return out;
}

namespace {

// |M|_1 over an index block {i in G_k} x {j in G_m}.
double block_l1(const Eigen::MatrixXd& m, const std::vector<int>& labels, int k, int mm) {
  double acc = 0.0;
  const int n = static_cast<int>(labels.size());
  for (int i = 0; i < n; ++i) {
    if (labels[i] != k) continue;
    for (int j = 0; j < n; ++j)
      if (labels[j] == mm) acc += std::abs(m(i, j));
  }
  return acc;
}

}  // namespace

FeasibleSetCheck feasible_set_identities(const Eigen::MatrixXd& z,
                                         const MembershipMatrix& z_star, int n_min,
                                         double eq_tol, double ineq_tol) {
  const int n = static_cast<int>(z.rows());
  if (z_star.z.rows() != n) throw input_error("feasible_set_identities: shape mismatch");
  if (n_min < 1) throw input_error("feasible_set_identities: n_min must be >= 1");

  // Recover labels from the membership matrix block structure.
  std::vector<int> labels(n, 0);
  int kcount = 0;
  for (int i = 0; i < n; ++i) {
    if (labels[i] != 0) continue;
    ++kcount;
    for (int j = 0; j < n; ++j)
      if (z_star.z(i, j) > 0.0) labels[j] = kcount;
  }

  const Eigen::MatrixXd& zs = z_star.z;
  const Eigen::MatrixXd zsz = zs * z;

  FeasibleSetCheck out;
  out.lhs1 = (zs - zsz * zs).cwiseAbs().sum();
  out.lhs2 = (zs - zsz).cwiseAbs().sum();
  double cross = 0.0;
  for (int k = 1; k <= kcount; ++k)
    for (int m = 1; m <= kcount; ++m)
      if (k != m) cross += block_l1(z, labels, k, m);
  out.rhs = 2.0 * cross;

  const double eq_scale = std::max({1.0, out.lhs1, out.lhs2, out.rhs});
  out.eq_gap = std::max(std::abs(out.lhs1 - out.lhs2), std::abs(out.lhs2 - out.rhs)) / eq_scale;
  out.eq_pass = out.eq_gap <= eq_tol;

  const Eigen::MatrixXd proj = Eigen::MatrixXd::Identity(n, n) - zs;
  const Eigen::MatrixXd outer = proj * z * proj;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (outer + outer.transpose()),
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw numeric_error("feasible_set_identities eigensolver failed");
  out.trace_value = es.eigenvalues().cwiseAbs().sum();
  out.trace_bound = out.lhs2 / (2.0 * n_min);
  out.trace_slack = out.trace_bound - out.trace_value;
  out.trace_pass = out.trace_slack >= -ineq_tol * std::max(1.0, out.trace_bound);

  out.mid = (zs - z).cwiseAbs().sum();
  out.lo = out.lhs2;
  out.hi = (2.0 * n / n_min) * out.lhs2;
  out.sandwich_slack_lo = out.mid - out.lo;
  out.sandwich_slack_hi = out.hi - out.mid;
  const double sc = std::max({1.0, out.lo, out.mid, out.hi});
  out.sandwich_pass =
      out.sandwich_slack_lo >= -ineq_tol * sc && out.sandwich_slack_hi >= -ineq_tol * sc;
  return out;
}

double rearrangement_bound(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) {
    std::ostringstream os;
    os << "rearrangement_bound: length mismatch (" << a.size() << " vs " << b.size() << ")";
    throw input_error(os.str());
  }
  double s = 0.0;
  for (double v : b) {
    if (v < 0.0 || v > 1.0)
      throw input_error("rearrangement_bound: weights must lie in [0,1], got " + std::to_string(v));
    s += v;
  }
  std::vector<double> sorted = a;
  std::sort(sorted.begin(), sorted.end(), std::greater<double>());
  const int whole = static_cast<int>(std::floor(s));
  const double frac = s - whole;
  double acc = 0.0;
  for (int i = 0; i < whole && i < static_cast<int>(sorted.size()); ++i) acc += sorted[i];
  if (whole < static_cast<int>(sorted.size()) && frac > 0.0) acc += frac * sorted[whole];
  return acc;
}

}  // namespace hkm
