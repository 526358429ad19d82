#include "hkm/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "hkm/errors.hpp"
#include "hkm/rng.hpp"

namespace hkm {

namespace {

void check_problem(const Eigen::MatrixXd& a, int K) {
  const int n = static_cast<int>(a.rows());
  if (a.rows() != a.cols()) {
    std::ostringstream os;
    os << "similarity matrix must be square, got " << a.rows() << "x" << a.cols();
    throw input_error(os.str());
  }
  if (K < 1 || K > n) {
    std::ostringstream os;
    os << "cluster count K=" << K << " outside [1, n=" << n << "]";
    throw input_error(os.str());
  }
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  const double asym = (a - a.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * scale) {
    std::ostringstream os;
    os << "similarity matrix not symmetric: max |a - a'| = " << asym;
    throw input_error(os.str());
  }
}

void check_config(const SolverConfig& cfg) {
  if (!(cfg.rho > 0.0)) throw input_error("solver rho must be > 0");
  if (cfg.max_iters < 1) throw input_error("solver max_iters must be >= 1");
  if (!(cfg.tol_primal > 0.0 && cfg.tol_primal < 1.0))
    throw input_error("solver tol_primal must be in (0,1)");
  if (!(cfg.tol_dual > 0.0 && cfg.tol_dual < 1.0))
    throw input_error("solver tol_dual must be in (0,1)");
}

}  // namespace

double FeasibilityResiduals::max() const {
  return std::max({sym, psd, trace_gap, rowsum, neg});
}

Eigen::VectorXd project_simplex(const Eigen::VectorXd& v, double total) {
  if (!(total > 0.0)) throw input_error("project_simplex: total must be > 0");
  const int n = static_cast<int>(v.size());
  std::vector<double> u(v.data(), v.data() + n);
  std::sort(u.begin(), u.end(), std::greater<double>());
  double css = 0.0;
  double tau = 0.0;
  int rho = 0;
  for (int j = 0; j < n; ++j) {
    css += u[j];
    const double cand = (css - total) / (j + 1);
    if (u[j] - cand > 0.0) {
      rho = j + 1;
      tau = cand;
    }
  }
  (void)rho;
  return (v.array() - tau).max(0.0);
}

Eigen::MatrixXd project_psd_trace(const Eigen::MatrixXd& m, int K) {
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
    throw input_error("project_psd_trace expects a symmetric matrix");
  if (K < 1) throw input_error("project_psd_trace: K must be >= 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success) throw numeric_error("project_psd_trace eigensolver failed");
  const Eigen::VectorXd lam = project_simplex(es.eigenvalues(), static_cast<double>(K));
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

Eigen::MatrixXd project_affine(const Eigen::MatrixXd& m) {
  const int n = static_cast<int>(m.rows());
  if (m.rows() != m.cols()) throw input_error("project_affine expects a square matrix");
  const Eigen::MatrixXd s = 0.5 * (m + m.transpose());
  const Eigen::VectorXd r = Eigen::VectorXd::Ones(n) - s.rowwise().sum();
  const double shift = r.sum() / (2.0 * n);
  const Eigen::VectorXd u = (r.array() - shift).matrix() / n;
  Eigen::MatrixXd z = s;
  z.rowwise() += u.transpose();
  z.colwise() += u;
  return z;
}

Eigen::MatrixXd project_nonneg(const Eigen::MatrixXd& m) {
  return m.cwiseMax(0.0);
}

FeasibilityResiduals residuals(const Eigen::MatrixXd& z, int K) {
  FeasibilityResiduals out;
  out.sym = (z - z.transpose()).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (z + z.transpose()),
                                                    Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw numeric_error("residuals eigensolver failed");
  out.psd = std::max(0.0, -es.eigenvalues().minCoeff());
  out.trace_gap = std::abs(z.trace() - static_cast<double>(K));
  out.rowsum = (z.rowwise().sum().array() - 1.0).abs().maxCoeff();
  out.neg = std::max(0.0, -z.minCoeff());
  return out;
}

SdpSolution solve(const Eigen::MatrixXd& a, int K, const SolverConfig& cfg) {
  check_problem(a, K);
  check_config(cfg);
  const int n = static_cast<int>(a.rows());

  // Normalize the problem scale so the penalty parameter is dimensionless:
  // iterating on A / s with penalty rho is identical, update for update, to
  // iterating on A with penalty rho * s.  Without this, a fixed rho stalls on
  // gram matrices whose entries are large.  Objectives are reported against
  // the unscaled input throughout.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> aes(a, Eigen::EigenvaluesOnly);
  if (aes.info() != Eigen::Success) throw numeric_error("solve: eigensolver failed on input");
  const double a_op =
      std::max(std::abs(aes.eigenvalues().minCoeff()), std::abs(aes.eigenvalues().maxCoeff()));
  const double scale = std::max(1.0, a_op);

  const Eigen::MatrixXd a_over_3rho = a / (3.0 * cfg.rho * scale);
  const Eigen::MatrixXd z0 =
      (static_cast<double>(K) / n) * Eigen::MatrixXd::Identity(n, n);

  Eigen::MatrixXd y1 = z0, y2 = z0, y3 = z0;
  Eigen::MatrixXd u1 = Eigen::MatrixXd::Zero(n, n), u2 = u1, u3 = u1;
  Eigen::MatrixXd zbar = Eigen::MatrixXd::Zero(n, n);
  Eigen::MatrixXd zbar_prev;

  std::deque<double> window;
  int iters = 0;
  bool converged = false;

  for (int t = 1; t <= cfg.max_iters; ++t) {
    iters = t;
    zbar_prev = zbar;
    zbar = (y1 + u1 + y2 + u2 + y3 + u3) / 3.0 + a_over_3rho;

    y1 = project_affine(zbar - u1);
    y2 = project_psd_trace(zbar - u2, K);
    y3 = project_nonneg(zbar - u3);

    u1 += y1 - zbar;
    u2 += y2 - zbar;
    u3 += y3 - zbar;

    window.push_back((a.array() * zbar.array()).sum());
    if (window.size() > 100) window.pop_front();

    const double zn = std::max(1.0, zbar.norm());
    const double primal = std::max({(y1 - zbar).norm(), (y2 - zbar).norm(), (y3 - zbar).norm()});
    const double dual = t > 1 ? (zbar - zbar_prev).norm() : std::numeric_limits<double>::infinity();
    if (primal <= cfg.tol_primal * zn && dual <= cfg.tol_dual * zn) {
      converged = true;
      break;
    }
  }

  SdpSolution sol;
  sol.z_hat = project_affine(project_nonneg(zbar));
  sol.objective = (a.array() * sol.z_hat.array()).sum();
  sol.residuals = residuals(sol.z_hat, K);
  sol.iters = iters;
  sol.converged = converged;
  sol.objective_window.assign(window.begin(), window.end());
  return sol;
}

SdpSolution solve(const SimilarityMatrix& a, int K, const SolverConfig& cfg) {
  return solve(a.a, K, cfg);
}

Eigen::MatrixXd random_feasible_point(int n, int K, std::uint64_t seed, double tol,
                                      int max_cycles) {
  if (n < 1) throw input_error("random_feasible_point: n must be >= 1");
  if (K < 1 || K > n) throw input_error("random_feasible_point: K outside [1, n]");
  Rng rng = Rng::stream(seed, 0x6665617369626c65ULL);
  Eigen::MatrixXd x(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double v = rng.uniform(0.0, 1.0);
      x(i, j) = v;
      x(j, i) = v;
    }
  x = project_affine(x);

  // Dykstra: one correction term per non-affine set, none needed for S1.
  Eigen::MatrixXd p2 = Eigen::MatrixXd::Zero(n, n), p3 = p2;
  for (int cycle = 0; cycle < max_cycles; ++cycle) {
    x = project_affine(x);
    Eigen::MatrixXd y = project_psd_trace(x + p2, K);
    p2 += x - y;
    x = y;
    y = project_nonneg(x + p3);
    p3 += x - y;
    x = y;
    if (residuals(x, K).max() <= tol) return x;
  }
  throw numeric_error("random_feasible_point: Dykstra projections did not reach tolerance");
}

}  // namespace hkm
