#include "hkm/covariance.hpp"

#include <sstream>
#include <utility>

#include <Eigen/Eigenvalues>

#include "hkm/errors.hpp"

namespace hkm {

CovarianceOp::CovarianceOp(Eigen::MatrixXd m, std::string note)
    : matrix(std::move(m)), basis_note(std::move(note)) {
  if (matrix.rows() != matrix.cols()) {
    std::ostringstream os;
    os << "covariance matrix must be square, got " << matrix.rows() << "x" << matrix.cols();
    throw input_error(os.str());
  }
  const double scale = matrix.cwiseAbs().maxCoeff();
  const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-12 * std::max(1.0, scale)) {
    std::ostringstream os;
    os << "covariance matrix not symmetric: max |m - m'| = " << asym;
    throw input_error(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(matrix, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw numeric_error("covariance eigensolver failed");
  const double lo = es.eigenvalues().minCoeff();
  const double op = std::max(0.0, es.eigenvalues().maxCoeff());
  if (lo < -1e-10 * std::max(1.0, op)) {
    std::ostringstream os;
    os << "covariance matrix not positive semidefinite: min eigenvalue " << lo;
    throw input_error(os.str());
  }
}

OperatorNorms operator_norms(const CovarianceOp& c) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(c.matrix, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw numeric_error("operator_norms eigensolver failed");
  OperatorNorms out;
  out.op = std::max(0.0, es.eigenvalues().maxCoeff());
  out.hs = c.matrix.norm();
  out.trace = c.matrix.trace();
  return out;
}

bool check_domination(const CovarianceOp& sigma, const CovarianceOp& gamma, double L) {
  if (sigma.matrix.rows() != gamma.matrix.rows()) {
    std::ostringstream os;
    os << "check_domination: size mismatch (" << sigma.matrix.rows() << " vs "
       << gamma.matrix.rows() << ")";
    throw input_error(os.str());
  }
  const Eigen::MatrixXd gap = 4.0 * L * L * gamma.matrix - sigma.matrix;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gap, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw numeric_error("check_domination eigensolver failed");
  const double gop = operator_norms(gamma).op;
  return es.eigenvalues().minCoeff() >= -1e-8 * std::max(1.0, gop);
}

Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& psd) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(psd);
  if (es.info() != Eigen::Success) throw numeric_error("symmetric_sqrt eigensolver failed");
  Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace hkm
