#pragma once

#include <string>

#include <Eigen/Core>

namespace hkm {

// Covariance operator written in some orthonormal basis.  basis_note records
// which basis (coordinates, KL eigenbasis, derivative-augmented embedding)
// so that operator norms read off the matrix mean what the caller thinks
// they mean.
struct CovarianceOp {
  Eigen::MatrixXd matrix;
  std::string basis_note;

  // Validates symmetry (1e-12 relative) and positive semidefiniteness up to
  // -1e-10 * operator norm; throws input_error otherwise.
  CovarianceOp(Eigen::MatrixXd m, std::string note);
};

struct OperatorNorms {
  double op = 0.0;     // largest eigenvalue
  double hs = 0.0;     // Frobenius norm
  double trace = 0.0;  // sum of diagonal
};

OperatorNorms operator_norms(const CovarianceOp& c);

// True when 4 L^2 Gamma - Sigma is positive semidefinite up to
// -1e-8 * |Gamma|_op on its smallest eigenvalue.
bool check_domination(const CovarianceOp& sigma, const CovarianceOp& gamma, double L);

// Symmetric PSD square root via eigendecomposition (negative dust clamped).
Eigen::MatrixXd symmetric_sqrt(const Eigen::MatrixXd& psd);

}  // namespace hkm
