#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "hkm/covariance.hpp"
#include "hkm/errors.hpp"
#include "hkm/rng.hpp"

using namespace hkm;

TEST_CASE("operator norms of a diagonal covariance") {
  Eigen::MatrixXd m = Eigen::Vector3d(1.0, 2.0, 3.0).asDiagonal();
  CovarianceOp c(m, "coordinates");
  OperatorNorms n = operator_norms(c);
  CHECK(n.op == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(n.hs == doctest::Approx(std::sqrt(14.0)).epsilon(1e-14));
  CHECK(n.trace == doctest::Approx(6.0).epsilon(1e-14));
}

TEST_CASE("constructor rejects asymmetric and indefinite matrices") {
  Eigen::MatrixXd bad(2, 2);
  bad << 1.0, 0.5, 0.2, 1.0;
  CHECK_THROWS_AS(CovarianceOp(bad, "x"), input_error);

  Eigen::MatrixXd indef = Eigen::Vector2d(1.0, -0.1).asDiagonal();
  CHECK_THROWS_AS(CovarianceOp(indef, "x"), input_error);

  Eigen::MatrixXd rect(2, 3);
  rect.setZero();
  CHECK_THROWS_AS(CovarianceOp(rect, "x"), input_error);

  // Numerical dust below the tolerance is accepted.
  Eigen::MatrixXd dust = Eigen::Vector2d(1.0, -1e-12).asDiagonal();
  CHECK_NOTHROW(CovarianceOp(dust, "x"));
}

TEST_CASE("domination check compares 4 L^2 Gamma against Sigma") {
  CovarianceOp id3(Eigen::MatrixXd::Identity(3, 3), "coordinates");
  CHECK(check_domination(id3, id3, 1.0));   // 4 - 1 >= 0
  CHECK(check_domination(id3, id3, 0.5));   // 1 - 1 >= 0 (boundary)
  CHECK(!check_domination(id3, id3, 0.4));  // 0.64 - 1 < 0

  CovarianceOp sigma(4.0 * Eigen::MatrixXd::Identity(3, 3), "coordinates");
  CHECK(check_domination(sigma, id3, 1.0));
  CHECK(!check_domination(sigma, id3, 0.9));
}

TEST_CASE("symmetric square root squares back") {
  Rng rng(5);
  Eigen::MatrixXd b(4, 4);
  for (int i = 0; i < 4; ++i) b.col(i) = rng.normal_vector(4);
  Eigen::MatrixXd psd = b * b.transpose();
  Eigen::MatrixXd s = symmetric_sqrt(psd);
  CHECK((s - s.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * psd.norm());
  CHECK((s * s - psd).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, psd.cwiseAbs().maxCoeff()));
}
