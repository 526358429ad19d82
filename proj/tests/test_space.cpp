#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <variant>

#include "hkm/errors.hpp"
#include "hkm/rng.hpp"
#include "hkm/space.hpp"

using namespace hkm;

TEST_CASE("uniform_grid spans [0,1] with equal spacing") {
  auto g = uniform_grid(5);
  REQUIRE(g.size() == 5);
  CHECK(g[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(g[2] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g[4] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK_THROWS_AS(uniform_grid(1), input_error);
}

TEST_CASE("trapezoid weights sum to the grid span") {
  auto g = uniform_grid(11);
  Eigen::VectorXd w = trapezoid_weights(g);
  CHECK(w.sum() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(w.minCoeff() > 0.0);

  std::vector<double> irregular{0.0, 0.1, 0.45, 0.5, 0.9, 1.0};
  Eigen::VectorXd wi = trapezoid_weights(irregular);
  CHECK(wi.sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("space validation rejects malformed grids and dims") {
  CHECK_THROWS_AS(validate(SpaceSpec{Euclidean{0}}), input_error);
  CHECK_THROWS_AS(validate(SpaceSpec{L2Grid{{0.5, 0.5, 0.6}}}), input_error);
  CHECK_THROWS_AS(validate(SpaceSpec{L2Grid{{0.2, 0.1}}}), input_error);
  CHECK_THROWS_AS(validate(SpaceSpec{L2Grid{{-0.1, 0.5}}}), input_error);
  CHECK_THROWS_AS(validate(SpaceSpec{L2Grid{{0.5, 1.2}}}), input_error);
  CHECK_THROWS_AS(validate(SpaceSpec{Sobolev{{0.0, 1.0}, 1}}), input_error);  // too few points
  CHECK_THROWS_AS(validate(SpaceSpec{Sobolev{uniform_grid(11), 3}}), input_error);
  CHECK_THROWS_AS(validate(SpaceSpec{Sobolev{uniform_grid(11), -1}}), input_error);
  CHECK_NOTHROW(validate(SpaceSpec{Sobolev{uniform_grid(11), 2}}));
  CHECK_THROWS_AS(validate(SpaceSpec{KernelImplicit{Polynomial{-1.0, 2}}}), input_error);
  CHECK_THROWS_AS(validate(SpaceSpec{KernelImplicit{RBF{0.0}}}), input_error);
}

TEST_CASE("check_point enforces coordinate length") {
  SpaceSpec s{Euclidean{3}};
  CHECK_NOTHROW(check_point(Eigen::VectorXd::Zero(3), s));
  CHECK_THROWS_AS(check_point(Eigen::VectorXd::Zero(4), s), input_error);
  SpaceSpec l2{L2Grid{uniform_grid(5)}};
  CHECK_THROWS_AS(check_point(Eigen::VectorXd::Zero(4), l2), input_error);
  // Kernel spaces accept any length.
  SpaceSpec k{KernelImplicit{RBF{1.0}}};
  CHECK(!expected_dim(k).has_value());
  CHECK_NOTHROW(check_point(Eigen::VectorXd::Zero(7), k));
}

TEST_CASE("L2 inner product of constants is exact") {
  SpaceSpec s{L2Grid{uniform_grid(11)}};
  Point one = Eigen::VectorXd::Ones(11);
  CHECK(inner_product(one, one, s) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("L2 inner product matches integrals of polynomials") {
  auto g = uniform_grid(101);
  SpaceSpec s{L2Grid{g}};
  Point t(101), one = Eigen::VectorXd::Ones(101);
  for (int i = 0; i < 101; ++i) t(i) = g[i];
  // Trapezoid is exact on affine integrands: integral of t dt = 1/2.
  CHECK(inner_product(t, one, s) == doctest::Approx(0.5).epsilon(1e-14));
  // integral of t^2 dt = 1/3 up to O(h^2).
  CHECK(inner_product(t, t, s) == doctest::Approx(1.0 / 3.0).epsilon(1e-4));
}

TEST_CASE("first-order Sobolev norm of the identity function") {
  auto g = uniform_grid(201);
  SpaceSpec s{Sobolev{g, 1}};
  Point t(201);
  for (int i = 0; i < 201; ++i) t(i) = g[i];
  // |t|^2 + |t'|^2 = 1/3 + 1; the derivative of an affine function is exact
  // under every stencil, so only the quadrature error remains.
  CHECK(inner_product(t, t, s) == doctest::Approx(4.0 / 3.0).epsilon(1e-5));
}

TEST_CASE("second-order Sobolev norm of t^2") {
  auto g = uniform_grid(401);
  SpaceSpec s{Sobolev{g, 2}};
  Point f(401);
  for (int i = 0; i < 401; ++i) f(i) = g[i] * g[i];
  // 1/5 + 4/3 + 4.
  const double want = 0.2 + 4.0 / 3.0 + 4.0;
  CHECK(inner_product(f, f, s) == doctest::Approx(want).epsilon(1e-2));
}

TEST_CASE("order-zero Sobolev coincides with plain L2") {
  auto g = uniform_grid(33);
  SpaceSpec sob{Sobolev{g, 0}}, l2{L2Grid{g}};
  Rng rng(7);
  for (int rep = 0; rep < 10; ++rep) {
    Point x = rng.normal_vector(33), y = rng.normal_vector(33);
    CHECK(std::abs(inner_product(x, y, sob) - inner_product(x, y, l2)) <= 1e-14);
  }
}

TEST_CASE("derivative matrix is exact on affine functions") {
  std::vector<double> g{0.0, 0.07, 0.2, 0.41, 0.55, 0.78, 1.0};
  Eigen::MatrixXd d = derivative_matrix(g);
  Eigen::VectorXd f(7), c = Eigen::VectorXd::Constant(7, 4.2);
  for (int i = 0; i < 7; ++i) f(i) = 3.0 * g[i] - 1.0;
  CHECK(((d * f).array() - 3.0).abs().maxCoeff() <= 1e-12);
  CHECK((d * c).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("derivative matrix is exact on quadratics away from the endpoints") {
  std::vector<double> g{0.0, 0.07, 0.2, 0.41, 0.55, 0.78, 1.0};
  Eigen::MatrixXd d = derivative_matrix(g);
  Eigen::VectorXd f(7);
  for (int i = 0; i < 7; ++i) f(i) = g[i] * g[i];
  Eigen::VectorXd df = d * f;
  for (int i = 1; i < 6; ++i) CHECK(df(i) == doctest::Approx(2.0 * g[i]).epsilon(1e-12));
}

TEST_CASE("Cauchy-Schwarz holds in every space") {
  Rng rng(11);
  std::vector<SpaceSpec> spaces{
      SpaceSpec{Euclidean{8}},
      SpaceSpec{L2Grid{uniform_grid(8)}},
      SpaceSpec{Sobolev{uniform_grid(8), 1}},
      SpaceSpec{Sobolev{uniform_grid(8), 2}},
  };
  for (const auto& s : spaces) {
    for (int rep = 0; rep < 20; ++rep) {
      Point x = rng.normal_vector(8), y = rng.normal_vector(8);
      const double ip = inner_product(x, y, s);
      CHECK(std::abs(ip) <= norm(x, s) * norm(y, s) * (1.0 + 1e-12));
    }
  }
}

TEST_CASE("kernel space inner products delegate to the kernel") {
  KernelSpec poly = Polynomial{1.0, 3};
  SpaceSpec s{KernelImplicit{poly}};
  Rng rng(3);
  Point x = rng.normal_vector(4), y = rng.normal_vector(4);
  CHECK(inner_product(x, y, s) == doctest::Approx(kernel_eval(x, y, poly)).epsilon(1e-15));
  const double base = x.dot(y) + 1.0;
  CHECK(kernel_eval(x, y, poly) == doctest::Approx(base * base * base).epsilon(1e-13));

  KernelSpec rbf = RBF{0.7};
  CHECK(kernel_eval(x, x, rbf) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(kernel_eval(x, y, rbf) ==
        doctest::Approx(std::exp(-(x - y).squaredNorm() / (2.0 * 0.49))).epsilon(1e-13));
}

TEST_CASE("describe names every space distinctly") {
  CHECK(describe(SpaceSpec{Euclidean{3}}) != describe(SpaceSpec{L2Grid{uniform_grid(3)}}));
  CHECK(describe(SpaceSpec{Sobolev{uniform_grid(5), 1}}) !=
        describe(SpaceSpec{Sobolev{uniform_grid(5), 2}}));
  CHECK(!describe(SpaceSpec{KernelImplicit{RBF{1.0}}}).empty());
}
