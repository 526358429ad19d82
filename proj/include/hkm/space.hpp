#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "hkm/kernel.hpp"

namespace hkm {

// Which inner product gives the geometry.  Points are always stored as
// coordinate vectors; the space decides what those coordinates mean.
//
//   Euclidean      coordinates in R^dim, the usual dot product.
//   L2Grid         function values on a grid in [0,1]; trapezoidal
//                  quadrature approximates the L2(0,1) inner product.
//   Sobolev        <f,g> = sum_{j=0..order} <f^(j), g^(j)>_L2 on the same
//                  grid.  Derivatives use second-order central differences
//                  in the interior and first-order one-sided differences at
//                  the endpoints; both the quadrature rule and the
//                  difference scheme are implementation choices, so expect
//                  O(h^2) discretization error on smooth inputs.
//   KernelImplicit geometry induced by a positive-definite kernel; inner
//                  products delegate to kernel_eval.
struct Euclidean {
  int dim = 0;
};

struct L2Grid {
  std::vector<double> grid;  // strictly increasing, inside [0,1], size >= 2
};

struct Sobolev {
  std::vector<double> grid;
  int order = 1;  // 0, 1 or 2; order 0 coincides with L2Grid
};

struct KernelImplicit {
  KernelSpec kernel;
};

using SpaceSpec = std::variant<Euclidean, L2Grid, Sobolev, KernelImplicit>;

void validate(const SpaceSpec& s);

// Coordinate length points must have, or nullopt for kernel spaces (where
// any shared length is acceptable).
std::optional<int> expected_dim(const SpaceSpec& s);

// Throws input_error naming the offending lengths if x does not conform.
void check_point(const Point& x, const SpaceSpec& s);

double inner_product(const Point& x, const Point& y, const SpaceSpec& s);
double norm(const Point& x, const SpaceSpec& s);

// Uniform grid of m points spanning [0,1].
std::vector<double> uniform_grid(int m);

// Trapezoid quadrature weights for a validated grid.
Eigen::VectorXd trapezoid_weights(const std::vector<double>& grid);

// First-derivative matrix for a validated grid (applied once per Sobolev
// order).  Interior rows are the three-point second-order stencil, endpoint
// rows the one-sided first-order stencil.
Eigen::MatrixXd derivative_matrix(const std::vector<double>& grid);

std::string describe(const SpaceSpec& s);

}  // namespace hkm
