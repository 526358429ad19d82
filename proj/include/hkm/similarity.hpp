#pragma once

#include <vector>

#include <Eigen/Core>

#include "hkm/space.hpp"

namespace hkm {

struct SimilarityMatrix {
  Eigen::MatrixXd a;
  SpaceSpec source;

  int n() const { return static_cast<int>(a.rows()); }
};

// Pairwise inner products a_ij = <x_i, x_j> in the given space.  Only the
// upper triangle is evaluated and then mirrored, so the result is symmetric
// bit for bit.
SimilarityMatrix gram(const std::vector<Point>& data, const SpaceSpec& s);

}  // namespace hkm
