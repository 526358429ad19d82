#pragma once

#include <cmath>
#include <variant>

#include <Eigen/Core>

#include "hkm/errors.hpp"

namespace hkm {

using Point = Eigen::VectorXd;

// k(x, y) = (<x, y> + c)^r.  Mercer requires c >= 0 and integer r >= 1.
struct Polynomial {
  double c = 0.0;
  int r = 1;
};

// k(x, y) = exp(-|x - y|^2 / (2 h^2)), h > 0.
struct RBF {
  double h = 1.0;
};

using KernelSpec = std::variant<Polynomial, RBF>;

inline void validate(const KernelSpec& k) {
  if (const auto* p = std::get_if<Polynomial>(&k)) {
    if (p->c < 0.0) throw input_error("polynomial kernel offset must be >= 0, got " + std::to_string(p->c));
    if (p->r < 1) throw input_error("polynomial kernel degree must be >= 1, got " + std::to_string(p->r));
  } else {
    const auto& r = std::get<RBF>(k);
    if (!(r.h > 0.0)) throw input_error("rbf kernel bandwidth must be > 0, got " + std::to_string(r.h));
  }
}

inline double kernel_eval(const Point& x, const Point& y, const KernelSpec& k) {
  if (x.size() != y.size())
    throw input_error("kernel_eval: point lengths differ (" + std::to_string(x.size()) + " vs " +
                      std::to_string(y.size()) + ")");
  if (const auto* p = std::get_if<Polynomial>(&k)) {
    double base = x.dot(y) + p->c;
    double out = 1.0;
    for (int i = 0; i < p->r; ++i) out *= base;
    return out;
  }
  const auto& r = std::get<RBF>(k);
  return std::exp(-(x - y).squaredNorm() / (2.0 * r.h * r.h));
}

}  // namespace hkm
