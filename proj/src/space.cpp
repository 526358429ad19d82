#include "hkm/space.hpp"

#include <cmath>
#include <sstream>

#include "hkm/errors.hpp"

namespace hkm {

namespace {

void validate_grid(const std::vector<double>& grid, int min_points, const char* who) {
  if (static_cast<int>(grid.size()) < min_points) {
    std::ostringstream os;
    os << who << ": grid needs at least " << min_points << " points, got " << grid.size();
    throw input_error(os.str());
  }
  if (grid.front() < 0.0 || grid.back() > 1.0) {
    std::ostringstream os;
    os << who << ": grid must lie in [0,1], spans [" << grid.front() << ", " << grid.back() << "]";
    throw input_error(os.str());
  }
  for (size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) {
      std::ostringstream os;
      os << who << ": grid not strictly increasing at index " << i;
      throw input_error(os.str());
    }
  }
}

double dot_weighted(const Point& x, const Point& y, const Eigen::VectorXd& w) {
  double acc = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) acc += w[i] * x[i] * y[i];
  return acc;
}

}  // namespace

void validate(const SpaceSpec& s) {
  if (const auto* e = std::get_if<Euclidean>(&s)) {
    if (e->dim < 1) throw input_error("euclidean space needs dim >= 1, got " + std::to_string(e->dim));
  } else if (const auto* l = std::get_if<L2Grid>(&s)) {
    validate_grid(l->grid, 2, "l2 space");
  } else if (const auto* so = std::get_if<Sobolev>(&s)) {
    if (so->order < 0 || so->order > 2)
      throw input_error("sobolev order must be 0, 1 or 2, got " + std::to_string(so->order));
    validate_grid(so->grid, so->order + 2, "sobolev space");
  } else {
    validate(std::get<KernelImplicit>(s).kernel);
  }
}

std::optional<int> expected_dim(const SpaceSpec& s) {
  if (const auto* e = std::get_if<Euclidean>(&s)) return e->dim;
  if (const auto* l = std::get_if<L2Grid>(&s)) return static_cast<int>(l->grid.size());
  if (const auto* so = std::get_if<Sobolev>(&s)) return static_cast<int>(so->grid.size());
  return std::nullopt;
}

void check_point(const Point& x, const SpaceSpec& s) {
  const auto want = expected_dim(s);
  if (want && *want != x.size()) {
    std::ostringstream os;
    os << "point length " << x.size() << " does not match space dimension " << *want;
    throw input_error(os.str());
  }
}

std::vector<double> uniform_grid(int m) {
  if (m < 2) throw input_error("uniform_grid needs m >= 2, got " + std::to_string(m));
  std::vector<double> g(m);
  for (int i = 0; i < m; ++i) g[i] = static_cast<double>(i) / (m - 1);
  return g;
}

Eigen::VectorXd trapezoid_weights(const std::vector<double>& grid) {
  const int m = static_cast<int>(grid.size());
  Eigen::VectorXd w(m);
  w[0] = 0.5 * (grid[1] - grid[0]);
  for (int i = 1; i + 1 < m; ++i) w[i] = 0.5 * (grid[i + 1] - grid[i - 1]);
  w[m - 1] = 0.5 * (grid[m - 1] - grid[m - 2]);
  return w;
}

Eigen::MatrixXd derivative_matrix(const std::vector<double>& grid) {
  const int m = static_cast<int>(grid.size());
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
  d(0, 0) = -1.0 / (grid[1] - grid[0]);
  d(0, 1) = 1.0 / (grid[1] - grid[0]);
  for (int i = 1; i + 1 < m; ++i) {
    const double hm = grid[i] - grid[i - 1];
    const double hp = grid[i + 1] - grid[i];
    d(i, i - 1) = -hp / (hm * (hm + hp));
    d(i, i) = (hp - hm) / (hm * hp);
    d(i, i + 1) = hm / (hp * (hm + hp));
  }
  d(m - 1, m - 2) = -1.0 / (grid[m - 1] - grid[m - 2]);
  d(m - 1, m - 1) = 1.0 / (grid[m - 1] - grid[m - 2]);
  return d;
}

double inner_product(const Point& x, const Point& y, const SpaceSpec& s) {
  if (x.size() != y.size()) {
    std::ostringstream os;
    os << "inner_product: point lengths differ (" << x.size() << " vs " << y.size() << ")";
    throw input_error(os.str());
  }
  check_point(x, s);

  if (std::holds_alternative<Euclidean>(s)) return x.dot(y);

  if (const auto* l = std::get_if<L2Grid>(&s)) {
    return dot_weighted(x, y, trapezoid_weights(l->grid));
  }

  if (const auto* so = std::get_if<Sobolev>(&s)) {
    const Eigen::VectorXd w = trapezoid_weights(so->grid);
    double acc = dot_weighted(x, y, w);
    if (so->order >= 1) {
      const Eigen::MatrixXd d = derivative_matrix(so->grid);
      Point dx = d * x;
      Point dy = d * y;
      acc += dot_weighted(dx, dy, w);
      for (int j = 2; j <= so->order; ++j) {
        dx = d * dx;
        dy = d * dy;
        acc += dot_weighted(dx, dy, w);
      }
    }
    return acc;
  }

  return kernel_eval(x, y, std::get<KernelImplicit>(s).kernel);
}

double norm(const Point& x, const SpaceSpec& s) {
  return std::sqrt(std::max(0.0, inner_product(x, x, s)));
}

std::string describe(const SpaceSpec& s) {
  std::ostringstream os;
  if (const auto* e = std::get_if<Euclidean>(&s)) {
    os << "euclidean(dim=" << e->dim << ")";
  } else if (const auto* l = std::get_if<L2Grid>(&s)) {
    os << "l2(m=" << l->grid.size() << ")";
  } else if (const auto* so = std::get_if<Sobolev>(&s)) {
    os << "sobolev(m=" << so->grid.size() << ", order=" << so->order << ")";
  } else {
    const auto& k = std::get<KernelImplicit>(s).kernel;
    if (const auto* p = std::get_if<Polynomial>(&k)) {
      os << "poly(c=" << p->c << ", r=" << p->r << ")";
    } else {
      os << "rbf(h=" << std::get<RBF>(k).h << ")";
    }
  }
  return os.str();
}

}  // namespace hkm
