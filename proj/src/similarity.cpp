#include "hkm/similarity.hpp"

#include <sstream>

#include "hkm/errors.hpp"

namespace hkm {

SimilarityMatrix gram(const std::vector<Point>& data, const SpaceSpec& s) {
  validate(s);
  if (data.empty()) throw input_error("gram: empty dataset");
  const int n = static_cast<int>(data.size());
  for (int i = 0; i < n; ++i) {
    if (data[i].size() != data[0].size()) {
      std::ostringstream os;
      os << "gram: point " << i << " has length " << data[i].size() << ", expected "
         << data[0].size();
      throw input_error(os.str());
    }
    check_point(data[i], s);
  }
  Eigen::MatrixXd a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = i; j < n; ++j) {
      const double v = inner_product(data[i], data[j], s);
      a(i, j) = v;
      a(j, i) = v;
    }
  }
  return SimilarityMatrix{std::move(a), s};
}

}  // namespace hkm
