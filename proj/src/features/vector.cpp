#include "tweetspam/features/vector.hpp"

#include <algorithm>

namespace tweetspam {

double FeatureVector::at(std::size_t column) const {
  if (column < dense.size()) return dense[column];
  auto target = static_cast<std::uint32_t>(column - dense.size());
  auto it = std::lower_bound(sparse.begin(), sparse.end(), target,
                             [](const SparseEntry& e, std::uint32_t c) { return e.column < c; });
  return (it != sparse.end() && it->column == target) ? it->value : 0.0;
}

double squared_distance(const FeatureVector& a, const FeatureVector& b) {
  double sum = 0.0;
  const std::size_t dense = std::min(a.dense.size(), b.dense.size());
  for (std::size_t j = 0; j < dense; ++j) {
    double d = a.dense[j] - b.dense[j];
    sum += d * d;
  }
  auto ia = a.sparse.begin(), ib = b.sparse.begin();
  while (ia != a.sparse.end() || ib != b.sparse.end()) {
    double d;
    if (ib == b.sparse.end() || (ia != a.sparse.end() && ia->column < ib->column)) {
      d = ia->value;
      ++ia;
    } else if (ia == a.sparse.end() || ib->column < ia->column) {
      d = -ib->value;
      ++ib;
    } else {
      d = ia->value - ib->value;
      ++ia;
      ++ib;
    }
    sum += d * d;
  }
  return sum;
}

double dot(const FeatureVector& x, const std::vector<double>& weights) {
  double sum = 0.0;
  for (std::size_t j = 0; j < x.dense.size(); ++j) sum += x.dense[j] * weights[j];
  const std::size_t offset = x.dense.size();
  for (const auto& e : x.sparse) sum += e.value * weights[offset + e.column];
  return sum;
}

}  // namespace tweetspam
