#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace tweetspam {

struct SparseEntry {
  std::uint32_t column = 0;
  double value = 0.0;

  bool operator==(const SparseEntry&) const = default;
};

// Dense block values followed by a sparse block. Global column c addresses
// dense[c] when c < dense.size(), otherwise sparse column c - dense.size().
struct FeatureVector {
  std::vector<double> dense;
  std::vector<SparseEntry> sparse;  // sorted by column, columns < sparse_width
  std::size_t sparse_width = 0;

  std::size_t width() const { return dense.size() + sparse_width; }
  double at(std::size_t column) const;

  // Visits (global column, value) for every stored entry in column order.
  // Dense zeros are visited too.
  template <typename F>
  void for_each_entry(F&& visit) const {
    for (std::size_t j = 0; j < dense.size(); ++j) visit(j, dense[j]);
    for (const auto& e : sparse) visit(dense.size() + e.column, e.value);
  }

  bool operator==(const FeatureVector&) const = default;
};

// Squared Euclidean distance summed in column order.
double squared_distance(const FeatureVector& a, const FeatureVector& b);
double dot(const FeatureVector& x, const std::vector<double>& weights);

struct BlockSpan {
  std::string name;
  std::size_t offset = 0;
  std::size_t width = 0;
  bool sparse = false;

  bool operator==(const BlockSpan&) const = default;
};

struct Layout {
  std::vector<BlockSpan> blocks;
  std::size_t dense_width = 0;
  std::size_t sparse_width = 0;

  std::size_t width() const { return dense_width + sparse_width; }
  bool operator==(const Layout&) const = default;
};

}  // namespace tweetspam
