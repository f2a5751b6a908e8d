#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tweetspam/classify/spec.hpp"
#include "tweetspam/common/rng.hpp"

namespace tweetspam {

// Training rows in the layout the split search wants: dense block column
// major, sparse block both row- and column-compressed.
class TreeData {
 public:
  TreeData(std::span<const FeatureVector> rows, std::span<const Label> labels);

  std::size_t size() const { return spam_.size(); }
  std::size_t dense_width() const { return dense_width_; }
  std::size_t sparse_width() const { return sparse_width_; }
  std::size_t width() const { return dense_width_ + sparse_width_; }

  bool spam(std::size_t row) const { return spam_[row] != 0; }
  double dense(std::size_t column, std::size_t row) const { return dense_[column * size() + row]; }
  std::span<const SparseEntry> sparse_row(std::size_t row) const {
    return {sparse_entries_.data() + row_start_[row], row_start_[row + 1] - row_start_[row]};
  }
  std::size_t spam_count() const;

 private:
  std::size_t dense_width_ = 0;
  std::size_t sparse_width_ = 0;
  std::vector<std::uint8_t> spam_;
  std::vector<double> dense_;
  std::vector<std::size_t> row_start_;
  std::vector<SparseEntry> sparse_entries_;
};

struct TreeNode {
  // -1 marks a leaf.
  std::int32_t feature = -1;
  // Rows with x[feature] <= threshold go left.
  double threshold = 0.0;
  std::int32_t left = -1;
  std::int32_t right = -1;
  // Weighted training counts reaching the node: ham, spam.
  std::array<std::uint64_t, 2> counts{};

  bool is_leaf() const { return feature < 0; }
  bool operator==(const TreeNode&) const = default;
};

struct TreeParams {
  std::size_t max_depth = 0;  // 0 = unlimited
  std::size_t min_samples_split = 2;
  // Features examined per split; 0 or >= width examines all of them.
  std::size_t max_features = 0;
};

// Binary CART tree grown greedily by weighted Gini impurity. Thresholds are
// midpoints between consecutive distinct values; equal impurity ties go to
// the lower feature index, then the lower threshold.
class DecisionTree {
 public:
  DecisionTree() = default;
  DecisionTree(std::vector<TreeNode> nodes, std::size_t width);

  static DecisionTree fit(std::span<const FeatureVector> rows, std::span<const Label> labels,
                          const TreeParams& params);

  // `weights[i]` is the multiplicity of row i (0 drops it). With max_features
  // below the width, each split examines features drawn from `rng` until that
  // many non-constant ones have been seen.
  static DecisionTree grow(const TreeData& data, std::span<const std::uint32_t> weights,
                           const TreeParams& params, Rng* rng);

  const TreeNode& leaf_for(const FeatureVector& x) const;
  // Score is the spam fraction of the leaf; spam only on a strict majority.
  Prediction predict(const FeatureVector& x) const;

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  std::size_t width() const { return width_; }
  std::size_t depth() const;

  Json to_json() const;
  static DecisionTree from_json(const Json& json);

  bool operator==(const DecisionTree&) const = default;

 private:
  std::vector<TreeNode> nodes_;
  std::size_t width_ = 0;
};

}  // namespace tweetspam
