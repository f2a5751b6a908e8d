#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tweetspam/common/canonical_json.hpp"
#include "tweetspam/corpus.hpp"
#include "tweetspam/features/vector.hpp"

namespace tweetspam {

// Per-column min-max scaling of the dense part onto [-1, 1]. Sparse columns
// pass through untouched.
class Scaler {
 public:
  Scaler() = default;
  Scaler(std::vector<double> min, std::vector<double> max);

  // Requires at least one row; all rows must have the same dense width.
  static Scaler fit(std::span<const FeatureVector> rows);

  // 2 (x - min) / (max - min) - 1, clipped to [-1, 1]; constant columns map to 0.
  double scale(std::size_t column, double x) const;
  FeatureVector apply(const FeatureVector& row) const;

  const std::vector<double>& min() const { return min_; }
  const std::vector<double>& max() const { return max_; }

  Json to_json() const;
  static Scaler from_json(const Json& json);

 private:
  std::vector<double> min_;
  std::vector<double> max_;
};

class FeatureMask {
 public:
  FeatureMask() = default;
  FeatureMask(std::size_t dense_width, std::size_t sparse_width, std::vector<std::size_t> kept,
              std::vector<double> scores);

  std::size_t original_width() const { return dense_width_ + sparse_width_; }
  const std::vector<std::size_t>& kept() const { return kept_; }
  const std::vector<double>& scores() const { return scores_; }

  // Keeps the selected columns. Kept dense columns stay dense, kept sparse
  // columns are renumbered densely within the sparse block.
  FeatureVector apply(const FeatureVector& row) const;
  std::size_t kept_dense() const { return kept_dense_; }

  Json to_json() const;
  static FeatureMask from_json(const Json& json);

 private:
  std::size_t dense_width_ = 0;
  std::size_t sparse_width_ = 0;
  std::vector<std::size_t> kept_;
  std::vector<double> scores_;
  std::size_t kept_dense_ = 0;
  std::vector<std::int64_t> sparse_remap_;
};

// ceil(fraction * d), robust to products like 0.3 * 10 landing just above an
// integer.
std::size_t selection_size(double fraction, std::size_t columns);

// Chi-square scores against the label, keeping the top ceil(fraction * d)
// columns (ties to the lower column). Values enter as magnitudes |x|, so
// signed sentiment scores count by strength. Throws FeatureError for fraction
// outside (0, 1].
FeatureMask chi2_select(std::span<const FeatureVector> rows, std::span<const Label> labels,
                        double fraction);

}  // namespace tweetspam
