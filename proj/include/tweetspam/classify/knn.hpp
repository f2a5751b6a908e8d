#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tweetspam/classify/spec.hpp"

namespace tweetspam {

// Exact k-nearest-neighbour vote under Euclidean distance. Distance ties go
// to the lower training index; vote ties to the class whose neighbours have
// the smaller summed distance, then to ham.
class Knn {
 public:
  Knn() = default;
  Knn(std::size_t k, std::vector<FeatureVector> rows, std::vector<Label> labels);

  // Throws ClassifierError when k exceeds the number of rows.
  static Knn fit(std::span<const FeatureVector> rows, std::span<const Label> labels, std::size_t k);

  // Training indices of the k nearest rows, nearest first.
  std::vector<std::size_t> neighbors(const FeatureVector& x) const;
  Prediction predict(const FeatureVector& x) const;

  std::size_t k() const { return k_; }
  std::size_t size() const { return rows_.size(); }

  Json to_json() const;
  static Knn from_json(const Json& json);

 private:
  std::size_t k_ = 1;
  std::vector<FeatureVector> rows_;
  std::vector<Label> labels_;
};

// Shared by the model formats that store feature rows.
Json vector_to_json(const FeatureVector& row);
FeatureVector vector_from_json(const Json& json, std::size_t sparse_width);

}  // namespace tweetspam
