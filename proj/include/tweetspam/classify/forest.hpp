#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tweetspam/classify/tree.hpp"

namespace tweetspam {

struct ForestParams {
  std::size_t n_trees = 100;
  std::size_t max_depth = 0;
  std::size_t min_samples_split = 2;
  // 0 means floor(sqrt(width)), at least 1.
  std::size_t max_features = 0;
  bool bootstrap = true;
};

// Bagged CART trees. Tree t draws its bootstrap sample and its split features
// from a generator seeded with derive_seed(seed, t), so the forest does not
// depend on how many threads grow it.
class RandomForest {
 public:
  RandomForest() = default;
  RandomForest(std::vector<DecisionTree> trees, Label majority);

  static RandomForest fit(std::span<const FeatureVector> rows, std::span<const Label> labels,
                          const ForestParams& params, std::uint64_t seed);

  // Score is the fraction of trees voting spam; an even vote goes to the
  // class that was more frequent in training (ham when that is also even).
  Prediction predict(const FeatureVector& x) const;

  const std::vector<DecisionTree>& trees() const { return trees_; }
  Label majority() const { return majority_; }

  Json to_json() const;
  static RandomForest from_json(const Json& json);

 private:
  std::vector<DecisionTree> trees_;
  Label majority_ = Label::ham;
};

std::size_t resolve_max_features(std::size_t requested, std::size_t width);

}  // namespace tweetspam
