#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "tweetspam/classify/spec.hpp"
#include "tweetspam/eval/cross_validation.hpp"

namespace tweetspam {

// Hyperparameter name -> candidate values.
using Grid = std::map<std::string, std::vector<double>>;

// Reads a JSON object of name -> array of numbers (a bare number counts as a
// one-value array). Throws EvalError when empty or malformed.
Grid grid_from_json(const Json& json);

// Cartesian product in name order, the last name varying fastest.
std::vector<Hyperparameters> expand_grid(const Grid& grid);

// A seeded stratified sample holding round(fraction * n_c) records of each
// class (at least min_per_class, at most all), returned in corpus order.
std::vector<std::size_t> stratified_subset(std::span<const Label> labels, double fraction,
                                           std::size_t min_per_class, std::uint64_t seed);

struct GridPoint {
  Hyperparameters params;
  Metrics mean;
  std::vector<double> fold_f1;
};

struct GridResult {
  ClassifierKind kind = ClassifierKind::random_forest;
  std::vector<GridPoint> points;
  std::size_t best = 0;
  double tune_fraction = 1.0;
  std::size_t k = 10;
  std::uint64_t seed = 0;
  std::vector<std::size_t> tuning_indices;
  std::string tuning_ids_digest;  // SHA-256 of the tuning tweet ids, newline-joined

  const GridPoint& best_point() const { return points[best]; }
  Json to_json() const;
};

// Cross-validates every grid point on the same tuning subset and fold plan.
// The best point has the highest mean F1, ties going to the earlier point.
GridResult grid_search(const LabeledCorpus& corpus, const FeatureConfig& config,
                       ClassifierKind kind, const Grid& grid, double tune_fraction,
                       std::size_t k, std::uint64_t seed, const Resources& resources);

}  // namespace tweetspam
