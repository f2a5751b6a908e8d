#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tweetspam/common/canonical_json.hpp"
#include "tweetspam/common/error.hpp"
#include "tweetspam/corpus.hpp"
#include "tweetspam/features/pipeline.hpp"
#include "tweetspam/features/vector.hpp"

namespace tweetspam {

class ClassifierError : public Error {
 public:
  using Error::Error;
};

enum class ClassifierKind { bernoulli_nb, knn, linear_svm, decision_tree, random_forest };

std::string_view to_string(ClassifierKind kind);
// Canonical names plus the short forms nb, svm, tree, rf and forest.
std::optional<ClassifierKind> parse_classifier_kind(std::string_view name);

using Hyperparameters = std::map<std::string, double>;

// Recognised hyperparameters with their defaults:
//   bernoulli_nb   alpha=1
//   knn            k=5
//   linear_svm     C=1 epochs=10
//   decision_tree  max_depth=0 min_samples_split=2
//   random_forest  n_trees=100 max_depth=0 min_samples_split=2
//                  max_features=0 bootstrap=1
// max_depth 0 means unlimited; max_features 0 means floor(sqrt(d)).
const Hyperparameters& default_hyperparameters(ClassifierKind kind);

// Problems with the supplied values, each as a readable message.
std::vector<std::string> validate_hyperparameters(ClassifierKind kind, const Hyperparameters& params);

struct ClassifierSpec {
  ClassifierKind kind = ClassifierKind::random_forest;
  Hyperparameters params;  // always complete once built through make_spec
  std::uint64_t seed = 0;

  double param(const std::string& name) const;
  std::size_t count_param(const std::string& name) const;

  Json to_json() const;
  static ClassifierSpec from_json(const Json& json);

  bool operator==(const ClassifierSpec&) const = default;
};

// Fills defaults for anything not given and validates. Throws ClassifierError
// listing every problem.
ClassifierSpec make_spec(ClassifierKind kind, const Hyperparameters& overrides = {},
                         std::uint64_t seed = 0);

// Scaling and selection each classifier expects: NB sees unscaled values,
// the SVM gets chi-square selection of 30% of columns, every other kind is
// min-max scaled.
PipelineOptions default_pipeline_options(ClassifierKind kind);

// Throws ClassifierError unless rows and labels line up, every label is
// spam or ham, rows share one layout and values are finite.
void check_training_data(std::span<const FeatureVector> rows, std::span<const Label> labels);

struct Prediction {
  Label label = Label::ham;
  // Confidence that the tweet is spam, in [0, 1].
  double score = 0.0;

  bool operator==(const Prediction&) const = default;
};

}  // namespace tweetspam
