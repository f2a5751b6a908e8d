#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "tweetspam/classify/forest.hpp"
#include "tweetspam/classify/knn.hpp"
#include "tweetspam/classify/linear_svm.hpp"
#include "tweetspam/classify/naive_bayes.hpp"
#include "tweetspam/classify/spec.hpp"
#include "tweetspam/classify/tree.hpp"
#include "tweetspam/features/pipeline.hpp"

namespace tweetspam {

using Classifier = std::variant<BernoulliNB, Knn, LinearSvm, DecisionTree, RandomForest>;

// Trains the classifier `spec` names on already transformed rows.
Classifier train_classifier(const ClassifierSpec& spec, std::span<const FeatureVector> rows,
                            std::span<const Label> labels);
Prediction classify(const Classifier& classifier, const FeatureVector& x);

Json classifier_to_json(const Classifier& classifier);
Classifier classifier_from_json(ClassifierKind kind, const Json& json);

inline constexpr int kModelFormatVersion = 1;

class ModelError : public Error {
 public:
  enum class Kind { io, malformed, truncated, version, checksum, incompatible };

  ModelError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

// A classifier bundled with everything needed to featurize raw tweets.
class TrainedModel {
 public:
  TrainedModel(ClassifierSpec spec, FittedPipeline pipeline, Classifier classifier);

  // Fits the pipeline on `records` (all labeled) and trains the classifier.
  // Pipeline options default to default_pipeline_options(spec.kind).
  static TrainedModel train(std::span<const TweetRecord> records, const FeatureConfig& config,
                            const ClassifierSpec& spec, const Resources& resources,
                            std::optional<PipelineOptions> options = std::nullopt);

  // Throws ModelError(incompatible) when `resources` differ from the tables
  // the model was trained with.
  void check_resources(const Resources& resources) const;

  // Never fails on unseen vocabulary or out-of-range values. Callers should
  // run check_resources once beforehand.
  Prediction predict(const TweetRecord& record, const Resources& resources) const;
  // Checks resources, then predicts every record; same results as predict().
  std::vector<Prediction> predict_batch(std::span<const TweetRecord> records,
                                        const Resources& resources) const;

  const ClassifierSpec& spec() const { return spec_; }
  const FittedPipeline& pipeline() const { return pipeline_; }
  const Classifier& classifier() const { return classifier_; }

  // Everything the checksum covers.
  Json payload() const;

 private:
  ClassifierSpec spec_;
  FittedPipeline pipeline_;
  Classifier classifier_;
};

// Canonical JSON with format_version, spec, pipeline, parameters and a
// SHA-256 checksum over the canonical rendering of the other four fields.
std::string serialize_model(const TrainedModel& model);
TrainedModel parse_model(std::string_view text, int expected_version = kModelFormatVersion);

void save_model(const TrainedModel& model, const std::filesystem::path& path);
TrainedModel load_model(const std::filesystem::path& path);

}  // namespace tweetspam
