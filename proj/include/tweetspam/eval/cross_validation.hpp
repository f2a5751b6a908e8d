#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tweetspam/classify/model.hpp"
#include "tweetspam/corpus.hpp"
#include "tweetspam/eval/metrics.hpp"
#include "tweetspam/features/pipeline.hpp"

namespace tweetspam {

// Text analysis and unscaled dense blocks of every record, computed once and
// reused by every fold and grid point. Nothing here depends on labels or on
// other records.
class PreparedCorpus {
 public:
  PreparedCorpus(const LabeledCorpus& corpus, const FeatureConfig& config,
                 const Resources& resources);

  std::size_t size() const { return labels_.size(); }
  const FeatureConfig& config() const { return config_; }
  const std::vector<AnalyzedTweet>& analyzed() const { return analyzed_; }
  const std::vector<std::vector<double>>& dense() const { return dense_; }
  const std::vector<Label>& labels() const { return labels_; }
  const std::string& resource_fingerprint() const { return fingerprint_; }
  // Wall-clock seconds spent in construction.
  double seconds() const { return seconds_; }

  PreparedCorpus subset(std::span<const std::size_t> indices) const;

 private:
  PreparedCorpus() = default;

  FeatureConfig config_;
  std::vector<AnalyzedTweet> analyzed_;
  std::vector<std::vector<double>> dense_;
  std::vector<Label> labels_;
  std::string fingerprint_;
  double seconds_ = 0.0;
};

// Fits the fold's pipeline on its training records only.
FittedPipeline fit_fold_pipeline(const PreparedCorpus& prepared, const FoldPlan& plan,
                                 std::size_t fold, const PipelineOptions& options);

struct FoldResult {
  std::size_t fold = 0;
  std::size_t train_size = 0;
  ConfusionMatrix cm;
  Metrics metrics;
};

struct PhaseTimings {
  double featurize = 0.0;
  double fit = 0.0;
  double predict = 0.0;
  double total = 0.0;
};

struct EvalReport {
  Json config;  // echo of everything that determined the run
  std::uint64_t seed = 0;
  std::vector<FoldResult> folds;
  Metrics mean;
  Metrics stddev;
  PhaseTimings timings;

  ConfusionMatrix pooled() const;

  // Timings vary between runs, so they are only written when asked for.
  Json to_json(bool include_timings = false) const;
};

// Trains on the training rows and labels the test rows.
using FoldPredictor = std::function<std::vector<Label>(
    std::span<const FeatureVector> train, std::span<const Label> train_labels,
    std::span<const FeatureVector> test)>;

struct CvOptions {
  // Defaults to default_pipeline_options(spec.kind).
  std::optional<PipelineOptions> pipeline;
  // Called with each fold's fitted pipeline before training.
  std::function<void(std::size_t fold, const FittedPipeline&)> fold_observer;
};

EvalReport cross_validate(const PreparedCorpus& prepared, const FoldPlan& plan,
                          const ClassifierSpec& spec, const CvOptions& options = {});

// Same protocol with an arbitrary classifier.
EvalReport cross_validate(const PreparedCorpus& prepared, const FoldPlan& plan,
                          const FoldPredictor& predictor, const PipelineOptions& pipeline,
                          const CvOptions& options = {});

// Builds the stratified plan from `seed`, then evaluates.
EvalReport cross_validate(const LabeledCorpus& corpus, const FeatureConfig& config,
                          const ClassifierSpec& spec, std::size_t k, std::uint64_t seed,
                          const Resources& resources, const CvOptions& options = {});

}  // namespace tweetspam
