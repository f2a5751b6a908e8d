#include "tweetspam/eval/cross_validation.hpp"

#include <chrono>

#include "tweetspam/common/parallel.hpp"

namespace tweetspam {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

template <typename T>
std::vector<T> pick(const std::vector<T>& items, std::span<const std::size_t> indices) {
  std::vector<T> out;
  out.reserve(indices.size());
  for (std::size_t i : indices) out.push_back(items[i]);
  return out;
}

Json pipeline_json(const PipelineOptions& options) {
  return Json{{"min_df", options.min_df},
              {"scale", options.scale},
              {"chi2_fraction", options.chi2_fraction ? Json(*options.chi2_fraction) : Json()}};
}

}  // namespace

PreparedCorpus::PreparedCorpus(const LabeledCorpus& corpus, const FeatureConfig& config,
                               const Resources& resources)
    : config_(config), fingerprint_(resources.fingerprint()) {
  const auto start = Clock::now();
  corpus.require_labeled();
  const auto& records = corpus.records();
  analyzed_.resize(records.size());
  dense_.resize(records.size());
  parallel_for(records.size(), [&](std::size_t i) {
    analyzed_[i] = analyze(records[i], resources);
    dense_[i] = dense_features(records[i], analyzed_[i], config_, resources);
  });
  labels_ = corpus.labels();
  seconds_ = seconds_since(start);
}

PreparedCorpus PreparedCorpus::subset(std::span<const std::size_t> indices) const {
  PreparedCorpus out;
  out.config_ = config_;
  out.analyzed_ = pick(analyzed_, indices);
  out.dense_ = pick(dense_, indices);
  out.labels_ = pick(labels_, indices);
  out.fingerprint_ = fingerprint_;
  out.seconds_ = 0.0;
  return out;
}

FittedPipeline fit_fold_pipeline(const PreparedCorpus& prepared, const FoldPlan& plan,
                                 std::size_t fold, const PipelineOptions& options) {
  const auto train = plan.train_indices(fold);
  const auto analyzed = pick(prepared.analyzed(), train);
  const auto dense = pick(prepared.dense(), train);
  const auto labels = pick(prepared.labels(), train);
  return FittedPipeline::fit(analyzed, dense, labels, prepared.config(), options,
                             prepared.resource_fingerprint());
}

ConfusionMatrix EvalReport::pooled() const {
  ConfusionMatrix total;
  for (const auto& fold : folds) total += fold.cm;
  return total;
}

Json EvalReport::to_json(bool include_timings) const {
  Json folds_json = Json::array();
  for (const auto& fold : folds) {
    Json entry = tweetspam::to_json(fold.cm);
    entry.update(tweetspam::to_json(fold.metrics));
    entry["fold"] = fold.fold;
    entry["train_size"] = fold.train_size;
    folds_json.push_back(entry);
  }
  Json out{{"config", config},
           {"seed", seed},
           {"folds", folds_json},
           {"mean", tweetspam::to_json(mean)},
           {"std", tweetspam::to_json(stddev)}};
  if (include_timings) {
    out["timings"] = Json{{"featurize_seconds", timings.featurize},
                          {"fit_seconds", timings.fit},
                          {"predict_seconds", timings.predict},
                          {"total_seconds", timings.total}};
  }
  return out;
}

EvalReport cross_validate(const PreparedCorpus& prepared, const FoldPlan& plan,
                          const FoldPredictor& predictor, const PipelineOptions& pipeline,
                          const CvOptions& options) {
  if (plan.assignments().size() != prepared.size()) {
    throw EvalError("fold plan covers " + std::to_string(plan.assignments().size()) +
                    " records but the corpus has " + std::to_string(prepared.size()));
  }
  const auto start = Clock::now();
  EvalReport report;
  report.seed = plan.seed();
  report.timings.featurize = prepared.seconds();
  std::size_t spam = 0;
  for (Label label : prepared.labels()) spam += label == Label::spam;
  report.config = Json{{"features", prepared.config().to_string()},
                       {"classifier", "custom"},
                       {"pipeline", pipeline_json(pipeline)},
                       {"k", plan.k()},
                       {"corpus_size", prepared.size()},
                       {"class_counts", {{"spam", spam}, {"ham", prepared.size() - spam}}}};

  std::vector<Metrics> metrics;
  for (std::size_t fold = 0; fold < plan.k(); ++fold) {
    auto phase = Clock::now();
    const auto train = plan.train_indices(fold);
    const auto test = plan.test_indices(fold);
    const auto fitted = fit_fold_pipeline(prepared, plan, fold, pipeline);
    if (options.fold_observer) options.fold_observer(fold, fitted);

    std::vector<FeatureVector> train_rows(train.size()), test_rows(test.size());
    parallel_for(train.size(), [&](std::size_t i) {
      train_rows[i] = fitted.transform(prepared.dense()[train[i]], prepared.analyzed()[train[i]]);
    });
    parallel_for(test.size(), [&](std::size_t i) {
      test_rows[i] = fitted.transform(prepared.dense()[test[i]], prepared.analyzed()[test[i]]);
    });
    const auto train_labels = pick(prepared.labels(), train);
    const auto gold = pick(prepared.labels(), test);
    report.timings.featurize += seconds_since(phase);

    phase = Clock::now();
    const auto predicted = predictor(train_rows, train_labels, test_rows);
    report.timings.fit += seconds_since(phase);

    FoldResult result;
    result.fold = fold;
    result.train_size = train.size();
    result.cm = confusion(gold, predicted);
    result.metrics = prf1(result.cm);
    metrics.push_back(result.metrics);
    report.folds.push_back(result);
  }
  report.mean = mean_metrics(metrics);
  report.stddev = std_metrics(metrics);
  report.timings.total = seconds_since(start) + prepared.seconds();
  return report;
}

EvalReport cross_validate(const PreparedCorpus& prepared, const FoldPlan& plan,
                          const ClassifierSpec& spec, const CvOptions& options) {
  double predict_seconds = 0.0;
  FoldPredictor predictor = [&](std::span<const FeatureVector> train,
                                std::span<const Label> train_labels,
                                std::span<const FeatureVector> test) {
    const auto classifier = train_classifier(spec, train, train_labels);
    const auto start = Clock::now();
    std::vector<Label> out(test.size());
    parallel_for(test.size(), [&](std::size_t i) { out[i] = classify(classifier, test[i]).label; });
    predict_seconds += seconds_since(start);
    return out;
  };
  const auto pipeline = options.pipeline.value_or(default_pipeline_options(spec.kind));
  EvalReport report = cross_validate(prepared, plan, predictor, pipeline, options);
  report.config["classifier"] = spec.to_json();
  report.timings.fit -= predict_seconds;
  report.timings.predict = predict_seconds;
  return report;
}

EvalReport cross_validate(const LabeledCorpus& corpus, const FeatureConfig& config,
                          const ClassifierSpec& spec, std::size_t k, std::uint64_t seed,
                          const Resources& resources, const CvOptions& options) {
  const auto plan = stratified_kfold(corpus, k, seed);
  const PreparedCorpus prepared(corpus, config, resources);
  return cross_validate(prepared, plan, spec, options);
}

}  // namespace tweetspam
