#include "tweetspam/classify/model.hpp"

#include "tweetspam/common/digest.hpp"
#include "tweetspam/common/files.hpp"
#include "tweetspam/common/parallel.hpp"

namespace tweetspam {

Classifier train_classifier(const ClassifierSpec& spec, std::span<const FeatureVector> rows,
                            std::span<const Label> labels) {
  switch (spec.kind) {
    case ClassifierKind::bernoulli_nb:
      return BernoulliNB::fit(rows, labels, spec.param("alpha"));
    case ClassifierKind::knn:
      return Knn::fit(rows, labels, spec.count_param("k"));
    case ClassifierKind::linear_svm:
      return LinearSvm::fit(rows, labels, spec.param("C"), spec.count_param("epochs"), spec.seed);
    case ClassifierKind::decision_tree: {
      TreeParams params;
      params.max_depth = spec.count_param("max_depth");
      params.min_samples_split = spec.count_param("min_samples_split");
      return DecisionTree::fit(rows, labels, params);
    }
    case ClassifierKind::random_forest: {
      ForestParams params;
      params.n_trees = spec.count_param("n_trees");
      params.max_depth = spec.count_param("max_depth");
      params.min_samples_split = spec.count_param("min_samples_split");
      params.max_features = spec.count_param("max_features");
      params.bootstrap = spec.param("bootstrap") != 0;
      return RandomForest::fit(rows, labels, params, spec.seed);
    }
  }
  throw ClassifierError("unknown classifier kind");
}

Prediction classify(const Classifier& classifier, const FeatureVector& x) {
  return std::visit([&](const auto& c) { return c.predict(x); }, classifier);
}

Json classifier_to_json(const Classifier& classifier) {
  return std::visit([](const auto& c) { return c.to_json(); }, classifier);
}

Classifier classifier_from_json(ClassifierKind kind, const Json& json) {
  switch (kind) {
    case ClassifierKind::bernoulli_nb: return BernoulliNB::from_json(json);
    case ClassifierKind::knn: return Knn::from_json(json);
    case ClassifierKind::linear_svm: return LinearSvm::from_json(json);
    case ClassifierKind::decision_tree: return DecisionTree::from_json(json);
    case ClassifierKind::random_forest: return RandomForest::from_json(json);
  }
  throw ClassifierError("unknown classifier kind");
}

TrainedModel::TrainedModel(ClassifierSpec spec, FittedPipeline pipeline, Classifier classifier)
    : spec_(std::move(spec)), pipeline_(std::move(pipeline)), classifier_(std::move(classifier)) {
  if (classifier_.index() != static_cast<std::size_t>(spec_.kind)) {
    throw ClassifierError("classifier parameters do not match the spec kind");
  }
}

TrainedModel TrainedModel::train(std::span<const TweetRecord> records, const FeatureConfig& config,
                                 const ClassifierSpec& spec, const Resources& resources,
                                 std::optional<PipelineOptions> options) {
  std::vector<AnalyzedTweet> analyzed(records.size());
  std::vector<std::vector<double>> dense(records.size());
  std::vector<Label> labels(records.size());
  parallel_for(records.size(), [&](std::size_t i) {
    analyzed[i] = analyze(records[i], resources);
    dense[i] = dense_features(records[i], analyzed[i], config, resources);
  });
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (records[i].label == Label::unlabeled) {
      throw CorpusError(CorpusError::Kind::unlabeled_record,
                        "record " + records[i].tweet_id + " has no label");
    }
    labels[i] = records[i].label;
  }
  auto pipeline = FittedPipeline::fit(analyzed, dense, labels, config,
                                      options.value_or(default_pipeline_options(spec.kind)),
                                      resources.fingerprint());
  std::vector<FeatureVector> rows(records.size());
  parallel_for(records.size(), [&](std::size_t i) { rows[i] = pipeline.transform(dense[i], analyzed[i]); });
  auto classifier = train_classifier(spec, rows, labels);
  return TrainedModel(spec, std::move(pipeline), std::move(classifier));
}

void TrainedModel::check_resources(const Resources& resources) const {
  if (resources.fingerprint() != pipeline_.resource_fingerprint()) {
    throw ModelError(ModelError::Kind::incompatible,
                     "model was trained with different lexicon or text resources");
  }
}

Prediction TrainedModel::predict(const TweetRecord& record, const Resources& resources) const {
  return classify(classifier_, pipeline_.featurize(record, resources));
}

std::vector<Prediction> TrainedModel::predict_batch(std::span<const TweetRecord> records,
                                                    const Resources& resources) const {
  check_resources(resources);
  std::vector<Prediction> out(records.size());
  parallel_for(records.size(), [&](std::size_t i) { out[i] = predict(records[i], resources); });
  return out;
}

Json TrainedModel::payload() const {
  return Json{{"format_version", kModelFormatVersion},
              {"spec", spec_.to_json()},
              {"pipeline", pipeline_.to_json()},
              {"parameters", classifier_to_json(classifier_)}};
}

std::string serialize_model(const TrainedModel& model) {
  Json document = model.payload();
  document["checksum"] = sha256_hex(canonical_dump(document));
  return canonical_dump(document) + "\n";
}

TrainedModel parse_model(std::string_view text, int expected_version) {
  Json document;
  try {
    document = Json::parse(text);
  } catch (const Json::parse_error& e) {
    if (text.empty() || e.byte >= text.size()) {
      throw ModelError(ModelError::Kind::truncated, "model file is truncated");
    }
    throw ModelError(ModelError::Kind::checksum,
                     "model file is corrupted: checksum cannot be verified (invalid JSON at byte " +
                         std::to_string(e.byte) + ")");
  }
  if (!document.is_object() || !document.contains("format_version") ||
      !document.contains("checksum")) {
    throw ModelError(ModelError::Kind::malformed, "model file lacks format_version or checksum");
  }
  const auto& version = document.at("format_version");
  if (!version.is_number_integer() || version.get<std::int64_t>() != expected_version) {
    throw ModelError(ModelError::Kind::version,
                     "model format version " + version.dump() + " is not supported (expected " +
                         std::to_string(expected_version) + ")");
  }
  const Json stored = document.at("checksum");
  document.erase("checksum");
  if (!stored.is_string() || stored.get<std::string>() != sha256_hex(canonical_dump(document))) {
    throw ModelError(ModelError::Kind::checksum, "model checksum mismatch: file is corrupted");
  }
  try {
    auto spec = ClassifierSpec::from_json(document.at("spec"));
    auto pipeline = FittedPipeline::from_json(document.at("pipeline"));
    auto classifier = classifier_from_json(spec.kind, document.at("parameters"));
    return TrainedModel(std::move(spec), std::move(pipeline), std::move(classifier));
  } catch (const Json::exception& e) {
    throw ModelError(ModelError::Kind::malformed, std::string("model file is malformed: ") + e.what());
  }
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  write_file_atomic(path, serialize_model(model));
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::string text;
  try {
    text = read_file(path);
  } catch (const Error& e) {
    throw ModelError(ModelError::Kind::io, e.what());
  }
  return parse_model(text);
}

}  // namespace tweetspam
