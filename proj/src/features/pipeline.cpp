#include "tweetspam/features/pipeline.hpp"

#include "tweetspam/common/digest.hpp"

namespace tweetspam {

Resources Resources::load(const std::filesystem::path& dir) {
  Resources resources;
  resources.text = TextResources::load(dir);
  resources.sentiment = SentimentLexicons::load(dir);
  resources.spam_words = SpamLexicon::load(dir / "spamwords.txt");
  return resources;
}

std::string Resources::fingerprint() const {
  std::string all = text.canonical_form();
  for (const auto& lexicon : sentiment.lexicons) all += lexicon.canonical_form();
  all += spam_words.canonical_form();
  return sha256_hex(all);
}

AnalyzedTweet analyze(const TweetRecord& record, const Resources& resources) {
  AnalyzedTweet out;
  out.normalized = preprocess(record.text, resources.text);
  out.tokens = tokenize(out.normalized, resources.text);
  out.tags = pos_tag(out.tokens, resources.text);
  out.ngram_units = ngram_units(out.tokens);
  return out;
}

std::vector<double> dense_features(const TweetRecord& record, const AnalyzedTweet& analyzed,
                                   const FeatureConfig& config, const Resources& resources) {
  std::vector<double> row;
  if (config.user) {
    const auto block = user_features(record);
    row.insert(row.end(), block.values.begin(), block.values.end());
  }
  if (config.content) {
    const auto block = content_features(analyzed.normalized, analyzed.tokens, analyzed.tags,
                                        resources.spam_words);
    row.insert(row.end(), block.values.begin(), block.values.end());
  }
  if (config.sentiment) {
    const auto block =
        sentiment_features(strip_for_sentiment(analyzed.tokens), resources.sentiment);
    row.insert(row.end(), block.values.begin(), block.values.end());
  }
  return row;
}

FittedPipeline FittedPipeline::fit(std::span<const AnalyzedTweet> analyzed,
                                   std::span<const std::vector<double>> dense_rows,
                                   std::span<const Label> labels, const FeatureConfig& config,
                                   const PipelineOptions& options,
                                   std::string resource_fingerprint) {
  if (config.empty()) throw FeatureError("feature configuration selects no blocks");
  if (analyzed.empty()) throw FeatureError("cannot fit a pipeline on zero records");
  if (analyzed.size() != dense_rows.size() || analyzed.size() != labels.size()) {
    throw FeatureError("pipeline inputs differ in length");
  }
  FittedPipeline pipeline;
  pipeline.config_ = config;
  pipeline.options_ = options;
  pipeline.resource_fingerprint_ = std::move(resource_fingerprint);
  if (config.ngram) {
    std::vector<std::vector<std::string>> units;
    units.reserve(analyzed.size());
    for (const auto& a : analyzed) units.push_back(a.ngram_units);
    pipeline.vocabulary_ = build_vocabulary(units, config.ngram->orders, options.min_df);
  }
  pipeline.layout_ =
      make_layout(config, pipeline.vocabulary_ ? pipeline.vocabulary_->size() : 0);

  std::vector<FeatureVector> raw;
  raw.reserve(analyzed.size());
  for (std::size_t i = 0; i < analyzed.size(); ++i) {
    raw.push_back(pipeline.raw_vector(dense_rows[i], analyzed[i]));
  }
  pipeline.scaler_ = Scaler::fit(raw);
  if (options.chi2_fraction) {
    pipeline.mask_ = chi2_select(raw, labels, *options.chi2_fraction);
  }
  return pipeline;
}

FittedPipeline FittedPipeline::fit(std::span<const TweetRecord> records,
                                   const FeatureConfig& config, const PipelineOptions& options,
                                   const Resources& resources) {
  std::vector<AnalyzedTweet> analyzed;
  std::vector<std::vector<double>> dense;
  std::vector<Label> labels;
  analyzed.reserve(records.size());
  dense.reserve(records.size());
  for (const auto& record : records) {
    analyzed.push_back(analyze(record, resources));
    dense.push_back(dense_features(record, analyzed.back(), config, resources));
    labels.push_back(record.label);
  }
  return fit(analyzed, dense, labels, config, options, resources.fingerprint());
}

FeatureVector FittedPipeline::raw_vector(const std::vector<double>& dense_row,
                                         const AnalyzedTweet& analyzed) const {
  if (dense_row.size() != layout_.dense_width) {
    throw FeatureError("dense row has " + std::to_string(dense_row.size()) +
                       " values, layout expects " + std::to_string(layout_.dense_width));
  }
  FeatureVector out;
  out.dense = dense_row;
  if (vocabulary_) {
    out.sparse = ngram_vectorize(analyzed.ngram_units, *vocabulary_, config_.ngram->weighting);
    out.sparse_width = vocabulary_->size();
  }
  return out;
}

FeatureVector FittedPipeline::finish(const FeatureVector& raw) const {
  FeatureVector out = options_.scale ? scaler_.apply(raw) : raw;
  if (mask_) out = mask_->apply(out);
  return out;
}

FeatureVector FittedPipeline::featurize(const TweetRecord& record,
                                        const Resources& resources) const {
  const auto analyzed = analyze(record, resources);
  return transform(dense_features(record, analyzed, config_, resources), analyzed);
}

std::size_t FittedPipeline::output_width() const {
  return mask_ ? mask_->kept().size() : layout_.width();
}

Json FittedPipeline::to_json() const {
  Json options{{"min_df", options_.min_df}, {"scale", options_.scale}};
  options["chi2_fraction"] = options_.chi2_fraction ? Json(*options_.chi2_fraction) : Json();
  return Json{{"features", config_.to_string()},
              {"options", options},
              {"vocabulary", vocabulary_ ? vocabulary_->to_json() : Json()},
              {"scaler", scaler_.to_json()},
              {"mask", mask_ ? mask_->to_json() : Json()},
              {"resource_fingerprint", resource_fingerprint_}};
}

FittedPipeline FittedPipeline::from_json(const Json& json) {
  FittedPipeline pipeline;
  pipeline.config_ = parse_feature_config(json.at("features").get<std::string>());
  const auto& options = json.at("options");
  pipeline.options_.min_df = options.at("min_df").get<std::size_t>();
  pipeline.options_.scale = options.at("scale").get<bool>();
  if (!options.at("chi2_fraction").is_null()) {
    pipeline.options_.chi2_fraction = options.at("chi2_fraction").get<double>();
  }
  if (!json.at("vocabulary").is_null()) {
    pipeline.vocabulary_ = Vocabulary::from_json(json.at("vocabulary"));
  }
  if (pipeline.config_.ngram.has_value() != pipeline.vocabulary_.has_value()) {
    throw FeatureError("pipeline vocabulary does not match its feature configuration");
  }
  pipeline.layout_ = make_layout(pipeline.config_,
                                 pipeline.vocabulary_ ? pipeline.vocabulary_->size() : 0);
  pipeline.scaler_ = Scaler::from_json(json.at("scaler"));
  if (pipeline.scaler_.min().size() != pipeline.layout_.dense_width) {
    throw FeatureError("pipeline scaler does not match its layout");
  }
  if (!json.at("mask").is_null()) {
    pipeline.mask_ = FeatureMask::from_json(json.at("mask"));
    if (pipeline.mask_->original_width() != pipeline.layout_.width()) {
      throw FeatureError("pipeline mask does not match its layout");
    }
  }
  pipeline.resource_fingerprint_ = json.at("resource_fingerprint").get<std::string>();
  return pipeline;
}

}  // namespace tweetspam
