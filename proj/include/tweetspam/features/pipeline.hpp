#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tweetspam/common/canonical_json.hpp"
#include "tweetspam/corpus.hpp"
#include "tweetspam/features/blocks.hpp"
#include "tweetspam/features/config.hpp"
#include "tweetspam/features/lexicons.hpp"
#include "tweetspam/features/ngram.hpp"
#include "tweetspam/features/selection.hpp"
#include "tweetspam/text.hpp"

namespace tweetspam {

// Every table featurization reads. Fixed at load time and shareable.
struct Resources {
  TextResources text;
  SentimentLexicons sentiment;
  SpamLexicon spam_words;

  // Reads contractions.tsv, pos_lexicon.tsv, emoticons.txt, the five
  // sentiment lexicons and spamwords.txt from `dir`.
  static Resources load(const std::filesystem::path& dir);

  // SHA-256 over the canonical form of every table.
  std::string fingerprint() const;
};

// Per-tweet text analysis that does not depend on any fitted state.
struct AnalyzedTweet {
  NormalizedText normalized;
  std::vector<Token> tokens;
  TagSeq tags;
  std::vector<std::string> ngram_units;
};

AnalyzedTweet analyze(const TweetRecord& record, const Resources& resources);

// Unscaled user | content | sentiment values selected by `config`.
std::vector<double> dense_features(const TweetRecord& record, const AnalyzedTweet& analyzed,
                                   const FeatureConfig& config, const Resources& resources);

struct PipelineOptions {
  std::size_t min_df = 2;
  // Apply min-max scaling to dense columns at transform time.
  bool scale = true;
  // Fit a chi-square mask keeping this fraction of columns.
  std::optional<double> chi2_fraction;

  bool operator==(const PipelineOptions&) const = default;
};

// Vocabulary, scaler and optional mask fitted on training records only.
class FittedPipeline {
 public:
  FittedPipeline() = default;

  // `dense_rows[i]` must equal dense_features() of record i.
  static FittedPipeline fit(std::span<const AnalyzedTweet> analyzed,
                            std::span<const std::vector<double>> dense_rows,
                            std::span<const Label> labels, const FeatureConfig& config,
                            const PipelineOptions& options, std::string resource_fingerprint);

  static FittedPipeline fit(std::span<const TweetRecord> records, const FeatureConfig& config,
                            const PipelineOptions& options, const Resources& resources);

  // Unscaled, unmasked vector in the raw layout.
  FeatureVector raw_vector(const std::vector<double>& dense_row,
                           const AnalyzedTweet& analyzed) const;
  // Scaling (if enabled) then masking (if fitted).
  FeatureVector finish(const FeatureVector& raw) const;

  FeatureVector transform(const std::vector<double>& dense_row,
                          const AnalyzedTweet& analyzed) const {
    return finish(raw_vector(dense_row, analyzed));
  }
  FeatureVector featurize(const TweetRecord& record, const Resources& resources) const;

  const FeatureConfig& config() const { return config_; }
  const PipelineOptions& options() const { return options_; }
  const std::optional<Vocabulary>& vocabulary() const { return vocabulary_; }
  const Scaler& scaler() const { return scaler_; }
  const std::optional<FeatureMask>& mask() const { return mask_; }
  const Layout& raw_layout() const { return layout_; }
  const std::string& resource_fingerprint() const { return resource_fingerprint_; }
  // Width of finish() output.
  std::size_t output_width() const;

  Json to_json() const;
  static FittedPipeline from_json(const Json& json);

 private:
  FeatureConfig config_;
  PipelineOptions options_;
  std::optional<Vocabulary> vocabulary_;
  Scaler scaler_;
  std::optional<FeatureMask> mask_;
  Layout layout_;
  std::string resource_fingerprint_;
};

}  // namespace tweetspam
