#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tweetspam/corpus.hpp"
#include "tweetspam/features/config.hpp"
#include "tweetspam/features/lexicons.hpp"
#include "tweetspam/features/vector.hpp"
#include "tweetspam/text.hpp"

namespace tweetspam {

inline constexpr std::size_t kUserFeatureCount = 11;
inline constexpr std::size_t kContentAttributeCount = 17;
inline constexpr std::size_t kPosFeatureCount = kPosTagCount + kPosTagCount * kPosTagCount;
inline constexpr std::size_t kContentFeatureCount = kContentAttributeCount + kPosFeatureCount;
inline constexpr std::size_t kSentimentFeatureCount = 5 * kLexiconCount;

struct UserFeatureBlock {
  enum Index {
    name_length,
    description_length,
    followings,
    followers,
    statuses,
    account_age_hours,
    followers_per_following,
    reputation,
    following_rate,
    tweets_per_day,
    tweets_per_week,
  };
  std::array<double, kUserFeatureCount> values{};

  static const std::array<std::string, kUserFeatureCount>& names();
  double operator[](Index i) const { return values[i]; }
};

struct ContentFeatureBlock {
  enum Index {
    words,
    characters,
    white_spaces,
    capitalized_words,
    capitalized_words_per_word,
    max_word_length,
    mean_word_length,
    exclamation_marks,
    question_marks,
    urls,
    urls_per_word,
    hashtags,
    hashtags_per_word,
    mentions,
    mentions_per_word,
    spam_words,
    spam_words_per_word,
  };
  // 17 attributes, then 13 tag unigram counts, then 13x13 skip-bigram counts
  // indexed first_tag * 13 + second_tag.
  std::array<double, kContentFeatureCount> values{};

  static const std::array<std::string, kContentFeatureCount>& names();
  double operator[](Index i) const { return values[i]; }
  double tag_count(PosTag tag) const;
  double pair_count(PosTag first, PosTag second) const;
};

struct SentimentFeatureBlock {
  // Per lexicon: positive count, negative count, net score, max score, last
  // matched score.
  std::array<double, kSentimentFeatureCount> values{};

  static const std::array<std::string, kSentimentFeatureCount>& names();
  double at(std::size_t lexicon, std::size_t field) const { return values[lexicon * 5 + field]; }
};

class UserFeatureError : public FeatureError {
 public:
  using FeatureError::FeatureError;
};

UserFeatureBlock user_features(const TweetRecord& record);

struct ContentOptions {
  bool spam_words = true;
  bool pos_counts = true;
};

// Throws FeatureError when tags and tokens are misaligned. Tags are ignored
// when options.pos_counts is false.
ContentFeatureBlock content_features(const NormalizedText& normalized,
                                     std::span<const Token> tokens, const TagSeq& tags,
                                     const SpamLexicon& spam_lexicon,
                                     ContentOptions options = {});

// Word-token surfaces lowercased, the unit spam phrases are matched against.
std::vector<std::string> lower_words(std::span<const Token> tokens);

// Expects tokens that already went through strip_for_sentiment.
SentimentFeatureBlock sentiment_features(std::span<const Token> stripped_tokens,
                                         const SentimentLexicons& lexicons);

struct FeatureBlocks {
  std::optional<UserFeatureBlock> user;
  std::optional<ContentFeatureBlock> content;
  std::optional<SentimentFeatureBlock> sentiment;
  std::optional<std::vector<SparseEntry>> ngram;
};

Layout make_layout(const FeatureConfig& config, std::size_t vocabulary_size);

// Concatenates blocks per layout. Throws FeatureError on any mismatch between
// the blocks supplied and the blocks the layout names.
FeatureVector assemble(const FeatureBlocks& blocks, const Layout& layout);

}  // namespace tweetspam
