#include "tweetspam/features/blocks.hpp"

#include <algorithm>
#include <cctype>

#include "tweetspam/common/utf8.hpp"

namespace tweetspam {

namespace {

constexpr std::size_t kSentimentFields = kSentimentFeatureCount / kLexiconCount;
constexpr std::array<std::string_view, kSentimentFields> kSentimentFieldNames = {
    "positive", "negative", "net", "max", "last"};

// Skip-bigram distances.
constexpr std::size_t kMaxSkipDistance = 3;

double ratio(double numerator, double denominator) {
  return denominator == 0.0 ? 0.0 : numerator / denominator;
}

bool is_capitalized(std::string_view word) {
  bool any_alpha = false;
  for (unsigned char c : word) {
    if (c < 0x80 && std::isalpha(c)) {
      if (std::islower(c)) return false;
      any_alpha = true;
    }
  }
  return any_alpha;
}

}  // namespace

const std::array<std::string, kUserFeatureCount>& UserFeatureBlock::names() {
  static const std::array<std::string, kUserFeatureCount> names = {
      "name_length",       "description_length",      "followings",
      "followers",         "statuses",                "account_age_hours",
      "followers_per_following", "reputation",        "following_rate",
      "tweets_per_day",    "tweets_per_week"};
  return names;
}

const std::array<std::string, kContentFeatureCount>& ContentFeatureBlock::names() {
  static const auto names = [] {
    std::array<std::string, kContentFeatureCount> out = {
        "words",
        "characters",
        "white_spaces",
        "capitalized_words",
        "capitalized_words_per_word",
        "max_word_length",
        "mean_word_length",
        "exclamation_marks",
        "question_marks",
        "urls",
        "urls_per_word",
        "hashtags",
        "hashtags_per_word",
        "mentions",
        "mentions_per_word",
        "spam_words",
        "spam_words_per_word"};
    std::size_t i = kContentAttributeCount;
    for (std::size_t t = 0; t < kPosTagCount; ++t) {
      out[i++] = "pos_" + std::string(symbol(static_cast<PosTag>(t)));
    }
    for (std::size_t a = 0; a < kPosTagCount; ++a) {
      for (std::size_t b = 0; b < kPosTagCount; ++b) {
        out[i++] = "pos_" + std::string(symbol(static_cast<PosTag>(a))) + "_" +
                   std::string(symbol(static_cast<PosTag>(b)));
      }
    }
    return out;
  }();
  return names;
}

double ContentFeatureBlock::tag_count(PosTag tag) const {
  return values[kContentAttributeCount + static_cast<std::size_t>(tag)];
}

double ContentFeatureBlock::pair_count(PosTag first, PosTag second) const {
  return values[kContentAttributeCount + kPosTagCount +
                static_cast<std::size_t>(first) * kPosTagCount + static_cast<std::size_t>(second)];
}

const std::array<std::string, kSentimentFeatureCount>& SentimentFeatureBlock::names() {
  static const auto names = [] {
    std::array<std::string, kSentimentFeatureCount> out;
    for (std::size_t l = 0; l < kLexiconCount; ++l) {
      for (std::size_t f = 0; f < kSentimentFields; ++f) {
        out[l * kSentimentFields + f] =
            std::string(kLexiconNames[l]) + "_" + std::string(kSentimentFieldNames[f]);
      }
    }
    return out;
  }();
  return names;
}

UserFeatureBlock user_features(const TweetRecord& record) {
  const auto& user = record.user;
  const auto age_seconds = (record.created_at - user.account_created_at).count();
  if (age_seconds < 0) {
    throw UserFeatureError("tweet " + record.tweet_id + " predates its account creation");
  }
  const double au = static_cast<double>(age_seconds) / 3600.0;
  const double fi = static_cast<double>(user.followings_count);
  const double fe = static_cast<double>(user.followers_count);
  const double statuses = static_cast<double>(user.statuses_count);

  UserFeatureBlock block;
  auto& v = block.values;
  v[UserFeatureBlock::name_length] = static_cast<double>(utf8::length(user.profile_name));
  v[UserFeatureBlock::description_length] =
      static_cast<double>(utf8::length(user.profile_description));
  v[UserFeatureBlock::followings] = fi;
  v[UserFeatureBlock::followers] = fe;
  v[UserFeatureBlock::statuses] = statuses;
  v[UserFeatureBlock::account_age_hours] = au;
  v[UserFeatureBlock::followers_per_following] = ratio(fe, fi);
  v[UserFeatureBlock::reputation] = ratio(fe, fi + fe);
  v[UserFeatureBlock::following_rate] = ratio(fi, au);
  v[UserFeatureBlock::tweets_per_day] = au == 0.0 ? 0.0 : statuses / (au / 24.0);
  v[UserFeatureBlock::tweets_per_week] = au == 0.0 ? 0.0 : statuses / (au / 168.0);
  return block;
}

std::vector<std::string> lower_words(std::span<const Token> tokens) {
  std::vector<std::string> words;
  for (const auto& token : tokens) {
    if (token.kind == TokenKind::word) words.push_back(utf8::ascii_lower(token.surface));
  }
  return words;
}

ContentFeatureBlock content_features(const NormalizedText& normalized,
                                     std::span<const Token> tokens, const TagSeq& tags,
                                     const SpamLexicon& spam_lexicon, ContentOptions options) {
  if (options.pos_counts && tags.size() != tokens.size()) {
    throw FeatureError("tag sequence has " + std::to_string(tags.size()) + " tags for " +
                       std::to_string(tokens.size()) + " tokens");
  }
  ContentFeatureBlock block;
  auto& v = block.values;
  const std::string& text = normalized.text;

  double words = 0, capitalized = 0, max_len = 0, total_len = 0;
  double urls = 0, hashtags = 0, mentions = 0;
  for (const auto& token : tokens) {
    switch (token.kind) {
      case TokenKind::word: {
        words += 1;
        if (is_capitalized(token.surface)) capitalized += 1;
        const auto len = static_cast<double>(utf8::length(token.surface));
        max_len = std::max(max_len, len);
        total_len += len;
        break;
      }
      case TokenKind::url: urls += 1; break;
      case TokenKind::hashtag: hashtags += 1; break;
      case TokenKind::mention: mentions += 1; break;
      default: break;
    }
  }

  v[ContentFeatureBlock::words] = words;
  v[ContentFeatureBlock::characters] = static_cast<double>(utf8::length(text));
  v[ContentFeatureBlock::white_spaces] = static_cast<double>(std::count(text.begin(), text.end(), ' '));
  v[ContentFeatureBlock::capitalized_words] = capitalized;
  v[ContentFeatureBlock::capitalized_words_per_word] = ratio(capitalized, words);
  v[ContentFeatureBlock::max_word_length] = max_len;
  v[ContentFeatureBlock::mean_word_length] = ratio(total_len, words);
  v[ContentFeatureBlock::exclamation_marks] = static_cast<double>(std::count(text.begin(), text.end(), '!'));
  v[ContentFeatureBlock::question_marks] = static_cast<double>(std::count(text.begin(), text.end(), '?'));
  v[ContentFeatureBlock::urls] = urls;
  v[ContentFeatureBlock::urls_per_word] = ratio(urls, words);
  v[ContentFeatureBlock::hashtags] = hashtags;
  v[ContentFeatureBlock::hashtags_per_word] = ratio(hashtags, words);
  v[ContentFeatureBlock::mentions] = mentions;
  v[ContentFeatureBlock::mentions_per_word] = ratio(mentions, words);

  if (options.spam_words) {
    const auto spam = static_cast<double>(spam_lexicon.count_matches(lower_words(tokens)));
    v[ContentFeatureBlock::spam_words] = spam;
    v[ContentFeatureBlock::spam_words_per_word] = ratio(spam, words);
  }

  if (options.pos_counts) {
    const auto& seq = tags.tags;
    double* unigrams = v.data() + kContentAttributeCount;
    double* pairs = unigrams + kPosTagCount;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      const auto a = static_cast<std::size_t>(seq[i]);
      unigrams[a] += 1;
      for (std::size_t d = 1; d <= kMaxSkipDistance && i + d < seq.size(); ++d) {
        pairs[a * kPosTagCount + static_cast<std::size_t>(seq[i + d])] += 1;
      }
    }
  }
  return block;
}

SentimentFeatureBlock sentiment_features(std::span<const Token> stripped_tokens,
                                         const SentimentLexicons& lexicons) {
  SentimentFeatureBlock block;
  std::vector<std::string> lowered;
  lowered.reserve(stripped_tokens.size());
  for (const auto& token : stripped_tokens) lowered.push_back(utf8::ascii_lower(token.surface));

  for (std::size_t l = 0; l < kLexiconCount; ++l) {
    double positive = 0, negative = 0, net = 0, last = 0;
    bool matched = false;
    double max_score = 0;
    for (const auto& token : lowered) {
      const double* score = lexicons.lexicons[l].find(token);
      if (!score) continue;
      if (*score > 0) positive += 1;
      if (*score < 0) negative += 1;
      net += *score;
      max_score = matched ? std::max(max_score, *score) : *score;
      last = *score;
      matched = true;
    }
    double* out = block.values.data() + l * kSentimentFields;
    out[0] = positive;
    out[1] = negative;
    out[2] = net;
    out[3] = max_score;
    out[4] = last;
  }
  return block;
}

Layout make_layout(const FeatureConfig& config, std::size_t vocabulary_size) {
  Layout layout;
  auto add_dense = [&](std::string name, std::size_t width) {
    layout.blocks.push_back({std::move(name), layout.dense_width, width, false});
    layout.dense_width += width;
  };
  if (config.user) add_dense("user", kUserFeatureCount);
  if (config.content) add_dense("content", kContentFeatureCount);
  if (config.sentiment) add_dense("sentiment", kSentimentFeatureCount);
  if (config.ngram) {
    layout.blocks.push_back({"ngram", layout.dense_width, vocabulary_size, true});
    layout.sparse_width = vocabulary_size;
  }
  return layout;
}

FeatureVector assemble(const FeatureBlocks& blocks, const Layout& layout) {
  FeatureVector out;
  out.dense.reserve(layout.dense_width);
  bool used_user = false, used_content = false, used_sentiment = false, used_ngram = false;
  for (const auto& span : layout.blocks) {
    auto missing = [&]() { return FeatureError("layout expects a " + span.name + " block"); };
    if (span.name == "user") {
      if (!blocks.user) throw missing();
      out.dense.insert(out.dense.end(), blocks.user->values.begin(), blocks.user->values.end());
      used_user = true;
    } else if (span.name == "content") {
      if (!blocks.content) throw missing();
      out.dense.insert(out.dense.end(), blocks.content->values.begin(),
                       blocks.content->values.end());
      used_content = true;
    } else if (span.name == "sentiment") {
      if (!blocks.sentiment) throw missing();
      out.dense.insert(out.dense.end(), blocks.sentiment->values.begin(),
                       blocks.sentiment->values.end());
      used_sentiment = true;
    } else if (span.name == "ngram") {
      if (!blocks.ngram) throw missing();
      std::uint32_t previous = 0;
      for (std::size_t i = 0; i < blocks.ngram->size(); ++i) {
        const auto& e = (*blocks.ngram)[i];
        if (e.column >= span.width || (i > 0 && e.column <= previous)) {
          throw FeatureError("n-gram entries out of order or beyond the vocabulary");
        }
        previous = e.column;
      }
      out.sparse = *blocks.ngram;
      out.sparse_width = span.width;
      used_ngram = true;
    } else {
      throw FeatureError("unknown block '" + span.name + "' in layout");
    }
    if (!span.sparse && out.dense.size() != span.offset + span.width) {
      throw FeatureError("block " + span.name + " does not match its layout width");
    }
  }
  if ((blocks.user && !used_user) || (blocks.content && !used_content) ||
      (blocks.sentiment && !used_sentiment) || (blocks.ngram && !used_ngram)) {
    throw FeatureError("feature blocks supplied that the layout does not include");
  }
  return out;
}

}  // namespace tweetspam
