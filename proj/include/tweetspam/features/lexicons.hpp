#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace tweetspam {

// token -> signed score. Keys are stored lowercase.
class SentimentLexicon {
 public:
  SentimentLexicon() = default;
  SentimentLexicon(std::string name, std::unordered_map<std::string, double> scores);

  static SentimentLexicon parse(std::string name, std::string_view tsv);

  const std::string& name() const { return name_; }
  const std::unordered_map<std::string, double>& scores() const { return scores_; }
  // Lookup of an already lowercased token.
  const double* find(const std::string& lower) const;
  std::size_t size() const { return scores_.size(); }

  std::string canonical_form() const;

 private:
  std::string name_;
  std::unordered_map<std::string, double> scores_;
};

inline constexpr std::size_t kLexiconCount = 5;
// File stems, in feature-block order.
inline constexpr std::array<std::string_view, kLexiconCount> kLexiconNames = {
    "afinn", "bingliu", "mpqa", "nrc_hashtag", "s140"};

struct SentimentLexicons {
  std::array<SentimentLexicon, kLexiconCount> lexicons;

  static SentimentLexicons load(const std::filesystem::path& dir);
};

// Lowercase phrases matched as contiguous runs of word tokens.
class SpamLexicon {
 public:
  SpamLexicon() = default;
  explicit SpamLexicon(const std::vector<std::string>& phrases);

  static SpamLexicon parse(std::string_view text);
  static SpamLexicon load(const std::filesystem::path& path);

  // Counts (start, phrase) matches, overlaps included. `lower_words` are the
  // lowercased word-token surfaces in order.
  std::size_t count_matches(const std::vector<std::string>& lower_words) const;

  std::size_t size() const { return phrases_.size(); }
  // Normalised phrases (lowercase, single spaces), sorted.
  std::vector<std::string> phrases() const;
  std::size_t max_words() const { return max_words_; }
  std::string canonical_form() const;

 private:
  std::unordered_set<std::string> phrases_;
  std::size_t max_words_ = 0;
};

}  // namespace tweetspam
