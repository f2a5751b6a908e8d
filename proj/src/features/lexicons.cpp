#include "tweetspam/features/lexicons.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>

#include "tweetspam/common/error.hpp"
#include "tweetspam/common/resource_file.hpp"
#include "tweetspam/common/utf8.hpp"

namespace tweetspam {

SentimentLexicon::SentimentLexicon(std::string name, std::unordered_map<std::string, double> scores)
    : name_(std::move(name)) {
  for (auto& [token, score] : scores) scores_[utf8::ascii_lower(token)] = score;
}

SentimentLexicon SentimentLexicon::parse(std::string name, std::string_view tsv) {
  std::unordered_map<std::string, double> scores;
  for (const auto& [token, value] : parse_tsv(tsv, name + ".tsv")) {
    double score = 0.0;
    auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), score);
    if (ec != std::errc() || end != value.data() + value.size() || !std::isfinite(score)) {
      throw ResourceError(name + ".tsv: invalid score '" + value + "' for '" + token + "'");
    }
    scores[token] = score;
  }
  return SentimentLexicon(std::move(name), std::move(scores));
}

const double* SentimentLexicon::find(const std::string& lower) const {
  auto it = scores_.find(lower);
  return it == scores_.end() ? nullptr : &it->second;
}

std::string SentimentLexicon::canonical_form() const {
  std::string out = name_ + '\n';
  char buf[40];
  for (const auto& [token, score] : std::map(scores_.begin(), scores_.end())) {
    std::snprintf(buf, sizeof buf, "%.17g", score);
    out += token + '\t' + buf + '\n';
  }
  return out;
}

SentimentLexicons SentimentLexicons::load(const std::filesystem::path& dir) {
  SentimentLexicons out;
  for (std::size_t i = 0; i < kLexiconCount; ++i) {
    std::string name(kLexiconNames[i]);
    out.lexicons[i] = SentimentLexicon::parse(name, read_resource(dir / (name + ".tsv")));
  }
  return out;
}

namespace {

std::vector<std::string> split_words(std::string_view phrase) {
  std::vector<std::string> words;
  std::size_t i = 0;
  while (i < phrase.size()) {
    while (i < phrase.size() && (phrase[i] == ' ' || phrase[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < phrase.size() && phrase[i] != ' ' && phrase[i] != '\t') ++i;
    if (i > start) words.push_back(utf8::ascii_lower(phrase.substr(start, i - start)));
  }
  return words;
}

}  // namespace

SpamLexicon::SpamLexicon(const std::vector<std::string>& phrases) {
  for (const auto& phrase : phrases) {
    auto words = split_words(phrase);
    if (words.empty()) continue;
    std::string key = words.front();
    for (std::size_t i = 1; i < words.size(); ++i) key += ' ' + words[i];
    max_words_ = std::max(max_words_, words.size());
    phrases_.insert(std::move(key));
  }
}

SpamLexicon SpamLexicon::parse(std::string_view text) { return SpamLexicon(resource_lines(text)); }

SpamLexicon SpamLexicon::load(const std::filesystem::path& path) {
  return parse(read_resource(path));
}

std::size_t SpamLexicon::count_matches(const std::vector<std::string>& lower_words) const {
  if (phrases_.empty()) return 0;
  std::size_t matches = 0;
  std::string key;
  for (std::size_t start = 0; start < lower_words.size(); ++start) {
    key.clear();
    std::size_t longest = std::min(max_words_, lower_words.size() - start);
    for (std::size_t len = 1; len <= longest; ++len) {
      if (len > 1) key.push_back(' ');
      key += lower_words[start + len - 1];
      if (phrases_.count(key)) ++matches;
    }
  }
  return matches;
}

std::vector<std::string> SpamLexicon::phrases() const {
  std::vector<std::string> sorted(phrases_.begin(), phrases_.end());
  std::sort(sorted.begin(), sorted.end());
  return sorted;
}

std::string SpamLexicon::canonical_form() const {
  std::string out = "spamwords\n";
  for (const auto& p : phrases()) out += p + '\n';
  return out;
}

}  // namespace tweetspam
