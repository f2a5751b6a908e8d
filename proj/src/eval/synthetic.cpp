#include "tweetspam/eval/synthetic.hpp"

#include <array>
#include <chrono>
#include <string_view>

#include "tweetspam/common/error.hpp"
#include "tweetspam/common/rng.hpp"

namespace tweetspam {

namespace {

constexpr std::array<std::string_view, 72> kBenignWords = {
    "coffee",  "morning", "today",    "really",  "great",   "game",    "friends", "weekend",
    "lunch",   "working", "school",   "music",   "movie",   "watching", "tonight", "family",
    "happy",   "birthday", "love",    "new",     "book",    "reading", "walk",    "dog",
    "park",    "rain",    "sunny",    "weather", "train",   "late",    "again",   "team",
    "season",  "finally", "home",     "dinner",  "cooking", "pizza",   "tired",   "sleep",
    "class",   "exam",    "study",    "office",  "meeting", "project", "city",    "trip",
    "beach",   "summer",  "holiday",  "photo",   "song",    "album",   "show",    "episode",
    "tomorrow", "week",   "the",      "a",       "with",    "my",      "and",     "is",
    "so",      "just",    "at",       "for",     "this",    "we",      "our",     "was"};

constexpr std::array<std::string_view, 8> kDescriptions = {
    "coffee lover and runner", "student", "dad of two", "music and movies",
    "", "writer in progress", "football fan", "photographer"};

constexpr std::array<std::string_view, 6> kHashtags = {"#monday", "#music", "#fun",
                                                       "#weekend", "#food", "#travel"};

std::string url(Rng& rng) {
  static constexpr std::string_view alphabet = "abcdefghijklmnopqrstuvwxyz0123456789";
  std::string out = "http://t.co/";
  for (int i = 0; i < 8; ++i) out.push_back(alphabet[rng.uniform_index(alphabet.size())]);
  return out;
}

std::string word(Rng& rng) { return std::string(kBenignWords[rng.uniform_index(kBenignWords.size())]); }

std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng.uniform_index(static_cast<std::size_t>(hi - lo + 1)));
}

TweetRecord make_record(Rng& rng, bool spam, std::size_t serial,
                        std::span<const std::string> spam_phrases,
                        const PlantedSignalOptions& options) {
  using std::chrono::hours;
  using std::chrono::seconds;
  const Timestamp epoch = std::chrono::sys_days{std::chrono::year{2013} / 6 / 1};

  TweetRecord r;
  r.tweet_id = "synthetic-" + std::to_string(serial);
  r.user_id = "user-" + std::to_string(serial);
  r.label = spam ? Label::spam : Label::ham;
  r.created_at = epoch + seconds(uniform_int(rng, 0, 30 * 24 * 3600));

  std::vector<std::string> words;
  const std::size_t length = spam ? uniform_int(rng, 4, 10) : uniform_int(rng, 6, 14);
  for (std::size_t i = 0; i < length; ++i) words.push_back(word(rng));
  words.front()[0] = static_cast<char>(words.front()[0] - 'a' + 'A');

  if (spam) {
    if (!spam_phrases.empty() && rng.bernoulli(options.phrase_probability)) {
      const auto& phrase = spam_phrases[rng.uniform_index(spam_phrases.size())];
      words.insert(words.begin() + static_cast<std::ptrdiff_t>(rng.uniform_index(words.size() + 1)),
                   phrase);
    }
    if (rng.bernoulli(0.3)) words.push_back("NOW!!");
    if (rng.bernoulli(options.url_probability)) words.push_back(url(rng));
    r.user.followings_count = uniform_int(rng, 1000, 5000);
    r.user.followers_count = uniform_int(rng, 0, 40);
    r.user.statuses_count = uniform_int(rng, 10, 3000);
    r.user.account_created_at = r.created_at - hours(uniform_int(rng, 1, 60 * 24));
  } else {
    if (rng.bernoulli(0.15)) words.push_back(std::string(kHashtags[rng.uniform_index(kHashtags.size())]));
    if (rng.bernoulli(0.1)) words.insert(words.begin(), "@friend" + std::to_string(rng.uniform_index(50)));
    words.back() += rng.bernoulli(0.2) ? "?" : ".";
    if (rng.bernoulli(options.ham_url_probability)) words.push_back(url(rng));
    r.user.followings_count = uniform_int(rng, 50, 2000);
    r.user.followers_count = uniform_int(rng, 50, 2000);
    r.user.statuses_count = uniform_int(rng, 100, 20000);
    r.user.account_created_at = r.created_at - hours(uniform_int(rng, 200 * 24, 4 * 365 * 24));
  }
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) r.text.push_back(' ');
    r.text += words[i];
  }
  r.user.profile_name = "User " + std::to_string(serial);
  r.user.profile_description = std::string(kDescriptions[rng.uniform_index(kDescriptions.size())]);
  return r;
}

}  // namespace

LabeledCorpus planted_signal_corpus(const PlantedSignalOptions& options,
                                    std::span<const std::string> spam_phrases) {
  if (options.ham + options.spam == 0) throw Error("synthetic corpus must not be empty");
  Rng rng(options.seed);
  std::vector<char> is_spam(options.ham, 0);
  is_spam.insert(is_spam.end(), options.spam, 1);
  rng.shuffle(is_spam);
  std::vector<TweetRecord> records;
  records.reserve(is_spam.size());
  for (std::size_t i = 0; i < is_spam.size(); ++i) {
    records.push_back(make_record(rng, is_spam[i] != 0, i, spam_phrases, options));
  }
  return LabeledCorpus(std::move(records));
}

}  // namespace tweetspam
