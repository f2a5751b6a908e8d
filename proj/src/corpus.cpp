#include "tweetspam/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <unordered_map>
#include <unordered_set>

#include "tweetspam/common/files.hpp"
#include "tweetspam/common/rng.hpp"
#include "tweetspam/common/utf8.hpp"

namespace tweetspam {

std::string_view to_string(Label label) {
  switch (label) {
    case Label::spam:
      return "spam";
    case Label::ham:
      return "ham";
    case Label::unlabeled:
      return "unlabeled";
  }
  return "unlabeled";
}

std::optional<Label> parse_label(std::string_view text) {
  if (text == "spam") return Label::spam;
  if (text == "ham") return Label::ham;
  return std::nullopt;
}

namespace {

bool read_digits(std::string_view text, std::size_t& pos, std::size_t count, int& value) {
  if (pos + count > text.size()) return false;
  value = 0;
  for (std::size_t i = 0; i < count; ++i) {
    char c = text[pos + i];
    if (c < '0' || c > '9') return false;
    value = value * 10 + (c - '0');
  }
  pos += count;
  return true;
}

bool expect(std::string_view text, std::size_t& pos, char c) {
  if (pos >= text.size() || text[pos] != c) return false;
  ++pos;
  return true;
}

}  // namespace

std::optional<Timestamp> parse_timestamp(std::string_view text) {
  using namespace std::chrono;
  std::size_t pos = 0;
  int y, mo, d, h, mi, s;
  if (!read_digits(text, pos, 4, y) || !expect(text, pos, '-') || !read_digits(text, pos, 2, mo) ||
      !expect(text, pos, '-') || !read_digits(text, pos, 2, d)) {
    return std::nullopt;
  }
  if (pos >= text.size() || (text[pos] != 'T' && text[pos] != ' ')) return std::nullopt;
  ++pos;
  if (!read_digits(text, pos, 2, h) || !expect(text, pos, ':') || !read_digits(text, pos, 2, mi) ||
      !expect(text, pos, ':') || !read_digits(text, pos, 2, s)) {
    return std::nullopt;
  }
  if (pos < text.size() && text[pos] == '.') {
    ++pos;
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) return std::nullopt;
  }
  int offset_minutes = 0;
  if (pos < text.size() && text[pos] == 'Z') {
    ++pos;
  } else if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    int sign = text[pos] == '-' ? -1 : 1;
    ++pos;
    int oh, om;
    if (!read_digits(text, pos, 2, oh)) return std::nullopt;
    if (pos < text.size() && text[pos] == ':') ++pos;
    if (!read_digits(text, pos, 2, om)) return std::nullopt;
    if (oh > 23 || om > 59) return std::nullopt;
    offset_minutes = sign * (oh * 60 + om);
  } else {
    return std::nullopt;
  }
  if (pos != text.size()) return std::nullopt;
  if (h > 23 || mi > 59 || s > 60) return std::nullopt;
  year_month_day date{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
  if (!date.ok()) return std::nullopt;
  auto tp = sys_days{date} + hours{h} + minutes{mi} + seconds{s} - minutes{offset_minutes};
  return time_point_cast<seconds>(tp);
}

std::string format_timestamp(Timestamp ts) {
  using namespace std::chrono;
  auto day_point = floor<days>(ts);
  year_month_day date{day_point};
  hh_mm_ss clock{ts - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()),
                static_cast<int>(clock.hours().count()), static_cast<int>(clock.minutes().count()),
                static_cast<int>(clock.seconds().count()));
  return buf;
}

namespace {

using Kind = CorpusError::Kind;

const Json& require_field(const Json& object, const char* name, const char* context) {
  auto it = object.find(name);
  if (it == object.end() || it->is_null()) {
    throw CorpusError(Kind::missing_field, std::string("missing field '") + context + name + "'");
  }
  return *it;
}

std::string require_string(const Json& object, const char* name, const char* context,
                           bool allow_missing = false) {
  auto it = object.find(name);
  if (it == object.end() || it->is_null()) {
    if (allow_missing) return {};
    throw CorpusError(Kind::missing_field, std::string("missing field '") + context + name + "'");
  }
  if (!it->is_string()) {
    throw CorpusError(Kind::invalid_value,
                      std::string("field '") + context + name + "' must be a string");
  }
  return it->get<std::string>();
}

std::int64_t require_count(const Json& object, const char* name) {
  const Json& value = require_field(object, name, "user.");
  if (!value.is_number_integer()) {
    throw CorpusError(Kind::invalid_value,
                      std::string("field 'user.") + name + "' must be an integer");
  }
  if (value.is_number_unsigned()) return static_cast<std::int64_t>(value.get<std::uint64_t>());
  std::int64_t count = value.get<std::int64_t>();
  if (count < 0) {
    throw CorpusError(Kind::invalid_value, std::string("field 'user.") + name + "' is negative");
  }
  return count;
}

Timestamp require_timestamp(const Json& object, const char* name, const char* context) {
  std::string text = require_string(object, name, context);
  auto ts = parse_timestamp(text);
  if (!ts) {
    throw CorpusError(Kind::malformed_timestamp,
                      std::string("malformed timestamp in '") + context + name + "': " + text);
  }
  return *ts;
}

bool is_blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(),
                     [](unsigned char c) { return std::isspace(c) != 0; });
}

// Record-level checks shared by the loader and the corpus constructor.
void check_record(const TweetRecord& r) {
  if (r.tweet_id.empty()) throw CorpusError(Kind::invalid_value, "empty tweet_id");
  if (r.user_id.empty()) throw CorpusError(Kind::invalid_value, "empty user_id");
  if (is_blank(r.text)) {
    throw CorpusError(Kind::invalid_value, "tweet " + r.tweet_id + " has blank text");
  }
  if (utf8::length(r.text) > kMaxTweetChars) {
    throw CorpusError(Kind::invalid_value, "tweet " + r.tweet_id + " text exceeds " +
                                               std::to_string(kMaxTweetChars) + " characters");
  }
  if (r.user.followers_count < 0 || r.user.followings_count < 0 || r.user.statuses_count < 0) {
    throw CorpusError(Kind::invalid_value, "tweet " + r.tweet_id + " has negative user counts");
  }
  if (r.user.account_created_at > r.created_at) {
    throw CorpusError(Kind::invalid_value,
                      "tweet " + r.tweet_id + " predates its author's account creation");
  }
}

// Tracks corpus-level invariants while records are appended.
class CorpusChecker {
 public:
  void check(const TweetRecord& r) const {
    check_record(r);
    if (ids_.count(r.tweet_id)) {
      throw CorpusError(Kind::duplicate_id, "duplicate tweet_id " + r.tweet_id);
    }
    if (r.label != Label::unlabeled) {
      auto it = user_labels_.find(r.user_id);
      if (it != user_labels_.end() && it->second != r.label) {
        throw CorpusError(Kind::conflicting_user_label,
                          "user " + r.user_id + " appears with both spam and ham labels");
      }
    }
  }

  void add(const TweetRecord& r) {
    ids_.insert(r.tweet_id);
    if (r.label != Label::unlabeled) user_labels_.emplace(r.user_id, r.label);
  }

 private:
  std::unordered_set<std::string> ids_;
  std::unordered_map<std::string, Label> user_labels_;
};

}  // namespace

TweetRecord record_from_json(const Json& object) {
  if (!object.is_object()) throw CorpusError(Kind::malformed_json, "line is not a JSON object");
  TweetRecord r;
  r.tweet_id = require_string(object, "tweet_id", "");
  r.user_id = require_string(object, "user_id", "");
  r.text = require_string(object, "text", "");
  r.created_at = require_timestamp(object, "created_at", "");
  auto label = object.find("label");
  if (label != object.end() && !label->is_null()) {
    if (!label->is_string()) throw CorpusError(Kind::unknown_label, "label must be a string");
    auto parsed = parse_label(label->get<std::string>());
    if (!parsed) {
      throw CorpusError(Kind::unknown_label, "unknown label '" + label->get<std::string>() + "'");
    }
    r.label = *parsed;
  }
  const Json& user = require_field(object, "user", "");
  if (!user.is_object()) throw CorpusError(Kind::invalid_value, "field 'user' must be an object");
  r.user.profile_name = require_string(user, "name", "user.");
  r.user.profile_description = require_string(user, "description", "user.", true);
  r.user.followers_count = require_count(user, "followers_count");
  r.user.followings_count = require_count(user, "followings_count");
  r.user.statuses_count = require_count(user, "statuses_count");
  r.user.account_created_at = require_timestamp(user, "created_at", "user.");
  return r;
}

Json record_to_json(const TweetRecord& r) {
  Json object = {
      {"tweet_id", r.tweet_id},
      {"user_id", r.user_id},
      {"text", r.text},
      {"created_at", format_timestamp(r.created_at)},
      {"user",
       {{"name", r.user.profile_name},
        {"description", r.user.profile_description},
        {"followers_count", r.user.followers_count},
        {"followings_count", r.user.followings_count},
        {"statuses_count", r.user.statuses_count},
        {"created_at", format_timestamp(r.user.account_created_at)}}},
  };
  if (r.label != Label::unlabeled) object["label"] = std::string(to_string(r.label));
  return object;
}

LabeledCorpus::LabeledCorpus(std::vector<TweetRecord> records, std::size_t skipped_count)
    : records_(std::move(records)), skipped_count_(skipped_count) {
  CorpusChecker checker;
  for (const auto& r : records_) {
    checker.check(r);
    checker.add(r);
    ++class_counts_[r.label];
  }
}

std::size_t LabeledCorpus::count(Label label) const {
  auto it = class_counts_.find(label);
  return it == class_counts_.end() ? 0 : it->second;
}

std::vector<Label> LabeledCorpus::labels() const {
  std::vector<Label> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.label);
  return out;
}

void LabeledCorpus::require_labeled() const {
  for (const auto& r : records_) {
    if (r.label == Label::unlabeled) {
      throw CorpusError(Kind::unlabeled_record, "tweet " + r.tweet_id + " has no gold label");
    }
  }
}

LabeledCorpus LabeledCorpus::subset(std::span<const std::size_t> indices) const {
  std::vector<TweetRecord> picked;
  picked.reserve(indices.size());
  for (std::size_t i : indices) picked.push_back(records_.at(i));
  return LabeledCorpus(std::move(picked));
}

std::string LabeledCorpus::to_jsonl() const {
  std::string out;
  for (const auto& r : records_) {
    out += canonical_dump(record_to_json(r));
    out.push_back('\n');
  }
  return out;
}

LabeledCorpus parse_corpus(std::string_view jsonl, bool strict) {
  std::vector<TweetRecord> records;
  CorpusChecker checker;
  std::size_t skipped = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < jsonl.size()) {
    std::size_t end = jsonl.find('\n', pos);
    if (end == std::string_view::npos) end = jsonl.size();
    std::string_view line = jsonl.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (is_blank(line)) continue;
    try {
      Json object;
      try {
        object = Json::parse(line);
      } catch (const Json::parse_error& e) {
        throw CorpusError(Kind::malformed_json, std::string("malformed JSON: ") + e.what());
      }
      TweetRecord record = record_from_json(object);
      checker.check(record);
      checker.add(record);
      records.push_back(std::move(record));
    } catch (const CorpusError& e) {
      if (strict) throw CorpusError(e.kind(), e.what(), line_no);
      ++skipped;
    }
  }
  return LabeledCorpus(std::move(records), skipped);
}

LabeledCorpus load_corpus(const std::filesystem::path& path, bool strict) {
  std::string contents;
  try {
    contents = read_file(path);
  } catch (const Error& e) {
    throw CorpusError(Kind::io, e.what());
  }
  return parse_corpus(contents, strict);
}

LabeledCorpus sample_one_per_user(const LabeledCorpus& corpus, std::uint64_t seed) {
  if (corpus.empty()) throw CorpusError(Kind::empty_corpus, "cannot sample an empty corpus");
  std::vector<std::string_view> user_order;
  std::unordered_map<std::string_view, std::vector<std::size_t>> by_user;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto [it, inserted] = by_user.try_emplace(corpus[i].user_id);
    if (inserted) user_order.push_back(corpus[i].user_id);
    it->second.push_back(i);
  }
  Rng rng(seed);
  std::vector<std::size_t> kept;
  kept.reserve(user_order.size());
  for (auto user : user_order) {
    const auto& tweets = by_user[user];
    kept.push_back(tweets[rng.uniform_index(tweets.size())]);
  }
  std::sort(kept.begin(), kept.end());
  return corpus.subset(kept);
}

FoldPlan::FoldPlan(std::size_t k, std::vector<std::size_t> assignments, std::uint64_t seed)
    : k_(k), assignments_(std::move(assignments)), seed_(seed) {
  if (k_ < 2) throw Error("fold count must be >= 2");
  for (std::size_t f : assignments_) {
    if (f >= k_) throw Error("fold assignment out of range");
  }
}

std::vector<std::size_t> FoldPlan::test_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments_.size(); ++i) {
    if (assignments_[i] == fold) out.push_back(i);
  }
  return out;
}

std::vector<std::size_t> FoldPlan::train_indices(std::size_t fold) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < assignments_.size(); ++i) {
    if (assignments_[i] != fold) out.push_back(i);
  }
  return out;
}

FoldPlan stratified_kfold(std::span<const Label> labels, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw CorpusError(Kind::class_too_small, "fold count must be >= 2");
  std::vector<std::size_t> spam, ham;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    switch (labels[i]) {
      case Label::spam:
        spam.push_back(i);
        break;
      case Label::ham:
        ham.push_back(i);
        break;
      case Label::unlabeled:
        throw CorpusError(Kind::unlabeled_record,
                          "record " + std::to_string(i) + " has no gold label");
    }
  }
  for (auto* members : {&spam, &ham}) {
    if (members->size() < k) {
      throw CorpusError(Kind::class_too_small,
                        std::string("class '") + (members == &spam ? "spam" : "ham") + "' has " +
                            std::to_string(members->size()) + " records, fewer than k=" +
                            std::to_string(k));
    }
  }
  Rng rng(seed);
  rng.shuffle(spam);
  rng.shuffle(ham);
  std::vector<std::size_t> assignments(labels.size(), 0);
  std::size_t next_fold = 0;
  for (const auto* members : {&spam, &ham}) {
    for (std::size_t i : *members) {
      assignments[i] = next_fold;
      next_fold = (next_fold + 1) % k;
    }
  }
  return FoldPlan(k, std::move(assignments), seed);
}

FoldPlan stratified_kfold(const LabeledCorpus& corpus, std::size_t k, std::uint64_t seed) {
  auto labels = corpus.labels();
  return stratified_kfold(labels, k, seed);
}

}  // namespace tweetspam
