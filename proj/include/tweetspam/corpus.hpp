#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tweetspam/common/canonical_json.hpp"
#include "tweetspam/common/error.hpp"

namespace tweetspam {

using Timestamp = std::chrono::sys_seconds;

enum class Label { ham, spam, unlabeled };

std::string_view to_string(Label label);
std::optional<Label> parse_label(std::string_view text);

// Accepts YYYY-MM-DDTHH:MM:SS with optional fraction and a Z, +HH:MM or
// +HHMM offset (a space may replace the T). Returns nullopt when malformed.
std::optional<Timestamp> parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp ts);

struct UserMetadata {
  std::string profile_name;
  std::string profile_description;
  std::int64_t followings_count = 0;
  std::int64_t followers_count = 0;
  std::int64_t statuses_count = 0;
  Timestamp account_created_at{};
};

struct TweetRecord {
  std::string tweet_id;
  std::string user_id;
  std::string text;
  Timestamp created_at{};
  Label label = Label::unlabeled;
  UserMetadata user;
};

inline constexpr std::size_t kMaxTweetChars = 1000;

class CorpusError : public Error {
 public:
  enum class Kind {
    io,
    malformed_json,
    missing_field,
    invalid_value,
    malformed_timestamp,
    unknown_label,
    duplicate_id,
    conflicting_user_label,
    empty_corpus,
    unlabeled_record,
    class_too_small,
  };

  CorpusError(Kind kind, std::string message, std::size_t line = 0)
      : Error(line ? "line " + std::to_string(line) + ": " + message : message),
        kind_(kind),
        line_(line) {}

  Kind kind() const noexcept { return kind_; }
  // 1-based source line, 0 when not tied to a file line.
  std::size_t line() const noexcept { return line_; }

 private:
  Kind kind_;
  std::size_t line_;
};

// Parses one JSONL object into a record, validating every field.
TweetRecord record_from_json(const Json& object);
Json record_to_json(const TweetRecord& record);

class LabeledCorpus {
 public:
  LabeledCorpus() = default;

  // Validates id uniqueness, non-blank text, text length, metadata ranges,
  // account age and that no user appears under both spam and ham.
  explicit LabeledCorpus(std::vector<TweetRecord> records, std::size_t skipped_count = 0);

  const std::vector<TweetRecord>& records() const noexcept { return records_; }
  const TweetRecord& operator[](std::size_t i) const { return records_[i]; }
  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  const std::map<Label, std::size_t>& class_counts() const noexcept { return class_counts_; }
  std::size_t count(Label label) const;

  // Lines dropped by a lenient load.
  std::size_t skipped_count() const noexcept { return skipped_count_; }

  std::vector<Label> labels() const;

  // Throws unlabeled_record if any record lacks a gold label.
  void require_labeled() const;

  LabeledCorpus subset(std::span<const std::size_t> indices) const;

  // JSON Lines, one canonical object per record, in corpus order.
  std::string to_jsonl() const;

 private:
  std::vector<TweetRecord> records_;
  std::map<Label, std::size_t> class_counts_;
  std::size_t skipped_count_ = 0;
};

// Strict loads throw on the first invalid line; lenient loads skip invalid
// lines (including lines that would violate corpus invariants) and count them.
LabeledCorpus load_corpus(const std::filesystem::path& path, bool strict);
LabeledCorpus parse_corpus(std::string_view jsonl, bool strict);

// Keeps one uniformly chosen tweet per user. Users are visited in order of
// first appearance and the kept records stay in corpus order.
LabeledCorpus sample_one_per_user(const LabeledCorpus& corpus, std::uint64_t seed);

class FoldPlan {
 public:
  FoldPlan(std::size_t k, std::vector<std::size_t> assignments, std::uint64_t seed);

  std::size_t k() const noexcept { return k_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::vector<std::size_t>& assignments() const noexcept { return assignments_; }

  std::vector<std::size_t> test_indices(std::size_t fold) const;
  std::vector<std::size_t> train_indices(std::size_t fold) const;

 private:
  std::size_t k_;
  std::vector<std::size_t> assignments_;
  std::uint64_t seed_;
};

// Shuffles each class with the seeded generator and deals the records round
// robin, continuing the deal across classes so fold sizes stay within one.
FoldPlan stratified_kfold(std::span<const Label> labels, std::size_t k, std::uint64_t seed);
FoldPlan stratified_kfold(const LabeledCorpus& corpus, std::size_t k, std::uint64_t seed);

}  // namespace tweetspam
