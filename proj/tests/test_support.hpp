#pragma once

#include <filesystem>
#include <string>

#include <unistd.h>

#include "tweetspam/corpus.hpp"
#include "tweetspam/features/pipeline.hpp"

namespace tweetspam::testing {

inline const Resources& shipped_resources() {
  static const Resources r = Resources::load(TWEETSPAM_RESOURCE_DIR);
  return r;
}

inline std::filesystem::path data_path(const std::string& name) {
  return std::filesystem::path(TWEETSPAM_TEST_DATA) / name;
}

inline TweetRecord make_record(std::string id, std::string text, Label label = Label::ham,
                               std::string user_id = "") {
  TweetRecord r;
  r.tweet_id = id;
  r.user_id = user_id.empty() ? "user_" + id : std::move(user_id);
  r.text = std::move(text);
  r.label = label;
  r.created_at = *parse_timestamp("2015-06-01T12:00:00Z");
  r.user.profile_name = "name";
  r.user.profile_description = "description";
  r.user.followings_count = 100;
  r.user.followers_count = 50;
  r.user.statuses_count = 1000;
  r.user.account_created_at = *parse_timestamp("2014-06-01T12:00:00Z");
  return r;
}

// A fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("tweetspam_test_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace tweetspam::testing
