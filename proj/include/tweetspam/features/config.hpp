#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tweetspam/common/error.hpp"

namespace tweetspam {

class FeatureError : public Error {
 public:
  using Error::Error;
};

enum class NgramOrders { uni_bi, bi_tri };
enum class Weighting { binary, tf, tfidf };

std::string_view to_string(NgramOrders orders);
std::string_view to_string(Weighting weighting);
// {1, 2} or {2, 3}.
std::vector<int> order_values(NgramOrders orders);

struct NgramSpec {
  NgramOrders orders = NgramOrders::uni_bi;
  Weighting weighting = Weighting::tf;

  bool operator==(const NgramSpec&) const = default;
};

// Which feature families make up a vector. Blocks always appear in the fixed
// order user | content | sentiment | ngram regardless of how they were listed.
struct FeatureConfig {
  bool user = false;
  bool content = false;
  bool sentiment = false;
  std::optional<NgramSpec> ngram;

  bool empty() const { return !user && !content && !sentiment && !ngram; }
  // Canonical comma-separated form, e.g. "user,ngram:bi+tri:tf".
  std::string to_string() const;

  bool operator==(const FeatureConfig&) const = default;
};

// Grammar: comma-separated tokens from {user, content, sentiment,
// ngram:<uni+bi|bi+tri>:<binary|tf|tfidf>}. Every problem is appended to
// `errors`; returns nullopt if there was any.
std::optional<FeatureConfig> parse_feature_config(std::string_view text,
                                                  std::vector<std::string>& errors);

// Throwing variant; the message joins all problems.
FeatureConfig parse_feature_config(std::string_view text);

}  // namespace tweetspam
