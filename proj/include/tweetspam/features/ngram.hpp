#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "tweetspam/common/canonical_json.hpp"
#include "tweetspam/features/config.hpp"
#include "tweetspam/features/vector.hpp"
#include "tweetspam/text.hpp"

namespace tweetspam {

// Lowercased word, hashtag, mention and url tokens with urls replaced by
// "<url>"; n-grams are formed over this sequence.
std::vector<std::string> ngram_units(std::span<const Token> tokens);

// All n-grams of the requested orders, space-joined, in text order.
std::vector<std::string> ngram_terms(std::span<const std::string> units, NgramOrders orders);

class Vocabulary {
 public:
  Vocabulary() = default;
  // `terms` must be strictly increasing; df[c] belongs to terms[c].
  Vocabulary(NgramOrders orders, std::vector<std::string> terms, std::vector<std::size_t> df,
             std::size_t n_docs, std::size_t min_df);

  NgramOrders orders() const { return orders_; }
  const std::vector<std::string>& terms() const { return terms_; }
  const std::vector<std::size_t>& df() const { return df_; }
  std::size_t n_docs() const { return n_docs_; }
  std::size_t min_df() const { return min_df_; }
  std::size_t size() const { return terms_.size(); }

  std::optional<std::size_t> column(std::string_view term) const;

  Json to_json() const;
  static Vocabulary from_json(const Json& json);

 private:
  NgramOrders orders_ = NgramOrders::uni_bi;
  std::vector<std::string> terms_;
  std::vector<std::size_t> df_;
  std::size_t n_docs_ = 0;
  std::size_t min_df_ = 1;
  std::unordered_map<std::string, std::size_t> index_;
};

// `doc_units` holds ngram_units() of each training document. Columns are
// assigned in lexicographic term order. Throws FeatureError when nothing
// survives min_df.
Vocabulary build_vocabulary(std::span<const std::vector<std::string>> doc_units,
                            NgramOrders orders, std::size_t min_df);

// Sparse n-gram block; unseen terms are ignored. tf-idf uses
// tf * (ln((1 + N) / (1 + df)) + 1) followed by L2 normalisation.
std::vector<SparseEntry> ngram_vectorize(std::span<const std::string> units,
                                         const Vocabulary& vocab, Weighting weighting);

}  // namespace tweetspam
