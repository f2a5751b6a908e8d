#include "tweetspam/features/ngram.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_set>

#include "tweetspam/common/utf8.hpp"

namespace tweetspam {

std::vector<std::string> ngram_units(std::span<const Token> tokens) {
  std::vector<std::string> units;
  for (const auto& token : tokens) {
    switch (token.kind) {
      case TokenKind::url: units.emplace_back("<url>"); break;
      case TokenKind::word:
      case TokenKind::hashtag:
      case TokenKind::mention: units.push_back(utf8::ascii_lower(token.surface)); break;
      default: break;
    }
  }
  return units;
}

std::vector<std::string> ngram_terms(std::span<const std::string> units, NgramOrders orders) {
  std::vector<std::string> terms;
  for (int n : order_values(orders)) {
    const auto order = static_cast<std::size_t>(n);
    for (std::size_t i = 0; i + order <= units.size(); ++i) {
      std::string term = units[i];
      for (std::size_t j = 1; j < order; ++j) {
        term.push_back(' ');
        term += units[i + j];
      }
      terms.push_back(std::move(term));
    }
  }
  return terms;
}

Vocabulary::Vocabulary(NgramOrders orders, std::vector<std::string> terms,
                       std::vector<std::size_t> df, std::size_t n_docs, std::size_t min_df)
    : orders_(orders),
      terms_(std::move(terms)),
      df_(std::move(df)),
      n_docs_(n_docs),
      min_df_(min_df) {
  if (terms_.size() != df_.size()) throw FeatureError("vocabulary terms and df differ in length");
  for (std::size_t c = 0; c < terms_.size(); ++c) {
    if (c > 0 && !(terms_[c - 1] < terms_[c])) {
      throw FeatureError("vocabulary terms must be strictly increasing");
    }
    if (df_[c] > n_docs_) throw FeatureError("document frequency exceeds document count");
    index_.emplace(terms_[c], c);
  }
}

std::optional<std::size_t> Vocabulary::column(std::string_view term) const {
  auto it = index_.find(std::string(term));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Json Vocabulary::to_json() const {
  return Json{{"orders", std::string(to_string(orders_))},
              {"terms", terms_},
              {"df", df_},
              {"n_docs", n_docs_},
              {"min_df", min_df_}};
}

Vocabulary Vocabulary::from_json(const Json& json) {
  const auto orders_text = json.at("orders").get<std::string>();
  NgramOrders orders;
  if (orders_text == "uni+bi") {
    orders = NgramOrders::uni_bi;
  } else if (orders_text == "bi+tri") {
    orders = NgramOrders::bi_tri;
  } else {
    throw FeatureError("unknown n-gram orders '" + orders_text + "'");
  }
  return Vocabulary(orders, json.at("terms").get<std::vector<std::string>>(),
                    json.at("df").get<std::vector<std::size_t>>(),
                    json.at("n_docs").get<std::size_t>(), json.at("min_df").get<std::size_t>());
}

Vocabulary build_vocabulary(std::span<const std::vector<std::string>> doc_units,
                            NgramOrders orders, std::size_t min_df) {
  if (doc_units.empty()) throw FeatureError("cannot build a vocabulary from zero documents");
  std::map<std::string, std::size_t> df;
  for (const auto& units : doc_units) {
    auto terms = ngram_terms(units, orders);
    std::sort(terms.begin(), terms.end());
    terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
    for (auto& term : terms) ++df[std::move(term)];
  }
  std::vector<std::string> terms;
  std::vector<std::size_t> counts;
  for (auto& [term, count] : df) {
    if (count < min_df) continue;
    terms.push_back(term);
    counts.push_back(count);
  }
  if (terms.empty()) {
    throw FeatureError("n-gram vocabulary is empty after applying min_df=" +
                       std::to_string(min_df));
  }
  return Vocabulary(orders, std::move(terms), std::move(counts), doc_units.size(), min_df);
}

std::vector<SparseEntry> ngram_vectorize(std::span<const std::string> units,
                                         const Vocabulary& vocab, Weighting weighting) {
  std::map<std::size_t, double> counts;
  for (const auto& term : ngram_terms(units, vocab.orders())) {
    if (auto column = vocab.column(term)) counts[*column] += 1.0;
  }
  std::vector<SparseEntry> out;
  out.reserve(counts.size());
  for (const auto& [column, count] : counts) {
    double value = count;
    if (weighting == Weighting::binary) {
      value = 1.0;
    } else if (weighting == Weighting::tfidf) {
      const double n = static_cast<double>(vocab.n_docs());
      const double df = static_cast<double>(vocab.df()[column]);
      value = count * (std::log((1.0 + n) / (1.0 + df)) + 1.0);
    }
    out.push_back({static_cast<std::uint32_t>(column), value});
  }
  if (weighting == Weighting::tfidf && !out.empty()) {
    double norm = 0.0;
    for (const auto& e : out) norm += e.value * e.value;
    norm = std::sqrt(norm);
    for (auto& e : out) e.value /= norm;
  }
  return out;
}

}  // namespace tweetspam
