#include "tweetspam/features/config.hpp"

namespace tweetspam {

std::string_view to_string(NgramOrders orders) {
  return orders == NgramOrders::uni_bi ? "uni+bi" : "bi+tri";
}

std::string_view to_string(Weighting weighting) {
  switch (weighting) {
    case Weighting::binary: return "binary";
    case Weighting::tf: return "tf";
    case Weighting::tfidf: return "tfidf";
  }
  return "tf";
}

std::vector<int> order_values(NgramOrders orders) {
  return orders == NgramOrders::uni_bi ? std::vector<int>{1, 2} : std::vector<int>{2, 3};
}

std::string FeatureConfig::to_string() const {
  std::string out;
  auto add = [&](std::string_view token) {
    if (!out.empty()) out.push_back(',');
    out += token;
  };
  if (user) add("user");
  if (content) add("content");
  if (sentiment) add("sentiment");
  if (ngram) {
    add("ngram:");
    out += tweetspam::to_string(ngram->orders);
    out.push_back(':');
    out += tweetspam::to_string(ngram->weighting);
  }
  return out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::optional<FeatureConfig> parse_feature_config(std::string_view text,
                                                  std::vector<std::string>& errors) {
  const std::size_t errors_before = errors.size();
  FeatureConfig config;
  if (trim(text).empty()) {
    errors.push_back("feature configuration is empty");
    return std::nullopt;
  }
  auto duplicate = [&](std::string_view name) {
    errors.push_back("feature set '" + std::string(name) + "' listed more than once");
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string_view::npos) comma = text.size();
    std::string_view token = trim(text.substr(pos, comma - pos));
    pos = comma + 1;
    if (token.empty()) {
      errors.push_back("empty feature set token");
    } else if (token == "user") {
      if (config.user) duplicate(token);
      config.user = true;
    } else if (token == "content") {
      if (config.content) duplicate(token);
      config.content = true;
    } else if (token == "sentiment") {
      if (config.sentiment) duplicate(token);
      config.sentiment = true;
    } else if (token.substr(0, 6) == "ngram:") {
      std::string_view rest = token.substr(6);
      std::size_t colon = rest.find(':');
      std::string_view orders = rest.substr(0, colon);
      std::string_view weighting = colon == std::string_view::npos ? "" : rest.substr(colon + 1);
      NgramSpec spec;
      bool ok = true;
      if (orders == "uni+bi") {
        spec.orders = NgramOrders::uni_bi;
      } else if (orders == "bi+tri") {
        spec.orders = NgramOrders::bi_tri;
      } else {
        errors.push_back("invalid n-gram order '" + std::string(orders) +
                         "' (expected uni+bi or bi+tri)");
        ok = false;
      }
      if (colon == std::string_view::npos) {
        errors.push_back("n-gram token '" + std::string(token) + "' lacks a weighting");
        ok = false;
      } else if (weighting == "binary") {
        spec.weighting = Weighting::binary;
      } else if (weighting == "tf") {
        spec.weighting = Weighting::tf;
      } else if (weighting == "tfidf") {
        spec.weighting = Weighting::tfidf;
      } else {
        errors.push_back("invalid n-gram weighting '" + std::string(weighting) +
                         "' (expected binary, tf or tfidf)");
        ok = false;
      }
      if (config.ngram) duplicate("ngram");
      if (ok) config.ngram = spec;
    } else {
      errors.push_back("unknown feature set '" + std::string(token) + "'");
    }
    if (comma == text.size()) break;
  }
  if (errors.size() != errors_before) return std::nullopt;
  return config;
}

FeatureConfig parse_feature_config(std::string_view text) {
  std::vector<std::string> errors;
  auto config = parse_feature_config(text, errors);
  if (!config) {
    std::string message = "invalid feature configuration '" + std::string(text) + "'";
    for (const auto& e : errors) message += "; " + e;
    throw FeatureError(message);
  }
  return *config;
}

}  // namespace tweetspam
