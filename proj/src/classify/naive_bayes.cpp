#include "tweetspam/classify/naive_bayes.hpp"

#include <cmath>

namespace tweetspam {

BernoulliNB::BernoulliNB(double alpha, std::array<std::uint64_t, 2> class_counts,
                         std::array<std::vector<std::uint64_t>, 2> feature_counts)
    : alpha_(alpha), class_counts_(class_counts), feature_counts_(std::move(feature_counts)) {
  if (!(alpha_ > 0) || !std::isfinite(alpha_)) throw ClassifierError("alpha must be > 0");
  if (class_counts_[0] == 0 || class_counts_[1] == 0) {
    throw ClassifierError("naive Bayes needs at least one spam and one ham example");
  }
  if (feature_counts_[0].size() != feature_counts_[1].size()) {
    throw ClassifierError("naive Bayes feature counts differ in width");
  }
  const double total = static_cast<double>(class_counts_[0] + class_counts_[1]);
  for (std::size_t c = 0; c < 2; ++c) {
    const double n_c = static_cast<double>(class_counts_[c]);
    log_prior_[c] = std::log(n_c / total);
    log_present_[c].resize(width());
    log_absent_[c].resize(width());
    absent_total_[c] = 0.0;
    for (std::size_t f = 0; f < width(); ++f) {
      if (feature_counts_[c][f] > class_counts_[c]) {
        throw ClassifierError("naive Bayes feature count exceeds class count");
      }
      const double count = static_cast<double>(feature_counts_[c][f]);
      const double denominator = n_c + 2.0 * alpha_;
      log_present_[c][f] = std::log((count + alpha_) / denominator);
      log_absent_[c][f] = std::log((n_c - count + alpha_) / denominator);
      absent_total_[c] += log_absent_[c][f];
    }
  }
}

BernoulliNB BernoulliNB::fit(std::span<const FeatureVector> rows, std::span<const Label> labels,
                             double alpha) {
  check_training_data(rows, labels);
  const std::size_t width = rows.front().width();
  std::array<std::uint64_t, 2> class_counts{};
  std::array<std::vector<std::uint64_t>, 2> feature_counts{std::vector<std::uint64_t>(width, 0),
                                                           std::vector<std::uint64_t>(width, 0)};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t c = labels[i] == Label::spam ? 1 : 0;
    ++class_counts[c];
    rows[i].for_each_entry([&](std::size_t f, double v) {
      if (v > 0) ++feature_counts[c][f];
    });
  }
  return BernoulliNB(alpha, class_counts, std::move(feature_counts));
}

std::array<double, 2> BernoulliNB::log_joint(const FeatureVector& x) const {
  if (x.width() != width()) throw ClassifierError("input width does not match the model");
  std::array<double, 2> out{};
  for (std::size_t c = 0; c < 2; ++c) {
    double sum = log_prior_[c] + absent_total_[c];
    x.for_each_entry([&](std::size_t f, double v) {
      if (v > 0) sum += log_present_[c][f] - log_absent_[c][f];
    });
    out[c] = sum;
  }
  return out;
}

double BernoulliNB::posterior_spam(const FeatureVector& x) const {
  const auto joint = log_joint(x);
  return 1.0 / (1.0 + std::exp(joint[0] - joint[1]));
}

Prediction BernoulliNB::predict(const FeatureVector& x) const {
  const auto joint = log_joint(x);
  const double score = 1.0 / (1.0 + std::exp(joint[0] - joint[1]));
  return {joint[1] > joint[0] ? Label::spam : Label::ham, score};
}

double BernoulliNB::feature_probability(std::size_t cls, std::size_t feature) const {
  return std::exp(log_present_[cls][feature]);
}

Json BernoulliNB::to_json() const {
  return Json{{"alpha", alpha_},
              {"class_counts", {class_counts_[0], class_counts_[1]}},
              {"feature_counts", {feature_counts_[0], feature_counts_[1]}}};
}

BernoulliNB BernoulliNB::from_json(const Json& json) {
  const auto& counts = json.at("feature_counts");
  return BernoulliNB(json.at("alpha").get<double>(),
                     json.at("class_counts").get<std::array<std::uint64_t, 2>>(),
                     {counts.at(0).get<std::vector<std::uint64_t>>(),
                      counts.at(1).get<std::vector<std::uint64_t>>()});
}

}  // namespace tweetspam
