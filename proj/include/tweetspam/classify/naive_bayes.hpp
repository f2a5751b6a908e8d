#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tweetspam/classify/spec.hpp"

namespace tweetspam {

// Bernoulli naive Bayes over binarized features (value > 0 means present).
// Class index 0 is ham, 1 is spam.
class BernoulliNB {
 public:
  BernoulliNB() = default;
  BernoulliNB(double alpha, std::array<std::uint64_t, 2> class_counts,
              std::array<std::vector<std::uint64_t>, 2> feature_counts);

  // Throws ClassifierError when either class is missing.
  static BernoulliNB fit(std::span<const FeatureVector> rows, std::span<const Label> labels,
                         double alpha);

  // log P(c) + sum over features of log P(x_f | c), absent features included.
  std::array<double, 2> log_joint(const FeatureVector& x) const;
  double posterior_spam(const FeatureVector& x) const;
  Prediction predict(const FeatureVector& x) const;

  // P(f = 1 | c).
  double feature_probability(std::size_t cls, std::size_t feature) const;
  std::size_t width() const { return feature_counts_[0].size(); }

  Json to_json() const;
  static BernoulliNB from_json(const Json& json);

 private:
  double alpha_ = 1.0;
  std::array<std::uint64_t, 2> class_counts_{};
  std::array<std::vector<std::uint64_t>, 2> feature_counts_;
  std::array<double, 2> log_prior_{};
  std::array<std::vector<double>, 2> log_present_;
  std::array<std::vector<double>, 2> log_absent_;
  std::array<double, 2> absent_total_{};
};

}  // namespace tweetspam
