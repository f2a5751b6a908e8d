#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tweetspam/classify/spec.hpp"

namespace tweetspam {

// Soft-margin linear SVM trained by stochastic subgradient descent on
//   lambda/2 (|w|^2 + b^2) + mean(max(0, 1 - y (w.x + b)))
// with lambda = 1 / (C n) and step 1 / (lambda t). The bias is treated as the
// weight of a constant feature. Each epoch visits the rows in a fresh seeded
// order.
class LinearSvm {
 public:
  LinearSvm() = default;
  LinearSvm(std::vector<double> weights, double bias, double lambda,
            std::vector<double> objective_trace);

  static LinearSvm fit(std::span<const FeatureVector> rows, std::span<const Label> labels,
                       double C, std::size_t epochs, std::uint64_t seed);

  double decision(const FeatureVector& x) const;
  // Label from the sign of the margin (zero goes to ham), score is the
  // logistic of the margin.
  Prediction predict(const FeatureVector& x) const;

  const std::vector<double>& weights() const { return weights_; }
  double bias() const { return bias_; }
  double lambda() const { return lambda_; }
  // Objective before training followed by its value after each epoch.
  const std::vector<double>& objective_trace() const { return objective_trace_; }

  static double objective(const std::vector<double>& weights, double bias, double lambda,
                          std::span<const FeatureVector> rows, std::span<const Label> labels);

  Json to_json() const;
  static LinearSvm from_json(const Json& json);

 private:
  std::vector<double> weights_;
  double bias_ = 0.0;
  double lambda_ = 0.0;
  std::vector<double> objective_trace_;
};

}  // namespace tweetspam
