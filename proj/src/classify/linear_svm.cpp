#include "tweetspam/classify/linear_svm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tweetspam/common/rng.hpp"

namespace tweetspam {

namespace {

double sign_of(Label label) { return label == Label::spam ? 1.0 : -1.0; }

}  // namespace

LinearSvm::LinearSvm(std::vector<double> weights, double bias, double lambda,
                     std::vector<double> objective_trace)
    : weights_(std::move(weights)),
      bias_(bias),
      lambda_(lambda),
      objective_trace_(std::move(objective_trace)) {}

double LinearSvm::objective(const std::vector<double>& weights, double bias, double lambda,
                            std::span<const FeatureVector> rows, std::span<const Label> labels) {
  double norm = bias * bias;
  for (double w : weights) norm += w * w;
  double hinge = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double margin = sign_of(labels[i]) * (dot(rows[i], weights) + bias);
    hinge += std::max(0.0, 1.0 - margin);
  }
  return 0.5 * lambda * norm + hinge / static_cast<double>(rows.size());
}

LinearSvm LinearSvm::fit(std::span<const FeatureVector> rows, std::span<const Label> labels,
                         double C, std::size_t epochs, std::uint64_t seed) {
  check_training_data(rows, labels);
  if (std::find(labels.begin(), labels.end(), Label::spam) == labels.end() ||
      std::find(labels.begin(), labels.end(), Label::ham) == labels.end()) {
    throw ClassifierError("linear SVM needs both spam and ham examples");
  }
  if (!(C > 0)) throw ClassifierError("C must be > 0");
  const std::size_t n = rows.size();
  const std::size_t width = rows.front().width();
  const double lambda = 1.0 / (C * static_cast<double>(n));

  // w = scale * v, b = scale * vb; shrinking only touches `scale`.
  std::vector<double> v(width, 0.0);
  double vb = 0.0;
  double scale = 1.0;
  std::vector<double> trace{objective(v, vb, lambda, rows, labels)};

  Rng rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::uint64_t t = 0;
  for (std::size_t epoch = 0; epoch < epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t i : order) {
      ++t;
      const auto& x = rows[i];
      const double y = sign_of(labels[i]);
      const double eta = 1.0 / (lambda * static_cast<double>(t));
      const double margin = y * scale * (dot(x, v) + vb);
      if (t == 1) {
        std::fill(v.begin(), v.end(), 0.0);
        vb = 0.0;
        scale = 1.0;
      } else {
        scale *= 1.0 - 1.0 / static_cast<double>(t);
      }
      if (margin < 1.0) {
        const double step = eta * y / scale;
        const std::size_t offset = x.dense.size();
        for (std::size_t j = 0; j < offset; ++j) v[j] += step * x.dense[j];
        for (const auto& e : x.sparse) v[offset + e.column] += step * e.value;
        vb += step;
      }
      if (scale < 1e-9) {
        for (double& value : v) value *= scale;
        vb *= scale;
        scale = 1.0;
      }
    }
    std::vector<double> w(v);
    for (double& value : w) value *= scale;
    trace.push_back(objective(w, vb * scale, lambda, rows, labels));
  }
  for (double& value : v) value *= scale;
  return LinearSvm(std::move(v), vb * scale, lambda, std::move(trace));
}

double LinearSvm::decision(const FeatureVector& x) const {
  if (x.width() != weights_.size()) throw ClassifierError("input width does not match the model");
  return dot(x, weights_) + bias_;
}

Prediction LinearSvm::predict(const FeatureVector& x) const {
  const double margin = decision(x);
  return {margin > 0 ? Label::spam : Label::ham, 1.0 / (1.0 + std::exp(-margin))};
}

Json LinearSvm::to_json() const {
  return Json{{"weights", weights_},
              {"bias", bias_},
              {"lambda", lambda_},
              {"objective_trace", objective_trace_}};
}

LinearSvm LinearSvm::from_json(const Json& json) {
  return LinearSvm(json.at("weights").get<std::vector<double>>(), json.at("bias").get<double>(),
                   json.at("lambda").get<double>(),
                   json.at("objective_trace").get<std::vector<double>>());
}

}  // namespace tweetspam
