#include "tweetspam/classify/knn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tweetspam {

Knn::Knn(std::size_t k, std::vector<FeatureVector> rows, std::vector<Label> labels)
    : k_(k), rows_(std::move(rows)), labels_(std::move(labels)) {
  check_training_data(rows_, labels_);
  if (k_ == 0) throw ClassifierError("k must be >= 1");
  if (k_ > rows_.size()) {
    throw ClassifierError("k=" + std::to_string(k_) + " exceeds the " +
                          std::to_string(rows_.size()) + " training rows");
  }
}

Knn Knn::fit(std::span<const FeatureVector> rows, std::span<const Label> labels, std::size_t k) {
  return Knn(k, std::vector<FeatureVector>(rows.begin(), rows.end()),
             std::vector<Label>(labels.begin(), labels.end()));
}

std::vector<std::size_t> Knn::neighbors(const FeatureVector& x) const {
  if (x.width() != rows_.front().width()) throw ClassifierError("input width does not match the model");
  std::vector<double> distance(rows_.size());
  for (std::size_t i = 0; i < rows_.size(); ++i) distance[i] = squared_distance(x, rows_[i]);
  std::vector<std::size_t> order(rows_.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k_), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (distance[a] != distance[b]) return distance[a] < distance[b];
                      return a < b;
                    });
  order.resize(k_);
  return order;
}

Prediction Knn::predict(const FeatureVector& x) const {
  std::size_t spam_votes = 0;
  double spam_distance = 0.0, ham_distance = 0.0;
  for (std::size_t i : neighbors(x)) {
    const double d = std::sqrt(squared_distance(x, rows_[i]));
    if (labels_[i] == Label::spam) {
      ++spam_votes;
      spam_distance += d;
    } else {
      ham_distance += d;
    }
  }
  const std::size_t ham_votes = k_ - spam_votes;
  bool spam = spam_votes > ham_votes;
  if (spam_votes == ham_votes) spam = spam_distance < ham_distance;
  return {spam ? Label::spam : Label::ham,
          static_cast<double>(spam_votes) / static_cast<double>(k_)};
}

Json vector_to_json(const FeatureVector& row) {
  Json sparse = Json::array();
  for (const auto& e : row.sparse) sparse.push_back({e.column, e.value});
  return Json{{"dense", row.dense}, {"sparse", sparse}};
}

FeatureVector vector_from_json(const Json& json, std::size_t sparse_width) {
  FeatureVector row;
  row.dense = json.at("dense").get<std::vector<double>>();
  row.sparse_width = sparse_width;
  for (const auto& entry : json.at("sparse")) {
    const auto column = entry.at(0).get<std::uint32_t>();
    if (column >= sparse_width || (!row.sparse.empty() && row.sparse.back().column >= column)) {
      throw ClassifierError("stored sparse row is out of order or out of range");
    }
    row.sparse.push_back({column, entry.at(1).get<double>()});
  }
  return row;
}

Json Knn::to_json() const {
  Json rows = Json::array();
  std::vector<int> labels;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    rows.push_back(vector_to_json(rows_[i]));
    labels.push_back(labels_[i] == Label::spam ? 1 : 0);
  }
  return Json{{"k", k_},
              {"sparse_width", rows_.front().sparse_width},
              {"rows", rows},
              {"labels", labels}};
}

Knn Knn::from_json(const Json& json) {
  const auto sparse_width = json.at("sparse_width").get<std::size_t>();
  std::vector<FeatureVector> rows;
  for (const auto& row : json.at("rows")) rows.push_back(vector_from_json(row, sparse_width));
  std::vector<Label> labels;
  for (const auto& label : json.at("labels")) labels.push_back(label.get<int>() ? Label::spam : Label::ham);
  return Knn(json.at("k").get<std::size_t>(), std::move(rows), std::move(labels));
}

}  // namespace tweetspam
