#include "tweetspam/features/selection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tweetspam/features/config.hpp"

namespace tweetspam {

Scaler::Scaler(std::vector<double> min, std::vector<double> max)
    : min_(std::move(min)), max_(std::move(max)) {
  if (min_.size() != max_.size()) throw FeatureError("scaler min and max differ in length");
  for (std::size_t j = 0; j < min_.size(); ++j) {
    if (!(min_[j] <= max_[j])) throw FeatureError("scaler column " + std::to_string(j) + " has min > max");
  }
}

Scaler Scaler::fit(std::span<const FeatureVector> rows) {
  if (rows.empty()) throw FeatureError("cannot fit a scaler on zero rows");
  std::vector<double> lo = rows.front().dense;
  std::vector<double> hi = rows.front().dense;
  for (const auto& row : rows) {
    if (row.dense.size() != lo.size()) throw FeatureError("rows differ in dense width");
    for (std::size_t j = 0; j < lo.size(); ++j) {
      lo[j] = std::min(lo[j], row.dense[j]);
      hi[j] = std::max(hi[j], row.dense[j]);
    }
  }
  return Scaler(std::move(lo), std::move(hi));
}

double Scaler::scale(std::size_t column, double x) const {
  const double lo = min_[column];
  const double hi = max_[column];
  if (hi == lo) return 0.0;
  const double y = 2.0 * (x - lo) / (hi - lo) - 1.0;
  return std::clamp(y, -1.0, 1.0);
}

FeatureVector Scaler::apply(const FeatureVector& row) const {
  if (row.dense.size() != min_.size()) {
    throw FeatureError("scaler fitted on " + std::to_string(min_.size()) +
                       " dense columns, row has " + std::to_string(row.dense.size()));
  }
  FeatureVector out = row;
  for (std::size_t j = 0; j < out.dense.size(); ++j) out.dense[j] = scale(j, out.dense[j]);
  return out;
}

Json Scaler::to_json() const { return Json{{"min", min_}, {"max", max_}}; }

Scaler Scaler::from_json(const Json& json) {
  return Scaler(json.at("min").get<std::vector<double>>(), json.at("max").get<std::vector<double>>());
}

FeatureMask::FeatureMask(std::size_t dense_width, std::size_t sparse_width,
                         std::vector<std::size_t> kept, std::vector<double> scores)
    : dense_width_(dense_width),
      sparse_width_(sparse_width),
      kept_(std::move(kept)),
      scores_(std::move(scores)),
      sparse_remap_(sparse_width, -1) {
  if (scores_.size() != original_width()) throw FeatureError("mask scores do not cover every column");
  std::int64_t next_sparse = 0;
  for (std::size_t i = 0; i < kept_.size(); ++i) {
    const std::size_t c = kept_[i];
    if (c >= original_width() || (i > 0 && kept_[i - 1] >= c)) {
      throw FeatureError("mask columns must be strictly increasing and in range");
    }
    if (c < dense_width_) {
      ++kept_dense_;
    } else {
      sparse_remap_[c - dense_width_] = next_sparse++;
    }
  }
}

FeatureVector FeatureMask::apply(const FeatureVector& row) const {
  if (row.dense.size() != dense_width_ || row.sparse_width != sparse_width_) {
    throw FeatureError("row layout does not match the feature mask");
  }
  FeatureVector out;
  out.dense.reserve(kept_dense_);
  for (std::size_t i = 0; i < kept_dense_; ++i) out.dense.push_back(row.dense[kept_[i]]);
  for (const auto& e : row.sparse) {
    const std::int64_t mapped = sparse_remap_[e.column];
    if (mapped >= 0) out.sparse.push_back({static_cast<std::uint32_t>(mapped), e.value});
  }
  out.sparse_width = kept_.size() - kept_dense_;
  return out;
}

Json FeatureMask::to_json() const {
  return Json{{"dense_width", dense_width_},
              {"sparse_width", sparse_width_},
              {"kept", kept_},
              {"scores", scores_}};
}

FeatureMask FeatureMask::from_json(const Json& json) {
  return FeatureMask(json.at("dense_width").get<std::size_t>(),
                     json.at("sparse_width").get<std::size_t>(),
                     json.at("kept").get<std::vector<std::size_t>>(),
                     json.at("scores").get<std::vector<double>>());
}

std::size_t selection_size(double fraction, std::size_t columns) {
  const double product = fraction * static_cast<double>(columns);
  const double nearest = std::round(product);
  double k = std::ceil(product);
  if (std::fabs(product - nearest) <= 1e-9 * std::max(1.0, product)) k = nearest;
  auto size = static_cast<std::size_t>(k);
  if (columns > 0) size = std::clamp<std::size_t>(size, 1, columns);
  return size;
}

FeatureMask chi2_select(std::span<const FeatureVector> rows, std::span<const Label> labels,
                        double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw FeatureError("selection fraction must lie in (0, 1]");
  }
  if (rows.empty() || rows.size() != labels.size()) {
    throw FeatureError("chi-square selection needs one label per row and at least one row");
  }
  const std::size_t dense = rows.front().dense.size();
  const std::size_t sparse = rows.front().sparse_width;
  const std::size_t width = dense + sparse;

  std::vector<double> spam_sum(width, 0.0), ham_sum(width, 0.0);
  std::size_t n_spam = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = rows[i];
    if (row.dense.size() != dense || row.sparse_width != sparse) {
      throw FeatureError("rows differ in layout");
    }
    const bool spam = labels[i] == Label::spam;
    n_spam += spam;
    auto& sums = spam ? spam_sum : ham_sum;
    row.for_each_entry([&](std::size_t c, double v) { sums[c] += std::fabs(v); });
  }
  const double n = static_cast<double>(rows.size());
  const double p_spam = static_cast<double>(n_spam) / n;
  const double p_ham = 1.0 - p_spam;

  std::vector<double> scores(width, 0.0);
  for (std::size_t c = 0; c < width; ++c) {
    const double total = spam_sum[c] + ham_sum[c];
    double chi2 = 0.0;
    const double e_spam = total * p_spam;
    const double e_ham = total * p_ham;
    if (e_spam > 0.0) chi2 += (spam_sum[c] - e_spam) * (spam_sum[c] - e_spam) / e_spam;
    if (e_ham > 0.0) chi2 += (ham_sum[c] - e_ham) * (ham_sum[c] - e_ham) / e_ham;
    scores[c] = chi2;
  }

  std::vector<std::size_t> order(width);
  std::iota(order.begin(), order.end(), std::size_t{0});
  const std::size_t keep = selection_size(fraction, width);
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (scores[a] != scores[b]) return scores[a] > scores[b];
                      return a < b;
                    });
  order.resize(keep);
  std::sort(order.begin(), order.end());
  return FeatureMask(dense, sparse, std::move(order), std::move(scores));
}

}  // namespace tweetspam
