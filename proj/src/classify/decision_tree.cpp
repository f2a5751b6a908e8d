#include "tweetspam/classify/tree.hpp"

#include <algorithm>

namespace tweetspam {

TreeData::TreeData(std::span<const FeatureVector> rows, std::span<const Label> labels) {
  check_training_data(rows, labels);
  const std::size_t n = rows.size();
  dense_width_ = rows.front().dense.size();
  sparse_width_ = rows.front().sparse_width;
  spam_.resize(n);
  dense_.resize(dense_width_ * n);
  row_start_.reserve(n + 1);
  row_start_.push_back(0);
  for (std::size_t i = 0; i < n; ++i) {
    spam_[i] = labels[i] == Label::spam ? 1 : 0;
    for (std::size_t j = 0; j < dense_width_; ++j) dense_[j * n + i] = rows[i].dense[j];
    sparse_entries_.insert(sparse_entries_.end(), rows[i].sparse.begin(), rows[i].sparse.end());
    row_start_.push_back(sparse_entries_.size());
  }
}

std::size_t TreeData::spam_count() const {
  return static_cast<std::size_t>(std::count(spam_.begin(), spam_.end(), std::uint8_t{1}));
}

namespace {

using u128 = unsigned __int128;

// Weighted Gini impurity of a split is N - S with
//   S = (a^2 + b^2) / (a + b) + (c^2 + d^2) / (c + d)
// for left counts (a, b) and right counts (c, d), so the best split maximises
// S. It is kept as an exact fraction.
struct Score {
  u128 num = 0;
  u128 den = 1;
};

Score split_score(std::uint64_t a, std::uint64_t b, std::uint64_t c, std::uint64_t d) {
  const u128 left = u128(a) + b;
  const u128 right = u128(c) + d;
  const u128 num = (u128(a) * a + u128(b) * b) * right + (u128(c) * c + u128(d) * d) * left;
  return {num, left * right};
}

// -1, 0, 1 as x is below, equal to, above y.
int compare(const Score& x, const Score& y) {
  const u128 lhs = x.num * y.den;
  const u128 rhs = y.num * x.den;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

double midpoint(double lo, double hi) {
  double mid = (lo + hi) / 2.0;
  if (!(mid >= lo && mid < hi)) mid = lo;
  return mid;
}

struct Item {
  double value;
  std::uint64_t ham;
  std::uint64_t spam;
};

struct Split {
  bool found = false;
  Score score;
  std::size_t feature = 0;
  double threshold = 0.0;
};

bool better(const Split& candidate, const Split& best) {
  if (!best.found) return true;
  const int c = compare(candidate.score, best.score);
  if (c != 0) return c > 0;
  if (candidate.feature != best.feature) return candidate.feature < best.feature;
  return candidate.threshold < best.threshold;
}

class Grower {
 public:
  Grower(const TreeData& data, std::span<const std::uint32_t> weights, const TreeParams& params,
         Rng* rng)
      : data_(data),
        weights_(weights),
        params_(params),
        rng_(rng),
        col_tag_(data.sparse_width(), 0),
        col_slot_(data.sparse_width(), 0),
        scratch_(data.size(), 0.0) {}

  std::vector<TreeNode> run() {
    std::vector<std::uint32_t> root;
    for (std::size_t i = 0; i < data_.size(); ++i) {
      if (weights_[i] > 0) root.push_back(static_cast<std::uint32_t>(i));
    }
    if (root.empty()) throw ClassifierError("tree training sample is empty");
    std::vector<TreeNode> nodes(1);
    nodes[0].counts = counts_of(root);

    struct Pending {
      std::size_t node;
      std::vector<std::uint32_t> samples;
      std::size_t depth;
    };
    std::vector<Pending> stack;
    stack.push_back({0, std::move(root), 0});
    while (!stack.empty()) {
      Pending current = std::move(stack.back());
      stack.pop_back();
      const auto counts = nodes[current.node].counts;
      if (counts[0] == 0 || counts[1] == 0) continue;
      if (params_.max_depth > 0 && current.depth >= params_.max_depth) continue;
      if (counts[0] + counts[1] < params_.min_samples_split) continue;

      const Split split = find_split(current.samples, counts);
      if (!split.found) continue;

      std::vector<std::uint32_t> left, right;
      partition(current.samples, split, left, right);
      const auto left_index = static_cast<std::int32_t>(nodes.size());
      nodes.resize(nodes.size() + 2);
      auto& node = nodes[current.node];
      node.feature = static_cast<std::int32_t>(split.feature);
      node.threshold = split.threshold;
      node.left = left_index;
      node.right = left_index + 1;
      nodes[left_index].counts = counts_of(left);
      nodes[left_index + 1].counts = counts_of(right);
      stack.push_back({static_cast<std::size_t>(left_index + 1), std::move(right), current.depth + 1});
      stack.push_back({static_cast<std::size_t>(left_index), std::move(left), current.depth + 1});
    }
    return nodes;
  }

 private:
  std::array<std::uint64_t, 2> counts_of(const std::vector<std::uint32_t>& samples) const {
    std::array<std::uint64_t, 2> counts{};
    for (auto s : samples) counts[data_.spam(s) ? 1 : 0] += weights_[s];
    return counts;
  }

  // Groups the node's sparse entries by column.
  void build_buckets(const std::vector<std::uint32_t>& samples) {
    ++stamp_;
    present_.clear();
    bucket_start_.clear();
    for (auto s : samples) {
      for (const auto& e : data_.sparse_row(s)) {
        if (col_tag_[e.column] != stamp_) {
          col_tag_[e.column] = stamp_;
          col_slot_[e.column] = static_cast<std::uint32_t>(present_.size());
          present_.push_back(e.column);
          bucket_start_.push_back(0);
        }
        ++bucket_start_[col_slot_[e.column]];
      }
    }
    std::size_t total = 0;
    for (auto& start : bucket_start_) {
      const std::size_t count = start;
      start = total;
      total += count;
    }
    bucket_start_.push_back(total);
    bucket_entries_.resize(total);
    cursor_.assign(bucket_start_.begin(), bucket_start_.end() - 1);
    for (auto s : samples) {
      for (const auto& e : data_.sparse_row(s)) {
        bucket_entries_[cursor_[col_slot_[e.column]]++] = {s, e.value};
      }
    }
  }

  // Fills items_ with the node's values of `feature`. Returns false when the
  // feature is constant within the node.
  bool gather(const std::vector<std::uint32_t>& samples, std::size_t feature,
              const std::array<std::uint64_t, 2>& counts) {
    items_.clear();
    if (feature < data_.dense_width()) {
      for (auto s : samples) {
        const std::uint64_t w = weights_[s];
        items_.push_back({data_.dense(feature, s), data_.spam(s) ? 0 : w, data_.spam(s) ? w : 0});
      }
    } else {
      const std::size_t column = feature - data_.dense_width();
      if (col_tag_[column] != stamp_) return false;
      const std::size_t slot = col_slot_[column];
      std::uint64_t ham = counts[0], spam = counts[1];
      for (std::size_t k = bucket_start_[slot]; k < bucket_start_[slot + 1]; ++k) {
        const auto [s, value] = bucket_entries_[k];
        const std::uint64_t w = weights_[s];
        if (data_.spam(s)) {
          items_.push_back({value, 0, w});
          spam -= w;
        } else {
          items_.push_back({value, w, 0});
          ham -= w;
        }
      }
      if (ham + spam > 0) items_.push_back({0.0, ham, spam});
    }
    const auto [lo, hi] = std::minmax_element(
        items_.begin(), items_.end(), [](const Item& a, const Item& b) { return a.value < b.value; });
    if (lo->value == hi->value) return false;
    std::sort(items_.begin(), items_.end(),
              [](const Item& a, const Item& b) { return a.value < b.value; });
    return true;
  }

  Split best_threshold(std::size_t feature, const std::array<std::uint64_t, 2>& counts) const {
    Split best;
    std::uint64_t a = 0, b = 0;
    for (std::size_t i = 0; i + 1 < items_.size(); ++i) {
      a += items_[i].ham;
      b += items_[i].spam;
      if (items_[i].value == items_[i + 1].value) continue;
      Split candidate{true, split_score(a, b, counts[0] - a, counts[1] - b), feature,
                      midpoint(items_[i].value, items_[i + 1].value)};
      if (!best.found || compare(candidate.score, best.score) > 0) best = candidate;
    }
    return best;
  }

  Split find_split(const std::vector<std::uint32_t>& samples,
                   const std::array<std::uint64_t, 2>& counts) {
    build_buckets(samples);
    Split best;
    auto consider = [&](std::size_t feature) {
      if (!gather(samples, feature, counts)) return false;
      const Split candidate = best_threshold(feature, counts);
      if (candidate.found && better(candidate, best)) best = candidate;
      return true;
    };

    const std::size_t width = data_.width();
    if (params_.max_features == 0 || params_.max_features >= width) {
      for (std::size_t f = 0; f < data_.dense_width(); ++f) consider(f);
      std::vector<std::uint32_t> columns(present_);
      std::sort(columns.begin(), columns.end());
      for (auto c : columns) consider(data_.dense_width() + c);
      return best;
    }
    if (!rng_) throw ClassifierError("feature subsampling needs a random generator");

    // Sparse columns absent from the node are constant zero there, so the
    // draw is over dense columns plus the sparse columns present.
    pool_.clear();
    for (std::size_t f = 0; f < data_.dense_width(); ++f) pool_.push_back(f);
    for (auto c : present_) pool_.push_back(data_.dense_width() + c);
    std::size_t seen = 0;
    for (std::size_t i = 0; i < pool_.size() && seen < params_.max_features; ++i) {
      const std::size_t j = i + rng_->uniform_index(pool_.size() - i);
      std::swap(pool_[i], pool_[j]);
      if (consider(pool_[i])) ++seen;
    }
    return best;
  }

  void partition(const std::vector<std::uint32_t>& samples, const Split& split,
                 std::vector<std::uint32_t>& left, std::vector<std::uint32_t>& right) {
    if (split.feature < data_.dense_width()) {
      for (auto s : samples) {
        (data_.dense(split.feature, s) <= split.threshold ? left : right).push_back(s);
      }
      return;
    }
    const std::size_t slot = col_slot_[split.feature - data_.dense_width()];
    for (std::size_t k = bucket_start_[slot]; k < bucket_start_[slot + 1]; ++k) {
      scratch_[bucket_entries_[k].first] = bucket_entries_[k].second;
    }
    for (auto s : samples) (scratch_[s] <= split.threshold ? left : right).push_back(s);
    for (std::size_t k = bucket_start_[slot]; k < bucket_start_[slot + 1]; ++k) {
      scratch_[bucket_entries_[k].first] = 0.0;
    }
  }

  const TreeData& data_;
  std::span<const std::uint32_t> weights_;
  TreeParams params_;
  Rng* rng_;

  std::uint32_t stamp_ = 0;
  std::vector<std::uint32_t> col_tag_;
  std::vector<std::uint32_t> col_slot_;
  std::vector<std::uint32_t> present_;
  std::vector<std::size_t> bucket_start_;
  std::vector<std::size_t> cursor_;
  std::vector<std::pair<std::uint32_t, double>> bucket_entries_;
  std::vector<Item> items_;
  std::vector<double> scratch_;
  std::vector<std::size_t> pool_;
};

}  // namespace

DecisionTree::DecisionTree(std::vector<TreeNode> nodes, std::size_t width)
    : nodes_(std::move(nodes)), width_(width) {
  if (nodes_.empty()) throw ClassifierError("a tree needs at least one node");
  const auto n = static_cast<std::int32_t>(nodes_.size());
  for (std::int32_t i = 0; i < n; ++i) {
    const auto& node = nodes_[i];
    if (node.is_leaf()) continue;
    if (static_cast<std::size_t>(node.feature) >= width_ || node.left <= i || node.right <= i ||
        node.left >= n || node.right >= n) {
      throw ClassifierError("tree node " + std::to_string(i) + " is malformed");
    }
  }
}

DecisionTree DecisionTree::fit(std::span<const FeatureVector> rows, std::span<const Label> labels,
                               const TreeParams& params) {
  TreeData data(rows, labels);
  std::vector<std::uint32_t> weights(data.size(), 1);
  TreeParams all = params;
  all.max_features = 0;
  return grow(data, weights, all, nullptr);
}

DecisionTree DecisionTree::grow(const TreeData& data, std::span<const std::uint32_t> weights,
                                const TreeParams& params, Rng* rng) {
  if (weights.size() != data.size()) throw ClassifierError("one weight per training row expected");
  Grower grower(data, weights, params, rng);
  return DecisionTree(grower.run(), data.width());
}

const TreeNode& DecisionTree::leaf_for(const FeatureVector& x) const {
  if (x.width() != width_) throw ClassifierError("input width does not match the model");
  const TreeNode* node = &nodes_.front();
  while (!node->is_leaf()) {
    node = &nodes_[x.at(static_cast<std::size_t>(node->feature)) <= node->threshold ? node->left
                                                                                     : node->right];
  }
  return *node;
}

Prediction DecisionTree::predict(const FeatureVector& x) const {
  const auto& leaf = leaf_for(x);
  const double total = static_cast<double>(leaf.counts[0] + leaf.counts[1]);
  return {leaf.counts[1] > leaf.counts[0] ? Label::spam : Label::ham,
          total == 0 ? 0.0 : static_cast<double>(leaf.counts[1]) / total};
}

std::size_t DecisionTree::depth() const {
  std::vector<std::size_t> depth(nodes_.size(), 0);
  std::size_t deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, depth[i]);
    if (!nodes_[i].is_leaf()) {
      depth[nodes_[i].left] = depth[i] + 1;
      depth[nodes_[i].right] = depth[i] + 1;
    }
  }
  return deepest;
}

Json DecisionTree::to_json() const {
  std::vector<std::int32_t> feature, left, right;
  std::vector<double> threshold;
  std::vector<std::uint64_t> ham, spam;
  for (const auto& node : nodes_) {
    feature.push_back(node.feature);
    threshold.push_back(node.threshold);
    left.push_back(node.left);
    right.push_back(node.right);
    ham.push_back(node.counts[0]);
    spam.push_back(node.counts[1]);
  }
  return Json{{"width", width_}, {"feature", feature}, {"threshold", threshold}, {"left", left},
              {"right", right},  {"ham", ham},         {"spam", spam}};
}

DecisionTree DecisionTree::from_json(const Json& json) {
  const auto feature = json.at("feature").get<std::vector<std::int32_t>>();
  const auto threshold = json.at("threshold").get<std::vector<double>>();
  const auto left = json.at("left").get<std::vector<std::int32_t>>();
  const auto right = json.at("right").get<std::vector<std::int32_t>>();
  const auto ham = json.at("ham").get<std::vector<std::uint64_t>>();
  const auto spam = json.at("spam").get<std::vector<std::uint64_t>>();
  const std::size_t n = feature.size();
  if (threshold.size() != n || left.size() != n || right.size() != n || ham.size() != n ||
      spam.size() != n) {
    throw ClassifierError("tree node arrays differ in length");
  }
  std::vector<TreeNode> nodes(n);
  for (std::size_t i = 0; i < n; ++i) {
    nodes[i] = {feature[i], threshold[i], left[i], right[i], {ham[i], spam[i]}};
  }
  return DecisionTree(std::move(nodes), json.at("width").get<std::size_t>());
}

}  // namespace tweetspam
