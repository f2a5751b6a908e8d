#include "tweetspam/classify/forest.hpp"

#include <cmath>

#include "tweetspam/common/parallel.hpp"

namespace tweetspam {

std::size_t resolve_max_features(std::size_t requested, std::size_t width) {
  if (requested > 0) return std::min(requested, width);
  auto root = static_cast<std::size_t>(std::sqrt(static_cast<double>(width)));
  while (root * root > width) --root;
  while ((root + 1) * (root + 1) <= width) ++root;
  return std::max<std::size_t>(1, root);
}

RandomForest::RandomForest(std::vector<DecisionTree> trees, Label majority)
    : trees_(std::move(trees)), majority_(majority) {
  if (trees_.empty()) throw ClassifierError("a forest needs at least one tree");
  for (const auto& tree : trees_) {
    if (tree.width() != trees_.front().width()) throw ClassifierError("forest trees differ in width");
  }
}

RandomForest RandomForest::fit(std::span<const FeatureVector> rows, std::span<const Label> labels,
                               const ForestParams& params, std::uint64_t seed) {
  if (params.n_trees == 0) throw ClassifierError("n_trees must be >= 1");
  const TreeData data(rows, labels);
  const std::size_t n = data.size();
  const std::size_t spam = data.spam_count();
  const Label majority = spam > n - spam ? Label::spam : Label::ham;

  TreeParams tree_params;
  tree_params.max_depth = params.max_depth;
  tree_params.min_samples_split = params.min_samples_split;
  tree_params.max_features = resolve_max_features(params.max_features, data.width());

  std::vector<DecisionTree> trees(params.n_trees);
  parallel_for(params.n_trees, [&](std::size_t t) {
    Rng rng(derive_seed(seed, t));
    std::vector<std::uint32_t> weights(n, params.bootstrap ? 0 : 1);
    if (params.bootstrap) {
      for (std::size_t i = 0; i < n; ++i) ++weights[rng.uniform_index(n)];
    }
    trees[t] = DecisionTree::grow(data, weights, tree_params, &rng);
  });
  return RandomForest(std::move(trees), majority);
}

Prediction RandomForest::predict(const FeatureVector& x) const {
  std::size_t spam_votes = 0;
  for (const auto& tree : trees_) {
    if (tree.predict(x).label == Label::spam) ++spam_votes;
  }
  const std::size_t ham_votes = trees_.size() - spam_votes;
  Label label = spam_votes > ham_votes ? Label::spam : Label::ham;
  if (spam_votes == ham_votes) label = majority_;
  return {label, static_cast<double>(spam_votes) / static_cast<double>(trees_.size())};
}

Json RandomForest::to_json() const {
  Json trees = Json::array();
  for (const auto& tree : trees_) trees.push_back(tree.to_json());
  return Json{{"majority", std::string(to_string(majority_))}, {"trees", trees}};
}

RandomForest RandomForest::from_json(const Json& json) {
  std::vector<DecisionTree> trees;
  for (const auto& tree : json.at("trees")) trees.push_back(DecisionTree::from_json(tree));
  const auto majority = parse_label(json.at("majority").get<std::string>());
  if (!majority || *majority == Label::unlabeled) throw ClassifierError("invalid forest majority label");
  return RandomForest(std::move(trees), *majority);
}

}  // namespace tweetspam
