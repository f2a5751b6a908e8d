#include "tweetspam/eval/grid_search.hpp"

#include <algorithm>
#include <cmath>

#include "tweetspam/common/digest.hpp"
#include "tweetspam/common/rng.hpp"

namespace tweetspam {

Grid grid_from_json(const Json& json) {
  if (!json.is_object()) throw EvalError("grid must be a JSON object of name -> values");
  Grid grid;
  for (const auto& [name, values] : json.items()) {
    std::vector<double> list;
    if (values.is_number()) {
      list.push_back(values.get<double>());
    } else if (values.is_array()) {
      for (const auto& v : values) {
        if (!v.is_number()) throw EvalError("grid values for '" + name + "' must be numbers");
        list.push_back(v.get<double>());
      }
    } else {
      throw EvalError("grid values for '" + name + "' must be a number or an array");
    }
    if (list.empty()) throw EvalError("grid entry '" + name + "' has no values");
    grid[name] = std::move(list);
  }
  if (grid.empty()) throw EvalError("grid is empty");
  return grid;
}

std::vector<Hyperparameters> expand_grid(const Grid& grid) {
  if (grid.empty()) throw EvalError("grid is empty");
  std::vector<Hyperparameters> points{{}};
  for (const auto& [name, values] : grid) {
    if (values.empty()) throw EvalError("grid entry '" + name + "' has no values");
    std::vector<Hyperparameters> next;
    next.reserve(points.size() * values.size());
    for (const auto& point : points) {
      for (double v : values) {
        auto extended = point;
        extended[name] = v;
        next.push_back(std::move(extended));
      }
    }
    points = std::move(next);
  }
  return points;
}

std::vector<std::size_t> stratified_subset(std::span<const Label> labels, double fraction,
                                           std::size_t min_per_class, std::uint64_t seed) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw EvalError("tune fraction must lie in (0, 1]");
  Rng rng(derive_seed(seed, 0x7475));
  std::vector<std::size_t> chosen;
  for (Label cls : {Label::spam, Label::ham}) {
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == cls) members.push_back(i);
    }
    rng.shuffle(members);
    auto take = static_cast<std::size_t>(std::llround(fraction * static_cast<double>(members.size())));
    take = std::min(members.size(), std::max(take, min_per_class));
    chosen.insert(chosen.end(), members.begin(), members.begin() + static_cast<std::ptrdiff_t>(take));
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

Json GridResult::to_json() const {
  Json points_json = Json::array();
  for (const auto& point : points) {
    points_json.push_back(Json{{"params", make_spec(kind, point.params).to_json().at("params")},
                               {"mean", tweetspam::to_json(point.mean)},
                               {"fold_f1", point.fold_f1}});
  }
  return Json{{"classifier", std::string(to_string(kind))},
              {"points", points_json},
              {"best", best},
              {"best_params", points_json.at(best).at("params")},
              {"tuning",
               {{"fraction", tune_fraction},
                {"size", tuning_indices.size()},
                {"indices", tuning_indices},
                {"ids_sha256", tuning_ids_digest}}},
              {"k", k},
              {"seed", seed}};
}

GridResult grid_search(const LabeledCorpus& corpus, const FeatureConfig& config,
                       ClassifierKind kind, const Grid& grid, double tune_fraction,
                       std::size_t k, std::uint64_t seed, const Resources& resources) {
  const auto points = expand_grid(grid);
  for (const auto& point : points) make_spec(kind, point, seed);  // validate up front

  corpus.require_labeled();
  const auto labels = corpus.labels();
  GridResult result;
  result.kind = kind;
  result.tune_fraction = tune_fraction;
  result.k = k;
  result.seed = seed;
  result.tuning_indices = stratified_subset(labels, tune_fraction, k, seed);
  std::string ids;
  for (std::size_t i : result.tuning_indices) ids += corpus[i].tweet_id + "\n";
  result.tuning_ids_digest = sha256_hex(ids);

  const auto tuning = corpus.subset(result.tuning_indices);
  const auto plan = stratified_kfold(tuning, k, seed);
  const PreparedCorpus prepared(tuning, config, resources);
  for (const auto& params : points) {
    const auto report = cross_validate(prepared, plan, make_spec(kind, params, seed));
    GridPoint point{params, report.mean, {}};
    for (const auto& fold : report.folds) point.fold_f1.push_back(fold.metrics.f1);
    if (result.points.empty() || point.mean.f1 > result.points[result.best].mean.f1) {
      result.best = result.points.size();
    }
    result.points.push_back(std::move(point));
  }
  return result;
}

}  // namespace tweetspam
