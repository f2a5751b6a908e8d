#include "tweetspam/classify/spec.hpp"

#include <cmath>

namespace tweetspam {

std::string_view to_string(ClassifierKind kind) {
  switch (kind) {
    case ClassifierKind::bernoulli_nb: return "bernoulli_nb";
    case ClassifierKind::knn: return "knn";
    case ClassifierKind::linear_svm: return "linear_svm";
    case ClassifierKind::decision_tree: return "decision_tree";
    case ClassifierKind::random_forest: return "random_forest";
  }
  return "random_forest";
}

std::optional<ClassifierKind> parse_classifier_kind(std::string_view name) {
  if (name == "bernoulli_nb" || name == "nb") return ClassifierKind::bernoulli_nb;
  if (name == "knn") return ClassifierKind::knn;
  if (name == "linear_svm" || name == "svm") return ClassifierKind::linear_svm;
  if (name == "decision_tree" || name == "tree") return ClassifierKind::decision_tree;
  if (name == "random_forest" || name == "rf" || name == "forest") {
    return ClassifierKind::random_forest;
  }
  return std::nullopt;
}

const Hyperparameters& default_hyperparameters(ClassifierKind kind) {
  static const Hyperparameters nb = {{"alpha", 1.0}};
  static const Hyperparameters knn = {{"k", 5.0}};
  static const Hyperparameters svm = {{"C", 1.0}, {"epochs", 10.0}};
  static const Hyperparameters tree = {{"max_depth", 0.0}, {"min_samples_split", 2.0}};
  static const Hyperparameters forest = {{"n_trees", 100.0},
                                         {"max_depth", 0.0},
                                         {"min_samples_split", 2.0},
                                         {"max_features", 0.0},
                                         {"bootstrap", 1.0}};
  switch (kind) {
    case ClassifierKind::bernoulli_nb: return nb;
    case ClassifierKind::knn: return knn;
    case ClassifierKind::linear_svm: return svm;
    case ClassifierKind::decision_tree: return tree;
    case ClassifierKind::random_forest: return forest;
  }
  return forest;
}

namespace {

bool is_integer(double v) { return std::isfinite(v) && v == std::floor(v); }

}  // namespace

std::vector<std::string> validate_hyperparameters(ClassifierKind kind, const Hyperparameters& params) {
  std::vector<std::string> errors;
  const auto& defaults = default_hyperparameters(kind);
  const std::string kind_name(to_string(kind));
  for (const auto& [name, value] : params) {
    if (!defaults.count(name)) {
      errors.push_back("unknown hyperparameter '" + name + "' for " + kind_name);
      continue;
    }
    auto require = [&](bool ok, const std::string& what) {
      if (!ok) errors.push_back(kind_name + ": " + name + " must be " + what);
    };
    if (!std::isfinite(value)) {
      require(false, "finite");
    } else if (name == "alpha" || name == "C") {
      require(value > 0, "> 0");
    } else if (name == "k" || name == "epochs" || name == "n_trees") {
      require(is_integer(value) && value >= 1, "an integer >= 1");
    } else if (name == "max_depth" || name == "max_features") {
      require(is_integer(value) && value >= 0, "an integer >= 0");
    } else if (name == "min_samples_split") {
      require(is_integer(value) && value >= 2, "an integer >= 2");
    } else if (name == "bootstrap") {
      require(value == 0 || value == 1, "0 or 1");
    }
  }
  return errors;
}

double ClassifierSpec::param(const std::string& name) const {
  auto it = params.find(name);
  if (it != params.end()) return it->second;
  const auto& defaults = default_hyperparameters(kind);
  auto def = defaults.find(name);
  if (def == defaults.end()) {
    throw ClassifierError("no hyperparameter '" + name + "' for " + std::string(to_string(kind)));
  }
  return def->second;
}

std::size_t ClassifierSpec::count_param(const std::string& name) const {
  return static_cast<std::size_t>(param(name));
}

Json ClassifierSpec::to_json() const {
  Json p = Json::object();
  for (const auto& [name, value] : params) {
    // Integral values are written as integers so files read naturally.
    if (is_integer(value) && std::fabs(value) < 9e15) {
      p[name] = static_cast<std::int64_t>(value);
    } else {
      p[name] = value;
    }
  }
  return Json{{"kind", std::string(to_string(kind))}, {"params", p}, {"seed", seed}};
}

ClassifierSpec ClassifierSpec::from_json(const Json& json) {
  const auto name = json.at("kind").get<std::string>();
  const auto kind = parse_classifier_kind(name);
  if (!kind) throw ClassifierError("unknown classifier kind '" + name + "'");
  Hyperparameters params;
  for (const auto& [key, value] : json.at("params").items()) params[key] = value.get<double>();
  return make_spec(*kind, params, json.at("seed").get<std::uint64_t>());
}

ClassifierSpec make_spec(ClassifierKind kind, const Hyperparameters& overrides, std::uint64_t seed) {
  const auto errors = validate_hyperparameters(kind, overrides);
  if (!errors.empty()) {
    std::string message = errors.front();
    for (std::size_t i = 1; i < errors.size(); ++i) message += "; " + errors[i];
    throw ClassifierError(message);
  }
  ClassifierSpec spec;
  spec.kind = kind;
  spec.params = default_hyperparameters(kind);
  for (const auto& [name, value] : overrides) spec.params[name] = value;
  spec.seed = seed;
  return spec;
}

PipelineOptions default_pipeline_options(ClassifierKind kind) {
  PipelineOptions options;
  if (kind == ClassifierKind::bernoulli_nb) options.scale = false;
  if (kind == ClassifierKind::linear_svm) options.chi2_fraction = 0.30;
  return options;
}

void check_training_data(std::span<const FeatureVector> rows, std::span<const Label> labels) {
  if (rows.size() != labels.size()) {
    throw ClassifierError("got " + std::to_string(rows.size()) + " rows but " +
                          std::to_string(labels.size()) + " labels");
  }
  if (rows.empty()) throw ClassifierError("no training rows");
  const std::size_t dense = rows.front().dense.size();
  const std::size_t sparse = rows.front().sparse_width;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (labels[i] == Label::unlabeled) throw ClassifierError("training row " + std::to_string(i) + " is unlabeled");
    if (rows[i].dense.size() != dense || rows[i].sparse_width != sparse) {
      throw ClassifierError("training rows differ in layout");
    }
    rows[i].for_each_entry([&](std::size_t, double v) {
      if (!std::isfinite(v)) {
        throw ClassifierError("training row " + std::to_string(i) + " has a non-finite value");
      }
    });
  }
}

}  // namespace tweetspam
