#include "tweetspam/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <iomanip>
#include <sstream>

#include <CLI11.hpp>

#include "tweetspam/classify/model.hpp"
#include "tweetspam/common/files.hpp"
#include "tweetspam/common/parallel.hpp"
#include "tweetspam/corpus.hpp"
#include "tweetspam/eval/bench.hpp"
#include "tweetspam/eval/cross_validation.hpp"
#include "tweetspam/eval/grid_search.hpp"
#include "tweetspam/eval/synthetic.hpp"

#ifndef TWEETSPAM_RESOURCE_DIR
#define TWEETSPAM_RESOURCE_DIR "resources"
#endif

namespace tweetspam {

namespace {

const std::vector<std::string> kCommands = {"ingest", "train", "predict", "cv", "gridsearch", "bench"};

bool uses_features(const std::string& command) {
  return command == "train" || command == "cv" || command == "gridsearch";
}

bool uses_classifier(const std::string& command) {
  return command == "train" || command == "cv" || command == "gridsearch";
}

// Parses name=value pairs, reporting malformed entries into `errors`.
Hyperparameters parse_params(const std::vector<std::string>& entries,
                             std::vector<std::string>& errors) {
  Hyperparameters params;
  for (const auto& entry : entries) {
    const auto eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) {
      errors.push_back("--param expects name=value, got '" + entry + "'");
      continue;
    }
    const std::string name = entry.substr(0, eq);
    const std::string text = entry.substr(eq + 1);
    char* end = nullptr;
    const double value = std::strtod(text.c_str(), &end);
    if (text.empty() || end != text.c_str() + text.size()) {
      errors.push_back("--param " + name + " has non-numeric value '" + text + "'");
      continue;
    }
    params[name] = value;
  }
  return params;
}

void require(std::vector<std::string>& errors, const std::string& value, const std::string& flag,
             const std::string& command) {
  if (value.empty()) errors.push_back(command + " requires " + flag);
}

std::string summary(const Metrics& m) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(4) << "precision " << m.precision << ", recall " << m.recall
    << ", f1 " << m.f1;
  return s.str();
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file_atomic(path, text);
  }
}

class Runner {
 public:
  Runner(const RunConfig& config, std::ostream& out, std::ostream& err)
      : c_(config), out_(out), err_(err) {}

  void run() {
    if (c_.command == "ingest") ingest();
    else if (c_.command == "train") train();
    else if (c_.command == "predict") predict();
    else if (c_.command == "cv") cv();
    else if (c_.command == "gridsearch") gridsearch();
    else if (c_.command == "bench") bench();
  }

 private:
  Resources resources() const { return Resources::load(c_.lexicons); }

  ClassifierSpec spec() const {
    std::vector<std::string> ignored;
    return make_spec(*parse_classifier_kind(c_.classifier), parse_params(c_.params, ignored), c_.seed);
  }

  PipelineOptions pipeline_options(ClassifierKind kind) const {
    auto options = default_pipeline_options(kind);
    options.min_df = c_.min_df;
    return options;
  }

  LabeledCorpus labeled_corpus(const std::string& path) const {
    auto corpus = load_corpus(path, c_.strict);
    corpus.require_labeled();
    if (corpus.skipped_count() > 0) {
      err_ << "skipped " << corpus.skipped_count() << " invalid lines in " << path << "\n";
    }
    return corpus;
  }

  void ingest() {
    auto corpus = load_corpus(c_.input, c_.strict);
    if (c_.one_per_user) corpus = sample_one_per_user(corpus, c_.seed);
    write_file_atomic(c_.output, corpus.to_jsonl());
    err_ << "ingested " << corpus.size() << " records (spam " << corpus.count(Label::spam)
         << ", ham " << corpus.count(Label::ham) << ", unlabeled "
         << corpus.count(Label::unlabeled) << "), skipped " << corpus.skipped_count() << "\n";
  }

  void train() {
    const auto res = resources();
    const auto corpus = labeled_corpus(c_.corpus);
    const auto s = spec();
    const auto model = TrainedModel::train(corpus.records(), parse_feature_config(c_.features), s,
                                           res, pipeline_options(s.kind));
    save_model(model, c_.model);
    err_ << "trained " << to_string(s.kind) << " on " << corpus.size() << " records, "
         << model.pipeline().output_width() << " features, wrote " << c_.model << "\n";
  }

  void predict() {
    const auto model = load_model(c_.model);
    const auto res = resources();
    model.check_resources(res);
    if (c_.features_given) {
      const auto requested = parse_feature_config(c_.features);
      if (!(requested == model.pipeline().config())) {
        throw ModelError(ModelError::Kind::incompatible,
                         "model was trained with features '" + model.pipeline().config().to_string() +
                             "', not '" + requested.to_string() + "'");
      }
    }
    const auto input = load_corpus(c_.input, c_.strict);
    const auto predictions = model.predict_batch(input.records(), res);
    std::string text;
    for (std::size_t i = 0; i < predictions.size(); ++i) {
      text += canonical_dump(Json{{"tweet_id", input[i].tweet_id},
                                  {"label", std::string(to_string(predictions[i].label))},
                                  {"score", predictions[i].score}});
      text.push_back('\n');
    }
    emit(c_.output, text, out_);
    err_ << "predicted " << predictions.size() << " records\n";
  }

  void cv() {
    const auto res = resources();
    const auto corpus = labeled_corpus(c_.corpus);
    const auto s = spec();
    const auto plan = stratified_kfold(corpus, c_.k, c_.seed);
    const PreparedCorpus prepared(corpus, parse_feature_config(c_.features), res);
    CvOptions options;
    options.pipeline = pipeline_options(s.kind);
    const auto report = cross_validate(prepared, plan, s, options);
    emit(c_.report, canonical_dump(report.to_json(c_.timings), 2) + "\n", out_);
    err_ << c_.k << "-fold " << to_string(s.kind) << ": " << summary(report.mean) << "\n";
  }

  void gridsearch() {
    const auto res = resources();
    const auto corpus = labeled_corpus(c_.corpus);
    const auto kind = *parse_classifier_kind(c_.classifier);
    Json grid_json;
    try {
      grid_json = Json::parse(read_file(c_.grid));
    } catch (const Json::parse_error& e) {
      throw EvalError("grid file " + c_.grid + " is not valid JSON: " + e.what());
    }
    Grid grid = grid_from_json(grid_json);
    std::vector<std::string> ignored;
    for (const auto& [name, value] : parse_params(c_.params, ignored)) {
      if (!grid.count(name)) grid[name] = {value};
    }
    const auto features = parse_feature_config(c_.features);
    const auto result = grid_search(corpus, features, kind, grid, c_.tune_fraction, c_.k, c_.seed, res);
    emit(c_.output, canonical_dump(result.to_json(), 2) + "\n", out_);
    const auto& best = result.best_point();
    err_ << "best of " << result.points.size() << " points: mean f1 "
         << std::fixed << std::setprecision(4) << best.mean.f1 << "\n";

    if (c_.report.empty()) return;
    std::vector<std::size_t> rest;
    std::size_t t = 0;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      const bool tuning = t < result.tuning_indices.size() && result.tuning_indices[t] == i;
      if (tuning) ++t;
      if (!tuning || c_.include_tuning) rest.push_back(i);
    }
    const auto final_corpus = corpus.subset(rest);
    const auto s = make_spec(kind, best.params, c_.seed);
    const auto plan = stratified_kfold(final_corpus, c_.k, c_.seed);
    const PreparedCorpus prepared(final_corpus, features, res);
    CvOptions options;
    options.pipeline = pipeline_options(kind);
    auto report = cross_validate(prepared, plan, s, options);
    report.config["tuning"] = Json{{"excluded", !c_.include_tuning},
                                   {"size", result.tuning_indices.size()},
                                   {"ids_sha256", result.tuning_ids_digest}};
    emit(c_.report, canonical_dump(report.to_json(c_.timings), 2) + "\n", out_);
    err_ << "final " << c_.k << "-fold on " << final_corpus.size() << " records: "
         << summary(report.mean) << "\n";
  }

  void bench() {
    const auto res = resources();
    LabeledCorpus corpus;
    if (c_.synthetic > 0) {
      PlantedSignalOptions options;
      options.spam = c_.synthetic / 5;
      options.ham = c_.synthetic - options.spam;
      options.seed = c_.seed;
      const auto phrases = res.spam_words.phrases();
      corpus = planted_signal_corpus(options, phrases);
    } else {
      corpus = load_corpus(c_.corpus, c_.strict);
    }
    std::vector<BenchFamily> families;
    for (const auto& name : c_.families) families.push_back(*parse_bench_family(name));
    if (families.empty()) families = all_bench_families();
    const auto report = bench_features(corpus, res, c_.repetitions, families);
    emit(c_.report, canonical_dump(report.to_json(), 2) + "\n", out_);
    if (report.padded) {
      err_ << "corpus of " << report.corpus_size << " cycled to " << report.measured_size << " tweets\n";
    }
    for (const auto& entry : report.entries) {
      err_ << std::left << std::setw(22) << to_string(entry.family) << std::scientific
           << std::setprecision(4) << entry.seconds_per_1000 << " s per 1000 tweets\n";
    }
  }

  const RunConfig& c_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

std::filesystem::path default_resource_dir() { return TWEETSPAM_RESOURCE_DIR; }

Json RunConfig::to_json() const {
  return Json{{"command", command},
              {"corpus", corpus},
              {"input", input},
              {"output", output},
              {"model", model},
              {"report", report},
              {"grid", grid},
              {"lexicons", lexicons},
              {"features", features},
              {"classifier", classifier},
              {"params", params},
              {"k", k},
              {"seed", seed},
              {"tune_fraction", tune_fraction},
              {"include_tuning", include_tuning},
              {"strict", strict},
              {"one_per_user", one_per_user},
              {"min_df", min_df},
              {"timings", timings},
              {"repetitions", repetitions},
              {"families", families},
              {"synthetic", synthetic},
              {"threads", threads}};
}

std::vector<std::string> validate_config(const RunConfig& c) {
  std::vector<std::string> errors;
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) {
    errors.push_back("unknown command '" + c.command + "'");
    return errors;
  }
  const auto& cmd = c.command;
  if (cmd == "ingest") {
    require(errors, c.input, "--input", cmd);
    require(errors, c.output, "--output", cmd);
  } else if (cmd == "train") {
    require(errors, c.corpus, "--corpus", cmd);
    require(errors, c.model, "--model", cmd);
  } else if (cmd == "predict") {
    require(errors, c.model, "--model", cmd);
    require(errors, c.input, "--input", cmd);
    require(errors, c.output, "--output", cmd);
  } else if (cmd == "cv") {
    require(errors, c.corpus, "--corpus", cmd);
  } else if (cmd == "gridsearch") {
    require(errors, c.corpus, "--corpus", cmd);
    require(errors, c.grid, "--grid", cmd);
  } else if (cmd == "bench") {
    if (c.corpus.empty() && c.synthetic == 0) errors.push_back("bench requires --corpus or --synthetic");
    if (!c.corpus.empty() && c.synthetic > 0) errors.push_back("bench takes --corpus or --synthetic, not both");
  }
  if ((cmd == "ingest" || cmd == "predict") && !c.input.empty() && c.input == c.output) {
    errors.push_back("--output must differ from --input");
  }

  if (uses_features(cmd) || (cmd == "predict" && c.features_given)) {
    parse_feature_config(c.features, errors);
  }
  if (uses_classifier(cmd)) {
    const auto kind = parse_classifier_kind(c.classifier);
    auto params = parse_params(c.params, errors);
    if (!kind) {
      errors.push_back("unknown classifier '" + c.classifier +
                       "' (expected bernoulli_nb, knn, linear_svm, decision_tree or random_forest)");
    } else {
      for (auto& e : validate_hyperparameters(*kind, params)) errors.push_back(std::move(e));
    }
    if (c.min_df < 1) errors.push_back("min-df must be >= 1");
  }
  if ((cmd == "cv" || cmd == "gridsearch") && c.k < 2) errors.push_back("k must be >= 2");
  if (cmd == "gridsearch" && !(c.tune_fraction > 0.0 && c.tune_fraction <= 1.0)) {
    errors.push_back("tune-fraction must lie in (0, 1]");
  }
  if (cmd == "bench") {
    if (c.repetitions < 1) errors.push_back("repetitions must be >= 1");
    for (const auto& name : c.families) {
      if (!parse_bench_family(name)) errors.push_back("unknown bench family '" + name + "'");
    }
  }
  return errors;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tweet-level spam detection from tweet-inherent features", "tweetspam"};
  app.set_version_flag("--version", std::string("tweetspam ") + kVersion + "\nmodel format " +
                                        std::to_string(kModelFormatVersion));
  app.require_subcommand(1);

  RunConfig c;
  std::string lexicons;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--lexicons", lexicons, "Resource directory (lexicons, tables)");
    sub->add_option("--threads", c.threads, "Worker thread cap (0 = all cores)");
    sub->add_option("--seed", c.seed, "Random seed");
    sub->add_flag("!--strict,--lenient", c.strict, "Skip invalid input lines instead of failing");
  };
  auto modelling = [&](CLI::App* sub) {
    sub->add_option("--features", c.features, "Feature sets, e.g. user,ngram:uni+bi:tf");
    sub->add_option("--classifier", c.classifier, "bernoulli_nb, knn, linear_svm, decision_tree, random_forest");
    sub->add_option("--param", c.params, "Hyperparameter name=value (repeatable)");
    sub->add_option("--min-df", c.min_df, "Minimum n-gram document frequency");
  };

  auto* ingest = app.add_subcommand("ingest", "Validate a corpus and write it canonically");
  common(ingest);
  ingest->add_option("--input", c.input, "Raw JSONL corpus");
  ingest->add_option("--output", c.output, "Canonical JSONL output");
  ingest->add_flag("--one-per-user", c.one_per_user, "Keep one random tweet per user");

  auto* train = app.add_subcommand("train", "Train a model on a labeled corpus");
  common(train);
  modelling(train);
  train->add_option("--corpus", c.corpus, "Labeled JSONL corpus");
  train->add_option("--model", c.model, "Model file to write");

  auto* predict = app.add_subcommand("predict", "Label tweets with a trained model");
  common(predict);
  predict->add_option("--features", c.features, "Expected feature configuration of the model");
  predict->add_option("--model", c.model, "Model file");
  predict->add_option("--input", c.input, "JSONL tweets");
  predict->add_option("--output", c.output, "JSONL predictions");

  auto* cv = app.add_subcommand("cv", "Stratified k-fold cross-validation");
  common(cv);
  modelling(cv);
  cv->add_option("--corpus", c.corpus, "Labeled JSONL corpus");
  cv->add_option("--k", c.k, "Number of folds");
  cv->add_option("--report", c.report, "Report file (default stdout)");
  cv->add_flag("--timings", c.timings, "Include wall-clock timings in the report");

  auto* grid = app.add_subcommand("gridsearch", "Tune hyperparameters on a stratified subset");
  common(grid);
  modelling(grid);
  grid->add_option("--corpus", c.corpus, "Labeled JSONL corpus");
  grid->add_option("--grid", c.grid, "JSON object of hyperparameter -> values");
  grid->add_option("--k", c.k, "Number of folds");
  grid->add_option("--tune-fraction", c.tune_fraction, "Fraction of each class used for tuning");
  grid->add_option("--output", c.output, "Grid result file (default stdout)");
  grid->add_option("--report", c.report, "Also cross-validate the best point and write this report");
  grid->add_flag("--include-tuning", c.include_tuning, "Keep the tuning subset in the final evaluation");
  grid->add_flag("--timings", c.timings, "Include wall-clock timings in the report");

  auto* bench = app.add_subcommand("bench", "Time feature extraction per 1000 tweets");
  common(bench);
  bench->add_option("--corpus", c.corpus, "JSONL corpus");
  bench->add_option("--synthetic", c.synthetic, "Generate this many synthetic tweets instead");
  bench->add_option("--repetitions", c.repetitions, "Repetitions per family (median reported)");
  bench->add_option("--families", c.families, "Families to time (default all)")->delimiter(',');
  bench->add_option("--report", c.report, "Report file (default stdout)");

  std::vector<std::string> argv_storage{"tweetspam"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  auto* selected = app.get_subcommands().front();
  c.command = selected->get_name();
  const auto* features_option = selected->get_option_no_throw("--features");
  c.features_given = features_option && features_option->count() > 0;
  if (!lexicons.empty()) {
    c.lexicons = lexicons;
  } else if (const char* env = std::getenv(kLexiconDirEnv); env && *env) {
    c.lexicons = env;
  } else {
    c.lexicons = default_resource_dir().string();
  }

  err << "run config: " << canonical_dump(c.to_json()) << "\n";
  const auto errors = validate_config(c);
  if (!errors.empty()) {
    for (const auto& e : errors) err << "error: " << e << "\n";
    return kExitValidation;
  }

  set_max_threads(c.threads);
  try {
    Runner(c, out, err).run();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace tweetspam
