#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "test_support.hpp"
#include "tweetspam/classify/forest.hpp"
#include "tweetspam/classify/knn.hpp"
#include "tweetspam/classify/linear_svm.hpp"
#include "tweetspam/classify/model.hpp"
#include "tweetspam/classify/naive_bayes.hpp"
#include "tweetspam/classify/tree.hpp"
#include "tweetspam/common/files.hpp"
#include "tweetspam/eval/synthetic.hpp"

using namespace tweetspam;
using tweetspam::testing::make_record;
using tweetspam::testing::shipped_resources;

namespace {

FeatureVector row(std::vector<double> values) { return FeatureVector{std::move(values), {}, 0}; }

const std::vector<TweetRecord>& planted_records() {
  static const auto corpus = [] {
    PlantedSignalOptions options;
    options.ham = 160;
    options.spam = 40;
    const auto phrases = shipped_resources().spam_words.phrases();
    return planted_signal_corpus(options, phrases);
  }();
  return corpus.records();
}

TrainedModel small_model(ClassifierKind kind, std::uint64_t seed = 5) {
  return TrainedModel::train(planted_records(), parse_feature_config("user,content,ngram:uni+bi:tf"),
                             make_spec(kind, {}, seed), shipped_resources());
}

ModelError::Kind load_error(std::string_view text, int expected_version = kModelFormatVersion) {
  try {
    parse_model(text, expected_version);
  } catch (const ModelError& e) {
    return e.kind();
  }
  FAIL("model parsed");
  return ModelError::Kind::io;
}

}  // namespace

TEST_CASE("naive bayes laplace estimates") {
  const auto nb = BernoulliNB::fit(std::vector<FeatureVector>{row({1}), row({0})},
                                   std::vector<Label>{Label::spam, Label::ham}, 1.0);
  CHECK(nb.feature_probability(1, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(nb.feature_probability(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("naive bayes with huge alpha follows the prior") {
  const std::vector<FeatureVector> rows = {row({1, 0}), row({1, 1}), row({0, 1}), row({0, 0})};
  const std::vector<Label> labels = {Label::spam, Label::ham, Label::ham, Label::ham};
  const auto nb = BernoulliNB::fit(rows, labels, 1e9);
  for (std::size_t c = 0; c < 2; ++c) {
    for (std::size_t f = 0; f < 2; ++f) CHECK(nb.feature_probability(c, f) == doctest::Approx(0.5).epsilon(1e-6));
  }
  for (const auto& x : rows) {
    CHECK(nb.predict(x).label == Label::ham);
    CHECK(nb.posterior_spam(x) == doctest::Approx(0.25).epsilon(1e-6));
  }
}

TEST_CASE("naive bayes on eight documents matches brute-force Bayes") {
  const std::vector<FeatureVector> rows = {row({1, 0, 1}), row({1, 1, 0}), row({0, 0, 1}), row({1, 1, 1}),
                                           row({0, 1, 0}), row({0, 0, 0}), row({1, 0, 0}), row({0, 1, 1})};
  const std::vector<Label> labels = {Label::spam, Label::spam, Label::spam, Label::ham,
                                     Label::ham,  Label::ham,  Label::ham,  Label::ham};
  const auto nb = BernoulliNB::fit(rows, labels, 1.0);
  for (unsigned x = 0; x < 8; ++x) {
    double joint[2];
    for (int c = 0; c < 2; ++c) {
      double n_c = 0, p = 1;
      std::vector<double> present(3, 0);
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if ((labels[i] == Label::spam) != (c == 1)) continue;
        n_c += 1;
        for (int f = 0; f < 3; ++f) present[f] += rows[i].dense[f];
      }
      for (int f = 0; f < 3; ++f) {
        const double theta = (present[f] + 1) / (n_c + 2);
        p *= (x >> f) & 1 ? theta : 1 - theta;
      }
      joint[c] = p * n_c / 8.0;
    }
    const FeatureVector q = row({double(x & 1), double((x >> 1) & 1), double((x >> 2) & 1)});
    CHECK(std::abs(nb.posterior_spam(q) - joint[1] / (joint[0] + joint[1])) <= 1e-9);
  }
}

TEST_CASE("naive bayes needs both classes and round-trips") {
  CHECK_THROWS_AS(BernoulliNB::fit(std::vector<FeatureVector>{row({1})}, std::vector<Label>{Label::spam}, 1.0),
                  ClassifierError);
  const auto nb = BernoulliNB::fit(std::vector<FeatureVector>{row({1, 0}), row({0, 3})},
                                   std::vector<Label>{Label::spam, Label::ham}, 0.5);
  const auto back = BernoulliNB::from_json(nb.to_json());
  CHECK(back.log_joint(row({1, 1})) == nb.log_joint(row({1, 1})));
}

TEST_CASE("knn with k=1 returns a training point's own label") {
  std::mt19937_64 gen(3);
  std::vector<FeatureVector> rows;
  std::vector<Label> labels;
  for (int i = 0; i < 40; ++i) {
    rows.push_back(row({double(gen() % 1000), double(gen() % 1000)}));
    labels.push_back(i % 3 ? Label::ham : Label::spam);
  }
  const auto knn = Knn::fit(rows, labels, 1);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(knn.predict(rows[i]).label == labels[i]);
}

TEST_CASE("knn with k=n predicts the global majority") {
  const std::vector<FeatureVector> rows = {row({0}), row({1}), row({2}), row({10}), row({11})};
  const std::vector<Label> labels = {Label::ham, Label::ham, Label::ham, Label::spam, Label::spam};
  const auto knn = Knn::fit(rows, labels, 5);
  for (double q : {-5.0, 0.0, 10.5, 100.0}) CHECK(knn.predict(row({q})).label == Label::ham);
  CHECK_THROWS_AS(Knn::fit(rows, labels, 6), ClassifierError);
}

TEST_CASE("knn vote tie goes to the closer class, then ham") {
  const std::vector<FeatureVector> rows = {row({0}), row({3})};
  const auto knn = Knn::fit(rows, std::vector<Label>{Label::spam, Label::ham}, 2);
  CHECK(knn.predict(row({1})).label == Label::spam);
  CHECK(knn.predict(row({2})).label == Label::ham);
  CHECK(knn.predict(row({1.5})).label == Label::ham);
}

TEST_CASE("knn serialization round-trips sparse rows") {
  const std::vector<FeatureVector> rows = {{{0.5}, {{1, 2.0}}, 3}, {{-0.5}, {}, 3}};
  const auto knn = Knn::fit(rows, std::vector<Label>{Label::spam, Label::ham}, 1);
  const auto back = Knn::from_json(Json::parse(canonical_dump(knn.to_json())));
  CHECK(canonical_dump(back.to_json()) == canonical_dump(knn.to_json()));
  CHECK(back.predict(rows[0]).label == Label::spam);
}

TEST_CASE("svm separates two points") {
  const std::vector<FeatureVector> rows = {row({-1}), row({1})};
  const auto svm = LinearSvm::fit(rows, std::vector<Label>{Label::ham, Label::spam}, 1.0, 10, 1);
  CHECK(svm.predict(rows[0]).label == Label::ham);
  CHECK(svm.predict(rows[1]).label == Label::spam);
}

TEST_CASE("svm leaves zero columns at zero weight") {
  std::mt19937_64 gen(8);
  std::vector<FeatureVector> rows;
  std::vector<Label> labels;
  for (int i = 0; i < 60; ++i) {
    const bool spam = i % 2;
    rows.push_back(row({0.0, spam ? 0.5 + (gen() % 50) / 100.0 : -0.5 - (gen() % 50) / 100.0, 0.0}));
    labels.push_back(spam ? Label::spam : Label::ham);
  }
  const auto svm = LinearSvm::fit(rows, labels, 1.0, 20, 2);
  CHECK(std::abs(svm.weights()[0]) < 1e-6);
  CHECK(std::abs(svm.weights()[2]) < 1e-6);
  CHECK(std::abs(svm.weights()[1]) > 0.1);
}

TEST_CASE("svm fits a separable two-dimensional set") {
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<FeatureVector> rows;
  std::vector<Label> labels;
  while (rows.size() < 100) {
    const double x = u(gen), y = u(gen);
    const double side = (x + y) / std::sqrt(2.0);
    if (std::abs(side) < 0.25) continue;  // margin 0.5 around the line x + y = 0
    rows.push_back(row({x, y}));
    labels.push_back(side > 0 ? Label::spam : Label::ham);
  }
  const auto svm = LinearSvm::fit(rows, labels, 10.0, 50, 4);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) correct += svm.predict(rows[i]).label == labels[i];
  CHECK(correct == rows.size());
  const auto& trace = svm.objective_trace();
  REQUIRE(trace.size() == 51);
  CHECK(trace.back() < trace.front());
}

TEST_CASE("svm is reproducible per seed") {
  const std::vector<FeatureVector> rows = {row({-1, 0.2}), row({1, 0.1}), row({-0.5, 0.3}), row({0.7, -0.4})};
  const std::vector<Label> labels = {Label::ham, Label::spam, Label::ham, Label::spam};
  CHECK(canonical_dump(LinearSvm::fit(rows, labels, 1, 5, 9).to_json()) ==
        canonical_dump(LinearSvm::fit(rows, labels, 1, 5, 9).to_json()));
}

TEST_CASE("tree splits separable one-dimensional data at the root") {
  std::vector<FeatureVector> rows;
  std::vector<Label> labels;
  for (int i = -5; i < 5; ++i) {
    rows.push_back(row({double(i)}));
    labels.push_back(i < 0 ? Label::ham : Label::spam);
  }
  const auto tree = DecisionTree::fit(rows, labels, {});
  CHECK(tree.depth() == 1);
  CHECK(tree.nodes()[0].threshold == -0.5);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(tree.predict(rows[i]).label == labels[i]);
}

TEST_CASE("pure input gives a single leaf") {
  const std::vector<FeatureVector> rows = {row({1}), row({2}), row({3})};
  const auto tree = DecisionTree::fit(rows, std::vector<Label>(3, Label::spam), {});
  REQUIRE(tree.nodes().size() == 1);
  CHECK(tree.nodes()[0].is_leaf());
  CHECK(tree.predict(row({0})).label == Label::spam);
}

TEST_CASE("tree limits and serialization") {
  std::mt19937_64 gen(21);
  std::vector<FeatureVector> rows;
  std::vector<Label> labels;
  for (int i = 0; i < 200; ++i) {
    rows.push_back({{double(gen() % 10), double(gen() % 10)}, {{std::uint32_t(gen() % 4), 1.0}}, 4});
    labels.push_back(gen() % 2 ? Label::spam : Label::ham);
  }
  TreeParams params;
  params.max_depth = 3;
  const auto shallow = DecisionTree::fit(rows, labels, params);
  CHECK(shallow.depth() <= 3);
  const auto deep = DecisionTree::fit(rows, labels, {});
  const auto back = DecisionTree::from_json(Json::parse(canonical_dump(deep.to_json())));
  CHECK(back == deep);
  params = {};
  params.min_samples_split = 500;
  CHECK(DecisionTree::fit(rows, labels, params).nodes().size() == 1);
}

TEST_CASE("a one-tree forest without sampling is a plain tree") {
  std::mt19937_64 gen(31);
  std::vector<FeatureVector> rows;
  std::vector<Label> labels;
  for (int i = 0; i < 120; ++i) {
    rows.push_back({{double(gen() % 7), double(gen() % 5), double(gen() % 3)}, {{std::uint32_t(gen() % 6), 2.0}}, 6});
    labels.push_back(gen() % 3 ? Label::ham : Label::spam);
  }
  ForestParams params;
  params.n_trees = 1;
  params.bootstrap = false;
  params.max_features = rows[0].width();
  const auto forest = RandomForest::fit(rows, labels, params, 77);
  CHECK(forest.trees()[0] == DecisionTree::fit(rows, labels, {}));
  for (const auto& x : rows) CHECK(forest.predict(x).label == forest.trees()[0].predict(x).label);
}

TEST_CASE("forests are byte-identical for a seed") {
  std::mt19937_64 gen(41);
  std::vector<FeatureVector> rows;
  std::vector<Label> labels;
  for (int i = 0; i < 150; ++i) {
    rows.push_back(row({double(gen() % 9), double(gen() % 9), double(gen() % 9), double(gen() % 9)}));
    labels.push_back(gen() % 2 ? Label::spam : Label::ham);
  }
  ForestParams params;
  params.n_trees = 15;
  const auto a = canonical_dump(RandomForest::fit(rows, labels, params, 5).to_json());
  CHECK(a == canonical_dump(RandomForest::fit(rows, labels, params, 5).to_json()));
  CHECK(a != canonical_dump(RandomForest::fit(rows, labels, params, 6).to_json()));
  CHECK(resolve_max_features(0, 16) == 4);
  CHECK(resolve_max_features(0, 3) == 1);
}

TEST_CASE("specs fill defaults and report every bad value") {
  const auto spec = make_spec(ClassifierKind::knn);
  CHECK(spec.count_param("k") == 5);
  CHECK(parse_classifier_kind("rf") == ClassifierKind::random_forest);
  CHECK(parse_classifier_kind("svm") == ClassifierKind::linear_svm);
  CHECK_FALSE(parse_classifier_kind("perceptron"));
  const auto errors = validate_hyperparameters(ClassifierKind::knn, {{"k", 0.5}, {"depth", 3}});
  CHECK(errors.size() == 2);
  CHECK_THROWS_AS(make_spec(ClassifierKind::linear_svm, {{"C", -1}}), ClassifierError);
  CHECK(ClassifierSpec::from_json(spec.to_json()) == spec);
  CHECK(default_pipeline_options(ClassifierKind::bernoulli_nb).scale == false);
  CHECK(default_pipeline_options(ClassifierKind::linear_svm).chi2_fraction == 0.3);
  CHECK_FALSE(default_pipeline_options(ClassifierKind::random_forest).chi2_fraction);
}

TEST_CASE("model files round-trip byte for byte for every classifier") {
  testing::TempDir dir;
  for (auto kind : {ClassifierKind::bernoulli_nb, ClassifierKind::knn, ClassifierKind::linear_svm,
                    ClassifierKind::decision_tree, ClassifierKind::random_forest}) {
    CAPTURE(to_string(kind));
    const auto model = small_model(kind);
    save_model(model, dir / "a.json");
    const auto loaded = load_model(dir / "a.json");
    save_model(loaded, dir / "b.json");
    CHECK(read_file(dir / "a.json") == read_file(dir / "b.json"));
    for (std::size_t i = 0; i < 20; ++i) {
      CHECK(loaded.predict(planted_records()[i], shipped_resources()) ==
            model.predict(planted_records()[i], shipped_resources()));
    }
  }
}

TEST_CASE("damaged model files are rejected with the right kind") {
  const auto text = serialize_model(small_model(ClassifierKind::decision_tree));
  CHECK_NOTHROW(parse_model(text));

  auto corrupted = text;
  const auto pos = corrupted.find("\"threshold\":[") + 14;
  corrupted[pos] = corrupted[pos] == '1' ? '2' : '1';
  CHECK(load_error(corrupted) == ModelError::Kind::checksum);

  CHECK(load_error(text.substr(0, text.size() / 2)) == ModelError::Kind::truncated);
  CHECK(load_error(text, kModelFormatVersion + 1) == ModelError::Kind::version);

  auto future = Json::parse(text);
  future["format_version"] = kModelFormatVersion + 1;
  CHECK(load_error(canonical_dump(future)) == ModelError::Kind::version);
  CHECK_THROWS_AS(load_model("/nonexistent/model.json"), ModelError);
}

TEST_CASE("models refuse different resources") {
  const auto model = small_model(ClassifierKind::bernoulli_nb);
  auto other = shipped_resources();
  other.spam_words = SpamLexicon(std::vector<std::string>{"different"});
  try {
    model.check_resources(other);
    FAIL("accepted different resources");
  } catch (const ModelError& e) {
    CHECK(e.kind() == ModelError::Kind::incompatible);
  }
  CHECK_THROWS_AS(model.predict_batch(planted_records(), other), ModelError);
}

TEST_CASE("unseen vocabulary falls back to priors") {
  const auto model = small_model(ClassifierKind::bernoulli_nb);
  auto record = make_record("new", "zyxw vutsr qpon");
  const auto p = model.predict(record, shipped_resources());
  CHECK(p.score >= 0.0);
  CHECK(p.score <= 1.0);
}

TEST_CASE("batch prediction equals one-at-a-time prediction") {
  const auto model = small_model(ClassifierKind::random_forest, 13);
  PlantedSignalOptions options;
  options.ham = 800;
  options.spam = 200;
  options.seed = 99;
  const auto phrases = shipped_resources().spam_words.phrases();
  const auto corpus = planted_signal_corpus(options, phrases);
  const auto batch = model.predict_batch(corpus.records(), shipped_resources());
  REQUIRE(batch.size() == 1000);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    CHECK(batch[i] == model.predict(corpus[i], shipped_resources()));
  }
  const auto again = small_model(ClassifierKind::random_forest, 13);
  CHECK(again.predict(planted_records()[0], shipped_resources()) ==
        model.predict(planted_records()[0], shipped_resources()));
}
