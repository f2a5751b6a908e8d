#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "test_support.hpp"
#include "tweetspam/classify/model.hpp"
#include "tweetspam/cli.hpp"
#include "tweetspam/common/files.hpp"
#include "tweetspam/eval/synthetic.hpp"

using namespace tweetspam;
using tweetspam::testing::shipped_resources;
using tweetspam::testing::TempDir;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  if (args.size() > 0 && args[0] != "--version") {
    args.push_back("--lexicons");
    args.push_back(TWEETSPAM_RESOURCE_DIR);
  }
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_planted(const TempDir& dir, std::size_t ham, std::size_t spam) {
  PlantedSignalOptions options;
  options.ham = ham;
  options.spam = spam;
  const auto phrases = shipped_resources().spam_words.phrases();
  const auto path = (dir / "corpus.jsonl").string();
  write_file_atomic(path, planted_signal_corpus(options, phrases).to_jsonl());
  return path;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("version prints tool and model format") {
  const auto r = invoke({"--version"});
  CHECK(r.code == kExitOk);
  CHECK(contains(r.out, kVersion));
  CHECK(contains(r.out, "model format " + std::to_string(kModelFormatVersion)));
}

TEST_CASE("configuration validation") {
  RunConfig c;
  c.command = "cv";
  c.corpus = "c.jsonl";
  CHECK(validate_config(c).empty());
  c.k = 1;
  c.features = "ngram:quad:tf";
  const auto errors = validate_config(c);
  REQUIRE(errors.size() == 2);
  CHECK(contains(errors[0], "quad"));
  CHECK(errors[1] == "k must be >= 2");
  c = RunConfig{};
  c.command = "ingest";
  c.input = c.output = "same.jsonl";
  CHECK(validate_config(c) == std::vector<std::string>{"--output must differ from --input"});
}

TEST_CASE("usage errors exit with the validation code") {
  CHECK(invoke({}).code == kExitValidation);
  CHECK(invoke({"launch"}).code == kExitValidation);
  const auto r = invoke({"cv", "--k", "1", "--classifier", "nope"});
  CHECK(r.code == kExitValidation);
  CHECK(contains(r.err, "k must be >= 2"));
  CHECK(contains(r.err, "unknown classifier 'nope'"));
  CHECK(contains(r.err, "cv requires --corpus"));
  CHECK(invoke({"train", "--corpus", "x", "--model", "y", "--param", "n_trees=abc"}).code == kExitValidation);
}

TEST_CASE("runtime failures exit with the runtime code") {
  TempDir dir;
  const auto r = invoke({"cv", "--corpus", (dir / "missing.jsonl").string()});
  CHECK(r.code == kExitRuntime);
  CHECK(contains(r.err, "error:"));
}

TEST_CASE("cv writes a report") {
  TempDir dir;
  const auto corpus = write_planted(dir, 60, 20);
  const auto report = (dir / "r.json").string();
  const auto r = invoke({"cv", "--corpus", corpus, "--features", "user", "--classifier", "rf", "--k", "10",
                         "--seed", "42", "--report", report, "--param", "n_trees=10"});
  REQUIRE(r.code == kExitOk);
  const auto json = Json::parse(read_file(report));
  CHECK(json.at("folds").size() == 10);
  CHECK(json.at("seed") == 42);
  CHECK(json.at("config").at("features") == "user");
  CHECK(json.at("config").at("classifier").at("params").at("n_trees") == 10);
  for (const auto& key : {"precision", "recall", "f1"}) {
    CHECK(json.at("mean").contains(key));
    CHECK(json.at("std").contains(key));
  }
  CHECK(contains(r.err, "run config:"));
}

TEST_CASE("train then predict writes one line per tweet") {
  TempDir dir;
  const auto corpus = write_planted(dir, 60, 20);
  const auto model = (dir / "m.json").string();
  REQUIRE(invoke({"train", "--features", "ngram:uni+bi:tf,user", "--corpus", corpus, "--model", model,
                  "--classifier", "nb"})
              .code == kExitOk);
  const auto predictions = (dir / "p.jsonl").string();
  REQUIRE(invoke({"predict", "--model", model, "--input", corpus, "--output", predictions}).code == kExitOk);
  std::istringstream lines(read_file(predictions));
  std::string line;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    const auto j = Json::parse(line);
    CHECK(j.contains("tweet_id"));
    CHECK(j.contains("label"));
    CHECK(j.contains("score"));
    ++count;
  }
  CHECK(count == 80);

  const auto mismatch = invoke({"predict", "--model", model, "--input", corpus, "--output", predictions,
                                "--features", "user"});
  CHECK(mismatch.code == kExitRuntime);
  CHECK(contains(mismatch.err, "trained with features"));
}

TEST_CASE("predict with a corrupted model reports the checksum") {
  TempDir dir;
  const auto corpus = write_planted(dir, 30, 10);
  const auto model = (dir / "m.json").string();
  REQUIRE(invoke({"train", "--features", "user", "--corpus", corpus, "--model", model, "--classifier", "tree"})
              .code == kExitOk);
  auto text = read_file(model);
  const auto pos = text.find("\"ham\":[") + 7;
  text[pos] = text[pos] == '9' ? '8' : '9';
  write_file_atomic(model, text);
  const auto r = invoke({"predict", "--model", model, "--input", corpus, "--output", (dir / "p.jsonl").string()});
  CHECK(r.code == kExitRuntime);
  CHECK(contains(r.err, "checksum"));
}

TEST_CASE("ingest canonicalises and samples per user") {
  TempDir dir;
  const auto corpus = write_planted(dir, 30, 10);
  const auto out = (dir / "clean.jsonl").string();
  REQUIRE(invoke({"ingest", "--input", corpus, "--output", out, "--one-per-user"}).code == kExitOk);
  CHECK(read_file(out) == read_file(corpus));
  CHECK(invoke({"ingest", "--input", corpus, "--output", corpus}).code == kExitValidation);
}

TEST_CASE("gridsearch writes results and an optional final report") {
  TempDir dir;
  const auto corpus = write_planted(dir, 100, 30);
  const auto grid = (dir / "grid.json").string();
  write_file_atomic(grid, R"({"max_depth": [1, 0]})");
  const auto out = (dir / "g.json").string();
  const auto report = (dir / "final.json").string();
  const auto r = invoke({"gridsearch", "--corpus", corpus, "--grid", grid, "--classifier", "tree", "--features",
                         "user", "--k", "3", "--tune-fraction", "0.5", "--output", out, "--report", report});
  REQUIRE(r.code == kExitOk);
  const auto result = Json::parse(read_file(out));
  CHECK(result.at("points").size() == 2);
  const auto final_report = Json::parse(read_file(report));
  CHECK(final_report.at("config").at("tuning").at("excluded") == true);
  CHECK(final_report.at("config").at("corpus_size") == 130 - result.at("tuning").at("size").get<int>());
}

TEST_CASE("bench on synthetic tweets") {
  TempDir dir;
  const auto report = (dir / "b.json").string();
  REQUIRE(invoke({"bench", "--synthetic", "200", "--repetitions", "1", "--families", "user,pos", "--report", report})
              .code == kExitOk);
  const auto json = Json::parse(read_file(report));
  CHECK(json.at("families").size() == 2);
  CHECK(invoke({"bench", "--synthetic", "10", "--families", "everything"}).code == kExitValidation);
}

TEST_CASE("thread cap does not change outputs") {
  TempDir dir;
  const auto corpus = write_planted(dir, 60, 20);
  auto report_with = [&](const std::string& threads) {
    const auto path = (dir / ("r" + threads + ".json")).string();
    REQUIRE(invoke({"cv", "--corpus", corpus, "--k", "3", "--threads", threads, "--param", "n_trees=8",
                    "--report", path})
                .code == kExitOk);
    return read_file(path);
  };
  CHECK(report_with("1") == report_with("4"));
}
