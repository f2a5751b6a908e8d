#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

#include "tweetspam/common/canonical_json.hpp"

namespace tweetspam {

inline constexpr const char* kVersion = "0.1.0";

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitRuntime = 2;

inline constexpr const char* kDefaultFeatures = "user,ngram:bi+tri:tf";
inline constexpr const char* kDefaultClassifier = "random_forest";
inline constexpr std::uint64_t kDefaultSeed = 42;
// Overrides the compiled-in resource directory when --lexicons is absent.
inline constexpr const char* kLexiconDirEnv = "TWEETSPAM_LEXICON_DIR";

struct RunConfig {
  std::string command;  // ingest, train, predict, cv, gridsearch, bench

  std::string corpus;
  std::string input;
  std::string output;
  std::string model;
  std::string report;
  std::string grid;
  std::string lexicons;  // resolved directory

  std::string features = kDefaultFeatures;
  bool features_given = false;
  std::string classifier = kDefaultClassifier;
  std::vector<std::string> params;  // name=value

  std::size_t k = 10;
  std::uint64_t seed = kDefaultSeed;
  double tune_fraction = 0.2;
  bool include_tuning = false;
  bool strict = true;
  bool one_per_user = false;
  std::size_t min_df = 2;
  bool timings = false;
  std::size_t repetitions = 5;
  std::vector<std::string> families;
  std::size_t synthetic = 0;
  std::size_t threads = 0;

  Json to_json() const;
};

// Every problem with `config`, in a stable order; empty when runnable.
std::vector<std::string> validate_config(const RunConfig& config);

// Full command-line entry point. Returns the process exit code.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Directory used when neither --lexicons nor the environment variable is set.
std::filesystem::path default_resource_dir();

}  // namespace tweetspam
