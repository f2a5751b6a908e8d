#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "tweetspam/corpus.hpp"
#include "tweetspam/features/pipeline.hpp"

namespace tweetspam {

// Timed extraction units. Each starts from the raw record, so text families
// include preprocessing and tokenization.
enum class BenchFamily {
  user,
  ngram,
  sentiment,
  spam_words,
  pos,
  content,
  content_without_nsw,  // content without spam-word matching
  content_without_pos,  // content without tagging and tag counts
};

std::string_view to_string(BenchFamily family);
std::optional<BenchFamily> parse_bench_family(std::string_view name);
const std::vector<BenchFamily>& all_bench_families();

struct BenchEntry {
  BenchFamily family = BenchFamily::user;
  // Median over repetitions.
  double seconds_per_1000 = 0.0;
  std::vector<double> samples;
};

struct BenchReport {
  std::size_t corpus_size = 0;
  // Tweets timed per repetition; corpora under 1000 are cycled up to 1000.
  std::size_t measured_size = 0;
  bool padded = false;
  std::size_t repetitions = 0;
  // Set when the median is taken over at least 5 repetitions.
  bool lower_variance = false;
  std::vector<BenchEntry> entries;

  const BenchEntry* find(BenchFamily family) const;
  Json to_json() const;
};

inline constexpr std::size_t kLowerVarianceRepetitions = 5;

// Single-threaded so figures are comparable across machines' core counts.
BenchReport bench_features(const LabeledCorpus& corpus, const Resources& resources,
                           std::size_t repetitions,
                           std::span<const BenchFamily> families = all_bench_families());

}  // namespace tweetspam
