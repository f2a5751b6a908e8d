#include "tweetspam/eval/bench.hpp"

#include <algorithm>
#include <chrono>

#include "tweetspam/eval/metrics.hpp"

namespace tweetspam {

namespace {

constexpr std::size_t kMinimumTweets = 1000;

// Keeps results observable so the timed work is not optimised away.
volatile double g_sink = 0.0;

double run_family(BenchFamily family, const std::vector<const TweetRecord*>& records,
                  const Resources& resources) {
  double acc = 0.0;
  const auto& text = resources.text;
  auto prepare = [&](const TweetRecord& r) {
    auto normalized = preprocess(r.text, text);
    auto tokens = tokenize(normalized, text);
    return std::make_pair(std::move(normalized), std::move(tokens));
  };
  switch (family) {
    case BenchFamily::user:
      for (const auto* r : records) acc += user_features(*r).values[0];
      break;
    case BenchFamily::ngram: {
      std::vector<std::vector<std::string>> units;
      units.reserve(records.size());
      for (const auto* r : records) units.push_back(ngram_units(prepare(*r).second));
      const auto vocab = build_vocabulary(units, NgramOrders::uni_bi, 1);
      for (const auto& u : units) acc += static_cast<double>(ngram_vectorize(u, vocab, Weighting::tf).size());
      break;
    }
    case BenchFamily::sentiment:
      for (const auto* r : records) {
        const auto tokens = prepare(*r).second;
        acc += sentiment_features(strip_for_sentiment(tokens), resources.sentiment).values[2];
      }
      break;
    case BenchFamily::spam_words:
      for (const auto* r : records) {
        acc += static_cast<double>(resources.spam_words.count_matches(lower_words(prepare(*r).second)));
      }
      break;
    case BenchFamily::pos:
      for (const auto* r : records) {
        auto [normalized, tokens] = prepare(*r);
        const auto tags = pos_tag(tokens, text);
        acc += content_features(normalized, tokens, tags, resources.spam_words, {false, true}).values[0];
      }
      break;
    case BenchFamily::content:
    case BenchFamily::content_without_nsw:
    case BenchFamily::content_without_pos: {
      const ContentOptions options{family != BenchFamily::content_without_nsw,
                                   family != BenchFamily::content_without_pos};
      for (const auto* r : records) {
        auto [normalized, tokens] = prepare(*r);
        const TagSeq tags = options.pos_counts ? pos_tag(tokens, text) : TagSeq{};
        acc += content_features(normalized, tokens, tags, resources.spam_words, options).values[0];
      }
      break;
    }
  }
  return acc;
}

}  // namespace

std::string_view to_string(BenchFamily family) {
  switch (family) {
    case BenchFamily::user: return "user";
    case BenchFamily::ngram: return "ngram";
    case BenchFamily::sentiment: return "sentiment";
    case BenchFamily::spam_words: return "spam_words";
    case BenchFamily::pos: return "pos";
    case BenchFamily::content: return "content";
    case BenchFamily::content_without_nsw: return "content_without_nsw";
    case BenchFamily::content_without_pos: return "content_without_pos";
  }
  return "user";
}

std::optional<BenchFamily> parse_bench_family(std::string_view name) {
  for (auto family : all_bench_families()) {
    if (to_string(family) == name) return family;
  }
  return std::nullopt;
}

const std::vector<BenchFamily>& all_bench_families() {
  static const std::vector<BenchFamily> families = {
      BenchFamily::user,       BenchFamily::ngram,   BenchFamily::sentiment,
      BenchFamily::spam_words, BenchFamily::pos,     BenchFamily::content,
      BenchFamily::content_without_nsw, BenchFamily::content_without_pos};
  return families;
}

const BenchEntry* BenchReport::find(BenchFamily family) const {
  for (const auto& entry : entries) {
    if (entry.family == family) return &entry;
  }
  return nullptr;
}

Json BenchReport::to_json() const {
  Json families = Json::object();
  for (const auto& entry : entries) {
    families[std::string(to_string(entry.family))] =
        Json{{"seconds_per_1000", entry.seconds_per_1000}, {"samples", entry.samples}};
  }
  return Json{{"corpus_size", corpus_size},
              {"measured_size", measured_size},
              {"padded", padded},
              {"repetitions", repetitions},
              {"lower_variance", lower_variance},
              {"families", families}};
}

BenchReport bench_features(const LabeledCorpus& corpus, const Resources& resources,
                           std::size_t repetitions, std::span<const BenchFamily> families) {
  if (corpus.empty()) throw EvalError("cannot benchmark an empty corpus");
  if (repetitions == 0) throw EvalError("repetitions must be >= 1");
  BenchReport report;
  report.corpus_size = corpus.size();
  report.measured_size = std::max(corpus.size(), kMinimumTweets);
  report.padded = corpus.size() < kMinimumTweets;
  report.repetitions = repetitions;
  report.lower_variance = repetitions >= kLowerVarianceRepetitions;

  std::vector<const TweetRecord*> records;
  records.reserve(report.measured_size);
  for (std::size_t i = 0; i < report.measured_size; ++i) records.push_back(&corpus[i % corpus.size()]);

  for (auto family : families) {
    BenchEntry entry;
    entry.family = family;
    for (std::size_t rep = 0; rep < repetitions; ++rep) {
      const auto start = std::chrono::steady_clock::now();
      g_sink = g_sink + run_family(family, records, resources);
      const double seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      entry.samples.push_back(seconds * 1000.0 / static_cast<double>(records.size()));
    }
    auto sorted = entry.samples;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t mid = sorted.size() / 2;
    entry.seconds_per_1000 =
        sorted.size() % 2 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2.0;
    report.entries.push_back(std::move(entry));
  }
  return report;
}

}  // namespace tweetspam
