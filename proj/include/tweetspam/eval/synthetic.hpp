#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

#include "tweetspam/corpus.hpp"

namespace tweetspam {

// Synthetic corpus with a known spam signal. Ham tweets are benign chatter
// from accounts with moderate follower and following counts; spam tweets
// carry a spam-lexicon phrase and a link with the given probabilities and come
// from young accounts that follow far more users than follow them back.
struct PlantedSignalOptions {
  std::size_t ham = 2000;
  std::size_t spam = 500;
  double phrase_probability = 0.8;
  double url_probability = 0.9;
  double ham_url_probability = 0.2;
  std::uint64_t seed = 1;
};

// Every tweet has its own user. Records are shuffled into a seeded order.
LabeledCorpus planted_signal_corpus(const PlantedSignalOptions& options,
                                    std::span<const std::string> spam_phrases);

}  // namespace tweetspam
