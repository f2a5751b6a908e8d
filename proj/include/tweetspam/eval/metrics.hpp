#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tweetspam/common/canonical_json.hpp"
#include "tweetspam/common/error.hpp"
#include "tweetspam/corpus.hpp"

namespace tweetspam {

class EvalError : public Error {
 public:
  using Error::Error;
};

// Spam is the positive class.
struct ConfusionMatrix {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t fn = 0;
  std::uint64_t tn = 0;

  std::uint64_t total() const { return tp + fp + fn + tn; }
  ConfusionMatrix& operator+=(const ConfusionMatrix& other);
  bool operator==(const ConfusionMatrix&) const = default;
};

struct Metrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;

  bool operator==(const Metrics&) const = default;
};

// Throws EvalError on a length mismatch or an unlabeled entry.
ConfusionMatrix confusion(std::span<const Label> gold, std::span<const Label> predicted);

// Zero denominators give zero.
Metrics prf1(const ConfusionMatrix& cm);

// Element-wise mean and population standard deviation.
Metrics mean_metrics(std::span<const Metrics> values);
Metrics std_metrics(std::span<const Metrics> values);

Json to_json(const ConfusionMatrix& cm);
Json to_json(const Metrics& m);

}  // namespace tweetspam
