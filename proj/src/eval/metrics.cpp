#include "tweetspam/eval/metrics.hpp"

#include <cmath>

namespace tweetspam {

ConfusionMatrix& ConfusionMatrix::operator+=(const ConfusionMatrix& other) {
  tp += other.tp;
  fp += other.fp;
  fn += other.fn;
  tn += other.tn;
  return *this;
}

ConfusionMatrix confusion(std::span<const Label> gold, std::span<const Label> predicted) {
  if (gold.size() != predicted.size()) {
    throw EvalError("confusion needs equal lengths, got " + std::to_string(gold.size()) + " and " +
                    std::to_string(predicted.size()));
  }
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < gold.size(); ++i) {
    if (gold[i] == Label::unlabeled || predicted[i] == Label::unlabeled) {
      throw EvalError("confusion received an unlabeled entry at position " + std::to_string(i));
    }
    const bool g = gold[i] == Label::spam;
    const bool p = predicted[i] == Label::spam;
    if (g && p) ++cm.tp;
    else if (!g && p) ++cm.fp;
    else if (g && !p) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

Metrics prf1(const ConfusionMatrix& cm) {
  Metrics m;
  const auto tp = static_cast<double>(cm.tp);
  if (cm.tp + cm.fp > 0) m.precision = tp / static_cast<double>(cm.tp + cm.fp);
  if (cm.tp + cm.fn > 0) m.recall = tp / static_cast<double>(cm.tp + cm.fn);
  if (m.precision + m.recall > 0) {
    m.f1 = 2.0 * m.precision * m.recall / (m.precision + m.recall);
  }
  return m;
}

Metrics mean_metrics(std::span<const Metrics> values) {
  Metrics sum;
  if (values.empty()) return sum;
  for (const auto& m : values) {
    sum.precision += m.precision;
    sum.recall += m.recall;
    sum.f1 += m.f1;
  }
  const auto n = static_cast<double>(values.size());
  return {sum.precision / n, sum.recall / n, sum.f1 / n};
}

Metrics std_metrics(std::span<const Metrics> values) {
  Metrics out;
  if (values.empty()) return out;
  const Metrics mean = mean_metrics(values);
  for (const auto& m : values) {
    out.precision += (m.precision - mean.precision) * (m.precision - mean.precision);
    out.recall += (m.recall - mean.recall) * (m.recall - mean.recall);
    out.f1 += (m.f1 - mean.f1) * (m.f1 - mean.f1);
  }
  const auto n = static_cast<double>(values.size());
  return {std::sqrt(out.precision / n), std::sqrt(out.recall / n), std::sqrt(out.f1 / n)};
}

Json to_json(const ConfusionMatrix& cm) {
  return Json{{"tp", cm.tp}, {"fp", cm.fp}, {"fn", cm.fn}, {"tn", cm.tn}};
}

Json to_json(const Metrics& m) {
  return Json{{"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
}

}  // namespace tweetspam
