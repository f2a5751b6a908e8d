"""Hand-sized n-gram weighting and chi-square instance evaluated directly from the formulas."""
import json
import math
import sys

DOCS = [
    (["win", "cash", "now", "<url>"], "spam"),
    (["win", "free", "cash", "cash"], "spam"),
    (["free", "<url>", "now"], "spam"),
    (["see", "you", "at", "lunch"], "ham"),
    (["lunch", "now", "at", "noon"], "ham"),
    (["free", "lunch", "see", "you"], "ham"),
]


def terms_of(units):
    return list(units) + [units[i] + " " + units[i + 1] for i in range(len(units) - 1)]


def weigh(doc_terms, vocab, df, n_docs, weighting):
    counts = {}
    for t in doc_terms:
        if t in vocab:
            counts[t] = counts.get(t, 0) + 1
    out = {}
    for t, c in counts.items():
        if weighting == "binary":
            out[t] = 1.0
        elif weighting == "tf":
            out[t] = float(c)
        else:
            out[t] = c * (math.log((1 + n_docs) / (1 + df[t])) + 1)
    if weighting == "tfidf":
        norm = math.sqrt(sum(v * v for v in out.values()))
        out = {t: v / norm for t, v in out.items()}
    return [[vocab.index(t), out[t]] for t in sorted(out, key=vocab.index)]


def chi2(rows, labels, width):
    n = len(labels)
    share = {c: labels.count(c) / n for c in ("ham", "spam")}
    scores = []
    for col in range(width):
        observed = {"ham": 0.0, "spam": 0.0}
        for row, label in zip(rows, labels):
            for c, v in row:
                if c == col:
                    observed[label] += abs(v)
        total = observed["ham"] + observed["spam"]
        score = 0.0
        for c in ("ham", "spam"):
            expected = total * share[c]
            if expected != 0:
                score += (observed[c] - expected) ** 2 / expected
        scores.append(score)
    return scores


def main(path):
    doc_terms = [terms_of(units) for units, _ in DOCS]
    labels = [label for _, label in DOCS]
    df = {}
    for terms in doc_terms:
        for t in set(terms):
            df[t] = df.get(t, 0) + 1
    vocab = sorted(df)
    n = len(DOCS)
    weighted = {w: [weigh(t, vocab, df, n, w) for t in doc_terms] for w in ("binary", "tf", "tfidf")}
    scores = chi2(weighted["tf"], labels, len(vocab))
    fraction = 0.3
    keep = math.ceil(round(fraction * len(vocab), 9))
    ranked = sorted(range(len(vocab)), key=lambda c: (-scores[c], c))
    kept = sorted(ranked[:keep])

    example_vocab = ["a", "b"]
    example_df = {"a": 2, "b": 1}
    example = weigh(["a", "a", "b"], example_vocab, example_df, 2, "tfidf")

    out = {
        "docs": [units for units, _ in DOCS],
        "labels": labels,
        "orders": "uni+bi",
        "min_df": 1,
        "terms": vocab,
        "df": [df[t] for t in vocab],
        "vectors": weighted,
        "chi2_fraction": fraction,
        "chi2_scores": scores,
        "chi2_kept": kept,
        "worked_example": {"docs": [["a", "a", "b"], ["a"]], "tfidf": example},
    }
    with open(path, "w", encoding="utf-8") as f:
        json.dump(out, f, indent=1, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main(sys.argv[1])
