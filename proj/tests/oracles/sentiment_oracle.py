"""Per-lexicon positive/negative counts, net, max and last scores."""
import json
import random
import sys

LEXICONS = ["afinn", "bingliu", "mpqa", "nrc_hashtag", "s140"]


def aggregate(tokens, lexicon):
    positive = negative = 0
    net = last = 0.0
    best = None
    for token in tokens:
        score = lexicon.get(token.lower())
        if score is None:
            continue
        positive += score > 0
        negative += score < 0
        net += score
        best = score if best is None else max(best, score)
        last = score
    return [float(positive), float(negative), net, 0.0 if best is None else best, last]


def main(path):
    rng = random.Random(11)
    vocab = ["good", "bad", "love", "hate", "meh", "great", "awful", "ok", "win", "lose",
             "happy", "sad", "free", "scam", "nice"]
    lexicons = {}
    for name in LEXICONS:
        words = rng.sample(vocab, 9)
        lexicons[name] = {w: rng.choice([-5.0, -2.0, -1.0, -0.25, 0.0, 0.5, 1.0, 3.0, 1.75]) for w in words}
    cases = []
    for _ in range(50):
        tokens = []
        for _ in range(rng.randint(0, 10)):
            word = rng.choice(vocab + ["the", "a", "tweet", "lol"])
            if rng.random() < 0.3:
                word = word.upper()
            elif rng.random() < 0.2:
                word = word.capitalize()
            tokens.append(word)
        cases.append({"tokens": tokens,
                      "expected": [v for name in LEXICONS for v in aggregate(tokens, lexicons[name])]})
    with open(path, "w", encoding="utf-8") as f:
        json.dump({"lexicons": lexicons, "cases": cases}, f, indent=1, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main(sys.argv[1])
