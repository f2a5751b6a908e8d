"""Entity decoding and whitespace normalisation cases, decoded with html.unescape."""
import html
import json
import random
import sys

ENTITIES = ["&amp;", "&lt;", "&gt;", "&quot;", "&nbsp;", "&copy;", "&eacute;", "&#233;",
            "&#x263A;", "&#8364;", "&amp;amp;", "&amp;lt;", "&#38;gt;", "&Uuml;", "&frac12;"]
WORDS = ["hello", "World", "tweet", "spam", "#tag", "@user", "café", "2024", "ok!", "why?",
         "http://t.co/x", "über", "done."]
SPACES = [" ", "  ", "\t", "\n", " \r\n ", " ", "\f", "\v"]

WHITESPACE = " \t\n\r\f\v "


def decode(text):
    while True:
        decoded = html.unescape(text)
        if decoded == text:
            return text
        text = decoded


def collapse(text):
    out, word = [], []
    for ch in text:
        if ch in WHITESPACE:
            if word:
                out.append("".join(word))
                word = []
        else:
            word.append(ch)
    if word:
        out.append("".join(word))
    return " ".join(out)


def main(path):
    rng = random.Random(20240601)
    cases = []
    for _ in range(60):
        parts = [rng.choice(SPACES) if rng.random() < 0.3 else ""]
        for _ in range(rng.randint(1, 7)):
            piece = rng.choice(WORDS + ENTITIES)
            if rng.random() < 0.3:
                piece = rng.choice(WORDS) + rng.choice(ENTITIES)
            parts.append(piece)
            parts.append(rng.choice(SPACES))
        raw = "".join(parts)
        cases.append({"raw": raw, "text": collapse(decode(raw)), "original_length": len(raw)})
    with open(path, "w", encoding="utf-8") as f:
        json.dump(cases, f, ensure_ascii=False, indent=1, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main(sys.argv[1])
