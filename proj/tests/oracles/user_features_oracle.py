"""Reference values for the eleven user metadata features."""
import datetime as dt
import json
import random
import sys

NAMES = ["", "Ann", "Jürgen Müller", "\U0001F600 bot", "deals_4_u", "María José"]
DESCRIPTIONS = ["", "coffee and code", "Follow me for FREE iPhones!!!", "日本語の説明",
                "dad. runner. ❤"]


def ratio(a, b):
    return 0.0 if b == 0 else a / b


def stamp(t):
    return t.strftime("%Y-%m-%dT%H:%M:%SZ")


def main(path):
    rng = random.Random(7)
    base = dt.datetime(2009, 1, 1, tzinfo=dt.timezone.utc)
    cases = []
    for i in range(100):
        created = base + dt.timedelta(seconds=rng.randint(0, 10 * 365 * 86400))
        if i % 10 == 0:
            tweeted = created
        else:
            tweeted = created + dt.timedelta(seconds=rng.choice([1, 59, 3600, rng.randint(1, 3 * 365 * 86400)]))
        fi = rng.choice([0, 0, 1, rng.randint(0, 100), rng.randint(0, 100000)])
        fe = rng.choice([0, 1, rng.randint(0, 100), rng.randint(0, 5000000)])
        statuses = rng.choice([0, rng.randint(0, 100), rng.randint(0, 200000)])
        name, description = rng.choice(NAMES), rng.choice(DESCRIPTIONS)
        au = (tweeted - created).total_seconds() / 3600.0
        expected = [
            float(len(name)), float(len(description)), float(fi), float(fe), float(statuses), au,
            ratio(fe, fi), ratio(fe, fi + fe), ratio(fi, au),
            0.0 if au == 0 else statuses / (au / 24.0),
            0.0 if au == 0 else statuses / (au / 168.0),
        ]
        record = {
            "tweet_id": "u%d" % i, "user_id": "user%d" % i, "text": "hello", "label": "ham",
            "created_at": stamp(tweeted),
            "user": {"name": name, "description": description, "followings_count": fi,
                     "followers_count": fe, "statuses_count": statuses, "created_at": stamp(created)},
        }
        cases.append({"record": record, "expected": expected})
    with open(path, "w", encoding="utf-8") as f:
        json.dump(cases, f, ensure_ascii=False, indent=1, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    main(sys.argv[1])
