#!/usr/bin/env python3
"""Writes the fixtures under fixtures/. Deterministic; rerun to regenerate."""
import json
import os
import subprocess
import sys

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "fixtures")
BASE_TS = 1418000000


def write_jsonl(path, rows):
    with open(path, "w") as f:
        for r in rows:
            f.write(json.dumps(r, separators=(",", ":")) + "\n")


def write_lines(path, lines):
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")


def tweet(id_, user, ts, text, retweet_of=None):
    return {"id": id_, "user": user, "ts": ts, "text": text, "retweet_of": retweet_of}


def mini():
    d = os.path.join(ROOT, "mini")
    os.makedirs(d, exist_ok=True)
    experts, etweets = [], []
    groups = [
        ("sp", 12, ["sports", "basketball"], ["#NBA tonight https://www.espn.com/nba/", "#nba"]),
        ("po", 12, ["politics"], ["#vote http://t.co/abc", "#Vote now"]),
        ("te", 12, ["programming", "Web Systems"], ["#rustlang https://github.com/trending?since=daily"]),
    ]
    for prefix, n, tags, texts in groups:
        for i in range(n):
            user = f"{prefix}{i}"
            experts.append({"user": user, "tags": tags})
            for j, text in enumerate(texts):
                etweets.append(tweet(f"{user}-{j}", user, BASE_TS + len(etweets), text))
    # Below support: only 5 sports experts use #fitness.
    for i in range(5):
        etweets.append(tweet(f"fit{i}", f"sp{i}", BASE_TS + len(etweets), "#fitness"))
    # A dual-topic expert and two whose tags match nothing.
    experts.append({"user": "dual", "tags": ["politics", "physics"]})
    etweets.append(tweet("dual-0", "dual", BASE_TS + len(etweets), "#vote #space"))
    experts.append({"user": "fan1", "tags": ["celebs"]})
    experts.append({"user": "fan2", "tags": []})
    etweets.append(tweet("fan1-0", "fan1", BASE_TS + len(etweets), "#nba"))
    write_jsonl(os.path.join(d, "experts.jsonl"), experts)
    write_jsonl(os.path.join(d, "expert_tweets.jsonl"), etweets)

    t = BASE_TS + 10000
    tweets = [
        tweet("1", "alice", t + 1, "Great game! #NBA #nba"),
        tweet("2", "alice", t + 2, "Polls open #vote https://www.nytimes.com/politics/?ref=tw"),
        tweet("3", "bob", t + 3, "shortened http://t.co/abc and #rustlang"),
        tweet("4", "bob", t + 4, "just chatting today"),
        tweet("5", "carol", t + 5, "#fitness #nba #unknowntag"),
        tweet("6", "carol", t + 6, "see https://github.com/trending/ for #RustLang news"),
        tweet("7", "dave", t + 7, "morning run #fitness"),
        tweet("8", "dave", t + 8, "RT #vote", "2"),
        tweet("9", "erin", t + 9, "lunch"),
        tweet("10", "erin", t + 10, "#NBA #vote #rustlang https://espn.com/nba"),
    ]
    write_jsonl(os.path.join(d, "tweets.jsonl"), tweets)
    write_lines(os.path.join(d, "redirects.csv"), ["short,target", "t.co/abc,https://www.nytimes.com/politics"])
    write_lines(os.path.join(d, "graph.csv"), ["follower,followee", "alice,bob", "alice,carol",
                                              "bob,alice", "carol,dave", "dave,erin", "erin,erin"])
    write_lines(os.path.join(d, "dictionary.txt"), ["great", "game", "polls", "open", "and", "just",
                                                    "chatting", "today", "see", "for", "news", "morning",
                                                    "run", "lunch"])
    golden = subprocess.run(
        [sys.executable, os.path.join(os.path.dirname(os.path.abspath(__file__)), "diet_oracle.py"),
         os.path.join(d, "tweets.jsonl"), os.path.join(d, "experts.jsonl"),
         os.path.join(d, "expert_tweets.jsonl"),
         os.path.join(ROOT, "..", "crates", "core", "data", "table1.json"),
         os.path.join(d, "redirects.csv")],
        check=True, capture_output=True, text=True).stdout
    with open(os.path.join(d, "golden_diet.json"), "w") as f:
        f.write(golden)


SKEWED_TOPICS = {
    "sports": ["nba", "nfl"],
    "politics-law": ["election", "senate"],
    "entertainment": ["oscars"],
    "business-finance": ["markets"],
    "technology": ["gadgets"],
    "science": ["space"],
    "health-fitness": ["wellness"],
    "food-drink": ["recipes"],
    "environment": ["climate"],
}

# account -> (topic, tweets per half hour)
DIVERSE = {
    "pol1": ("politics-law", 2),
    "pol2": ("politics-law", 2),
    "ent1": ("entertainment", 1),
    "biz1": ("business-finance", 1),
    "sci1": ("science", 1),
    "tech1": ("technology", 1),
    "health1": ("health-fitness", 1),
    "food1": ("food-drink", 1),
    "env1": ("environment", 1),
}
SPORTS = ["s1", "s2", "s3", "s4"]


def skewed():
    d = os.path.join(ROOT, "skewed")
    os.makedirs(d, exist_ok=True)
    experts, etweets = [], []
    for topic, tags in SKEWED_TOPICS.items():
        for i in range(12):
            user = f"x-{topic}-{i}"
            experts.append({"user": user, "tags": [topic]})
            for tag in tags:
                etweets.append(tweet(f"{user}-{tag}", user, BASE_TS, f"#{tag}"))
    write_jsonl(os.path.join(d, "experts.jsonl"), experts)
    write_jsonl(os.path.join(d, "expert_tweets.jsonl"), etweets)

    edges = [("skewed", s) for s in SPORTS]
    edges += [("s1", "pol1"), ("s1", "ent1"), ("s1", "biz1"), ("s1", "s2"),
              ("s2", "pol2"), ("s2", "sci1"), ("s2", "tech1"),
              ("s3", "pol1"), ("s3", "health1"), ("s3", "food1"),
              ("s4", "ent1"), ("s4", "env1"), ("s4", "pol2"), ("s4", "s3")]
    edges += [("generalist", a) for a in ["pol1", "ent1", "s1", "biz1"]]
    edges += [("pol1", "pol2"), ("pol2", "pol1"), ("ent1", "pol1"), ("biz1", "pol2")]
    write_lines(os.path.join(d, "graph.csv"), ["follower,followee"] + [f"{a},{b}" for a, b in edges])

    stream = []
    half_hours = 12
    for h in range(half_hours):
        t0 = BASE_TS + 3600 + h * 1800
        for k, s in enumerate(SPORTS):
            for j, tag in enumerate(SKEWED_TOPICS["sports"]):
                stream.append(tweet(f"{s}-{h}-{j}", s, t0 + 60 * k + 10 * j, f"{tag} recap #{tag}"))
        originals = []
        for k, (acct, (topic, per)) in enumerate(DIVERSE.items()):
            tags = SKEWED_TOPICS[topic]
            for j in range(per):
                tag = tags[j % len(tags)]
                id_ = f"{acct}-{h}-{j}"
                stream.append(tweet(id_, acct, t0 + 300 + 60 * k + 20 * j, f"breaking #{tag}"))
                originals.append((id_, acct))
        # Neighbours amplify politics and entertainment most.
        for id_, acct in originals:
            if acct.startswith("pol") or acct == "ent1":
                fans = [a for a in ("pol1", "pol2", "ent1", "biz1") if a != acct]
            elif acct in ("biz1", "sci1"):
                fans = ["pol1"]
            else:
                fans = []
            for m, fan in enumerate(fans):
                stream.append(tweet(f"rt-{fan}-{id_}", fan, t0 + 1500 + 7 * m, "RT", id_))
    write_jsonl(os.path.join(d, "stream.jsonl"), stream)

    with open(os.path.join(d, "sim.toml"), "w") as f:
        f.write('''# Skewed-user mitigation fixture. Paths are relative to this file.
users = ["skewed", "generalist"]
stream = "stream.jsonl"
experts = "experts.jsonl"
expert_tweets = "expert_tweets.jsonl"
graph = "graph.csv"
baseline = "nytimes"
min_support = 10

[sim]
snapshot_interval = 1800
top_k = 10
seed = 7
dedupe_across_snapshots = true
''')


if __name__ == "__main__":
    mini()
    skewed()
