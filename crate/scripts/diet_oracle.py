#!/usr/bin/env python3
"""Brute-force diet of a tweet file, written as the `infodiet diet` JSON report.

Independent of the Rust code: keywords, topic inference and diet mass are
recomputed here with exact fractions. Float values are materialized in the
same order the report uses (per-keyword-count shares in ascending count,
then topic order), so the output is byte-comparable.

usage: diet_oracle.py TWEETS EXPERTS EXPERT_TWEETS TABLE1_JSON [REDIRECTS_CSV] > golden.json
"""
import csv
import json
import re
import sys
from collections import defaultdict
from fractions import Fraction
from urllib.parse import urlsplit

MIN_SUPPORT = 10
URL_LEAD = "([{\"'<"
URL_TRAIL = ".,;:!?)]}\"'>"
WORD = re.compile(r"[A-Za-z0-9_]")


def norm_term(s):
    s = s.lower()
    while s and not s[0].isalnum():
        s = s[1:]
    while s and not s[-1].isalnum():
        s = s[:-1]
    return re.sub(r"[\s_-]+", "-", s)


def canon_url(raw):
    if not raw.lower().startswith(("http://", "https://")):
        raw = "http://" + raw
    parts = urlsplit(raw)
    host = (parts.hostname or "").lower()
    if host.startswith("www."):
        host = host[4:]
    if not host:
        return None
    return host + parts.path.lower().rstrip("/")


def hashtags(token):
    out, i, prev_word = [], 0, False
    while i < len(token):
        c = token[i]
        if c == "#" and not prev_word:
            j = i + 1
            while j < len(token) and WORD.match(token[j]):
                j += 1
            if j > i + 1:
                out.append(("hashtag", token[i + 1:j].lower()))
                i, prev_word = j, False
                continue
        prev_word = bool(WORD.match(c))
        i += 1
    return out


def keywords(text, redirects):
    out = []
    for tok in text.split():
        t = tok.lstrip(URL_LEAD)
        if t.lower().startswith(("http://", "https://")):
            c = canon_url(t.rstrip(URL_TRAIL))
            if c is not None:
                out.append(("url", redirects.get(c, c)))
        else:
            out.extend(hashtags(tok))
    return out


def read_jsonl(path):
    with open(path) as f:
        return [json.loads(line) for line in f if line.strip()]


def main(argv):
    tweets_p, experts_p, etweets_p, table_p = argv[1:5]
    redirects = {}
    if len(argv) > 5:
        with open(argv[5]) as f:
            for row in csv.DictReader(f):
                redirects[canon_url(row["short"].strip())] = canon_url(row["target"].strip())

    with open(table_p) as f:
        table = json.load(f)
    topics = sorted(table)
    term_topics = defaultdict(set)
    for t in topics:
        for term in list(table[t]) + [t]:
            term_topics[norm_term(term)].add(t)

    expert_topics = defaultdict(set)
    for e in read_jsonl(experts_p):
        for tag in e.get("tags", []):
            expert_topics[e["user"]] |= term_topics.get(norm_term(tag), set())
    expert_topics = {u: ts for u, ts in expert_topics.items() if ts}
    n_topic = {t: sum(1 for ts in expert_topics.values() if t in ts) for t in topics}

    posters = defaultdict(set)
    for tw in read_jsonl(etweets_p):
        if tw["user"] in expert_topics:
            for k in keywords(tw["text"], redirects):
                posters[k].add(tw["user"])

    def infer(k):
        ps = posters.get(k, set())
        if len(ps) < MIN_SUPPORT:
            return None
        best, best_score = None, None
        for t in topics:
            if n_topic[t] == 0:
                continue
            score = Fraction(sum(1 for u in ps if t in expert_topics[u]), len(ps) * n_topic[t])
            if score > 0 and (best is None or score > best_score):
                best, best_score = t, score
        return best

    shares = {t: defaultdict(int) for t in topics + [None]}
    tweet_count = keywordless = 0
    for tw in read_jsonl(tweets_p):
        ks = keywords(tw["text"], redirects)
        if not ks:
            keywordless += 1
            continue
        tweet_count += 1
        for k in ks:
            shares[infer(k)][len(ks)] += 1

    def value(counts):
        acc = 0.0
        for n in sorted(counts):
            acc += counts[n] / n
        return acc

    exact = sum(Fraction(c, n) for t in topics + [None] for n, c in shares[t].items())
    assert exact == tweet_count
    weights = {t: value(shares[t]) for t in topics}
    total = 0.0
    for t in topics:
        total += weights[t]
    dist = {t: weights[t] / total for t in topics} if total > 0 else None
    for x in list(weights.values()) + list((dist or {}).values()):
        # Python and serde_json agree on plain decimal notation in this range.
        assert x == 0 or 1e-4 <= x < 1e15, x

    report = {
        "weights": weights,
        "unattributed": value(shares[None]),
        "tweet_count": tweet_count,
        "keywordless_count": keywordless,
        "distribution": dist,
    }
    sys.stdout.write(json.dumps(report, indent=2) + "\n")


if __name__ == "__main__":
    main(sys.argv)
