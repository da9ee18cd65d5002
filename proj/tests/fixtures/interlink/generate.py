#!/usr/bin/env python3
"""Regenerates the bundled interlink corpus (seeded, deterministic)."""
import random

rng = random.Random(20180301)

ARTICLES = [f"a{k:02d}" for k in range(50)]
ENTITIES = [f"e{k:02d}" for k in range(30)]
LANGS = ["en", "de", "ru"]

# Half of the ids are events.
events = sorted(rng.sample(ARTICLES, 20) + rng.sample(ENTITIES, 12))
with open("events.txt", "w") as f:
    f.write("\n".join(events) + "\n")

rows = []
for lang in LANGS:
    for _ in range(140):
        a, b = rng.choice(ARTICLES), rng.choice(ARTICLES)
        rows.append(f"{lang}\t{a}\t{b}")
# Duplicate anchors on purpose: they must collapse to article level.
rows += rows[:25]
with open("links.tsv", "w") as f:
    f.write("\n".join(rows) + "\n")

with open("sentences.tsv", "w") as f:
    for s in range(100):
        lang = LANGS[s % len(LANGS)]
        k = rng.randint(0, 6)
        ids = sorted(set(rng.choice(ENTITIES) for _ in range(k)))
        f.write(f"{lang}\ts{s:03d}\t{'|'.join(ids)}\n")
