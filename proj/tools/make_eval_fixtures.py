# Copyright 2026 The ScoreRAG Authors
# SPDX-License-Identifier: Apache-2.0
"""Regenerates the evaluation fixture CSVs: integer criteria whose weighted
totals hit fixed per-system sums. Usage: make_eval_fixtures.py <llm.csv> <expert.csv>"""
import random, csv, sys
W = (4, 7, 2, 7)  # weights x20

def units(c): return sum(w*x for w, x in zip(W, c))

import itertools
def build(n, target, rng, bias):
    rows = [[max(1, min(5, round(rng.gauss(bias, 0.8)))) for _ in range(4)] for _ in range(n)]
    total = sum(units(r) for r in rows)
    while abs(target - total) >= 20:
        r = rng.randrange(n); k = rng.randrange(4)
        step = 1 if target > total else -1
        if 1 <= rows[r][k] + step <= 5:
            rows[r][k] += step; total += step * W[k]
    while total != target:
        r = rng.randrange(n)
        want = units(rows[r]) + target - total
        opts = [list(c) for c in itertools.product(range(1, 6), repeat=4) if units(c) == want]
        if opts:
            best = min(opts, key=lambda c: sum(abs(x - y) for x, y in zip(c, rows[r])))
            total += units(best) - units(rows[r]); rows[r] = best
    return rows

def write(path, specs, header_rater):
    with open(path, "w", newline="") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["article_id", "system", "coherence", "accuracy", "professionalism", "informativeness", "rater"])
        for row in specs: w.writerow(row)

rng = random.Random(2026)
a = build(50, 4640, rng, 4.7); b = build(50, 4340, rng, 4.4)
rows = []
for i in range(50):
    rows.append([f"topic-{i+1:02d}", "scorerag", *a[i], "llm"])
    rows.append([f"topic-{i+1:02d}", "zeroshot", *b[i], "llm"])
write(sys.argv[1], rows, False)
a = build(20, 1532, rng, 3.9); b = build(20, 1232, rng, 3.1)
rows = []
for i in range(20):
    art, rater = f"topic-{i//2+1:02d}", f"expert-{'ab'[i%2]}"
    rows.append([art, "scorerag", *a[i], rater]); rows.append([art, "zeroshot", *b[i], rater])
write(sys.argv[2], rows, True)
