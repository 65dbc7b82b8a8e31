#!/usr/bin/env python3
# Copyright 2026 The ScoreRAG Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Plots a comparison report written by `scorerag evaluate --report`.

Draws per-metric boxplots from the precomputed quartiles (whiskers at min
and max) and a bar chart of the means.

    python3 tools/plot_report.py report.json -o report.png
"""

import argparse
import json

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

METRICS = ["coherence", "accuracy", "professionalism", "informativeness", "total"]


def box_stats(system, metric):
    q = system["quartiles"][metric]
    return {"label": system["label"], "whislo": q["min"], "q1": q["q1"], "med": q["median"],
            "q3": q["q3"], "whishi": q["max"], "fliers": []}


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("report")
    ap.add_argument("-o", "--output", default="report.png")
    args = ap.parse_args()

    with open(args.report, encoding="utf-8") as f:
        report = json.load(f)
    a, b = report["systems"]

    fig, axes = plt.subplots(1, len(METRICS) + 1, figsize=(4 * (len(METRICS) + 1), 4))
    for ax, metric in zip(axes, METRICS):
        ax.bxp([box_stats(a, metric), box_stats(b, metric)], showfliers=False)
        p = report["paired_t_test"][metric]["p_value"]
        ax.set_title(metric if p is None else f"{metric} (p={p:.3g})")
        ax.set_ylim(0.8, 5.2)

    ax = axes[-1]
    width = 0.4
    xs = range(len(METRICS))
    ax.bar([x - width / 2 for x in xs], [a["means"][m] for m in METRICS], width, label=a["label"])
    ax.bar([x + width / 2 for x in xs], [b["means"][m] for m in METRICS], width, label=b["label"])
    ax.set_xticks(list(xs))
    ax.set_xticklabels(METRICS, rotation=30, ha="right")
    ax.set_ylim(0, 5)
    ax.set_title(f"means ({report['n_pairs']} pairs)")
    ax.legend(loc="lower right")

    fig.tight_layout()
    fig.savefig(args.output, dpi=120)
    print(f"wrote {args.output}")


if __name__ == "__main__":
    main()
