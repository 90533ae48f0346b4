"""Rendering of selftest results: delimited output plus figures.

The CSV and JSON payloads are deterministic for a fixed seed; figures add
informational runtime data and are written next to them.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .harness import SuiteReport  # noqa: E402


def write_csv(reports: Sequence[SuiteReport], path) -> Path:
    path = Path(path)
    with open(path, "w", newline="", encoding="ascii") as fh:
        writer = csv.writer(fh)
        writer.writerow(["suite", "trials", "failures", "passed", "seed"])
        for r in reports:
            writer.writerow([r.name, r.trials, len(r.failures),
                             int(r.passed), r.seed])
    return path


def write_summary_json(reports: Sequence[SuiteReport], path) -> Path:
    path = Path(path)
    payload = [r.to_dict() for r in reports]
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                    encoding="ascii")
    return path


def write_figures(reports: Sequence[SuiteReport], out_dir) -> list:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    names = [r.name for r in reports]
    passed = [r.trials - len(r.failures) for r in reports]
    failed = [len(r.failures) for r in reports]
    written = []

    fig, ax = plt.subplots(figsize=(8, 0.5 * len(reports) + 1.5))
    ypos = range(len(reports))
    ax.barh(ypos, passed, color="#2a9d8f", label="passed")
    ax.barh(ypos, failed, left=passed, color="#e76f51", label="failed")
    ax.set_yticks(list(ypos), names)
    ax.invert_yaxis()
    ax.set_xlabel("trials")
    ax.set_title("selftest suite outcomes")
    ax.legend(loc="lower right")
    fig.tight_layout()
    target = out_dir / "suite_outcomes.png"
    fig.savefig(target, dpi=120)
    plt.close(fig)
    written.append(target)

    fig, ax = plt.subplots(figsize=(8, 0.5 * len(reports) + 1.5))
    ax.barh(list(ypos), [r.elapsed for r in reports], color="#264653")
    ax.set_yticks(list(ypos), names)
    ax.invert_yaxis()
    ax.set_xlabel("seconds")
    ax.set_title("selftest suite runtimes")
    fig.tight_layout()
    target = out_dir / "suite_runtimes.png"
    fig.savefig(target, dpi=120)
    plt.close(fig)
    written.append(target)
    return written
