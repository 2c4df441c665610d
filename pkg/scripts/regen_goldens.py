#!/usr/bin/env python3
"""Regenerate the checked-in golden files.

Run from the repo root after a deliberate change to observation text or
export formats, then review the diff:

    python3 scripts/regen_goldens.py
"""

import json
import pathlib
import sys

sys.path.insert(0, "src")

from sciencehouse.exporters import write_export, write_transcripts  # noqa: E402
from sciencehouse.oracle import run_oracle_episode  # noqa: E402

GOLDEN_EPISODES = [("1-2", 0, 11), ("4-1", 0, 11)]


def main():
    root = pathlib.Path(__file__).resolve().parent.parent
    golden_dir = root / "tests" / "goldens"
    golden_dir.mkdir(parents=True, exist_ok=True)
    transcripts = [run_oracle_episode(task, var, seed, "easy")
                   for task, var, seed in GOLDEN_EPISODES]
    write_transcripts(transcripts, golden_dir / "corpus.jsonl")
    for fmt in ("bc", "tdt", "lm-prompt"):
        write_export(transcripts, fmt, golden_dir / f"{fmt}.jsonl")
    examples = root / "docs" / "examples"
    examples.mkdir(parents=True, exist_ok=True)
    for transcript in transcripts:
        path = examples / f"transcript-{transcript['task']}.jsonl"
        with open(path, "w") as fh:
            fh.write(json.dumps(transcript, sort_keys=True) + "\n")
    print(f"goldens regenerated under {golden_dir} and {examples}")


if __name__ == "__main__":
    main()
