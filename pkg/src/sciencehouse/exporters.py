"""Transcript persistence, returns-to-go, training-example exporters and
the heuristic observation-to-triples extractor.

Transcripts are stored one episode per line as JSON records (see
docs/transcript.schema.json). Exports stream one record per step in
episode order; re-exporting the same transcripts is byte-identical.
"""

from __future__ import annotations

import json
import re
from typing import Iterable, Iterator

from .errors import UnknownFormat

EXPORT_FORMATS = ("bc", "tdt", "lm-prompt")


# ---------------------------------------------------------------------------
# transcript files
# ---------------------------------------------------------------------------

def write_transcripts(transcripts: Iterable[dict], path: str) -> int:
    count = 0
    with open(path, "w") as fh:
        for record in transcripts:
            fh.write(json.dumps(record, sort_keys=True) + "\n")
            count += 1
    return count


def read_transcripts(path: str) -> list[dict]:
    out = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if line:
                out.append(json.loads(line))
    return out


# ---------------------------------------------------------------------------
# returns-to-go
# ---------------------------------------------------------------------------

def returns_to_go(transcript: dict) -> list[float]:
    """Suffix sums of the per-step rewards."""
    rewards = [step["reward"] for step in transcript["steps"]]
    out = [0.0] * len(rewards)
    acc = 0.0
    for i in range(len(rewards) - 1, -1, -1):
        acc += rewards[i]
        out[i] = round(acc, 6)
    return out


# ---------------------------------------------------------------------------
# training-example exporters
# ---------------------------------------------------------------------------

def export_training_examples(transcripts: Iterable[dict], fmt: str) -> Iterator[dict]:
    """One record per step: bc -> (d, o_{t-1}, a_{t-1}, o_t) with target
    a_t; tdt adds the returns-to-go pair; lm-prompt emits the separator-
    joined prompt string."""
    if fmt not in EXPORT_FORMATS:
        raise UnknownFormat(f"unknown export format {fmt!r}")
    for transcript in transcripts:
        yield from _export_episode(transcript, fmt)


def _export_episode(transcript: dict, fmt: str) -> Iterator[dict]:
    steps = transcript["steps"]
    initial = transcript["initial"]
    d = initial["task"]
    rtg = returns_to_go(transcript)

    def obs_at(t: int) -> dict:
        # observation the agent saw before choosing action t
        return initial if t == 0 else steps[t - 1]

    for t in range(len(steps)):
        target = steps[t]["action"]
        obs_t = obs_at(t)
        obs_prev = obs_at(t - 1) if t >= 1 else None
        action_prev = steps[t - 1]["action"] if t >= 1 else ""
        if fmt == "bc":
            yield {
                "task_desc": d,
                "prev_obs": obs_prev["obs"] if obs_prev else "",
                "prev_action": action_prev,
                "obs": obs_t["obs"],
                "target": target,
            }
        elif fmt == "tdt":
            rtg_t = rtg[t] if t < len(rtg) else 0.0
            rtg_prev = rtg[t - 1] if t >= 1 else rtg[0]
            yield {
                "task_desc": d,
                "prev_obs": obs_prev["obs"] if obs_prev else "",
                "rtg_prev": rtg_prev,
                "prev_action": action_prev,
                "obs": obs_t["obs"],
                "rtg": rtg_t,
                "target": target,
            }
        else:  # lm-prompt
            prompt = " [SEP] ".join([
                f"[CLS] {d}",
                obs_t["obs"],
                obs_t["look"],
                obs_t["inventory"],
                obs_prev["obs"] if obs_prev else "",
                action_prev,
            ]) + " [SEP]"
            yield {"prompt": prompt, "target": target}


def write_export(transcripts: Iterable[dict], fmt: str, path: str) -> int:
    count = 0
    with open(path, "w") as fh:
        for record in export_training_examples(transcripts, fmt):
            fh.write(json.dumps(record, sort_keys=True) + "\n")
            count += 1
    return count


# ---------------------------------------------------------------------------
# triple extraction
# ---------------------------------------------------------------------------

_ARTICLES = re.compile(r"^(?:a|an|the|some) ")
_PAREN = re.compile(r" \([^)]*\)")
_CONTAINER_LINE = re.compile(r"^(?:In|On) (?:the )?(.+?) you see: (.+)$")
_ROOM_LINE = re.compile(r"^You are in the (.+)\.$")
_SEE_LINE = re.compile(r"^You see: (.+)$")
_EXIT_LINE = re.compile(r"^Exits: (.+)$")
_INVENTORY_LINE = re.compile(r"^In your inventory you see: (.+)$")
_DOOR = re.compile(r"a door to the (.+?) \(")


def _clean(name: str) -> str:
    name = _PAREN.sub("", name).strip()
    return _ARTICLES.sub("", name)


def _split_names(blob: str) -> list[str]:
    # strip parentheticals first so commas inside them don't split
    return [n for n in (_clean(part) for part in _PAREN.sub("", blob).split(", ")) if n]


def extract_triples(look_text: str, inventory_text: str) -> list[tuple[str, str, str]]:
    """Recover (subject, relation, object) triples from the rendered room
    and inventory text; unrecognized lines are skipped."""
    triples: list[tuple[str, str, str]] = []
    room = None
    for line in look_text.splitlines():
        m = _ROOM_LINE.match(line)
        if m:
            room = m.group(1)
            triples.append(("agent", "in", room))
            continue
        m = _SEE_LINE.match(line)
        if m and room is not None:
            for name in _split_names(m.group(1)):
                triples.append((room, "contains", name))
            continue
        m = _CONTAINER_LINE.match(line)
        if m:
            holder = _clean(m.group(1))
            for name in _split_names(m.group(2)):
                triples.append((holder, "contains", name))
            continue
        m = _EXIT_LINE.match(line)
        if m and room is not None:
            for dest in _DOOR.findall(m.group(1)):
                triples.append((room, "connects to", dest))
    for line in inventory_text.splitlines():
        m = _INVENTORY_LINE.match(line)
        if m:
            for name in _split_names(m.group(1)):
                triples.append(("inventory", "contains", name))
            continue
        m = _CONTAINER_LINE.match(line)
        if m:
            holder = _clean(m.group(1))
            for name in _split_names(m.group(2)):
                triples.append((holder, "contains", name))
    return triples
