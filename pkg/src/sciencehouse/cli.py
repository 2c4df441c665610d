"""Operator command line: interactive play, baseline evaluation, gold
corpus generation, training-data export and task listing.

Every run prints its seed so results can be reproduced; file outputs are
byte-reproducible for a fixed configuration and seed. Exit codes: 0 ok,
1 usage error, 2 engine assertion failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time

from . import __version__
from .agents import random_valid_rollout
from .env import Environment
from .errors import EngineError, PlanStuck
from .exporters import EXPORT_FORMATS, read_transcripts, write_export, write_transcripts
from .oracle import run_oracle_episode
from .rng import derive_seed
from .tasks import all_task_ids, split_variations, task_info, variation_count


def _resolve_seed(args) -> int:
    if args.seed is not None:
        return args.seed
    seed = int(time.time_ns() % 1_000_000)
    print(f"(no seed given; using generated seed {seed})")
    return seed


def _task_list(args) -> list[str]:
    if args.task:
        for task_id in args.task:
            task_info(task_id)  # validates
        return args.task
    return all_task_ids()


def _variation_list(task_id: str, args) -> list[int]:
    if args.var is not None:
        return [args.var]
    if args.split:
        return split_variations(task_id)[args.split]
    return list(range(variation_count(task_id)))


# ---------------------------------------------------------------------------

def cmd_list_tasks(args) -> int:
    print(f"{'id':<6} {'topic':<16} {'task':<45} variations")
    for task_id in all_task_ids():
        info = task_info(task_id)
        print(f"{task_id:<6} {info['topic']:<16} {info['name']:<45} "
              f"{len(info['variations'])}")
    return 0


def cmd_play(args) -> int:
    seed = _resolve_seed(args)
    task_id = args.task[0] if args.task else "1-2"
    variation = args.var or 0
    env = Environment()
    obs = env.reset(task_id, variation, seed, args.simplifications)
    print(f"=== {task_id}: {env.runtime.name} (variation {variation}, seed {seed}) ===")
    print(obs.task_description)
    print()
    print(obs.look_text)
    while True:
        try:
            line = input("> ").strip()
        except EOFError:
            break
        if not line:
            continue
        if line == ":quit":
            break
        if line == ":valid":
            for action in env.valid_actions():
                print(f"  {action}")
            continue
        if env.done:
            print("The episode has ended; :quit to leave.")
            continue
        obs = env.step(line)
        print(obs.obs_text)
        print(f"[score: {obs.score:.3f}  reward: {obs.reward:+.3f}]")
        if obs.done:
            print(f"Episode over: {env.outcome} (final score {env.score():.3f})")
    return 0


def cmd_eval(args) -> int:
    seed = _resolve_seed(args)
    tasks = _task_list(args)
    results = []
    for task_id in tasks:
        variations = _variation_list(task_id, args)
        scores = []
        episode = 0
        while episode < args.episodes:
            variation = variations[episode % len(variations)]
            episode_seed = derive_seed(seed, task_id, variation, episode)
            if args.agent == "oracle":
                transcript = run_oracle_episode(
                    task_id, variation, episode_seed, args.simplifications)
            else:
                transcript = random_valid_rollout(
                    task_id, variation, episode_seed, args.simplifications)
            scores.append(transcript["final_score"])
            episode += 1
        info = task_info(task_id)
        mean = sum(scores) / len(scores)
        results.append({"task": task_id, "topic": info["topic"],
                        "name": info["name"], "episodes": len(scores),
                        "mean_score": round(mean, 4)})
        print(f"{task_id:<6} {info['name']:<45} {mean:0.3f}")
    overall = sum(r["mean_score"] for r in results) / len(results)
    print(f"{'':6} {'Average':<45} {overall:0.3f}")
    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer = csv.DictWriter(
                fh, fieldnames=["task", "topic", "name", "episodes", "mean_score"])
            writer.writeheader()
            writer.writerows(results)
            writer.writerow({"task": "avg", "topic": "", "name": "Average",
                             "episodes": "", "mean_score": round(overall, 4)})
        print(f"results written to {args.out}")
    return 0


def cmd_gen_gold(args) -> int:
    seed = _resolve_seed(args)
    tasks = _task_list(args)
    out_dir = args.out or "gold"
    os.makedirs(out_dir, exist_ok=True)
    total = 0
    for task_id in tasks:
        transcripts = []
        for variation in _variation_list(task_id, args):
            transcript = run_oracle_episode(
                task_id, variation, seed, args.simplifications)
            if transcript["final_score"] != 1.0:
                raise PlanStuck(f"gold episode below 1.0: {task_id} v{variation}")
            transcripts.append(transcript)
        path = os.path.join(out_dir, f"{task_id}.jsonl")
        count = write_transcripts(transcripts, path)
        total += sum(len(t["steps"]) for t in transcripts)
        print(f"{task_id}: {count} episodes -> {path}")
    print(f"total steps recorded: {total}")
    return 0


def cmd_export(args) -> int:
    if not os.path.isdir(args.transcripts):
        print(f"transcript directory not found: {args.transcripts}", file=sys.stderr)
        return 1
    paths = sorted(
        os.path.join(args.transcripts, f)
        for f in os.listdir(args.transcripts) if f.endswith(".jsonl"))
    transcripts = []
    for path in paths:
        transcripts.extend(read_transcripts(path))
    out = args.out or f"export-{args.format}.jsonl"
    count = write_export(transcripts, args.format, out)
    manifest = {
        "format": args.format,
        "records": count,
        "episodes": len(transcripts),
        "sources": [os.path.basename(p) for p in paths],
        "engine_version": __version__,
    }
    manifest_path = out + ".manifest.json"
    with open(manifest_path, "w") as fh:
        json.dump(manifest, fh, indent=2, sort_keys=True)
        fh.write("\n")
    print(f"{count} records -> {out} (manifest: {manifest_path})")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sciencehouse",
        description="text-world science experiment simulator")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, episodes_default=1):
        p.add_argument("--task", action="append", help="task id, e.g. 1-2 (repeatable)")
        p.add_argument("--var", type=int, help="variation index")
        p.add_argument("--split", choices=["train", "dev", "test"])
        p.add_argument("--seed", type=int)
        p.add_argument("--simplifications", default="easy",
                       help="comma list of simplifications, or 'easy' (default)")
        p.add_argument("--episodes", type=int, default=episodes_default)
        p.add_argument("--out")

    p_play = sub.add_parser("play", help="interactive terminal session")
    common(p_play)
    p_play.set_defaults(fn=cmd_play)

    p_eval = sub.add_parser("eval", help="run a baseline agent over tasks")
    common(p_eval, episodes_default=10)
    p_eval.add_argument("--agent", choices=["random-valid", "oracle"],
                        default="random-valid")
    p_eval.set_defaults(fn=cmd_eval)

    p_gold = sub.add_parser("gen-gold", help="generate oracle gold transcripts")
    common(p_gold)
    p_gold.set_defaults(fn=cmd_gen_gold)

    p_export = sub.add_parser("export", help="export training examples")
    p_export.add_argument("transcripts", help="directory of transcript .jsonl files")
    p_export.add_argument("--format", choices=list(EXPORT_FORMATS), required=True)
    p_export.add_argument("--out")
    p_export.set_defaults(fn=cmd_export)

    p_list = sub.add_parser("list-tasks", help="print the task catalog")
    p_list.set_defaults(fn=cmd_list_tasks)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if hasattr(args, "simplifications") and isinstance(args.simplifications, str):
        args.simplifications = [s for s in args.simplifications.split(",") if s]
    try:
        return args.fn(args)
    except EngineError as err:
        print(f"engine error [{err.name}]: {err.message}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as err:
        print(f"usage error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
