import json
import subprocess
import sys

from sciencehouse.cli import main

PLAY = [sys.executable, "-m", "sciencehouse.cli"]


def run_cli(args, stdin=""):
    return subprocess.run(PLAY + args, input=stdin, capture_output=True,
                          text=True, timeout=180)


def test_list_tasks():
    proc = run_cli(["list-tasks"])
    assert proc.returncode == 0
    assert "1-1" in proc.stdout and "10-2" in proc.stdout
    assert "Changes of State (Boiling)" in proc.stdout


def test_eval_oracle_is_perfect(tmp_path):
    out = tmp_path / "results.csv"
    code = main(["eval", "--agent", "oracle", "--task", "1-2", "--task", "4-1",
                 "--episodes", "2", "--seed", "3", "--split", "test",
                 "--out", str(out)])
    assert code == 0
    text = out.read_text()
    assert "1-2" in text and "4-1" in text
    for line in text.splitlines()[1:]:
        if line.strip():
            assert line.rstrip().endswith("1.0")


def test_eval_reproducible(tmp_path):
    out_a, out_b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (out_a, out_b):
        main(["eval", "--agent", "random-valid", "--task", "7-1",
              "--episodes", "3", "--seed", "5", "--out", str(out)])
    assert out_a.read_bytes() == out_b.read_bytes()


def test_gen_gold_and_export_roundtrip(tmp_path):
    gold = tmp_path / "gold"
    code = main(["gen-gold", "--task", "1-2", "--var", "0", "--seed", "7",
                 "--out", str(gold)])
    assert code == 0
    assert (gold / "1-2.jsonl").exists()
    out_a = tmp_path / "bc_a.jsonl"
    out_b = tmp_path / "bc_b.jsonl"
    for out in (out_a, out_b):
        code = main(["export", str(gold), "--format", "bc", "--out", str(out)])
        assert code == 0
    assert out_a.read_bytes() == out_b.read_bytes()
    manifest = json.loads((tmp_path / "bc_a.jsonl.manifest.json").read_text())
    episode = [json.loads(line) for line in (gold / "1-2.jsonl").read_text().splitlines()]
    assert manifest["records"] == sum(len(t["steps"]) for t in episode)


def test_export_missing_directory(tmp_path):
    code = main(["export", str(tmp_path / "nope"), "--format", "bc"])
    assert code == 1


def test_unknown_task_exits_2():
    code = main(["eval", "--task", "42-1", "--episodes", "1", "--seed", "1"])
    assert code == 2


def test_play_session_with_clarification_menu():
    script = "\n".join([
        "take apple",      # only one apple: executes
        ":valid",
        "focus on ice",
        "move ice to metal pot",
        "activate stove",
        "wait",
        "wait",
        ":quit",
    ]) + "\n"
    proc = run_cli(["play", "--task", "1-2", "--var", "0", "--seed", "7"], stdin=script)
    assert proc.returncode == 0
    assert "Your task is to melt ice." in proc.stdout
    assert "score:" in proc.stdout
    assert "go to hallway" in proc.stdout  # :valid listing


def test_play_numbered_menu_resolution():
    script = "open cupboard\nlook at tin cup\n:quit\n"
    proc = run_cli(["play", "--task", "1-2", "--var", "0", "--seed", "7",
                    "--simplifications", ""], stdin=script)
    assert proc.returncode == 0


def test_repl_matches_api_replay():
    """The REPL is a thin shell over the step API: replaying its command log
    through the API reproduces the printed scores."""
    from sciencehouse.env import Environment
    commands = ["focus on ice", "move ice to metal pot", "activate stove", "wait"]
    script = "\n".join(commands) + "\n:quit\n"
    proc = run_cli(["play", "--task", "1-2", "--var", "0", "--seed", "7"], stdin=script)
    env = Environment()
    env.reset("1-2", 0, 7, "easy")
    for command in commands:
        if env.done:
            break
        obs = env.step(command)
        assert f"[score: {obs.score:.3f}" in proc.stdout
