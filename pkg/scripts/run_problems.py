#!/usr/bin/env python3
"""Run every problem file in problems/ through the CLI and tabulate results.

Usage: python scripts/run_problems.py [--format table|structured]
"""
import argparse
import subprocess
import sys
from pathlib import Path

import yaml

ROOT = Path(__file__).resolve().parent.parent


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--format", choices=("table", "structured"), default="table")
    args = ap.parse_args()

    worst = 0
    for path in sorted((ROOT / "problems").glob("*.yaml")):
        command = yaml.safe_load(path.read_text())["task"]["command"]
        res = subprocess.run(
            [sys.executable, "-m", "catext.cli", command, str(path),
             "--format", args.format],
            capture_output=True, text=True)
        expected_fail = path.stem.startswith(("broken", "corrupt"))
        status = "ok" if res.returncode == 0 else f"exit {res.returncode}"
        marker = "(expected)" if expected_fail and res.returncode == 1 else ""
        print(f"== {path.name} [{command}] -> {status} {marker}")
        print("\n".join("   " + line for line in res.stdout.rstrip().splitlines()))
        if res.returncode != 0 and not expected_fail:
            worst = max(worst, res.returncode)
    return worst


if __name__ == "__main__":
    sys.exit(main())
