#!/usr/bin/env python3
"""Regenerate the golden CLI outputs listed in tests/golden/manifest.json.

Each command runs twice; the script refuses to write if the two runs differ.
"""

from __future__ import annotations

import argparse
import io
import json
from pathlib import Path

from ladderkit.cli import main as cli_main

GOLDEN_DIR = Path(__file__).resolve().parent.parent / "tests" / "golden"


def render(args: list[str]) -> str:
    out = io.StringIO()
    code = cli_main(args, out=out)
    if code != 0:
        raise SystemExit(f"ladderkit {' '.join(args)} exited with {code}")
    return out.getvalue()


def main(argv: list[str] | None = None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--check", action="store_true", help="compare instead of writing")
    args = p.parse_args(argv)

    manifest = json.loads((GOLDEN_DIR / "manifest.json").read_text())
    status = 0
    for name, cmd in manifest.items():
        first, second = render(cmd), render(cmd)
        if first != second:
            print(f"{name}: output is not deterministic")
            return 1
        path = GOLDEN_DIR / name
        if args.check:
            same = path.exists() and path.read_bytes() == first.encode()
            print(f"{name}: {'ok' if same else 'DIFFERS'}")
            status |= not same
        else:
            path.write_bytes(first.encode())
            print(f"wrote {path}")
    return status


if __name__ == "__main__":
    raise SystemExit(main())
