#!/usr/bin/env python3
"""Regenerate the golden JSON files under tests/goldens/.

Run after an intentional change to the serialization format, then review the
diff before committing.
"""

import io
import sys
from pathlib import Path

from cpbound.cli import run

GOLDENS = Path(__file__).resolve().parent.parent / "tests" / "goldens"

TARGETS = {
    "w_n4.json": ["construct", "--k", "1", "--format", "json"],
    "glue_k1.json": ["glue", "--k", "1", "--format", "json"],
}


def main() -> int:
    GOLDENS.mkdir(parents=True, exist_ok=True)
    for name, argv in TARGETS.items():
        buf = io.StringIO()
        code = run(argv, out=buf)
        if code != 0:
            print(f"{name}: command {argv} exited {code}", file=sys.stderr)
            return 1
        (GOLDENS / name).write_text(buf.getvalue())
        print(f"wrote {GOLDENS / name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
