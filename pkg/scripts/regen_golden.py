"""Rewrite tests/golden/*.out from the current CLI output.

Run after an intentional output change, then review the diff.
"""

import contextlib
import io
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]
sys.path.insert(0, str(ROOT))

from combsim.cli import run  # noqa: E402
from tests.test_cli import CASES, GOLDEN, resolve  # noqa: E402


def main() -> None:
    GOLDEN.mkdir(exist_ok=True)
    for name, argv, expected in CASES:
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf), contextlib.redirect_stderr(io.StringIO()):
            code = run(resolve(argv))
        if code != expected:
            raise SystemExit(f"{name}: exit {code}, expected {expected}")
        (GOLDEN / f"{name}.out").write_text(buf.getvalue())
        print(f"wrote {name}.out")


if __name__ == "__main__":
    main()
