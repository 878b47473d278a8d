"""Regenerate the CLI fixtures and golden outputs under tests/."""

import shutil
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

import cli_matrix  # noqa: E402


def main():
    cli_matrix.make_fixtures()
    if cli_matrix.GOLDEN.exists():
        shutil.rmtree(cli_matrix.GOLDEN)
    files = cli_matrix.run_matrix(cli_matrix.GOLDEN)
    print(f"wrote {len(files)} golden files to {cli_matrix.GOLDEN}")


if __name__ == "__main__":
    main()
