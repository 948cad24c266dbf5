"""Regenerate the golden CLI reports under tests/golden/.

Run after any intentional change to the report format:

    python scripts/generate_goldens.py
"""

from __future__ import annotations

from pathlib import Path

from qbg.cli import main

REPO = Path(__file__).resolve().parents[1]
GOLDEN = REPO / "tests" / "golden"
SPECTRUM = REPO / "tests" / "data" / "spectrum_0to5.csv"

RUNS = {
    "equiv_q098_beta1_order12.csv": [
        "equiv", "--spectrum", str(SPECTRUM), "--q", "0.98", "--beta", "1",
        "--max-order", "12",
    ],
    "map_q1_beta2_order4.csv": [
        "map", "--q", "1", "--beta", "2", "--order", "4",
    ],
    "clayton_beta1_delta001.csv": [
        "clayton", "--beta", "1", "--delta", "0.01",
    ],
}


def regenerate() -> None:
    GOLDEN.mkdir(parents=True, exist_ok=True)
    for name, args in RUNS.items():
        out = GOLDEN / name
        status = main([*args, "--out", str(out)])
        if status != 0:
            raise SystemExit(f"golden run for {name} failed with status {status}")
        print(f"wrote {out}")


if __name__ == "__main__":
    regenerate()
