"""Regenerate the three reference sweeps and the attenuation tables.

Writes CSVs (and gnuplot scripts) into ``--outdir`` and prints the detected
peaks.  Usage::

    python scripts/reproduce_sweeps.py --outdir results
"""

import argparse
import sys
from pathlib import Path

from bb84_resonance.cli import main

SWEEPS = {
    # delta = 0, a = 0.01: information against disturbance, just under the optimal curve
    "untilted": ["--family", "one-qubit", "--a", "0.01", "--delta", "0", "--param", "c",
                 "--from", "0", "--to", "1", "--steps", "1001"],
    # one-qubit probe near c = a: the D curve splits into a Dv peak and a Du peak
    "split": ["--family", "one-qubit", "--a", "0.5", "--delta", "0.05", "--param", "c",
              "--from", "0.01", "--to", "0.99", "--steps", "1961"],
    # two-qubit probe with beta2 tied to alpha2: a single shared resonance
    "tied": ["--family", "two-qubit", "--s", "0.5", "--delta", "0.05", "--param", "alpha2",
             "--tie", "beta2=1.8-alpha2", "--from", "0.8", "--to", "1.0", "--steps", "2001"],
}
ATTENUATION_DELTAS = "0.05,0.1,0.2,0.3"


def strip_delta(argv):
    out = list(argv)
    i = out.index("--delta")
    del out[i:i + 2]
    return out


def run(argv):
    code = main(argv)
    if code != 0:
        sys.exit(f"bb84-resonance {' '.join(argv)} exited with {code}")


def parse_args(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--outdir", default="results")
    p.add_argument("--workers", type=int, default=1)
    return p.parse_args(argv)


def main_script(argv=None):
    args = parse_args(argv)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, flags in SWEEPS.items():
        csv_path = outdir / f"{name}.csv"
        run(["sweep", *flags, "--workers", str(args.workers), "--out", str(csv_path), "--gnuplot"])
        print(f"# {name}: D peaks (location,height,prominence,width)")
        run(["peaks", "--input", str(csv_path), "--column", "D", "--min-prominence", "0.05"])
    for name in ("split", "tied"):
        out = outdir / f"attenuation_{name}.csv"
        run(["attenuation", *strip_delta(SWEEPS[name]), "--deltas", ATTENUATION_DELTAS,
             "--workers", str(args.workers), "--out", str(out)])
        print(f"# {name}: attenuation")
        print(out.read_text(), end="")


if __name__ == "__main__":
    main_script()
