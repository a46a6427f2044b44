"""Write CSV data for figures 1-4 into one directory via the CLI entry point.

    python3 scripts/reproduce_figures.py --outdir figures
"""

import argparse
import math
import sys
from pathlib import Path

from ancilla_control.cli import main as cli_main

PI = math.pi


def recipes(outdir: Path):
    r = repr
    return [
        # 1(a): phi = pi/16, three values of N
        ["sphere", "--phi", r(PI / 16), "--n", "10", "20", "40", "--out", str(outdir / "fig1a.csv")],
        # 1(b): N = 20, three values of phi
        ["sphere", "--phi", r(PI / 32), r(PI / 16), r(PI / 8), "--n", "20",
         "--out", str(outdir / "fig1b.csv")],
        ["survival", "--phi", r(PI / 10), "--n", "10", "--out", str(outdir / "fig2.csv")],
        ["zeno", "--n-max", "100", "--phi", r(PI / 2), "--out", str(outdir / "fig3.csv")],
        ["entanglement", "--out", str(outdir / "fig4.csv")],
    ]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", type=Path, default=Path("figures"))
    args = parser.parse_args(argv)
    args.outdir.mkdir(parents=True, exist_ok=True)
    for argv_ in recipes(args.outdir):
        code = cli_main(argv_)
        print(f"{'ok ' if code == 0 else 'ERR'} ancilla-control {' '.join(argv_)}")
        if code:
            return code
    return 0


if __name__ == "__main__":
    sys.exit(main())
