"""Print figure-4 concurrences from the 16-dimensional brute-force oracle.

The output is the source of the regression constants in the test suite.
A nonzero ``--omega1`` checks that the absolute mode frequency drops out.
"""

import argparse

from ancilla_control import verify


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--omega1", type=float, default=0.0)
    args = parser.parse_args()
    rows = verify.brute_force_sweep(verify.fig4_params(), verify.FIG4_N, args.omega1)
    values = [c for _, _, c in rows]
    for n, t1, c in rows:
        print(f"{n:3d}  t1={t1!r}  C={c!r}")
    print("nondecreasing:", all(b >= a for a, b in zip(values, values[1:])))


if __name__ == "__main__":
    main()
