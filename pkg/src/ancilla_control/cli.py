"""Command-line front end: CSV data for the four figures and a verify run.

Exit codes: 0 success, 1 verification failure, 2 usage, 3 I/O, 4 degenerate
rotation parameters. Angles are in radians; the survival and rate scenarios
report dimensionless time ``G t`` when the couplings are left at 1.
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import cavity_control as cc
from . import qubit_protocol as qp
from . import so3_map as so3
from . import verify

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO, EXIT_DEGENERATE = 0, 1, 2, 3, 4

SCENARIOS = ("sphere", "survival", "zeno", "rate", "entanglement", "verify")

_CHECK_TOL = 1e-10


@dataclass
class RunConfig:
    scenario: str
    out: Path | None = None
    params: dict = field(default_factory=dict)


def fmt(x: float) -> str:
    """Shortest decimal that round-trips to the same double."""
    return repr(float(x))


def _finite_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed number: {text!r}")
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"number must be finite: {text!r}")
    return value


def _positive_float(text: str) -> float:
    value = _finite_float(text)
    if value <= 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return value


def _nonneg_float(text: str) -> float:
    value = _finite_float(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative: {text!r}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text!r}")
    return value


def _complex(text: str) -> complex:
    try:
        value = complex(text.replace(" ", ""))
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed complex number: {text!r}")
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise argparse.ArgumentTypeError(f"number must be finite: {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ancilla-control",
        description="Single-ancilla control simulations with CSV output.",
    )
    sub = parser.add_subparsers(dest="scenario", required=True)

    p = sub.add_parser("sphere", help="unit-sphere trajectories (figure 1)")
    p.add_argument("--phi", type=_finite_float, nargs="+", required=True)
    p.add_argument("--n", type=_positive_int, nargs="+", required=True)
    p.add_argument("--initial", type=_finite_float, nargs=3, default=[0.0, 0.0, 1.0])
    p.add_argument("--out", type=Path, required=True)

    for name, text in (
        ("survival", "survival probability and rate vs time (figure 2)"),
        ("rate", "same table as 'survival' (figure 2)"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("--phi", type=_nonneg_float, default=math.pi / 10)
        p.add_argument("--n", type=_positive_int, default=10)
        p.add_argument("--theta", type=_nonneg_float, default=None,
                       help="per-step b-c angle; default pi/(2N)")
        p.add_argument("--g-bc", type=_positive_float, default=1.0)
        p.add_argument("--g-ab", type=_positive_float, default=1.0)
        p.add_argument("--samples", type=_positive_int, default=50,
                       help="samples per segment, at least 2")
        p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("zeno", help="protocol vs Zeno baseline (figure 3)")
    p.add_argument("--n-max", type=_positive_int, required=True)
    p.add_argument("--phi", type=_finite_float, default=math.pi / 2)
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("entanglement", help="controlled concurrence vs N (figure 4)")
    p.add_argument("--g", type=_positive_float, default=1.5e4)
    p.add_argument("--delta", type=_finite_float, default=8e5)
    t2 = p.add_mutually_exclusive_group()
    t2.add_argument("--gt2", type=_nonneg_float, default=None,
                    help="stage-2 angle g*t2; default pi/2")
    t2.add_argument("--t2", type=_nonneg_float, default=None)
    p.add_argument("--n", type=_positive_int, nargs="+", default=list(verify.FIG4_N))
    p.add_argument("--alpha", type=_complex, default=complex(1 / math.sqrt(2)))
    p.add_argument("--beta", type=_complex, default=complex(1 / math.sqrt(2)))
    p.add_argument("--out", type=Path, required=True)

    p = sub.add_parser("verify", help="run the oracle cross-checks")
    p.add_argument("--seed", type=int, default=12345)
    p.add_argument("--out", type=Path, default=None)
    return parser


def parse_args(argv=None) -> RunConfig:
    """Parse and validate; usage errors exit with status 2."""
    parser = build_parser()
    ns = parser.parse_args(argv)
    params = {k: v for k, v in vars(ns).items() if k not in ("scenario", "out")}

    if ns.scenario in ("survival", "rate") and ns.samples < 2:
        parser.error("--samples must be at least 2")
    if ns.scenario == "sphere":
        r0 = np.asarray(ns.initial, dtype=float)
        if abs(np.linalg.norm(r0) - 1.0) > 1e-10:
            parser.error("--initial must be a unit vector")
    if ns.scenario == "entanglement":
        if abs(abs(ns.alpha) ** 2 + abs(ns.beta) ** 2 - 1.0) > 1e-12:
            parser.error("|alpha|^2 + |beta|^2 must equal 1")
        if ns.t2 is not None:
            params["t2"] = ns.t2
        else:
            params["t2"] = (math.pi / 2 if ns.gt2 is None else ns.gt2) / ns.g
        params.pop("gt2")
    return RunConfig(ns.scenario, ns.out, params)


def _write_csv(path: Path, header: str, rows, trailer: str | None = None) -> None:
    lines = [header]
    lines.extend(",".join(r) for r in rows)
    if trailer is not None:
        lines.append(trailer)
    with open(path, "w", newline="\n", encoding="ascii") as fh:
        fh.write("\n".join(lines) + "\n")


def _prob(p: float) -> float:
    if not (-_CHECK_TOL <= p <= 1.0 + _CHECK_TOL):
        raise RuntimeError(f"probability {p} outside [0, 1]")
    return min(1.0, max(0.0, p))


def _sphere_outputs(out: Path, ns: list[int], phis: list[float]):
    if len(ns) == 1 and len(phis) == 1:
        return [(ns[0], phis[0], out)]
    return [
        (n, phi, out.with_name(f"{out.stem}_n{n}_phi{phi!r}{out.suffix}"))
        for n in ns
        for phi in phis
    ]


def _run_sphere(cfg: RunConfig) -> int:
    p = cfg.params
    for n, phi, path in _sphere_outputs(cfg.out, p["n"], p["phi"]):
        points, axis = so3.sphere_trajectory(phi, n, p["initial"])
        if np.max(np.abs(np.linalg.norm(points, axis=1) - 1.0)) > _CHECK_TOL:
            raise RuntimeError("sphere point off the unit sphere")
        rows = [(str(k), fmt(x), fmt(y), fmt(z)) for k, (x, y, z) in enumerate(points)]
        _write_csv(path, "step,x,y,z", rows, "# axis," + ",".join(fmt(v) for v in axis))
    return EXIT_OK


def _run_survival(cfg: RunConfig) -> int:
    p = cfg.params
    theta = p["theta"] if p["theta"] is not None else math.pi / (2 * p["n"])
    params = qp.ProtocolParams(p["n"], theta, p["phi"], p["g_bc"], p["g_ab"])
    rows = [
        (fmt(s.t), fmt(_prob(s.p001)), fmt(s.dp001_dt), s.segment, str(s.step))
        for s in qp.trajectory(params, qp.STATE_001, p["samples"])
    ]
    _write_csv(cfg.out, "t,p001,dp001_dt,segment,step", rows)
    return EXIT_OK


def _run_zeno(cfg: RunConfig) -> int:
    p = cfg.params
    rows = []
    for n in range(1, p["n_max"] + 1):
        final = qp.evolve_n(qp.ProtocolParams.freezing(n, p["phi"]), qp.STATE_001)
        rows.append((
            str(n),
            fmt(_prob(qp.survival_probability(final, qp.STATE_001))),
            fmt(_prob(qp.zeno_survival(n, "paper"))),
            fmt(_prob(qp.zeno_survival(n, "squared"))),
        ))
    _write_csv(cfg.out, "n,p001,zeno_paper,zeno_squared", rows)
    return EXIT_OK


def _run_entanglement(cfg: RunConfig) -> int:
    p = cfg.params
    base = cc.CavityParams(p["g"], p["delta"], 0.0, p["t2"], 1, p["alpha"], p["beta"])
    rows = [
        (str(n), fmt(t1), fmt(_prob(c)))
        for n, t1, c in cc.fig4_sweep(base, p["n"])
    ]
    _write_csv(cfg.out, "n,t1,concurrence", rows)
    return EXIT_OK


def _run_verify(cfg: RunConfig) -> int:
    results = verify.run_checks(cfg.params.get("seed", 12345))
    lines = [
        f"{'PASS' if r.passed else 'FAIL'} {r.name} worst={r.worst:.3e} tol={r.tol:.0e}"
        for r in results
    ]
    print("\n".join(lines))
    if cfg.out is not None:
        with open(cfg.out, "w", newline="\n", encoding="ascii") as fh:
            fh.write("\n".join(lines) + "\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY


_RUNNERS = {
    "sphere": _run_sphere,
    "survival": _run_survival,
    "rate": _run_survival,
    "zeno": _run_zeno,
    "entanglement": _run_entanglement,
    "verify": _run_verify,
}


def run(cfg: RunConfig) -> int:
    try:
        return _RUNNERS[cfg.scenario](cfg)
    except so3.DegenerateRotationError as exc:
        print(f"error: degenerate parameters: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_IO


def main(argv=None) -> int:
    return run(parse_args(argv))


if __name__ == "__main__":
    sys.exit(main())
