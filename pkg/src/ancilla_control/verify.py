"""Independent cross-checks of the closed forms.

The cavity oracle builds the full stage Hamiltonians on the 16-dimensional
A x M1 x M2 x B space (each factor truncated to two levels, enough for one
excitation), exponentiates them with the series routine, traces out A and M2
and evaluates the concurrence with ``numpy.linalg`` only. Nothing here calls
the closed-form propagators it is compared against.

``run_checks`` bundles the cross-checks for the ``verify`` CLI subcommand.
"""

from __future__ import annotations

import math
import time
from typing import Callable, NamedTuple

import numpy as np

from . import cavity_control as cc
from . import qubit_protocol as qp
from . import so3_map as so3
from .linalg import eig_hermitian, expm_series, partial_trace

_SM = np.array([[0, 1], [0, 0]], dtype=complex)  # |0><1|: lowering / annihilation
_I2 = np.eye(2, dtype=complex)


def _on(op: np.ndarray, site: int) -> np.ndarray:
    mats = [_I2] * 4
    mats[site] = op
    out = mats[0]
    for m in mats[1:]:
        out = np.kron(out, m)
    return out


A_SITE, M1_SITE, M2_SITE, B_SITE = 0, 1, 2, 3


def full_hamiltonians(g: float, delta: float, omega1: float = 0.0):
    """Stage Hamiltonians (hbar = 1) on the full product space.

    ``omega2 = omega1 - delta``. ``omega1`` only multiplies the total
    excitation number and therefore only adds a global phase.
    """
    omega2 = omega1 - delta
    sm_a, a1, a2 = _on(_SM, A_SITE), _on(_SM, M1_SITE), _on(_SM, M2_SITE)
    n1 = a1.conj().T @ a1
    n2 = a2.conj().T @ a2
    ea = sm_a.conj().T @ sm_a
    eb = _on(_SM.conj().T @ _SM, B_SITE)
    sp_a = sm_a.conj().T
    h1 = (
        omega1 * n1 + omega2 * n2 + omega1 * ea + omega1 * eb
        + g * (sp_a @ a1 + sm_a @ a1.conj().T)
    )
    h2 = (
        omega1 * n1 + omega2 * n2 + omega2 * ea + omega1 * eb
        + g * (1j * sp_a @ a2 - 1j * sm_a @ a2.conj().T)
    )
    return h1, h2


def full_initial_state(alpha: complex, beta: complex) -> np.ndarray:
    psi = np.zeros(16, dtype=complex)
    psi[0b0100] = alpha  # g_a, 1 photon in M1, M2 empty, g_b
    psi[0b0001] = beta  # g_a, M1 empty, M2 empty, e_b
    return psi


def brute_force_state(params: cc.CavityParams, omega1: float = 0.0) -> np.ndarray:
    h1, h2 = full_hamiltonians(params.g, params.delta, omega1)
    step = expm_series(-1j * h2 * params.t2) @ expm_series(-1j * h1 * params.t1)
    psi = full_initial_state(params.alpha, params.beta)
    for _ in range(params.n_steps):
        psi = step @ psi
    return psi


def reference_concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence using ``numpy.linalg`` routines only."""
    w, v = np.linalg.eigh(0.5 * (rho + rho.conj().T))
    root = (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T
    yy = np.kron(cc.SIGMA_Y, cc.SIGMA_Y)
    lam = np.linalg.svd(root @ yy @ root.conj(), compute_uv=False)
    return max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))


def brute_force_concurrence(params: cc.CavityParams, omega1: float = 0.0) -> float:
    psi = brute_force_state(params, omega1)
    rho = partial_trace(np.outer(psi, psi.conj()), cc.FULL_DIMS, keep=(M1_SITE, B_SITE))
    return reference_concurrence(rho)


def brute_force_sweep(params: cc.CavityParams, n_values, omega1: float = 0.0):
    rows = []
    for n in n_values:
        p = cc.CavityParams(
            params.g, params.delta, math.pi / (2 * params.g * n), params.t2, int(n),
            params.alpha, params.beta,
        )
        rows.append((int(n), p.t1, brute_force_concurrence(p, omega1)))
    return rows


FIG4 = dict(g=1.5e4, delta=8e5, gt2=math.pi / 2)
FIG4_N = (1, 2, 5, 10, 20, 50)


def fig4_params(n_steps: int = 1, **kw) -> cc.CavityParams:
    return cc.CavityParams.swap_schedule(FIG4["g"], FIG4["delta"], FIG4["gt2"], n_steps, **kw)


class CheckResult(NamedTuple):
    name: str
    passed: bool
    worst: float
    tol: float
    seconds: float


def _check_map_equivalence(rng) -> float:
    worst = 0.0
    grid = np.linspace(0.0, math.pi, 22)[1:-1]
    vecs = rng.normal(size=(10, 3))
    vecs /= np.linalg.norm(vecs, axis=1, keepdims=True)
    for theta in grid:
        for phi in grid:
            step = qp.step_propagator(theta, phi)
            rot = so3.composite(theta, phi)
            for r in vecs:
                got = so3.extract(step @ so3.embed(r))
                worst = max(worst, float(np.max(np.abs(got - rot @ r))))
    return worst


def _check_power(rng) -> float:
    worst = 0.0
    for theta, phi in rng.uniform(0.0, math.pi, size=(20, 2)):
        step = so3.composite(theta, phi)
        direct = np.eye(3)
        for n in range(1, 201):
            direct = step @ direct
            if n in (1, 2, 3, 10, 50, 200):
                closed = so3.rotation_power(theta, phi, n)
                worst = max(worst, float(np.max(np.abs(closed - direct))))
    return worst


def _check_rodrigues(rng) -> float:
    worst = 0.0
    for _ in range(100):
        axis = rng.normal(size=3)
        axis /= np.linalg.norm(axis)
        aa = so3.AxisAngle(axis, rng.uniform(-math.pi, math.pi))
        ref = expm_series(aa.angle * so3.axis_generator(aa.axis)).real
        worst = max(worst, float(np.max(np.abs(so3.rodrigues(aa) - ref))))
    return worst


def _check_stage_propagators(rng) -> float:
    worst = 0.0
    for _ in range(20):
        g = rng.uniform(0.1, 3.0)
        delta = rng.uniform(-20.0, 20.0)
        t1, t2 = rng.uniform(0.0, 2.0, size=2)
        p = cc.CavityParams(g, delta, t1, t2)
        h1 = np.array([[-delta, 0, 0], [0, 0, g], [0, g, 0]], dtype=complex)
        h2 = np.array([[0, -1j * g, 0], [1j * g, 0, 0], [0, 0, delta]], dtype=complex)
        worst = max(
            worst,
            float(np.max(np.abs(expm_series(-1j * h1 * t1) - cc.stage1_propagator(p)))),
            float(np.max(np.abs(expm_series(-1j * h2 * t2) - cc.stage2_propagator(p)))),
        )
    return worst


def _check_fig4_oracle(rng) -> float:
    worst = 0.0
    base = fig4_params()
    fast = dict((n, c) for n, _, c in cc.fig4_sweep(base, FIG4_N))
    for n, _, c in brute_force_sweep(base, FIG4_N):
        worst = max(worst, abs(c - fast[n]))
    return worst


def _check_uncontrolled(rng) -> float:
    worst = 0.0
    a = b = 1 / math.sqrt(2)
    for t in rng.uniform(0.0, 10.0, size=50):
        rho = cc.reduced_density_M1_B(cc.free_evolution(a, b, 1.0, t))
        worst = max(
            worst, abs(cc.concurrence_wootters(rho) - cc.concurrence_uncontrolled(a, b, 1.0, t))
        )
    return worst


def _check_eigensolver(rng) -> float:
    worst = 0.0
    for _ in range(50):
        x = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        h = x + x.conj().T
        w, v = eig_hermitian(h)
        worst = max(worst, float(np.max(np.abs(v @ np.diag(w) @ v.conj().T - h))))
    return worst


CHECKS: list[tuple[str, Callable, float]] = [
    ("map_equivalence", _check_map_equivalence, 1e-11),
    ("rotation_power", _check_power, 1e-10),
    ("rodrigues_vs_series", _check_rodrigues, 1e-11),
    ("stage_propagators_vs_series", _check_stage_propagators, 1e-10),
    ("fig4_vs_full_space", _check_fig4_oracle, 1e-9),
    ("uncontrolled_concurrence", _check_uncontrolled, 1e-10),
    ("eigensolver_reconstruction", _check_eigensolver, 1e-9),
]


def run_checks(seed: int = 12345) -> list[CheckResult]:
    results = []
    for name, fn, tol in CHECKS:
        rng = np.random.default_rng(seed)
        start = time.perf_counter()
        worst = fn(rng)
        results.append(CheckResult(name, worst <= tol, worst, tol, time.perf_counter() - start))
    return results
