"""Entanglement control of a cavity mode and a distant atom.

Atom A couples to mode M1 (Jaynes-Cummings, rate ``g``); atom B is isolated.
The initial state ``|g_a>(alpha |1_1, g_b> + beta |0_1, e_b>)|0_2>`` carries
M1-B entanglement, which free evolution swaps onto A-B. Inserting stages
where A couples to a second, detuned mode M2 slows the swap.

All amplitudes live in the frame rotating at ``omega_1``: the one-excitation
block ``(M2, A, M1)`` (each with B in ``g``) evolves under the stage
propagators below, and the ``|0, g_a, 0> |e_b>`` branch picks up
``exp(-i delta t2)`` per step. Block basis labels such as
``|0_1,g_a,1_1>`` are read as (M2 occupation, atom A, M1 occupation).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import eig_hermitian, partial_trace, HERMITIAN_TOL

# full product space ordering: atom A, mode M1, mode M2, atom B
FULL_DIMS = (2, 2, 2, 2)
SIGMA_Y = np.array([[0, -1j], [1j, 0]])
_YY = np.kron(SIGMA_Y, SIGMA_Y)

_STATE_TOL = 1e-10
# eigenvalues of rho below this are rounding noise; left in, they enter the
# concurrence through a square root at the 1e-8 level
RANK_TOL = 1e-14


@dataclass(frozen=True)
class CavityParams:
    g: float
    delta: float
    t1: float
    t2: float
    n_steps: int = 1
    alpha: complex = 1 / math.sqrt(2)
    beta: complex = 1 / math.sqrt(2)

    def __post_init__(self):
        for name in ("g", "delta", "t1", "t2"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.g <= 0:
            raise ValueError("g must be positive")
        if self.t1 < 0 or self.t2 < 0:
            raise ValueError("stage durations must be non-negative")
        if int(self.n_steps) != self.n_steps or self.n_steps < 1:
            raise ValueError("n_steps must be a positive integer")
        norm = abs(self.alpha) ** 2 + abs(self.beta) ** 2
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"|alpha|^2 + |beta|^2 must be 1, got {norm}")

    @classmethod
    def swap_schedule(
        cls, g: float, delta: float, gt2: float, n_steps: int, **kw
    ) -> "CavityParams":
        """Schedule with total A-M1 time ``N t1 = pi/(2g)``, one full swap."""
        return cls(g, delta, math.pi / (2 * g * n_steps), gt2 / g, n_steps, **kw)


@dataclass(frozen=True, eq=False)
class CavityState:
    """``exc`` on (M2, A, M1) with B in ``g``; ``vac`` on vacuum with B in ``e``."""

    exc: np.ndarray
    vac: complex

    def __post_init__(self):
        exc = np.array(self.exc, dtype=complex).reshape(3)
        exc.setflags(write=False)
        object.__setattr__(self, "exc", exc)
        object.__setattr__(self, "vac", complex(self.vac))

    @property
    def norm(self) -> float:
        return math.sqrt(float(np.sum(np.abs(self.exc) ** 2)) + abs(self.vac) ** 2)

    def full_vector(self) -> np.ndarray:
        """Amplitudes in the 16-dimensional A x M1 x M2 x B product space."""
        psi = np.zeros(16, dtype=complex)
        psi[_full_index(0, 0, 1, 0)] = self.exc[0]
        psi[_full_index(1, 0, 0, 0)] = self.exc[1]
        psi[_full_index(0, 1, 0, 0)] = self.exc[2]
        psi[_full_index(0, 0, 0, 1)] = self.vac
        return psi


def _full_index(a: int, m1: int, m2: int, b: int) -> int:
    return 8 * a + 4 * m1 + 2 * m2 + b


def initial_state(alpha: complex, beta: complex) -> CavityState:
    return CavityState([0.0, 0.0, alpha], beta)


def free_evolution(alpha: complex, beta: complex, g: float, t: float) -> CavityState:
    """Jaynes-Cummings evolution of A and M1 alone; M2 stays empty."""
    gt = g * t
    return CavityState([0.0, -1j * alpha * math.sin(gt), alpha * math.cos(gt)], beta)


def concurrence_uncontrolled(alpha: complex, beta: complex, g: float, t: float) -> float:
    return 2.0 * abs(alpha * beta * math.cos(g * t))


def stage1_propagator(params: CavityParams) -> np.ndarray:
    """A exchanges its excitation with M1; M2 only gains a detuning phase."""
    gt, dt = params.g * params.t1, params.delta * params.t1
    c, s = math.cos(gt), math.sin(gt)
    return np.array(
        [[np.exp(1j * dt), 0, 0], [0, c, -1j * s], [0, -1j * s, c]], dtype=complex
    )


def stage2_propagator(params: CavityParams) -> np.ndarray:
    """A exchanges with M2 (imaginary coupling, so a real rotation); M1 dephases."""
    gt, dt = params.g * params.t2, params.delta * params.t2
    c, s = math.cos(gt), math.sin(gt)
    return np.array(
        [[c, -s, 0], [s, c, 0], [0, 0, np.exp(-1j * dt)]], dtype=complex
    )


def evolve_controlled(params: CavityParams, initial: CavityState | None = None) -> CavityState:
    """Apply ``n_steps`` of stage 1 followed by stage 2."""
    if initial is None:
        initial = initial_state(params.alpha, params.beta)
    if abs(initial.norm - 1.0) > _STATE_TOL:
        raise ValueError("initial state must be normalized")
    step = stage2_propagator(params) @ stage1_propagator(params)
    exc = np.linalg.matrix_power(step, params.n_steps) @ initial.exc
    vac = initial.vac * np.exp(-1j * params.delta * params.t2 * params.n_steps)
    return CavityState(exc, vac)


def reduced_density_M1_B(state: CavityState) -> np.ndarray:
    """Reduced state of (M1, B) on ``{|0g>, |0e>, |1g>, |1e>}``."""
    if abs(state.norm - 1.0) > _STATE_TOL:
        raise ValueError("state must be normalized")
    psi = state.full_vector()
    return partial_trace(np.outer(psi, np.conj(psi)), FULL_DIMS, keep=(1, 3))


def _check_density(rho: np.ndarray) -> np.ndarray:
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise ValueError(f"expected a 4x4 two-qubit density matrix, got {rho.shape}")
    if not np.all(np.isfinite(rho)):
        raise ValueError("density matrix has non-finite entries")
    if np.max(np.abs(rho - rho.conj().T)) > HERMITIAN_TOL:
        raise ValueError("density matrix is not Hermitian")
    if abs(np.trace(rho) - 1.0) > _STATE_TOL:
        raise ValueError("density matrix must have unit trace")
    return rho


def concurrence_wootters(rho) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    The decreasing ``lambda_i`` are the square roots of the eigenvalues of
    ``rho (Y x Y) rho* (Y x Y)``. They are computed as the singular values of
    ``sqrt(rho) (Y x Y) sqrt(rho)*``, which avoids taking square roots of
    eigenvalues that should vanish but come out at rounding level. For the
    same reason eigenvalues of ``rho`` below ``RANK_TOL`` are set to zero.
    """
    rho = _check_density(rho)
    values, vectors = eig_hermitian(rho)
    if values[-1] < -_STATE_TOL:
        raise ValueError("density matrix is not positive semidefinite")
    values = np.where(values < RANK_TOL, 0.0, values)
    root = (vectors * np.sqrt(values)) @ vectors.conj().T
    lam = np.linalg.svd(root @ _YY @ root.conj(), compute_uv=False)
    return max(0.0, float(lam[0] - lam[1] - lam[2] - lam[3]))


def fig4_sweep(params: CavityParams, n_values) -> list[tuple[int, float, float]]:
    """Concurrence of M1 and B after ``N`` steps, ``t1 = pi/(2gN)``, for each ``N``.

    ``params.t1`` and ``params.n_steps`` are ignored.

    Returns
    -------
    list of (N, t1, concurrence)
    """
    n_values = [int(n) for n in n_values]
    if not n_values:
        raise ValueError("n_values must be non-empty")
    rows = []
    for n in n_values:
        p = CavityParams(
            params.g,
            params.delta,
            math.pi / (2 * params.g * n),
            params.t2,
            n,
            params.alpha,
            params.beta,
        )
        c = concurrence_wootters(reduced_density_M1_B(evolve_controlled(p)))
        rows.append((n, p.t1, c))
    return rows
