"""Three qubits sharing one excitation, controlled by a single ancilla.

Qubits b and c exchange the excitation under ``U_bc(theta)``; the ancilla a is
coupled to b by ``U_ab(phi)``. One protocol step is ``U_ab(phi) @ U_bc(theta)``.
States are length-3 complex arrays of physical amplitudes on
``{|1a,0b,0c>, |0a,1b,0c>, |0a,0b,1c>}``. Equal free energies only add a
global phase in this subspace and are dropped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

NORM_TOL = 1e-10

STATE_001 = np.array([0.0, 0.0, 1.0], dtype=complex)


@dataclass(frozen=True)
class ProtocolParams:
    """Step count, per-step angles and couplings.

    ``theta_per_step = g_bc * t_bc`` and ``phi_per_step = g_ab * t_ab``.
    """

    n_steps: int
    theta_per_step: float
    phi_per_step: float
    g_bc: float = 1.0
    g_ab: float = 1.0

    def __post_init__(self):
        if int(self.n_steps) != self.n_steps or self.n_steps < 1:
            raise ValueError(f"n_steps must be a positive integer, got {self.n_steps}")
        if not (math.isfinite(self.theta_per_step) and math.isfinite(self.phi_per_step)):
            raise ValueError("angles must be finite")
        if not (self.g_bc > 0 and self.g_ab > 0):
            raise ValueError("couplings must be positive")
        if not (math.isfinite(self.g_bc) and math.isfinite(self.g_ab)):
            raise ValueError("couplings must be finite")

    @property
    def t_bc(self) -> float:
        return self.theta_per_step / self.g_bc

    @property
    def t_ab(self) -> float:
        return self.phi_per_step / self.g_ab

    @classmethod
    def freezing(cls, n_steps: int, phi: float, **kw) -> "ProtocolParams":
        """Schedule with ``theta = pi/(2N)``, the total b-c angle of one full transfer."""
        return cls(n_steps, math.pi / (2 * n_steps), phi, **kw)


def as_state(psi, name: str = "state") -> np.ndarray:
    arr = np.asarray(psi, dtype=complex).reshape(3)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite amplitudes")
    norm = float(np.linalg.norm(arr))
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"{name} must be normalized, got norm {norm}")
    return arr


def u_bc(theta: float) -> np.ndarray:
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[1, 0, 0], [0, c, -1j * s], [0, -1j * s, c]], dtype=complex)


def u_ab(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -1j * s, 0], [-1j * s, c, 0], [0, 0, 1]], dtype=complex)


def du_bc(theta: float) -> np.ndarray:
    """Derivative of ``u_bc`` with respect to its angle."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[0, 0, 0], [0, -s, -1j * c], [0, -1j * c, -s]], dtype=complex)


def du_ab(phi: float) -> np.ndarray:
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[-s, -1j * c, 0], [-1j * c, -s, 0], [0, 0, 0]], dtype=complex)


def step_propagator(theta: float, phi: float) -> np.ndarray:
    return u_ab(phi) @ u_bc(theta)


def evolve_n(params: ProtocolParams, initial=STATE_001) -> np.ndarray:
    """State after ``params.n_steps`` applications of ``U_ab(phi) U_bc(theta)``."""
    psi = as_state(initial, "initial")
    step = step_propagator(params.theta_per_step, params.phi_per_step)
    return np.linalg.matrix_power(step, params.n_steps) @ psi


def survival_probability(final, initial=STATE_001) -> float:
    """``|<initial|final>|**2``, clipped into ``[0, 1]``."""
    amp = np.vdot(as_state(initial, "initial"), as_state(final, "final"))
    return min(1.0, max(0.0, float(abs(amp) ** 2)))


def zeno_survival(n: int, mode: str = "paper") -> float:
    """Discrete Zeno baseline for ``n`` probes.

    ``mode="paper"`` gives ``cos(pi/2n)**n``; ``mode="squared"`` gives the
    usual projective-measurement form ``cos(pi/2n)**(2n)``.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    c = math.cos(math.pi / (2 * n))
    if mode == "paper":
        return c**n
    if mode == "squared":
        return c ** (2 * n)
    raise ValueError(f"unknown mode {mode!r}; expected 'paper' or 'squared'")


class Sample(NamedTuple):
    t: float
    p001: float
    dp001_dt: float
    segment: str
    step: int


class _Segment(NamedTuple):
    step: int
    label: str
    t_start: float
    duration: float
    rate: float
    psi_start: np.ndarray


def _segments(params: ProtocolParams, initial) -> Iterator[_Segment]:
    if params.theta_per_step < 0 or params.phi_per_step < 0:
        raise ValueError("time-resolved schedules need non-negative angles")
    psi = as_state(initial, "initial")
    t = 0.0
    for k in range(1, params.n_steps + 1):
        yield _Segment(k, "bc", t, params.t_bc, params.g_bc, psi)
        psi = u_bc(params.theta_per_step) @ psi
        t += params.t_bc
        yield _Segment(k, "ab", t, params.t_ab, params.g_ab, psi)
        psi = u_ab(params.phi_per_step) @ psi
        t += params.t_ab


def _segment_values(seg: _Segment, psi0: np.ndarray, tau: float) -> tuple[float, float]:
    u, du = (u_bc, du_bc) if seg.label == "bc" else (u_ab, du_ab)
    angle = seg.rate * tau
    amp = np.vdot(psi0, u(angle) @ seg.psi_start)
    damp = seg.rate * np.vdot(psi0, du(angle) @ seg.psi_start)
    p = float(abs(amp) ** 2)
    dp = 2.0 * float((np.conj(amp) * damp).real)
    return p, dp


def probability_at(params: ProtocolParams, initial, t: float) -> tuple[float, float]:
    """Survival probability of ``initial`` and its time derivative at time ``t``.

    At a segment boundary the value from the later segment is returned.
    Time is measured in units where ``g_bc = g_ab = 1`` unless the couplings
    say otherwise.
    """
    psi0 = as_state(initial, "initial")
    last = None
    for seg in _segments(params, psi0):
        if seg.t_start <= t < seg.t_start + seg.duration:
            return _segment_values(seg, psi0, t - seg.t_start)
        last = seg
    if last is not None and abs(t - (last.t_start + last.duration)) <= 1e-12:
        return _segment_values(last, psi0, last.duration)
    raise ValueError(f"time {t} is outside the schedule")


def trajectory(
    params: ProtocolParams, initial=STATE_001, samples_per_segment: int = 50
) -> list[Sample]:
    """Sampled survival probability and transition rate over the whole schedule.

    Each step is a b-c segment of length ``t_bc`` followed by an a-b segment of
    length ``t_ab``. Every segment is sampled at ``samples_per_segment`` evenly
    spaced points including both ends, so boundary times appear twice, once
    per segment; the rate is one-sided there. Segments of zero length are
    sampled once.
    """
    if int(samples_per_segment) != samples_per_segment or samples_per_segment < 2:
        raise ValueError("samples_per_segment must be an integer >= 2")
    psi0 = as_state(initial, "initial")
    rows: list[Sample] = []
    for seg in _segments(params, psi0):
        count = samples_per_segment if seg.duration > 0 else 1
        for tau in np.linspace(0.0, seg.duration, count):
            p, dp = _segment_values(seg, psi0, float(tau))
            rows.append(Sample(seg.t_start + float(tau), p, dp, seg.label, seg.step))
    return rows
