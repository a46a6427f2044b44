"""Real 3-space picture of the three-qubit protocol.

With real amplitudes on the basis ``{|100>, -i|010>, |001>}`` one step of the
complex protocol is the proper rotation ``R3(phi) @ R1(-theta)``. This module
builds the elementary rotations and generators, extracts the composite
axis-angle pair, evaluates the Rodrigues expansion and its N-th power, and maps
states between the complex and real pictures.

States in the complex picture are length-3 arrays of physical amplitudes on
``{|1a,0b,0c>, |0a,1b,0c>, |0a,0b,1c>}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

DEGENERATE_DENOM = 1e-8
REAL_TOL = 1e-10
_UNIT_TOL = 1e-10


class DegenerateRotationError(ValueError):
    """The composite rotation is the identity, so its axis is undefined."""


class NotRealRepresentableError(ValueError):
    """A complex state has no real counterpart in the rotated basis."""


def wrap_angle(x: float) -> float:
    """Wrap an angle into ``(-pi, pi]``."""
    y = math.remainder(float(x), 2.0 * math.pi)
    if y <= -math.pi:
        y += 2.0 * math.pi
    return y


@dataclass(frozen=True, eq=False)
class AxisAngle:
    """Rotation by ``angle`` radians about the unit vector ``axis``."""

    axis: np.ndarray
    angle: float

    def __post_init__(self):
        axis = np.array(self.axis, dtype=float).reshape(3)
        norm = float(np.linalg.norm(axis))
        if not np.all(np.isfinite(axis)) or abs(norm - 1.0) > 1e-12:
            raise ValueError(f"axis must be a unit vector, got norm {norm}")
        axis.setflags(write=False)
        object.__setattr__(self, "axis", axis)
        object.__setattr__(self, "angle", wrap_angle(self.angle))

    @property
    def a(self) -> float:
        return float(self.axis[0])

    @property
    def b(self) -> float:
        return float(self.axis[1])

    @property
    def c(self) -> float:
        return float(self.axis[2])


def r1(angle: float) -> np.ndarray:
    """Rotation by ``angle`` about the x axis."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[1.0, 0.0, 0.0], [0.0, c, -s], [0.0, s, c]])


def r3(angle: float) -> np.ndarray:
    """Rotation by ``angle`` about the z axis."""
    c, s = math.cos(angle), math.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def generators() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Generators of rotations about x, y and z."""
    j1 = np.array([[0.0, 0.0, 0.0], [0.0, 0.0, -1.0], [0.0, 1.0, 0.0]])
    j2 = np.array([[0.0, 0.0, 1.0], [0.0, 0.0, 0.0], [-1.0, 0.0, 0.0]])
    j3 = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 0.0]])
    return j1, j2, j3


def axis_generator(axis) -> np.ndarray:
    """``n . J`` for the axis ``n = (a, b, c)``."""
    a, b, c = (float(v) for v in axis)
    return np.array([[0.0, -c, b], [c, 0.0, -a], [-b, a, 0.0]])


def composite(theta: float, phi: float) -> np.ndarray:
    """One protocol step as a rotation, ``R3(phi) @ R1(-theta)``."""
    return r3(phi) @ r1(-theta)


def axis_angle_of(theta: float, phi: float) -> AxisAngle:
    """Axis and angle of ``R3(phi) @ R1(-theta)`` from the closed form.

    With half-angle identities the factor ``cos(phi/2) cos(theta/2)`` of the
    closed-form denominator cancels against the numerators, e.g.
    ``a = -sin(theta/2) cos(phi/2) / S``. The cancelled forms are used so the
    axis stays accurate as that factor goes to zero; ``sin(angle)`` keeps the
    sign of ``cos(phi/2) cos(theta/2)``.

    When ``4 |cos(phi/2) cos(theta/2)| S`` (``S`` the square-root factor) drops
    below ``DEGENERATE_DENOM`` the pair is read off the rotation matrix
    instead.

    Raises
    ------
    DegenerateRotationError
        If the composite rotation is the identity.
    """
    theta = float(theta)
    phi = float(phi)
    if not (math.isfinite(theta) and math.isfinite(phi)):
        raise ValueError("angles must be finite")
    sp, cp = math.sin(phi / 2), math.cos(phi / 2)
    st, ct = math.sin(theta / 2), math.cos(theta / 2)
    root = math.sqrt(max(sp * sp + st * st - st * st * sp * sp, 0.0))
    denom = 4.0 * cp * ct * root
    if abs(denom) < DEGENERATE_DENOM:
        return axis_angle_from_matrix(composite(theta, phi))

    sin_v = 2.0 * cp * ct * root
    cos_v = (math.cos(phi) + math.cos(theta) + math.cos(phi) * math.cos(theta) - 1.0) / 2.0
    axis = np.array([-st * cp, -sp * st, sp * ct]) / root
    axis /= np.linalg.norm(axis)
    return AxisAngle(axis, math.atan2(sin_v, cos_v))


def axis_angle_from_matrix(rot) -> AxisAngle:
    """Axis and angle in ``[0, pi]`` of a proper rotation matrix.

    The axis comes from the antisymmetric part when the angle is below
    ``pi/2`` and from the symmetric part otherwise.
    """
    rot = np.asarray(rot, dtype=float)
    cos_v = min(1.0, max(-1.0, (float(np.trace(rot)) - 1.0) / 2.0))
    w = 0.5 * np.array(
        [rot[2, 1] - rot[1, 2], rot[0, 2] - rot[2, 0], rot[1, 0] - rot[0, 1]]
    )
    sin_v = float(np.linalg.norm(w))
    if cos_v >= 0.0:
        if sin_v < 1e-15:
            raise DegenerateRotationError(
                "rotation is the identity; its axis is undefined"
            )
        axis = w / sin_v
    else:
        sym = 0.5 * (rot + rot.T) - cos_v * np.eye(3)
        col = sym[:, int(np.argmax(np.diag(sym)))]
        axis = col / np.linalg.norm(col)
        if float(axis @ w) < 0.0:
            axis = -axis
    return AxisAngle(axis, math.atan2(sin_v, cos_v))


def rodrigues(aa: AxisAngle) -> np.ndarray:
    """``exp(angle * n.J)`` written out entry by entry."""
    a, b, c = aa.a, aa.b, aa.c
    cv, sv = math.cos(aa.angle), math.sin(aa.angle)
    k = 1.0 - cv
    return np.array(
        [
            [(1 - a * a) * cv + a * a, a * b * k - c * sv, a * c * k + b * sv],
            [a * b * k + c * sv, (1 - b * b) * cv + b * b, b * c * k - a * sv],
            [a * c * k - b * sv, b * c * k + a * sv, (1 - c * c) * cv + c * c],
        ]
    )


def rotation_power(theta: float, phi: float, n: int) -> np.ndarray:
    """``[R3(phi) R1(-theta)]**n`` as a single rotation by ``n`` times the angle."""
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    aa = axis_angle_of(theta, phi)
    return rodrigues(AxisAngle(aa.axis, int(n) * aa.angle))


def _as_unit_vec3(v, name: str = "initial") -> np.ndarray:
    arr = np.asarray(v, dtype=float).reshape(3)
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} has non-finite components")
    if abs(float(np.linalg.norm(arr)) - 1.0) > _UNIT_TOL:
        raise ValueError(f"{name} must be a unit vector")
    return arr


def _check_phi(phi: float) -> None:
    if abs(wrap_angle(phi)) < 1e-12:
        raise DegenerateRotationError(
            "phi is a multiple of 2*pi; the control rotation is the identity"
        )


def closed_form_rN(phi: float, n: int, initial=(0.0, 0.0, 1.0)) -> np.ndarray:
    """State vector after ``n`` steps with ``theta = pi/(2n)``.

    For ``initial = e3`` this is the third column of the Rodrigues matrix at
    angle ``n * varphi``.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    _check_phi(phi)
    r0 = _as_unit_vec3(initial)
    return rotation_power(math.pi / (2 * int(n)), phi, int(n)) @ r0


def embed(vec) -> np.ndarray:
    """Real rotated-basis vector to physical complex amplitudes."""
    x = _as_unit_vec3(vec, "state")
    return np.array([x[0], -1j * x[1], x[2]], dtype=complex)


def extract(state) -> np.ndarray:
    """Physical complex amplitudes to the real rotated-basis vector.

    Raises
    ------
    NotRealRepresentableError
        If any rotated-basis amplitude has an imaginary part above ``REAL_TOL``.
    """
    psi = np.asarray(state, dtype=complex).reshape(3)
    rotated = np.array([psi[0], 1j * psi[1], psi[2]])
    if np.max(np.abs(rotated.imag)) > REAL_TOL:
        raise NotRealRepresentableError(
            "state has complex amplitudes in the rotated basis"
        )
    return rotated.real.copy()


def sphere_trajectory(phi: float, n: int, initial=(0.0, 0.0, 1.0)):
    """Points ``[R3(phi) R1(-pi/2n)]**k @ initial`` for ``k = 0..n``.

    Returns
    -------
    points : numpy.ndarray
        Array of shape ``(n + 1, 3)``.
    axis : numpy.ndarray
        Rotation axis of one step.
    """
    if int(n) != n or n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    n = int(n)
    _check_phi(phi)
    r0 = _as_unit_vec3(initial)
    aa = axis_angle_of(math.pi / (2 * n), phi)
    points = np.empty((n + 1, 3))
    points[0] = r0
    for k in range(1, n + 1):
        points[k] = rodrigues(AxisAngle(aa.axis, wrap_angle(k * aa.angle))) @ r0
    return points, aa.axis.copy()
