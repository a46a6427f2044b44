"""Small dense complex linear algebra.

Everything here works on plain ``numpy`` arrays of shape ``(n, n)`` or
``(n,)``. The matrices in this package never exceed 16x16 (the full
product-space oracle), so clarity wins over speed.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

HERMITIAN_TOL = 1e-10
JACOBI_TOL = 1e-13
_JACOBI_MAX_SWEEPS = 100
_TAYLOR_TERMS = 20
_SCALE_TARGET = 0.5


def as_matrix(m, name: str = "matrix") -> np.ndarray:
    """Validate and return ``m`` as a finite complex 2-D array."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] < 1 or a.shape[1] < 1:
        raise ValueError(f"{name} must be a non-empty 2-D array, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} has non-finite entries")
    return a


def as_square(m, name: str = "matrix") -> np.ndarray:
    a = as_matrix(m, name)
    if a.shape[0] != a.shape[1]:
        raise ValueError(f"{name} must be square, got shape {a.shape}")
    return a


def dagger(m: np.ndarray) -> np.ndarray:
    return np.conj(np.transpose(m))


def kron(a, b) -> np.ndarray:
    """Kronecker product of two matrices (row-major block layout)."""
    return np.kron(as_matrix(a, "a"), as_matrix(b, "b"))


def partial_trace(rho, dims: Sequence[int], keep) -> np.ndarray:
    """Trace out every subsystem of ``rho`` whose index is not in ``keep``.

    Parameters
    ----------
    rho : array_like
        Square operator on the tensor product of subsystems with sizes ``dims``.
    dims : sequence of int
        Subsystem dimensions, first factor is the most significant index.
    keep : iterable of int
        Subsystems to keep. The result is ordered by increasing index,
        regardless of the iteration order of ``keep``. An empty ``keep``
        returns the scalar trace as a 1x1 matrix.

    Returns
    -------
    numpy.ndarray
        Reduced operator of dimension ``prod(dims[k] for k in keep)``.
    """
    rho = as_square(rho, "rho")
    dims = [int(d) for d in dims]
    if any(d < 1 for d in dims):
        raise ValueError(f"subsystem dimensions must be positive, got {dims}")
    if int(np.prod(dims)) != rho.shape[0]:
        raise ValueError(
            f"product of dims {dims} does not match operator dimension {rho.shape[0]}"
        )
    keep = sorted(set(int(k) for k in keep))
    if any(k < 0 or k >= len(dims) for k in keep):
        raise ValueError(f"keep indices {keep} out of range for {len(dims)} subsystems")

    n = len(dims)
    tensor = rho.reshape(dims + dims)
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    if 2 * n > len(letters):
        raise ValueError("too many subsystems")
    row = list(letters[:n])
    col = list(letters[n : 2 * n])
    for k in range(n):
        if k not in keep:
            col[k] = row[k]
    out = "".join(row[k] for k in keep) + "".join(col[k] for k in keep)
    reduced = np.einsum("".join(row) + "".join(col) + "->" + out, tensor)
    d_keep = int(np.prod([dims[k] for k in keep])) if keep else 1
    return np.asarray(reduced).reshape(d_keep, d_keep)


def eig_hermitian(h) -> tuple[np.ndarray, np.ndarray]:
    """Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.

    The input is symmetrized as ``(h + h^dagger)/2`` after checking that it is
    Hermitian within ``HERMITIAN_TOL`` (relative to its largest entry).

    Returns
    -------
    values : numpy.ndarray
        Real eigenvalues sorted in descending order.
    vectors : numpy.ndarray
        Orthonormal eigenvectors as columns, ``vectors[:, k]`` for ``values[k]``.
    """
    h = as_square(h, "h")
    scale = max(1.0, float(np.max(np.abs(h))))
    if np.max(np.abs(h - dagger(h))) > HERMITIAN_TOL * scale:
        raise ValueError("matrix is not Hermitian within tolerance")
    a = 0.5 * (h + dagger(h))
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    tol = JACOBI_TOL * max(1.0, float(np.linalg.norm(a)))

    for _ in range(_JACOBI_MAX_SWEEPS):
        if _off_norm(a) < tol:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                # phase on column q makes the (p, q) entry real and positive
                phase = apq / mag
                tau = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = (1.0 if tau >= 0 else -1.0) / (abs(tau) + np.sqrt(1.0 + tau * tau))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                g = np.eye(n, dtype=complex)
                g[p, p] = c
                g[p, q] = s
                g[q, p] = -s * np.conj(phase)
                g[q, q] = c * np.conj(phase)
                a = dagger(g) @ a @ g
                a[p, q] = a[q, p] = 0.0
                v = v @ g
    else:
        if _off_norm(a) >= tol:
            raise RuntimeError("Jacobi iteration did not converge")

    values = np.real(np.diag(a)).copy()
    order = np.argsort(-values, kind="stable")
    return values[order], v[:, order]


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.linalg.norm(off))


def expm_series(m) -> np.ndarray:
    """Matrix exponential by scaling and squaring a truncated Taylor series.

    Used as an independent check on closed-form propagators, not on any
    production path. The argument is divided by ``2**k`` until its max-row-sum
    norm is at most 0.5, the series is summed to 20 terms, and the result is
    squared ``k`` times.
    """
    m = as_square(m, "m")
    n = m.shape[0]
    norm = float(np.max(np.sum(np.abs(m), axis=1)))
    k = 0
    if norm > _SCALE_TARGET:
        k = int(np.ceil(np.log2(norm / _SCALE_TARGET)))
    x = m / (2.0**k)

    # Horner: I + x(I + x/2(I + x/3(...)))
    result = np.eye(n, dtype=complex)
    for j in range(_TAYLOR_TERMS, 0, -1):
        result = np.eye(n, dtype=complex) + (x @ result) / j
    for _ in range(k):
        result = result @ result
    return result
