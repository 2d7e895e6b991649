"""Small dense linear-algebra kernels.

Everything here targets matrices of dimension ~10 or less, so the symmetric
eigenproblem is solved by cyclic Jacobi sweeps (deterministic, dependency
free) and singular values are read off the Gram matrix of the smaller side.
"""

from __future__ import annotations

import numpy as np

from .errors import ComputationError, DimensionError, ValidationError

_JACOBI_TOL = 1e-12
_MAX_SWEEPS = 100


def _as_matrix(m, name: str = "matrix") -> np.ndarray:
    a = np.atleast_2d(np.asarray(m, dtype=float))
    if a.ndim != 2 or a.size == 0:
        raise DimensionError(f"{name} must be a nonempty 2-D array")
    if not np.all(np.isfinite(a)):
        raise ValidationError(f"{name} has nonfinite entries")
    return a


def matrix_power(a, j: int) -> np.ndarray:
    """Repeated product ``a^j``; ``j = 0`` yields the identity."""
    a = _as_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionError("matrix power needs a square matrix")
    if j < 0:
        raise ValidationError("exponent must be nonnegative")
    out = np.eye(a.shape[0])
    for _ in range(j):
        out = out @ a
    return out


def jacobi_eigh(s, tol: float = _JACOBI_TOL, max_sweeps: int = _MAX_SWEEPS):
    """Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.

    Returns ``(w, V)`` with eigenvalues ``w`` ascending and eigenvectors in
    the columns of ``V``. Convergence is declared once the off-diagonal mass
    drops below ``tol`` relative to the input's Frobenius norm.
    """
    a = _as_matrix(s, "symmetric matrix")
    n = a.shape[0]
    if n != a.shape[1]:
        raise DimensionError("eigen-decomposition needs a square matrix")
    a = 0.5 * (a + a.T)
    v = np.eye(n)
    scale = max(1.0, float(np.linalg.norm(a)))
    for _ in range(max_sweeps):
        off = np.sqrt(np.sum(np.square(a - np.diag(np.diag(a)))))
        if off <= tol * scale:
            order = np.argsort(np.diag(a), kind="stable")
            return np.diag(a)[order].copy(), v[:, order].copy()
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                t = np.sign(theta) if theta != 0.0 else 1.0
                t /= abs(theta) + np.sqrt(theta * theta + 1.0)
                cos = 1.0 / np.sqrt(t * t + 1.0)
                sin = t * cos
                rot = np.array([[cos, sin], [-sin, cos]])
                a[:, [p, q]] = a[:, [p, q]] @ rot
                a[[p, q], :] = rot.T @ a[[p, q], :]
                a[p, q] = a[q, p] = 0.0
                v[:, [p, q]] = v[:, [p, q]] @ rot
    raise ComputationError("Jacobi sweeps did not converge")


def symmetric_eigen_min(s) -> float:
    """Smallest eigenvalue of a symmetric matrix (symmetry checked to 1e-12)."""
    a = _as_matrix(s, "symmetric matrix")
    if a.shape[0] != a.shape[1]:
        raise DimensionError("symmetric_eigen_min needs a square matrix")
    if float(np.max(np.abs(a - a.T))) > 1e-12 * max(1.0, float(np.max(np.abs(a)))):
        raise ValidationError("matrix is not symmetric within 1e-12")
    w, _ = jacobi_eigh(a)
    return float(w[0])


def _gram_eigenvalues(m: np.ndarray) -> np.ndarray:
    if m.shape[0] <= m.shape[1]:
        gram = m @ m.T
    else:
        gram = m.T @ m
    w, _ = jacobi_eigh(gram)
    return np.clip(w, 0.0, None)


def singular_extremes(m) -> tuple[float, float]:
    """Smallest and largest singular values via the Gram-matrix spectrum."""
    m = _as_matrix(m)
    w = _gram_eigenvalues(m)
    return float(np.sqrt(w[0])), float(np.sqrt(w[-1]))


def spectral_norm(m) -> float:
    m = _as_matrix(m)
    return float(np.sqrt(_gram_eigenvalues(m)[-1]))


def reachability_matrix(a, b, horizon: int) -> np.ndarray:
    """Stacked input-to-state maps ``(a^{horizon-1} b, ..., a b, b)``."""
    a = _as_matrix(a, "A")
    b = _as_matrix(b, "B")
    if a.shape[0] != a.shape[1]:
        raise DimensionError("A must be square")
    if b.shape[0] != a.shape[0]:
        raise DimensionError("B row count must match A")
    if horizon < 1:
        raise ValidationError("horizon must be at least 1")
    blocks = [matrix_power(a, j) @ b for j in range(horizon - 1, -1, -1)]
    return np.hstack(blocks)


def schur_radius_bound(m, max_power: int = 64) -> float:
    """Upper bound on the spectral radius; exact for 1x1 and 2x2 matrices.

    Larger matrices use the norm bound ``min_k ||m^k||^(1/k)`` over doubling
    powers, which converges to the radius from above.
    """
    m = _as_matrix(m)
    n = m.shape[0]
    if n != m.shape[1]:
        raise DimensionError("spectral radius needs a square matrix")
    if n == 1:
        return float(abs(m[0, 0]))
    if n == 2:
        tr = m[0, 0] + m[1, 1]
        det = m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        disc = tr * tr / 4.0 - det
        if disc >= 0.0:
            root = np.sqrt(disc)
            return float(max(abs(tr / 2.0 + root), abs(tr / 2.0 - root)))
        return float(np.sqrt(det))
    best = spectral_norm(m)
    power = m.copy()
    k = 1
    while 2 * k <= max_power:
        power = power @ power
        k *= 2
        norm = spectral_norm(power)
        if norm == 0.0:
            return 0.0
        best = min(best, float(norm ** (1.0 / k)))
    return best
