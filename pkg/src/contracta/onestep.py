"""One-step backward sets, iterated set sequences, and contractiveness tests.

The central object is the pre-image map: states inside the state constraints
from which some admissible input reaches ``lam * D`` in one step. It is
computed literally, by projecting the lifted state-input polytope back onto
the state coordinates. Iterating the map from the state constraint set gives
a nested outer approximation of the maximal contractive set; iterating from
a contractive seed gives an expanding inner one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .config import TOL
from .errors import ComputationError, DimensionError, ValidationError
from .lp import LinearProgram, LpStatus, solve_lp
from .numerics import matrix_power, reachability_matrix, singular_extremes
from .polytope import (
    CSetPolytope,
    HPolytope,
    is_subset,
    project,
    validate_cset,
    vertices,
)


class SeedLabel(Enum):
    FROM_STATE_SET = "from_state_set"  # nested, shrinking sequence
    CONTRACTIVE = "contractive"        # expanding sequence


@dataclass(eq=False)
class SystemModel:
    """Linear system ``x+ = A x + B u`` with compact constraint sets X, U."""

    A: np.ndarray
    B: np.ndarray
    X: CSetPolytope
    U: CSetPolytope

    def __post_init__(self):
        self.A = np.atleast_2d(np.asarray(self.A, dtype=float))
        self.B = np.atleast_2d(np.asarray(self.B, dtype=float))
        if self.A.shape[0] != self.A.shape[1]:
            raise DimensionError("A must be square")
        if self.B.shape[0] != self.A.shape[0]:
            raise DimensionError("B must have as many rows as A")
        if not (np.all(np.isfinite(self.A)) and np.all(np.isfinite(self.B))):
            raise ValidationError("nonfinite system matrices")
        if not isinstance(self.X, CSetPolytope):
            self.X = validate_cset(self.X)
        if not isinstance(self.U, CSetPolytope):
            self.U = validate_cset(self.U)
        if self.X.dim != self.n:
            raise DimensionError("state constraint set dimension mismatch")
        if self.U.dim != self.m:
            raise DimensionError("input constraint set dimension mismatch")
        self.A.setflags(write=False)
        self.B.setflags(write=False)

    @property
    def n(self) -> int:
        return self.A.shape[0]

    @property
    def m(self) -> int:
        return self.B.shape[1]

    @property
    def reachability(self) -> np.ndarray:
        return reachability_matrix(self.A, self.B, self.n)

    @property
    def controllable(self) -> bool:
        sigma_min, _ = singular_extremes(self.reachability)
        return sigma_min > TOL.ctrb


def check_controllability(sys: SystemModel) -> bool:
    return sys.controllable


@dataclass
class SetSequence:
    lam: float
    entries: list[CSetPolytope] = field(default_factory=list)
    seed_label: SeedLabel | None = None


def _check_lambda(lam: float) -> float:
    lam = float(lam)
    if not 0.0 < lam <= 1.0:
        raise ValidationError("contraction rate must be in (0, 1]")
    return lam


def one_step_set(sys: SystemModel, lam: float, D: CSetPolytope) -> CSetPolytope:
    """States in X steerable into ``lam * D`` with one admissible input.

    Built as the shadow of the lifted polytope
    ``{(x, u) : x in X, u in U, H_D (A x + B u) <= lam * b_D}``
    on the state coordinates, with redundant facets removed.
    """
    lam = _check_lambda(lam)
    if D.dim != sys.n:
        raise DimensionError("target set dimension mismatch")
    n, m = sys.n, sys.m
    zeros_xu = np.zeros((sys.X.nfacets, m))
    zeros_ux = np.zeros((sys.U.nfacets, n))
    lifted_H = np.vstack(
        [
            np.hstack([sys.X.H, zeros_xu]),
            np.hstack([zeros_ux, sys.U.H]),
            np.hstack([D.H @ sys.A, D.H @ sys.B]),
        ]
    )
    lifted_b = np.concatenate([sys.X.b, sys.U.b, lam * D.b])
    shadow = project(HPolytope(lifted_H, lifted_b), n)
    return validate_cset(shadow)


def iterate(
    sys: SystemModel,
    lam: float,
    D: CSetPolytope,
    k: int,
    seed_label: SeedLabel | None = None,
) -> SetSequence:
    """Entries ``0..k`` of the iterated one-step sequence started at ``D``.

    When the seed label is known the per-step inclusion (shrinking from the
    state set, expanding from a contractive seed) is verified; a violation
    indicates a numerical fault and raises.
    """
    lam = _check_lambda(lam)
    if k < 0:
        raise ValidationError("iteration count must be nonnegative")
    seq = SetSequence(lam=lam, entries=[D], seed_label=seed_label)
    for j in range(k):
        nxt = one_step_set(sys, lam, seq.entries[-1])
        if seed_label is SeedLabel.FROM_STATE_SET and not is_subset(nxt, seq.entries[-1]):
            raise ComputationError(f"sequence from the state set failed to nest at step {j + 1}")
        if seed_label is SeedLabel.CONTRACTIVE and not is_subset(seq.entries[-1], nxt):
            raise ComputationError(f"sequence from a contractive seed failed to expand at step {j + 1}")
        seq.entries.append(nxt)
    return seq


def is_lambda_contractive(sys: SystemModel, lam: float, C: CSetPolytope) -> bool:
    """Vertex-wise contractiveness test (exact by convexity).

    True iff ``C`` lies in X and every vertex of ``C`` admits an input
    steering it into ``lam * C``.
    """
    lam = _check_lambda(lam)
    if C.dim != sys.n:
        raise DimensionError("candidate set dimension mismatch")
    if not is_subset(C, sys.X):
        return False
    return _first_noncontractive_vertex(sys, lam, C) is None


def _first_noncontractive_vertex(sys: SystemModel, lam: float, C: CSetPolytope):
    for v in vertices(C):
        A_u = np.vstack([sys.U.H, C.H @ sys.B])
        b_u = np.concatenate([sys.U.b, lam * C.b - C.H @ (sys.A @ v)])
        out = solve_lp(LinearProgram(np.zeros(sys.m), A_u, b_u))
        if out.status is LpStatus.INFEASIBLE:
            return v
    return None


@dataclass
class MembershipCertificate:
    """Feasible input sequence and terminal point witnessing set membership."""

    inputs: list[np.ndarray]
    gamma: np.ndarray


def membership_certificate(
    sys: SystemModel, lam: float, C: CSetPolytope, x, k: int
) -> MembershipCertificate | None:
    """LP certificate for ``x`` in the ``k+1``-fold one-step set of ``C``.

    Feasibility of the stacked program over ``(u_0, ..., u_k, gamma)`` --
    intermediate states in scaled copies of X, inputs admissible, terminal
    equality landing on ``lam^(k+1) * gamma`` with ``gamma`` in C -- is
    necessary and sufficient. Returns the witness, or None if infeasible.
    """
    lam = _check_lambda(lam)
    if k < 0:
        raise ValidationError("horizon must be nonnegative")
    x = np.asarray(x, dtype=float).ravel()
    if x.size != sys.n or C.dim != sys.n:
        raise DimensionError("point or set dimension mismatch")
    n, m = sys.n, sys.m
    nvar = (k + 1) * m + n
    powers = [matrix_power(sys.A, j) for j in range(k + 2)]

    rows = []
    rhs = []
    for j in range(k + 1):
        block = np.zeros((sys.X.nfacets, nvar))
        for i in range(j):
            block[:, i * m : (i + 1) * m] = sys.X.H @ (powers[j - 1 - i] @ sys.B) * lam**i
        rows.append(block)
        rhs.append(lam**j * sys.X.b - sys.X.H @ (powers[j] @ x))
    for i in range(k + 1):
        block = np.zeros((sys.U.nfacets, nvar))
        block[:, i * m : (i + 1) * m] = sys.U.H
        rows.append(block)
        rhs.append(sys.U.b)
    block = np.zeros((C.nfacets, nvar))
    block[:, (k + 1) * m :] = C.H
    rows.append(block)
    rhs.append(C.b)
    # terminal equality as paired inequalities
    eq = np.zeros((n, nvar))
    for i in range(k + 1):
        eq[:, i * m : (i + 1) * m] = powers[k - i] @ sys.B * lam**i
    eq[:, (k + 1) * m :] = -(lam ** (k + 1)) * np.eye(n)
    eq_rhs = -(powers[k + 1] @ x)
    rows.extend([eq, -eq])
    rhs.extend([eq_rhs, -eq_rhs])

    out = solve_lp(LinearProgram(np.zeros(nvar), np.vstack(rows), np.concatenate(rhs)))
    if out.status is LpStatus.INFEASIBLE:
        return None
    if out.status is not LpStatus.OPTIMAL:  # pragma: no cover
        raise ComputationError("membership program neither optimal nor infeasible")
    z = out.x
    inputs = [z[i * m : (i + 1) * m].copy() for i in range(k + 1)]
    return MembershipCertificate(inputs=inputs, gamma=z[(k + 1) * m :].copy())
