import itertools

import numpy as np
import pytest

from contracta import LinearProgram, LpStatus, solve_lp, symmetric_box
from contracta.errors import DimensionError


def test_single_box_optimum():
    out = solve_lp(LinearProgram(np.array([1.0]), np.array([[1.0], [-1.0]]), np.array([1.0, 0.0])))
    assert out.status is LpStatus.OPTIMAL
    assert out.value == pytest.approx(1.0, abs=1e-9)
    assert out.x is not None


def test_empty_feasible_set():
    out = solve_lp(LinearProgram(np.array([1.0]), np.array([[1.0], [-1.0]]), np.array([-1.0, -2.0])))
    assert out.status is LpStatus.INFEASIBLE
    assert out.x is None


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_box_support_per_coordinate(n):
    # support of [-10, 10]^n along e_1, computed by hand per coordinate
    box = symmetric_box([10.0] * n)
    c = np.zeros(n)
    c[0] = 1.0
    out = solve_lp(LinearProgram(c, box.H, box.b))
    assert out.value == pytest.approx(10.0, abs=1e-9)


def test_unbounded_detection():
    out = solve_lp(LinearProgram(np.array([1.0, 0.0]), np.array([[-1.0, 0.0]]), np.array([0.0])))
    assert out.status is LpStatus.UNBOUNDED


def test_dimension_mismatch_is_structural():
    with pytest.raises(DimensionError):
        solve_lp(LinearProgram(np.array([1.0, 2.0]), np.array([[1.0]]), np.array([1.0])))
    with pytest.raises(DimensionError):
        solve_lp(LinearProgram(np.array([1.0]), np.array([[1.0]]), np.array([1.0, 2.0])))


def test_variable_bounds_fold_into_rows():
    out = solve_lp(
        LinearProgram(
            np.array([1.0, 1.0]),
            np.array([[1.0, 1.0]]),
            np.array([10.0]),
            lower=np.array([-1.0, -np.inf]),
            upper=np.array([2.0, 3.0]),
        )
    )
    assert out.status is LpStatus.OPTIMAL
    assert out.value == pytest.approx(5.0, abs=1e-9)


def test_determinism_bit_identical():
    rng = np.random.default_rng(3)
    A = rng.normal(size=(12, 3))
    b = rng.uniform(0.5, 2.0, size=12)
    c = rng.normal(size=3)
    first = solve_lp(LinearProgram(c, A, b))
    second = solve_lp(LinearProgram(c, A, b))
    assert first.status is second.status
    assert first.value == second.value
    assert np.array_equal(first.x, second.x)


def _vertex_oracle(c, A, b):
    """Exhaustive vertex enumeration: the independent optimum reference."""
    n = A.shape[1]
    best = None
    for idx in itertools.combinations(range(A.shape[0]), n):
        sub = A[list(idx)]
        if abs(np.linalg.det(sub)) < 1e-8:
            continue
        v = np.linalg.solve(sub, b[list(idx)])
        if np.all(A @ v <= b + 1e-9):
            val = float(c @ v)
            best = val if best is None else max(best, val)
    return best


def test_gap_against_vertex_oracle():
    rng = np.random.default_rng(11)
    for dim in (1, 2, 3):
        for _ in range(15):
            dirs = rng.normal(size=(3 * dim, dim))
            dirs /= np.linalg.norm(dirs, axis=1)[:, None]
            A = np.vstack([dirs, np.eye(dim), -np.eye(dim)])
            b = np.concatenate([rng.uniform(0.5, 2.0, size=3 * dim), 2.0 * np.ones(2 * dim)])
            c = rng.normal(size=dim)
            out = solve_lp(LinearProgram(c, A, b))
            assert out.status is LpStatus.OPTIMAL
            oracle = _vertex_oracle(c, A, b)
            assert oracle is not None
            assert out.value == pytest.approx(oracle, abs=1e-9, rel=1e-9)


def test_degenerate_rows_do_not_cycle():
    # many duplicate/parallel rows force degenerate pivots
    A = np.array([[1.0], [1.0], [1.0], [-1.0], [-1.0]])
    b = np.array([1.0, 1.0, 1.0, 0.0, 0.0])
    out = solve_lp(LinearProgram(np.array([1.0]), A, b))
    assert out.value == pytest.approx(1.0, abs=1e-9)


def test_cross_check_against_scipy():
    scipy_opt = pytest.importorskip("scipy.optimize")
    rng = np.random.default_rng(42)
    agree = 0
    for _ in range(150):
        n = int(rng.integers(1, 5))
        k = int(rng.integers(1, 4 * n + 1))
        A = rng.normal(size=(k, n))
        b = rng.normal(size=k)
        c = rng.normal(size=n)
        mine = solve_lp(LinearProgram(c, A, b))
        ref = scipy_opt.linprog(-c, A_ub=A, b_ub=b, bounds=[(None, None)] * n, method="highs")
        if mine.status is LpStatus.OPTIMAL:
            assert ref.status == 0
            assert mine.value == pytest.approx(-ref.fun, abs=1e-7, rel=1e-7)
            agree += 1
        elif mine.status is LpStatus.INFEASIBLE:
            assert ref.status == 2
        else:
            assert ref.status == 3
    assert agree >= 20  # the generator must hit plenty of bounded instances
