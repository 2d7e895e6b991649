import numpy as np
import pytest

from contracta import (
    HPolytope,
    SystemModel,
    intersect,
    reachability_matrix,
    remove_redundancy,
    singular_extremes,
    symmetric_box,
    validate_cset,
)


def random_cset(rng, dim, extra_facets=5, bound=3.0):
    """Bounded polytope with the origin strictly inside: random cuts plus a box."""
    dirs = rng.normal(size=(extra_facets, dim))
    norms = np.linalg.norm(dirs, axis=1)
    dirs = dirs[norms > 1e-6] / norms[norms > 1e-6, None]
    offsets = rng.uniform(0.5, 2.5, size=dirs.shape[0])
    eye = np.eye(dim)
    H = np.vstack([dirs, eye, -eye])
    b = np.concatenate([offsets, bound * np.ones(2 * dim)])
    return validate_cset(remove_redundancy(HPolytope(H, b)))


def nested_cset_pair(rng, dim):
    """C-sets with the first contained in the second (not homothetic)."""
    outer = random_cset(rng, dim)
    inner = validate_cset(remove_redundancy(intersect(outer, random_cset(rng, dim))))
    return inner, outer


def random_controllable_system(rng, n=2, m=1):
    while True:
        A = rng.uniform(-1.2, 1.2, size=(n, n))
        B = rng.uniform(-1.0, 1.0, size=(n, m))
        sigma_min, _ = singular_extremes(reachability_matrix(A, B, n))
        if sigma_min > 1e-2:
            break
    X = validate_cset(symmetric_box(rng.uniform(2.0, 5.0, size=n)))
    U = validate_cset(symmetric_box(rng.uniform(0.5, 1.5, size=m)))
    return SystemModel(A, B, X, U)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
