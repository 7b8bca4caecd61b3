import numpy as np
import pytest

from advdiff import build_grid, worked_example


@pytest.fixture
def scenario():
    return worked_example()


@pytest.fixture
def coarse_grid():
    return build_grid(1.0, 1.0, 5, 5)


def ftcs_reference(f0, alpha, beta, steps):
    """Loop-by-loop forward-stencil march; independent of the vectorised solver."""
    rows = [list(f0)]
    for _ in range(steps):
        v = rows[-1]
        w = [0.0] * len(v)
        for m in range(1, len(v) - 1):
            w[m] = v[m] + alpha * (v[m + 1] - 2 * v[m] + v[m - 1]) - beta * (v[m + 1] - v[m])
        rows.append(w)
    return np.array(rows)
