import numpy as np
import pytest

from pcbounds import ExperimentalMargins, MediatorMargins, ObservationalJoint, StratifiedMargins

DATA = __import__("pathlib").Path(__file__).resolve().parents[1] / "data"


def random_margins(rng, min_p1=1e-3):
    return ExperimentalMargins(rng.uniform(min_p1, 1.0), rng.uniform(0.0, 1.0))


def random_stratified(rng, k=None):
    k = k or int(rng.integers(1, 6))
    w = rng.dirichlet(np.ones(k))
    w = w / w.sum()
    rows = [(str(i), w[i], rng.uniform(0.01, 1.0), rng.uniform(0.0, 1.0)) for i in range(k)]
    return StratifiedMargins.from_rows(rows)


def random_confounded(rng):
    """Experimental margins and observational joint induced by one joint law of (X, Y(0), Y(1))."""
    while True:
        c = rng.dirichlet(np.full(8, 0.7)).reshape(2, 2, 2)  # c[x, y0, y1]
        q = {(1, y): c[1, :, y].sum() for y in (0, 1)}
        q.update({(0, y): c[0, y, :].sum() for y in (0, 1)})
        if q[(1, 1)] > 1e-3:
            break
    m = ExperimentalMargins(min(1.0, c[:, :, 1].sum()), min(1.0, c[:, 1, :].sum()))
    tot = sum(q.values())
    return m, ObservationalJoint({k: min(1.0, v / tot) for k, v in q.items()}), c


def random_mediator(rng):
    return MediatorMargins(*rng.uniform(0.0, 1.0, size=4))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
