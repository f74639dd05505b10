import numpy as np
import pytest

import netei as ne

REF_SEED = 12345


@pytest.fixture(scope="session")
def model():
    return ne.JointDegreeModel(10.0, 15.0, 1.2)


@pytest.fixture(scope="session")
def ref_result(model):
    """N=5000 graph after 200,000 rewiring proposals."""
    return ne.generate_graph(model, 5000, 200_000, REF_SEED)


@pytest.fixture(scope="session")
def ref_graph(ref_result):
    return ref_result.graph


@pytest.fixture(scope="session")
def rw_trace(ref_graph):
    return ne.walk(ref_graph, ne.SamplerConfig("rw", 100_000, seed=2)).degrees


def armax(n, delta, a, seed):
    """Max-autoregressive Frechet(delta) sequence with extremal index ``1 - a**delta``."""
    rng = np.random.default_rng(seed)
    b = (1.0 - a**delta) ** (1.0 / delta)
    z = (-np.log(rng.random(n + 1))) ** (-1.0 / delta)
    x = np.empty(n)
    prev = z[0]
    for t in range(n):
        prev = max(a * prev, b * z[t + 1])
        x[t] = prev
    return x
