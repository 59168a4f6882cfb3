import numpy as np
import pytest

from bandcast import BasisSpec, Window, corpus_signal
from bandcast.gram import build_system


def composite_simpson(f, a, b, n):
    """Composite Simpson on n (even) uniform intervals; vectorized f."""
    assert n % 2 == 0
    t = np.linspace(a, b, n + 1)
    v = np.asarray(f(t), dtype=float)
    return (b - a) / n / 3.0 * (v[0] + v[-1] + 4.0 * v[1:-1:2].sum() + 2.0 * v[2:-1:2].sum())


def richardson_simpson(f, a, b, n=10**6):
    """Richardson-extrapolated composite Simpson: (16 S(h/2) - S(h)) / 15."""
    coarse = composite_simpson(f, a, b, n // 2)
    fine = composite_simpson(f, a, b, n)
    return (16.0 * fine - coarse) / 15.0


@pytest.fixture(scope="session")
def fig2_signal():
    return corpus_signal()


@pytest.fixture(scope="session")
def fig2_system(fig2_signal):
    # the omega=4, N=30, (-10, 0] reference configuration, assembled once
    return build_system(fig2_signal, BasisSpec(4.0, 30), Window(-10.0, 0.0), 1e-8)
