"""Backend agreement between the numba kernels and the pure-numpy fallback."""

import os
import random
import subprocess
import sys

import numpy as np
import pytest

from blowup.kernels import _numpy as knp
from blowup.kernels import backend_name

try:
    from blowup.kernels import _numba as knb

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

needs_numba = pytest.mark.skipif(not HAS_NUMBA, reason="numba unavailable")


def random_rows(rng, n, d, hi):
    rows = {tuple(rng.randint(0, hi) for _ in range(d)) for _ in range(n)}
    return np.asarray(sorted(rows), dtype=np.int64)


@needs_numba
def test_minimal_mask_agreement():
    rng = random.Random(11)
    for _ in range(30):
        A = random_rows(rng, rng.randint(1, 60), rng.choice([2, 3]), 6)
        assert (knb.minimal_mask(A) == knp.minimal_mask(A)).all()


@needs_numba
def test_divides_any_agreement():
    rng = random.Random(12)
    for _ in range(30):
        d = rng.choice([2, 3])
        G = random_rows(rng, rng.randint(1, 20), d, 5)
        Pt = random_rows(rng, rng.randint(1, 50), d, 8)
        assert (knb.divides_any(G, Pt) == knp.divides_any(G, Pt)).all()


@needs_numba
def test_staircase_count_agreement():
    rng = random.Random(13)
    for _ in range(40):
        rows = [(0, rng.randint(0, 8)), (rng.randint(1, 8), 0)]
        for _ in range(rng.randint(0, 6)):
            rows.append((rng.randint(0, 8), rng.randint(0, 8)))
        A = np.asarray(rows, dtype=np.int64)
        assert knb.staircase_count_2d(A) == knp.staircase_count_2d(A)


def test_staircase_precondition_flag():
    A = np.asarray([(1, 1)], dtype=np.int64)
    assert knp.staircase_count_2d(A) == -1


def test_minimal_mask_keeps_antichain():
    A = np.asarray([(0, 3), (1, 1), (2, 0), (2, 2)], dtype=np.int64)
    assert list(knp.minimal_mask(A)) == [True, True, True, False]


def test_env_flag_selects_numpy_backend():
    env = dict(os.environ, BLOWUP_PURE_NUMPY="1")
    out = subprocess.run(
        [sys.executable, "-c", "from blowup.kernels import backend_name; print(backend_name())"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    assert out.stdout.strip() == "numpy"


@needs_numba
def test_default_backend_is_numba_when_available():
    env = {k: v for k, v in os.environ.items() if k != "BLOWUP_PURE_NUMPY"}
    out = subprocess.run(
        [sys.executable, "-c", "from blowup.kernels import backend_name; print(backend_name())"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    assert out.stdout.strip() == "numba"
    assert backend_name() in ("numba", "numpy")
