import os
import subprocess
import sys

import numpy as np
import pytest

from blrings import _kernels
from blrings.ideals import enumerate_ideals
from blrings.ringspec import parse_ring

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")

RINGS = ["Z12", "Z16", "nil2(2)", "dual(3)", "Z4xZ6", "Z2xZ2xZ2"]


def _random_masks(n, count, seed):
    rng = np.random.default_rng(seed)
    masks = rng.random((count, n)) < 0.3
    masks[:, 0] = True
    return masks


@needs_numba
@pytest.mark.parametrize("spec", RINGS)
def test_backends_agree(spec):
    R = parse_ring(spec)
    nb, npy = _kernels.numba_impl, _kernels.numpy_impl
    assert np.array_equal(nb.principal_masks(R.add, R.mul, R.zero), npy.principal_masks(R.add, R.mul, R.zero))
    for m in _random_masks(R.order, 12, R.order):
        assert np.array_equal(nb.additive_closure(R.add, m), npy.additive_closure(R.add, m))
        assert np.array_equal(nb.ideal_closure(R.add, R.mul, R.zero, m), npy.ideal_closure(R.add, R.mul, R.zero, m))
    members = enumerate_ideals(R).members
    for a in members:
        for b in members:
            assert np.array_equal(nb.sum_mask(R.add, a, b), npy.sum_mask(R.add, a, b))
            assert np.array_equal(nb.product_mask(R.add, R.mul, R.zero, a, b), npy.product_mask(R.add, R.mul, R.zero, a, b))
            assert np.array_equal(nb.residuum_mask(R.mul, a, b), npy.residuum_mask(R.mul, a, b))
    for x, y in zip(nb.op_masks(R.add, R.mul, R.zero, members), npy.op_masks(R.add, R.mul, R.zero, members)):
        assert np.array_equal(x, y)


@needs_numba
@pytest.mark.parametrize("spec", ["Z6", "Z8", "nil2(2)", "Z2xZ4"])
def test_subset_oracle_backends_agree(spec):
    R = parse_ring(spec)
    a = np.sort(_kernels.numba_impl.subset_ideals(R.add, R.mul, R.zero))
    b = np.sort(_kernels.numpy_impl.subset_ideals(R.add, R.mul, R.zero))
    assert np.array_equal(a, b)


def _backend_in_subprocess(flag):
    env = dict(os.environ)
    env.pop("BLRINGS_DISABLE_NUMBA", None)
    if flag is not None:
        env["BLRINGS_DISABLE_NUMBA"] = flag
    code = "from blrings import _kernels; print(_kernels.backend())"
    return subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True).stdout.strip()


def test_env_flag_selects_numpy():
    assert _backend_in_subprocess("1") == "numpy"
    if _kernels.HAVE_NUMBA:
        assert _backend_in_subprocess(None) == "numba"
        assert _backend_in_subprocess("0") == "numba"


def test_numpy_backend_end_to_end():
    env = dict(os.environ, BLRINGS_DISABLE_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-m", "blrings.cli", "classify", "Z12", "--format", "records"],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    ).stdout
    assert "ideal_count: 6" in out and "bl_ring: true" in out
