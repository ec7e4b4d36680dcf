from __future__ import annotations

import os
import random
import subprocess
import sys

import pytest

from grpeq.permfin import _kernels, iter_solutions, solve_finite

from helpers import FlatTable, composite_structures, random_system


@pytest.fixture
def restore_backend():
    before = _kernels.backend()
    yield
    _kernels.set_backend(before)


def test_env_flag_selects_numpy():
    code = "from grpeq.permfin import _kernels; print(_kernels.backend())"
    env = dict(os.environ, GRPEQ_NUMBA="0")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True,
                         check=True)
    assert out.stdout.strip() == "numpy"


def test_unknown_backend_rejected(restore_backend):
    with pytest.raises(ValueError):
        _kernels.set_backend("cuda")


@pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")
def test_backends_agree_on_random_systems(restore_backend):
    rng = random.Random(99)
    structures = composite_structures()
    names = sorted(structures)
    for _ in range(40):
        G = structures[rng.choice(names)]
        flat = FlatTable(G)
        S = flat.translate(random_system(G, rng, twisted=rng.random() < 0.3))
        results = {}
        for name in ("numba", "numpy"):
            _kernels.set_backend(name)
            v = solve_finite(flat.group, S)
            sols = list(iter_solutions(flat.group, S, chunk=7))
            results[name] = (v, sols)
        assert results["numba"] == results["numpy"]
