"""The numba and numpy backends must agree exactly on every kernel."""

import os
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gammaring import kernels
from gammaring.fuzzy import ALL_KINDS, constraints_for
from gammaring.operator import generator_actions

NP = kernels.backend_module("numpy")
NB = kernels.backend_module("numba")


def _random_tables(rng, s, g):
    return (rng.integers(0, s, (s, s)), rng.integers(0, g, (g, g)), rng.integers(0, s, (s, g, s)))


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        kernels.backend_module("fortran")


def test_active_backend_forwards_kernels():
    assert kernels.first_violation is kernels.backend_module().first_violation


def test_axiom_witnesses_agree_on_corpus(corpus):
    for g in corpus:
        assert np.array_equal(NP.axiom_witnesses(g.add_s, g.add_g, g.prod),
                              NB.axiom_witnesses(g.add_s, g.add_g, g.prod))


@settings(max_examples=80, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), s=st.integers(1, 4), g=st.integers(1, 3))
def test_axiom_witnesses_agree_on_random_tables(seed, s, g):
    a, b, p = (np.ascontiguousarray(t, dtype=np.int64) for t in _random_tables(np.random.default_rng(seed), s, g))
    assert np.array_equal(NP.axiom_witnesses(a, b, p), NB.axiom_witnesses(a, b, p))


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_constraint_kernels_agree(corpus, data):
    g = data.draw(st.sampled_from(corpus))
    kind = data.draw(st.sampled_from(ALL_KINDS))
    k = data.draw(st.integers(1, 3))
    cons = constraints_for(g, kind).rows
    rng = np.random.default_rng(data.draw(st.integers(0, 2**32 - 1)))
    batch = rng.integers(0, k + 1, (64, g.s_size)).astype(np.int64)
    assert np.array_equal(NP.batch_satisfies(batch, cons), NB.batch_satisfies(batch, cons))
    for row in batch[:8]:
        assert NP.first_violation(row, cons) == NB.first_violation(row, cons)
        v1, ok1 = NP.repair(row, cons, 100)
        v2, ok2 = NB.repair(row, cons, 100)
        assert ok1 and ok2 and np.array_equal(v1, v2)
    if (k + 1) ** g.s_size <= 4096:
        assert np.array_equal(NP.enumerate_chain(g.s_size, k, cons), NB.enumerate_chain(g.s_size, k, cons))


def test_repair_reaches_least_ideal_above_input(B):
    cons = constraints_for(B, "two_sided").rows
    for backend in (NP, NB):
        v, ok = backend.repair(np.array([0, 2], dtype=np.int64), cons, 100)
        assert ok and v.tolist() == [2, 2]


def test_enumerate_chain_lexicographic(B):
    cons = constraints_for(B, "two_sided").rows
    for backend in (NP, NB):
        rows = backend.enumerate_chain(2, 2, cons).tolist()
        assert rows == sorted(rows) and len(rows) == 6


@pytest.mark.parametrize("side", ["left", "right"])
def test_multiset_codes_agree(corpus, side):
    for g in corpus:
        if g.s_size > 3 or g.g_size > 2:
            continue
        _, tables = generator_actions(g, side)
        for max_len in (1, 2, 4):
            assert np.array_equal(NP.multiset_codes(tables, g.add_s, max_len),
                                  NB.multiset_codes(tables, g.add_s, max_len))


def test_suite_report_is_backend_independent(data_dir):
    args = [sys.executable, "-m", "gammaring", "suite", str(data_dir / "Z2.gsr"), "--samples", "30", "--seed", "3"]
    outs = []
    for backend in ("numpy", "numba"):
        env = dict(os.environ, GAMMARING_BACKEND=backend)
        res = subprocess.run(args, capture_output=True, env=env)
        assert res.returncode == 0
        outs.append(res.stdout)
    assert outs[0] == outs[1]
