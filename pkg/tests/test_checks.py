from __future__ import annotations

import pytest

from dquant.checks import SUITES, random_ks4d_params, run_suites
from dquant.presets import ks4d_degeneracy


def test_every_suite_passes_at_reduced_scale():
    results = run_suites(None, scale=0.3)
    assert [r.name for r in results] and all(r.passed for r in results)
    assert len(results) == len(SUITES)


def test_suites_are_reproducible():
    a = run_suites(["yang-baxter"], seed=7, scale=0.5)[0]
    b = run_suites(["yang-baxter"], seed=7, scale=0.5)[0]
    assert a.cases == b.cases and a.failures == b.failures


def test_unknown_suite():
    with pytest.raises(KeyError):
        run_suites(["nope"])


def test_ks4d_generator(rng):
    for degenerate in (False, True):
        for _ in range(10):
            p = random_ks4d_params(rng, degenerate)
            assert p["c"] != 0 and p["d"] != 0
            assert (ks4d_degeneracy(p) == 0) == degenerate
