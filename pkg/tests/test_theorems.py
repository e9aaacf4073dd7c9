"""Theorem suite on generated extensions, plus cross-checks against the
definition-level oracle and negative controls."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from generators import FAMILIES, instances, random_beta, random_invertible, random_metric
from lcpalg.algebra import trace_form
from lcpalg.constructions import change_basis, lcp_extension, lcp_semidirect
from lcpalg.verify import LcpCandidate, verify
from theorems import check_instance

INSTANCES = instances(60, seed=99)


@pytest.mark.parametrize("k", range(len(INSTANCES)))
def test_generated_instance(k):
    inst = INSTANCES[k]
    bad, _ = check_instance(inst["cand"], inst["theta"])
    assert bad == []


@pytest.mark.parametrize("k", range(0, len(INSTANCES), 4))
def test_generated_instance_matches_definition(k):
    c = INSTANCES[k]["cand"]
    assert oracles.lcp_by_definition(c.algebra, c.metric, c.theta, c.u.vectors)


@pytest.mark.parametrize("k", range(0, len(INSTANCES), 6))
def test_perturbed_theta_is_rejected(k):
    c = INSTANCES[k]["cand"]
    bad = LcpCandidate(c.algebra, c.metric, c.theta * 2, c.u)
    assert not verify(bad).is_lcp
    assert not oracles.lcp_by_definition(bad.algebra, bad.metric, bad.theta, bad.u.vectors)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_non_unimodular_semidirect_is_adapted_but_may_fail_bound(seed):
    """Without unimodularity the semidirect construction is still adapted;
    the trace relations are only asserted in the unimodular case."""
    rng = random.Random(seed)
    H = rng.choice(FAMILIES)(rng)
    h = random_metric(rng, H.dim)
    q = rng.randint(1, 3)
    beta, _ = random_beta(rng, H, q)
    xi = trace_form(H) * rng.choice([1, -1, 2])
    c = lcp_semidirect(H, h, xi, beta, q)
    r = verify(c)
    assert r.is_adapted
    assert r.unimodular == (xi == trace_form(H) * Fraction(-1, q))


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_basis_change_invariance(seed):
    rng = random.Random(seed)
    H = rng.choice(FAMILIES)(rng)
    c = lcp_extension(H, random_metric(rng, H.dim), random_beta(rng, H, 2)[0], 2)
    d = change_basis(c, random_invertible(rng, c.dim))
    assert verify(c).flags() == verify(d).flags()
