"""Property-based checks on classical (diagonal) instances, where every
quantity has a closed form to compare against."""

import math

import numpy as np
from hypothesis import given, settings, strategies as st

from qdiv.divergences import chernoff_bound, d_max, d_min, relative_entropy, renyi_relative
from qdiv.smoothing import smooth_dmax_exact_classical

weights = st.lists(st.floats(min_value=0.02, max_value=1.0), min_size=2, max_size=5)


def normalize(raw):
    arr = np.asarray(raw, dtype=float)
    return arr / arr.sum()


@st.composite
def prob_pairs(draw):
    p = draw(weights)
    q = draw(st.lists(st.floats(min_value=0.02, max_value=1.0),
                      min_size=len(p), max_size=len(p)))
    return normalize(p), normalize(q)


@given(prob_pairs())
@settings(max_examples=50, deadline=None)
def test_dmax_classical_closed_form(pq):
    p, q = pq
    expected = math.log2(float((p / q).max()))
    assert abs(d_max(np.diag(p), np.diag(q)).bits - expected) < 1e-9


@given(prob_pairs())
@settings(max_examples=50, deadline=None)
def test_order_chain(pq):
    p, q = pq
    rho, sigma = np.diag(p), np.diag(q)
    dmin = d_min(rho, sigma).bits
    rel = relative_entropy(rho, sigma).bits
    dmax = d_max(rho, sigma).bits
    assert dmin <= rel + 1e-9
    assert rel <= dmax + 1e-9
    assert chernoff_bound(rho, sigma).bits >= dmin - 1e-9


@given(prob_pairs())
@settings(max_examples=30, deadline=None)
def test_renyi_nondecreasing_in_alpha(pq):
    p, q = pq
    rho, sigma = np.diag(p), np.diag(q)
    vals = [renyi_relative(rho, sigma, a).bits for a in (0.2, 0.5, 0.8)]
    assert vals[0] <= vals[1] + 1e-9
    assert vals[1] <= vals[2] + 1e-9


@given(prob_pairs())
@settings(max_examples=30, deadline=None)
def test_smooth_classical_nonincreasing_in_eps(pq):
    p, q = pq
    prev = math.inf
    for eps in (0.01, 0.05, 0.2):
        cur = smooth_dmax_exact_classical(p, q, eps)
        assert cur <= prev + 1e-9
        prev = cur
