import itertools

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from gorenstein_stark.minors import combos, compound, det, wedge_sign, wedge_vectors
from gorenstein_stark.ring import RingSpec, matmul, mul

RINGS = [RingSpec(2, 2, ()), RingSpec(3, 2, ()), RingSpec(2, 2, (2,)), RingSpec(3, 1, (2, 2))]


def perm_sign(perm) -> int:
    sign = 1
    for i, j in itertools.combinations(range(len(perm)), 2):
        if perm[i] > perm[j]:
            sign = -sign
    return sign


def leibniz(spec: RingSpec, a: np.ndarray) -> np.ndarray:
    k = a.shape[0]
    total = spec.zero()
    for perm in itertools.permutations(range(k)):
        term = spec.one()
        for i in range(k):
            term = mul(spec, term, a[i, perm[i]])
        total = (total + perm_sign(perm) * term) % spec.q
    return total


@st.composite
def matrices(draw, max_dim=4):
    spec = draw(st.sampled_from(RINGS))
    t = draw(st.integers(0, max_dim))
    c = draw(st.integers(0, max_dim))
    seed = draw(st.integers(0, 2**32 - 1))
    a = spec.random(np.random.default_rng(seed), (t, c)) if t and c else np.zeros((t, c, spec.n), dtype=np.int64)
    return spec, a


def test_small_examples():
    z4 = RingSpec(2, 2, ())
    a = np.array([[1, 1], [0, 2]])[:, :, None]
    assert det(z4, a).tolist() == [2]
    assert compound(z4, a, 1)[:, :, 0].tolist() == [[1, 1], [0, 2]]
    assert compound(z4, a, 0).tolist() == [[[1]]]
    assert compound(z4, a, 3).shape == (0, 0, 1)


def test_wedge_sign():
    assert wedge_sign((), 0) == 1
    assert wedge_sign((0, 2), 1) == -1
    assert wedge_sign((1, 2), 0) == 1
    assert wedge_sign((1, 2), 3) == 1


@given(matrices())
def test_compound_matches_leibniz(data):
    spec, a = data
    t, c = a.shape[0], a.shape[1]
    for k in range(0, min(t, c) + 1):
        comp = compound(spec, a, k)
        for i, rows in enumerate(combos(t, k)):
            for j, cols in enumerate(combos(c, k)):
                sub = a[np.ix_(rows, cols)] if k else np.zeros((0, 0, spec.n), dtype=np.int64)
                assert np.array_equal(comp[i, j], leibniz(spec, sub))


@given(matrices(max_dim=3), st.integers(0, 2**32 - 1))
def test_determinant_is_multiplicative(data, seed):
    spec, a = data
    k = a.shape[0]
    if a.shape[1] != k:
        a = spec.random(np.random.default_rng(seed), (k, k)) if k else a[:, :0]
    b = spec.random(np.random.default_rng(seed + 1), (k, k)) if k else a
    if k == 0:
        return
    assert np.array_equal(det(spec, matmul(spec, a, b)), mul(spec, det(spec, a), det(spec, b)))


@given(matrices(max_dim=3))
def test_wedge_of_repeated_vector_vanishes(data):
    spec, a = data
    if a.shape[1] == 0:
        return
    doubled = np.concatenate([a[:, :1], a[:, :1]], axis=1)
    assert not wedge_vectors(spec, doubled).any()
