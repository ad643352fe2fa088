import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gorenstein_stark.fpmod import (
    ModuleMap,
    PresentedModule,
    annihilator,
    cokernel,
    double_dual_map,
    dual,
    fitting_ideal,
    is_isomorphism,
    kernel_of_map,
    length,
    random_module,
    tensor_quotient,
)
from gorenstein_stark.generators import TEST_RINGS, random_map_into
from gorenstein_stark.ring import IdealRep, QuotientMap, RingSpec, ideal_from_generators, matmul, mul, quotient_specs

Z4 = RingSpec(2, 2, ())
Z8 = RingSpec(2, 3, ())
Z2X = RingSpec(2, 1, (2,))
# rings small enough to enumerate R^2
TINY = [Z4, Z2X, RingSpec(3, 1, ())]


def elements(spec):
    for c in itertools.product(range(spec.q), repeat=spec.n):
        yield np.array(c, dtype=np.int64)


def vectors(spec, t):
    for combo in itertools.product(list(elements(spec)), repeat=t):
        yield np.array(combo, dtype=np.int64).reshape(t, spec.n)


def brute_length(m: PresentedModule) -> int:
    """log_p |R^t / relation span| by enumerating the span."""
    spec = m.spec
    span = set()
    for coeffs in vectors(spec, m.nrel):
        v = matmul(spec, m.relations, coeffs[:, None, :])[:, 0, :] if m.nrel else np.zeros((m.gens, spec.n))
        span.add(tuple(np.asarray(v, dtype=np.int64).reshape(-1).tolist()))
    total = spec.q ** (spec.n * m.gens)
    return round(math.log(total // len(span), spec.p))


def brute_dual_length(m: PresentedModule) -> int:
    """log_p of the number of f in R^t killing every relation column."""
    spec = m.spec
    count = 0
    for f in vectors(spec, m.gens):
        vals = mul(spec, f[:, None, :], m.relations).sum(axis=0) % spec.q if m.nrel else np.zeros(1)
        count += not np.any(vals)
    return round(math.log(count, spec.p))


@st.composite
def tiny_modules(draw):
    spec = draw(st.sampled_from(TINY))
    seed = draw(st.integers(0, 2**32 - 1))
    return random_module(spec, np.random.default_rng(seed), max_gens=2, max_rels=2)


@st.composite
def modules(draw):
    spec = draw(st.sampled_from(TEST_RINGS))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    return random_module(spec, rng, nonunit=bool(rng.integers(0, 2)))


def cyclic(spec, g):
    return PresentedModule.cyclic(spec, [spec.element(g)])


def test_length_examples():
    r4x = RingSpec(2, 2, (2,))
    assert length(PresentedModule.free(r4x, 1)) == 4
    assert length(PresentedModule.free(Z4, 0)) == 0
    assert length(cyclic(Z8, [2])) == 1
    assert brute_length(cyclic(Z4, [2])) == 1


def test_dual_examples():
    d = dual(PresentedModule.free(Z4, 1))
    assert d.presented.length == Z4.length and d.presented.is_free()
    m = cyclic(Z4, [2])
    d = dual(m)
    assert d.presented.length == 1
    assert d.funcs.reshape(-1).tolist() == [2]
    assert d.check()


def test_fitting_examples():
    for spec in (Z4, RingSpec(3, 2, ())):
        p = spec.p
        m = cyclic(spec, [p])
        assert fitting_ideal(m, 0) == ideal_from_generators(spec, [spec.const(p)])
        assert fitting_ideal(m, 1).is_unit()
    z9 = RingSpec(3, 2, ())
    diag = PresentedModule(z9, 2, np.array([[[3], [0]], [[0], [3]]]))
    assert fitting_ideal(diag, 0).is_zero()
    r = RingSpec(3, 3, ())
    diag = PresentedModule(r, 2, np.array([[[3], [0]], [[0], [3]]]))
    assert fitting_ideal(diag, 0) == ideal_from_generators(r, [[9]])


def test_kernel_examples():
    ident = ModuleMap.identity(PresentedModule.free(Z4, 2))
    assert kernel_of_map(ident)[0].length == 0
    times_p = ModuleMap(PresentedModule.free(Z4, 1), PresentedModule.free(Z4, 1), [[[2]]])
    ker, emb = kernel_of_map(times_p)
    assert ker.length == 1
    assert times_p.compose(emb).is_zero()
    f = ModuleMap(PresentedModule.free(Z4, 2), PresentedModule.free(Z4, 2), [[[1], [0]], [[0], [2]]])
    ker, emb = kernel_of_map(f)
    brute = [v for v in vectors(Z4, 2) if not np.any(f.apply(v))]
    assert len(brute) == 2 and ker.length == 1
    assert f.compose(emb).is_zero()


def test_cokernel_examples():
    assert cokernel(ModuleMap.identity(PresentedModule.free(Z4, 2))).length == 0
    times_p = ModuleMap(PresentedModule.free(Z4, 1), PresentedModule.free(Z4, 1), [[[2]]])
    assert cokernel(times_p).length == 1
    f = ModuleMap(PresentedModule.free(Z4, 3), PresentedModule.free(Z4, 2),
                  [[[1], [0], [2]], [[0], [1], [0]]])
    assert cokernel(f).length == 0


def test_tensor_quotient_examples():
    pi = QuotientMap(Z4, RingSpec(2, 1, ()))
    assert tensor_quotient(PresentedModule.free(Z4, 1), pi).length == 1
    assert tensor_quotient(cyclic(Z4, [2]), pi).length == 1
    r4x = RingSpec(2, 2, (2,))
    for target in quotient_specs(r4x):
        free = tensor_quotient(PresentedModule.free(r4x, 3), QuotientMap(r4x, target))
        assert free.is_free() and free.length == 3 * target.length


def test_annihilator_examples():
    assert annihilator(PresentedModule.free(Z4, 1)).is_zero()
    assert annihilator(cyclic(Z4, [2])) == ideal_from_generators(Z4, [[2]])
    assert annihilator(PresentedModule.free(Z4, 0)).is_unit()


def test_map_well_definedness_enforced():
    with pytest.raises(ValueError):
        ModuleMap(cyclic(Z4, [2]), PresentedModule.free(Z4, 1), [[[1]]])


@given(tiny_modules())
def test_length_matches_enumeration(m):
    assert m.length == brute_length(m)


@given(tiny_modules())
def test_dual_length_matches_enumeration(m):
    d = dual(m)
    assert d.check()
    assert d.presented.length == brute_dual_length(m) == m.length


@given(modules())
def test_matlis_double_duality(m):
    d1 = dual(m)
    assert d1.presented.length == m.length
    assert is_isomorphism(double_dual_map(m, d1))


@given(modules())
def test_fitting_chain_and_annihilator_sandwich(m):
    fits = [fitting_ideal(m, i) for i in range(m.gens + 2)]
    assert all(fits[i] <= fits[i + 1] for i in range(len(fits) - 1))
    assert fits[-1].is_unit()
    ann = annihilator(m)
    assert fits[0] <= ann
    assert ann.power(m.gens) <= fits[0]


@given(modules(), st.integers(0, 2**32 - 1))
def test_fitting_ignores_redundant_generator(m, seed):
    spec = m.spec
    rng = np.random.default_rng(seed)
    # new generator g = combination of old ones, with relation g - combo
    combo = spec.random(rng, (m.gens,)) if m.gens else np.zeros((0, spec.n), dtype=np.int64)
    t = m.gens + 1
    rel = np.zeros((t, m.nrel + 1, spec.n), dtype=np.int64)
    rel[:m.gens, :m.nrel] = m.relations
    rel[:m.gens, m.nrel] = -combo
    rel[m.gens, m.nrel] = spec.one()
    bigger = PresentedModule(spec, t, rel)
    assert bigger.length == m.length
    for i in range(t + 1):
        assert fitting_ideal(bigger, i) == fitting_ideal(m, i)


@given(modules())
def test_fitting_base_change(m):
    for target in quotient_specs(m.spec):
        pi = QuotientMap(m.spec, target)
        mq = tensor_quotient(m, pi)
        for i in range(m.gens + 1):
            assert fitting_ideal(mq, i) == pi.image_ideal(fitting_ideal(m, i))


@given(modules(), st.integers(0, 2**32 - 1))
def test_kernel_cokernel_lengths_add(m, seed):
    rng = np.random.default_rng(seed)
    f = random_map_into(m.spec, rng, m, int(rng.integers(0, 4)))
    ker, emb = kernel_of_map(f)
    assert f.compose(emb).is_zero()
    assert f.source.length - ker.length == m.length - cokernel(f).length


def test_ideal_rep_of_minors_is_canonical():
    a = ideal_from_generators(Z8, [[2], [6]])
    b = IdealRep.from_generators(Z8, [[2]])
    assert a == b and hash(a) == hash(b)
