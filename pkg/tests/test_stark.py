import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gorenstein_stark.fpmod import fitting_ideal
from gorenstein_stark.generators import TEST_RINGS
from gorenstein_stark.ring import IdealRep, QuotientMap, RingSpec, ideal_from_generators, mul, quotient_specs
from gorenstein_stark.stark import (
    SelmerInstance,
    StarkSystem,
    consistency_defects,
    core_rank_defects,
    core_vertices,
    direct_down,
    find_free_submodule,
    free_rank,
    ideal_I,
    ideal_profile,
    max_free_rank,
    ordering_defects,
    planted_instance,
    poitou_tate_defects,
    random_instance,
    reduce_system,
    reduction_defects,
    regenerate_from,
    rescaled_trivialisation,
    sign_defects,
    stark_from_top,
    step_down,
    step_down_via_square,
    theta,
    transition_defects,
    verify_control,
)

Z4 = RingSpec(2, 2, ())
Z9 = RingSpec(3, 2, ())


def instance(spec, rank, loc):
    loc = np.asarray(loc, dtype=np.int64)
    n_primes = loc.shape[0]
    return SelmerInstance(spec, rank, [f"q{i + 1}" for i in range(n_primes)], loc.reshape(n_primes, -1, spec.n))


@st.composite
def systems(draw, rings=TEST_RINGS, max_primes=3):
    spec = draw(st.sampled_from(rings))
    rank = draw(st.integers(0, 2))
    n = draw(st.integers(0, max_primes))
    seed = draw(st.integers(0, 2**31))
    density = draw(st.sampled_from([0.0, 0.5, 0.8, 1.0]))
    inst = random_instance(seed, spec, rank, n, density)
    unit = spec.random_unit(np.random.default_rng(seed))
    return stark_from_top(inst, unit)


@pytest.mark.parametrize("spec", [Z4, Z9], ids=str)
def test_socle_instance(spec):
    p = spec.p
    inst = instance(spec, 0, [[p]])
    h, emb = inst.relaxed_module(())
    # brute force: x with p x = 0
    brute = [x for x in range(spec.q) if (p * x) % spec.q == 0]
    assert spec.p ** h.length == len(brute)
    d = inst.dual_selmer_dual(())
    assert d.length == 1
    assert fitting_ideal(d, 0) == ideal_from_generators(spec, [[p]])
    assert not inst.is_core_vertex(())
    assert inst.is_core_vertex(inst.top)
    sys = stark_from_top(inst)
    assert ideal_I(sys, 0) == ideal_from_generators(spec, [[p]])
    assert verify_control(sys, 0).ok and verify_control(sys, 1).ok


def test_unit_instance():
    inst = instance(Z4, 0, [[1]])
    assert inst.relaxed_module(())[0].length == 0
    assert inst.dual_selmer_dual(()).length == 0
    sys = stark_from_top(inst)
    assert sys.value_ideal(()).is_unit()
    assert ideal_I(sys, 0).is_unit()
    report = theta(sys, np.zeros((1, 0, 1), dtype=np.int64))
    assert report.ok and report.theta.tolist() == sys.classes[()][0].tolist()


def test_full_set_relaxes_everything():
    inst = random_instance(5, Z9, 2, 3)
    h, _ = inst.relaxed_module(inst.top)
    assert h.is_free() and h.gens == inst.T
    assert inst.dual_selmer_dual(inst.top).length == 0


def test_rank_one_two_primes_example():
    inst = instance(Z4, 1, [[2, 0, 1], [0, 2, 0]])
    d = inst.dual_selmer_dual(())
    assert fitting_ideal(d, 0) == ideal_from_generators(Z4, [[2]])
    sys = stark_from_top(inst)
    assert ideal_I(sys, 0) == ideal_from_generators(Z4, [[2]])
    assert all(verify_control(sys, i).ok for i in range(4))


def test_theta_example():
    for spec in (Z4, Z9):
        inst = instance(spec, 1, [[spec.p, 0]])
        sys = stark_from_top(inst)
        c = np.zeros((2, 1, 1), dtype=np.int64)
        c[1, 0, 0] = 1
        report = theta(sys, c)
        assert report.ok
        assert ideal_from_generators(spec, [report.theta]) == ideal_from_generators(spec, [[spec.p]])


def test_theta_rejects_bad_input():
    inst = instance(Z4, 1, [[2, 0]])
    sys = stark_from_top(inst)
    with pytest.raises(ValueError):
        theta(sys, np.array([[[2]], [[0]]]))  # in H_empty but not a free summand
    with pytest.raises(ValueError):
        theta(sys, np.array([[[1]], [[0]]]))  # not in H_empty


def test_reduction_examples():
    inst = instance(Z9, 0, [[3]])
    sys = stark_from_top(inst)
    pi = QuotientMap(Z9, RingSpec(3, 1, ()))
    red = reduce_system(sys, pi)
    assert ideal_I(red, 0).is_zero()
    ident = reduce_system(sys, QuotientMap(Z9, Z9))
    assert ident.equals(sys)


def test_random_instance_is_seeded():
    a = random_instance(7, Z4, 1, 3)
    b = random_instance(7, Z4, 1, 3)
    assert np.array_equal(a.loc, b.loc) and a.provenance == b.provenance
    assert not np.array_equal(a.loc, random_instance(8, Z4, 1, 3).loc)
    assert a.provenance["seed"] == 7


def test_density_zero_gives_unit_entries():
    inst = random_instance(3, Z9, 1, 3, density=0.0)
    assert np.all(inst.loc[:, :, 0] % 3 != 0)
    assert inst.is_core_vertex(inst.top)


def test_instance_validation():
    with pytest.raises(ValueError):
        SelmerInstance(Z4, 0, ["a", "a"], np.zeros((2, 2, 1)))
    with pytest.raises(ValueError):
        SelmerInstance(Z4, -1, ["a"], np.zeros((1, 0, 1)))


def test_corrupted_class_is_detected():
    sys = stark_from_top(random_instance(2, Z4, 1, 2, density=0.0))
    classes = dict(sys.classes)
    classes[(0,)] = (2 * classes[(0,)]) % 4
    bad = StarkSystem(sys.instance, classes, sys.unit)
    assert transition_defects(bad)
    assert not transition_defects(sys)


@given(systems())
def test_step_down_matches_cartesian_square(sys):
    inst = sys.instance
    for n in inst.subsets():
        for q in n:
            assert np.array_equal(step_down(inst, n, q, sys.classes[n]),
                                  step_down_via_square(inst, n, q, sys.classes[n]))


@given(systems())
def test_classes_are_consistent_and_compatible(sys):
    assert not consistency_defects(sys)
    assert not transition_defects(sys)
    assert not sign_defects(sys)
    count, bad = ordering_defects(sys)
    assert not bad
    for n in sys.instance.subsets():
        for m in sys.instance.subsets():
            if set(m) < set(n):
                assert np.array_equal(direct_down(sys.instance, n, m, sys.classes[n]), sys.classes[m])


@given(systems())
def test_control(sys):
    inst = sys.instance
    d = inst.dual_selmer_dual(())
    profile = ideal_profile(sys, inst.N + 2)
    for i, ideal in enumerate(profile):
        assert ideal == fitting_ideal(d, i)
    assert all(profile[i] <= profile[i + 1] for i in range(len(profile) - 1))


@given(systems())
def test_core_vertices(sys):
    inst = sys.instance
    cores = core_vertices(inst)
    assert inst.top in cores
    for m in cores:
        assert free_rank(inst, m) == inst.degree(m)
        for n in inst.subsets():
            if set(m) <= set(n):
                assert n in cores
        assert regenerate_from(sys, m).ok
    assert not poitou_tate_defects(inst)
    assert not core_rank_defects(inst)


@given(systems(), st.integers(0, 2**31))
def test_linearity_in_the_unit(sys, seed):
    spec = sys.spec
    u = spec.random(np.random.default_rng(seed))
    again = stark_from_top(sys.instance, mul(spec, sys.unit, u))
    assert again.equals(sys.scaled(u))


@given(systems(), st.integers(0, 2**31))
def test_trivialisation_independence(sys, seed):
    inst = sys.instance
    spec = inst.spec
    units = spec.random_unit(np.random.default_rng(seed), (inst.N,)) if inst.N else np.zeros((0, spec.n))
    other = stark_from_top(rescaled_trivialisation(inst, units), sys.unit)
    for i in range(inst.N + 1):
        assert ideal_I(other, i) == ideal_I(sys, i)


@given(systems())
def test_reduction_commutes_with_ideals(sys):
    for target in quotient_specs(sys.spec):
        assert not reduction_defects(sys, QuotientMap(sys.spec, target))


@given(st.sampled_from(TEST_RINGS), st.integers(0, 2**31), st.integers(0, 2), st.integers(1, 3))
def test_theta_on_planted_instances(spec, seed, rank, n):
    inst, c = planted_instance(seed, spec, rank, n)
    sys = stark_from_top(inst, spec.random_unit(np.random.default_rng(seed)))
    assert max_free_rank(inst) >= rank
    report = theta(sys, c)
    assert report.ok
    found = find_free_submodule(inst, rank)
    assert found is not None and theta(sys, found).ok


@given(st.sampled_from(TEST_RINGS), st.integers(0, 2**31), st.integers(0, 2), st.integers(1, 3))
def test_planted_extra_rank_kills_the_bottom_class(spec, seed, rank, n):
    inst, _ = planted_instance(seed, spec, rank, n, extra=1)
    sys = stark_from_top(inst, spec.random_unit(np.random.default_rng(seed)))
    assert not sys.classes[()].any()
    assert fitting_ideal(inst.dual_selmer_dual(()), 0).is_zero()


def test_orderings_counted_exhaustively():
    sys = stark_from_top(random_instance(1, Z4, 1, 3))
    count, bad = ordering_defects(sys)
    # pairs m < n of subsets of 3 primes, weighted by (|n| - |m|)!
    expected = sum(
        math.factorial(k) * math.comb(3, size) * math.comb(size, k)
        for size in range(4) for k in range(1, size + 1)
    )
    assert count == expected and not bad


def test_ideal_past_n_is_unit():
    sys = stark_from_top(instance(Z4, 0, [[2]]))
    assert ideal_I(sys, 5) == IdealRep.unit(Z4)
