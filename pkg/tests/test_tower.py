import numpy as np
import pytest

from gorenstein_stark.fpmod import fitting_ideal
from gorenstein_stark.ring import RingSpec, ideal_from_generators
from gorenstein_stark.stark import SelmerInstance, planted_instance, random_instance, stark_from_top
from gorenstein_stark.tower import (
    build_tower,
    is_gorenstein,
    level_specs,
    tower_ideal_profile,
    tower_system,
    tower_theta,
)

Z8 = RingSpec(2, 3, ())


def test_level_specs():
    spec = RingSpec(2, 3, (3,))
    assert level_specs(spec, 3) == [RingSpec(2, 1, (1,)), RingSpec(2, 2, (2,)), spec]
    assert level_specs(spec, 1) == [spec]
    assert all(is_gorenstein(s) for s in level_specs(RingSpec(3, 3, (3, 2)), 3))
    with pytest.raises(ValueError):
        level_specs(spec, 0)


def test_single_level_is_the_plain_system():
    inst = random_instance(4, Z8, 1, 2)
    ts = tower_system(build_tower(inst, depth=1), Z8.const(3))
    assert ts.ok and len(ts.systems) == 1
    assert ts.systems[0].equals(stark_from_top(inst, Z8.const(3)))


def test_socle_profile():
    inst = SelmerInstance(Z8, 0, ["q"], np.array([[[2]]]))
    ts = tower_system(build_tower(inst, depth=3))
    prof = tower_ideal_profile(ts, 0)
    levels = ts.tower.levels
    assert [ideal.length for ideal in prof.ideals] == [0, 1, 2]
    expected = [ideal_from_generators(s, [s.const(2)]) for s in levels]
    assert prof.ideals == expected
    assert prof.ok


def test_unit_master_profile():
    inst = SelmerInstance(Z8, 0, ["q"], np.array([[[1]]]))
    ts = tower_system(build_tower(inst, depth=3))
    prof = tower_ideal_profile(ts, 0)
    assert all(ideal.is_unit() for ideal in prof.ideals) and prof.ok


def test_bad_nesting_rejected():
    inst = random_instance(0, Z8, 1, 1)
    with pytest.raises(ValueError):
        build_tower(inst, levels=[RingSpec(3, 1, ()), Z8])
    with pytest.raises(ValueError):
        build_tower(inst, levels=[Z8, RingSpec(2, 2, ())])


@pytest.mark.parametrize("master", [RingSpec(2, 3, ()), RingSpec(3, 3, ()), RingSpec(2, 3, (3,)),
                                    RingSpec(3, 2, (2, 2))], ids=str)
def test_random_towers(master):
    rng = np.random.default_rng(master.p + master.a)
    for k in range(3):
        inst = random_instance(int(rng.integers(2**31)), master, k % 3, 1 + k % 3)
        tw = build_tower(inst, depth=3)
        for lo, hi, pi in zip(tw.instances, tw.instances[1:], tw.maps):
            assert np.array_equal(pi(hi.loc), lo.loc)
        unit = master.random_unit(rng)
        ts = tower_system(tw, unit)
        assert ts.ok
        for i in range(inst.N + 1):
            prof = tower_ideal_profile(ts, i)
            assert prof.ok
            for level, ideal in zip(tw.instances, prof.ideals):
                assert ideal == fitting_ideal(level.dual_selmer_dual(()), i)


def test_unit_factor_propagates():
    inst = random_instance(9, RingSpec(3, 2, (2,)), 1, 2)
    tw = build_tower(inst, depth=2)
    u = inst.spec.random_unit(np.random.default_rng(0))
    a = tower_system(tw, inst.spec.one())
    b = tower_system(tw, u)
    for k, (sa, sb) in enumerate(zip(a.systems, b.systems)):
        down = u
        for pi in reversed(tw.maps[k:]):
            down = pi(down)
        assert sb.equals(sa.scaled(down))


def test_theta_along_a_tower():
    master = RingSpec(3, 3, (2,))
    for seed in range(4):
        inst, c = planted_instance(seed, master, 1, 2)
        ts = tower_system(build_tower(inst, depth=3), master.random_unit(np.random.default_rng(seed)))
        tt = tower_theta(ts, c)
        assert tt.ok
        for level, value in zip(ts.tower.instances, tt.values):
            assert ideal_from_generators(level.spec, [value]) == fitting_ideal(level.dual_selmer_dual(()), 0)
