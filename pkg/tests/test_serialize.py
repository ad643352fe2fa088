import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from gorenstein_stark.generators import TEST_RINGS
from gorenstein_stark.ring import IdealRep, RingSpec
from gorenstein_stark.serialize import (
    FormatError,
    dumps,
    ideal_to_json,
    instance_from_json,
    instance_to_json,
    jsonable,
    parse_ring,
    parse_subset,
    ring_from_json,
    ring_to_json,
    subset_key,
    system_from_json,
    system_to_json,
)
from gorenstein_stark.stark import random_instance, stark_from_top


def test_parse_ring():
    assert parse_ring("p=2,a=2,e=2") == RingSpec(2, 2, (2,))
    assert parse_ring("p=3,a=1,e=2;2") == RingSpec(3, 1, (2, 2))
    assert parse_ring("p=3, a=1, e=2 2") == RingSpec(3, 1, (2, 2))
    assert parse_ring("p=5,a=2") == RingSpec(5, 2, ())
    assert parse_ring("p=5,a=2,e=") == RingSpec(5, 2, ())
    for bad in ("p=2", "a=2", "p=x,a=1", "p=2,a=1,e=a"):
        with pytest.raises(FormatError):
            parse_ring(bad)
    with pytest.raises(ValueError):
        parse_ring("p=6,a=1")


def test_ring_header():
    assert ring_to_json(RingSpec(2, 2, (2,))) == {"p": 2, "a": 2, "exponents": [2]}
    assert ring_from_json({"p": 2, "a": 2}) == RingSpec(2, 2, ())
    with pytest.raises(FormatError):
        ring_from_json({"p": 2})


def test_ideal_json():
    spec = RingSpec(2, 2, (2,))
    obj = ideal_to_json(IdealRep.from_generators(spec, [[2, 2]]))
    assert obj["length"] == 2
    assert len(obj["generators"]) == len(obj["basis"])


def test_subset_keys():
    inst = random_instance(0, RingSpec(2, 2, ()), 1, 3)
    for m in inst.subsets():
        assert parse_subset(inst, subset_key(inst, m)) == m
    assert subset_key(inst, ()) == ""
    with pytest.raises(FormatError):
        parse_subset(inst, "nope")


@given(st.sampled_from(TEST_RINGS), st.integers(0, 2**31), st.integers(0, 2), st.integers(0, 3))
def test_instance_round_trip(spec, seed, rank, n):
    inst = random_instance(seed, spec, rank, n)
    text = dumps(instance_to_json(inst))
    back = instance_from_json(json.loads(text))
    assert back.spec == inst.spec and back.rank == inst.rank and back.primes == inst.primes
    assert np.array_equal(back.loc, inst.loc)
    assert dumps(instance_to_json(back)) == text


@given(st.sampled_from(TEST_RINGS), st.integers(0, 2**31), st.integers(0, 2), st.integers(0, 3))
def test_system_round_trip(spec, seed, rank, n):
    sys = stark_from_top(random_instance(seed, spec, rank, n), spec.random_unit(np.random.default_rng(seed)))
    obj = json.loads(dumps(system_to_json(sys)))
    back = system_from_json(obj)
    assert back.equals(sys)
    assert np.array_equal(back.unit, sys.unit)


def test_malformed_instances():
    good = instance_to_json(random_instance(1, RingSpec(2, 2, ()), 1, 2))
    for key in ("ring", "rank_r", "primes", "loc"):
        broken = dict(good)
        del broken[key]
        with pytest.raises(FormatError):
            instance_from_json(broken)
    broken = dict(good, loc=[[1, 2]])
    with pytest.raises(FormatError):
        instance_from_json(broken)


def test_missing_or_short_classes():
    sys = stark_from_top(random_instance(1, RingSpec(2, 2, ()), 1, 2))
    obj = system_to_json(sys)
    del obj["classes"][""]
    with pytest.raises(FormatError):
        system_from_json(obj)
    obj = system_to_json(sys)
    obj["classes"]["q1"] = [[1]]
    with pytest.raises(FormatError):
        system_from_json(obj)


def test_jsonable():
    spec = RingSpec(2, 2, ())
    out = jsonable({(0, 1): np.int64(3), "x": [np.bool_(True), float("inf")],
                    "i": IdealRep.unit(spec), "a": np.arange(2)})
    assert out == {"0,1": 3, "x": [True, "inf"], "i": ideal_to_json(IdealRep.unit(spec)), "a": [0, 1]}
    json.dumps(out)
