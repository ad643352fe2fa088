"""JSON forms of the ring, ideal and instance types.

Ring elements are lists of coefficients in the monomial order of the ring.
Everything is dumped with sorted keys so identical inputs give identical
bytes.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .ring import IdealRep, RingSpec, format_element
from .stark import SelmerInstance, StarkSystem, Subset


class FormatError(ValueError):
    """Malformed serialized input."""


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def ring_to_json(spec: RingSpec) -> dict:
    return {"p": spec.p, "a": spec.a, "exponents": list(spec.exponents)}


def ring_from_json(obj) -> RingSpec:
    try:
        return RingSpec(int(obj["p"]), int(obj["a"]), tuple(int(e) for e in obj.get("exponents", [])))
    except (KeyError, TypeError) as exc:
        raise FormatError(f"bad ring: {obj!r}") from exc


def parse_ring(text: str) -> RingSpec:
    """'p=2,a=2,e=2' or 'p=3,a=1,e=2;2'; e may be omitted or empty."""
    fields = {}
    for part in text.split(","):
        if not part.strip():
            continue
        key, _, val = part.partition("=")
        fields[key.strip()] = val.strip()
    try:
        p, a = int(fields["p"]), int(fields["a"])
        raw = fields.get("e", "")
        exps = tuple(int(e) for e in raw.replace(";", " ").replace(":", " ").split()) if raw else ()
    except (KeyError, ValueError) as exc:
        raise FormatError(f"bad ring description {text!r}") from exc
    return RingSpec(p, a, exps)


def element_to_json(arr) -> list[int]:
    return [int(c) for c in np.asarray(arr).reshape(-1)]


def ideal_to_json(ideal: IdealRep) -> dict:
    spec = ideal.spec
    return {
        "basis": ideal.basis.data.tolist(),
        "generators": [format_element(spec, row) for row in ideal.basis.data],
        "length": ideal.length,
    }


def subset_key(inst: SelmerInstance, m: Subset) -> str:
    return ",".join(inst.primes[i] for i in m)


def parse_subset(inst: SelmerInstance, key: str) -> Subset:
    if not key:
        return ()
    index = {q: i for i, q in enumerate(inst.primes)}
    try:
        return tuple(sorted(index[q] for q in key.split(",")))
    except KeyError as exc:
        raise FormatError(f"unknown prime in subset {key!r}") from exc


def instance_to_json(inst: SelmerInstance) -> dict:
    out = {
        "ring": ring_to_json(inst.spec),
        "rank_r": inst.rank,
        "primes": list(inst.primes),
        "loc": inst.loc.tolist(),
    }
    if inst.provenance:
        out["provenance"] = inst.provenance
    return out


def instance_from_json(obj) -> SelmerInstance:
    try:
        spec = ring_from_json(obj["ring"])
        rank = int(obj["rank_r"])
        primes = [str(q) for q in obj["primes"]]
        T = rank + len(primes)
        loc = np.asarray(obj["loc"], dtype=np.int64)
        if loc.size == 0:
            loc = np.zeros((len(primes), T, spec.n), dtype=np.int64)
        if loc.shape != (len(primes), T, spec.n):
            raise FormatError(f"loc must have shape ({len(primes)}, {T}, {spec.n}), got {loc.shape}")
        return SelmerInstance(spec, rank, primes, loc, obj.get("provenance"))
    except FormatError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad instance: {exc}") from exc


def system_to_json(sys: StarkSystem) -> dict:
    inst = sys.instance
    out = instance_to_json(inst)
    out["classes"] = {subset_key(inst, m): v.tolist() for m, v in sorted(sys.classes.items())}
    if sys.unit is not None:
        out["unit"] = element_to_json(sys.unit)
    return out


def system_from_json(obj, inst: SelmerInstance | None = None) -> StarkSystem:
    """Read the optional classes of an instance file; every subset must be present."""
    inst = inst or instance_from_json(obj)
    raw = obj.get("classes")
    if raw is None:
        raise FormatError("instance has no classes")
    classes = {}
    for key, vals in raw.items():
        m = parse_subset(inst, key)
        arr = np.asarray(vals, dtype=np.int64).reshape(-1, inst.spec.n) % inst.spec.q
        classes[m] = arr
    for m in inst.subsets():
        if m not in classes:
            raise FormatError(f"missing class for subset {subset_key(inst, m)!r}")
        expected = math.comb(inst.T, inst.degree(m))
        if classes[m].shape[0] != expected:
            raise FormatError(f"class for {subset_key(inst, m)!r} needs {expected} values")
    unit = np.asarray(obj["unit"], dtype=np.int64) if "unit" in obj else None
    return StarkSystem(inst, classes, unit)


def jsonable(obj):
    """Recursively convert numpy values and ideals into json-ready objects."""
    if isinstance(obj, IdealRep):
        return ideal_to_json(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, (np.bool_,)):
        return bool(obj)
    if isinstance(obj, float) and math.isinf(obj):
        return "inf"
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, tuple) else ",".join(map(str, k)): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj
