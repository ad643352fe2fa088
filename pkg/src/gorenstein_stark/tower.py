"""Finite quotient towers R_D ->> ... ->> R_1 and Stark systems along them.

Level n of a depth-D tower over (Z/p^a)[x]/(x^e) is the quotient by
(p^a_n, x^e_n) with a_n = max(1, a - (D - n)) and likewise for each
exponent, so the top level is the master ring itself.  The inverse limit
is rendered by checking each adjacent pair of levels.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fpmod import fitting_ideal
from .ring import IdealRep, QuotientMap, RingSpec, socle
from .stark import (
    SelmerInstance,
    StarkSystem,
    ideal_I,
    reduce_instance,
    stark_from_top,
    theta,
)


def level_specs(spec: RingSpec, depth: int) -> list[RingSpec]:
    """Rings of a depth-``depth`` tower, smallest first; the last is ``spec``."""
    if depth < 1:
        raise ValueError("tower depth must be at least 1")
    out = []
    for n in range(1, depth + 1):
        drop = depth - n
        out.append(RingSpec(spec.p, max(1, spec.a - drop), tuple(max(1, e - drop) for e in spec.exponents)))
    return out


def is_gorenstein(spec: RingSpec) -> bool:
    return socle(spec).length == 1


@dataclass(eq=False)
class TowerSpec:
    levels: list[RingSpec]
    instances: list[SelmerInstance]
    maps: list[QuotientMap] = field(default_factory=list)

    @property
    def depth(self) -> int:
        return len(self.levels)

    @property
    def master(self) -> SelmerInstance:
        return self.instances[-1]


def build_tower(master: SelmerInstance, levels: list[RingSpec] | None = None, depth: int = 3) -> TowerSpec:
    """Reduce the master instance to every level.

    ``levels`` are listed smallest first and must end at the master ring;
    by default they come from ``level_specs``.
    """
    levels = list(levels) if levels is not None else level_specs(master.spec, depth)
    if not levels or levels[-1] != master.spec:
        raise ValueError("the top level must be the master ring")
    maps = [QuotientMap(levels[k + 1], levels[k]) for k in range(len(levels) - 1)]
    for spec in levels:
        if not is_gorenstein(spec):
            raise ValueError(f"{spec} is not Gorenstein")
    instances = [master]
    for pi in reversed(maps):
        instances.append(reduce_instance(instances[-1], pi))
    instances.reverse()
    for k, pi in enumerate(maps):
        if not np.array_equal(pi(instances[k + 1].loc), instances[k].loc):
            raise AssertionError("loc is not compatible across levels")
    return TowerSpec(levels, instances, maps)


@dataclass
class LevelCertificate:
    level: int
    classes_match: bool
    ideals_match: bool

    @property
    def ok(self) -> bool:
        return self.classes_match and self.ideals_match


@dataclass(eq=False)
class TowerSystem:
    tower: TowerSpec
    systems: list[StarkSystem]
    certificates: list[LevelCertificate]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.certificates)


def tower_system(tw: TowerSpec, unit=None) -> TowerSystem:
    """Generate at the top level and reduce level by level.

    Each lower system is regenerated from the reduced unit, then certified
    against the entrywise image of the level above.
    """
    top = stark_from_top(tw.master, unit)
    systems = [top]
    certs = []
    for k in range(tw.depth - 2, -1, -1):
        pi = tw.maps[k]
        above = systems[-1]
        below = stark_from_top(tw.instances[k], pi(above.unit))
        classes_match = all(np.array_equal(pi(v), below.classes[m]) for m, v in above.classes.items())
        ideals_match = all(
            pi.image_ideal(ideal_I(above, i)) == ideal_I(below, i) for i in range(tw.master.N + 1)
        )
        certs.append(LevelCertificate(k + 1, classes_match, ideals_match))
        systems.append(below)
    systems.reverse()
    certs.reverse()
    return TowerSystem(tw, systems, certs)


@dataclass
class IdealProfile:
    i: int
    ideals: list[IdealRep]
    images_match: list[bool]
    fitting_match: list[bool]

    @property
    def ok(self) -> bool:
        return all(self.images_match) and all(self.fitting_match)

    @property
    def stable(self) -> bool:
        """Whether the top two levels already carry the same ideal size."""
        return len(self.ideals) < 2 or self.ideals[-1].length == self.ideals[-2].length


def tower_ideal_profile(ts: TowerSystem, i: int) -> IdealProfile:
    """I_i at every level, with image and Fitting-ideal checks."""
    tw = ts.tower
    ideals = [ideal_I(s, i) for s in ts.systems]
    images = [tw.maps[k].image_ideal(ideals[k + 1]) == ideals[k] for k in range(tw.depth - 1)]
    fitting = [
        ideals[k] == fitting_ideal(tw.instances[k].dual_selmer_dual(()), i) for k in range(tw.depth)
    ]
    return IdealProfile(i, ideals, images, fitting)


@dataclass
class TowerTheta:
    values: list[np.ndarray]
    reports_ok: list[bool]
    compatible: list[bool]

    @property
    def ok(self) -> bool:
        return all(self.reports_ok) and all(self.compatible)


def tower_theta(ts: TowerSystem, c_top) -> TowerTheta:
    """theta at every level for the reductions of a free basis c_top of H_empty."""
    tw = ts.tower
    cs = [np.asarray(c_top, dtype=np.int64)]
    for pi in reversed(tw.maps):
        cs.append(pi(cs[-1]))
    cs.reverse()
    reports = [theta(s, c) for s, c in zip(ts.systems, cs)]
    values = [r.theta for r in reports]
    compatible = [np.array_equal(tw.maps[k](values[k + 1]), values[k]) for k in range(tw.depth - 1)]
    return TowerTheta(values, [r.ok for r in reports], compatible)


__all__ = [
    "IdealProfile",
    "LevelCertificate",
    "TowerSpec",
    "TowerSystem",
    "TowerTheta",
    "build_tower",
    "is_gorenstein",
    "level_specs",
    "tower_ideal_profile",
    "tower_system",
    "tower_theta",
]
