"""The nine acceptance criteria as plain functions.

Each criterion returns a ``Criterion`` record with a one-line summary.  The
pytest acceptance module and ``scripts/run_suite.py`` both call these, so
the numbers printed by either are the same runs.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .checks import (
    chain_sign_holds,
    dual_exactness_holds,
    free_wedge_in_value_ideal,
    key_sequence_holds,
    matlis_holds,
    naturality_holds,
    substrate_case,
    value_ideal_in_coefficients,
)
from .fpmod import fitting_ideal
from .generators import (
    TEST_RINGS,
    module_with_free_part,
    random_chain,
    random_key_sequence,
    random_map_into,
    random_module,
    random_naturality,
)
from .principal import comparison_matches, depth_defects, intertwining_defects, wedge_system_from_top
from .ring import QuotientMap, RingSpec, quotient_specs
from .stark import (
    StarkSystem,
    core_rank_defects,
    core_vertices,
    free_rank,
    ideal_I,
    ordering_defects,
    planted_instance,
    random_instance,
    reduction_defects,
    regenerate_from,
    stark_from_top,
    theta,
)
from .tower import build_tower, tower_ideal_profile, tower_system
from .zmod import Modulus


@dataclass
class Criterion:
    number: int
    title: str
    ok: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        verdict = "PASS" if self.ok else "FAIL"
        return f"[{verdict}] criterion {self.number}: {self.title} ({self.detail}; {self.seconds:.1f}s)"


@dataclass
class Corpus:
    """Seeded systems shared by the control, core, sign and reduction criteria."""

    systems: list[StarkSystem] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.systems)


def corpus(per_ring: int = 36, seed: int = 0) -> Corpus:
    """``per_ring`` instances on every test ring, cycling r over 0..2 and N over 1..4."""
    out = Corpus()
    for ring_index, spec in enumerate(TEST_RINGS):
        for k in range(per_ring):
            rank, n = k % 3, 1 + (k // 3) % 4
            inst = random_instance(seed + 1000 * ring_index + k, spec, rank, n)
            rng = np.random.default_rng(seed + 7919 * ring_index + k)
            out.systems.append(stark_from_top(inst, spec.random_unit(rng)))
    return out


def _timed(number: int, title: str, run) -> Criterion:
    start = time.perf_counter()
    ok, detail = run()
    return Criterion(number, title, ok, detail, time.perf_counter() - start)


def control(data: Corpus) -> Criterion:
    def run():
        bad = 0
        checks = 0
        for sys in data.systems:
            d = sys.instance.dual_selmer_dual(())
            for i in range(sys.instance.N + 1):
                checks += 1
                bad += ideal_I(sys, i) != fitting_ideal(d, i)
        return bad == 0 and len(data) >= 200, f"{len(data)} instances, {checks} ideals, {bad} mismatches"
    return _timed(1, "control: I_i equals Fitt_i of the dual Selmer dual", run)


def core(data: Corpus) -> Criterion:
    def run():
        vertices = bad = 0
        for sys in data.systems:
            inst = sys.instance
            for m in core_vertices(inst):
                vertices += 1
                report = regenerate_from(sys, m)
                bad += not (report.ok and free_rank(inst, m) == inst.degree(m))
            bad += len(core_rank_defects(inst))
        return bad == 0 and vertices > 0, f"{vertices} core vertices, {bad} failures"
    return _timed(2, "core: regeneration from core vertices, free rank r+|m|", run)


def signs(data: Corpus, chains_per_profile: int = 40, squares: int = 120, seed: int = 0) -> Criterion:
    def run():
        rng = np.random.default_rng(seed)
        orderings = ordering_bad = 0
        for sys in data.systems:
            if sys.instance.N <= 4:
                count, bad = ordering_defects(sys)
                orderings += count
                ordering_bad += len(bad)
        chains = chain_bad = nonzero = 0
        for profile in ((0, 1, 2), (0, 2, 3), (1, 2, 4)):
            for k in range(chains_per_profile):
                spec = TEST_RINGS[k % len(TEST_RINGS)]
                ok, nz = chain_sign_holds(random_chain(spec, rng, profile), rng)
                chains += 1
                chain_bad += not ok
                nonzero += nz
        nat_bad = 0
        for k in range(squares):
            spec = TEST_RINGS[k % len(TEST_RINGS)]
            nat_bad += not naturality_holds(random_naturality(spec, rng, 1 + k % 3), rng)
        ok = ordering_bad == chain_bad == nat_bad == 0 and chains >= 100 and squares >= 100 and nonzero > 0
        detail = (f"{orderings} orderings, {chains} chains ({nonzero} non-zero), {squares} squares; "
                  f"failures {ordering_bad}/{chain_bad}/{nat_bad}")
        return ok, detail
    return _timed(3, "ordering independence plus the chain sign law and naturality", run)


def key_lemma(count: int = 240, seed: int = 1) -> Criterion:
    def run():
        rng = np.random.default_rng(seed)
        bad = 0
        for k in range(count):
            spec = TEST_RINGS[k % len(TEST_RINGS)]
            s, t = 1 + k % 3, int(rng.integers(0, 3))
            bad += not key_sequence_holds(random_key_sequence(spec, rng, s, t))
        return bad == 0 and count >= 200, f"{count} sequences, {bad} failures"
    return _timed(4, "key sequence: value ideal equals Fitt_0", run)


def matlis(per_ring: int = 200, maps_per_ring: int = 40, seed: int = 2) -> Criterion:
    def run():
        rng = np.random.default_rng(seed)
        bad = maps = 0
        for spec in TEST_RINGS:
            for _ in range(per_ring):
                bad += not matlis_holds(random_module(spec, rng))
            for _ in range(maps_per_ring):
                target = random_module(spec, rng)
                f = random_map_into(spec, rng, target, int(rng.integers(1, 4)))
                bad += not dual_exactness_holds(f)
                maps += 1
        modules = per_ring * len(TEST_RINGS)
        return bad == 0 and per_ring >= 200, f"{modules} modules, {maps} maps, {bad} failures"
    return _timed(5, "Matlis duality and exactness of dualisation", run)


def reduction(data: Corpus, towers_per_ring: int = 4, seed: int = 3) -> Criterion:
    def run():
        surjections = bad = 0
        for sys in data.systems:
            spec = sys.instance.spec
            for target in quotient_specs(spec):
                if target == spec:
                    continue
                surjections += 1
                bad += bool(reduction_defects(sys, QuotientMap(spec, target)))
        towers = tower_bad = 0
        rng = np.random.default_rng(seed)
        for master_spec in (RingSpec(2, 3, ()), RingSpec(3, 3, ()), RingSpec(2, 3, (3,)), RingSpec(3, 2, (2, 2))):
            for k in range(towers_per_ring):
                inst = random_instance(int(rng.integers(2**31)), master_spec, k % 2, 1 + k % 3)
                ts = tower_system(build_tower(inst, depth=3), master_spec.random_unit(rng))
                towers += 1
                ok = ts.ok and all(tower_ideal_profile(ts, i).ok for i in range(inst.N + 1))
                tower_bad += not ok
        return bad == tower_bad == 0, (f"{surjections} surjections, {towers} depth-3 towers; "
                                       f"failures {bad}/{tower_bad}")
    return _timed(6, "reduction along surjections and depth-3 towers", run)


def theta_suite(per_ring: int = 8, seed: int = 4) -> Criterion:
    def run():
        rng = np.random.default_rng(seed)
        planted = vanishing = bad = 0
        for spec in TEST_RINGS:
            for k in range(per_ring):
                rank, n = 1 + k % 2, 1 + k % 3
                inst, c = planted_instance(int(rng.integers(2**31)), spec, rank, n)
                sys = stark_from_top(inst, spec.random_unit(rng))
                planted += 1
                bad += not theta(sys, c).ok
                inst, _ = planted_instance(int(rng.integers(2**31)), spec, k % 2, n, extra=1)
                sys = stark_from_top(inst, spec.random_unit(rng))
                vanishing += 1
                bad += bool(sys.classes[()].any())
        return bad == 0, f"{planted} rank-r plants, {vanishing} rank-(r+1) plants, {bad} failures"
    return _timed(7, "theta on planted free summands", run)


def comparison(per_ring: int = 24, modules_per_ring: int = 60, seed: int = 5) -> Criterion:
    def run():
        rng = np.random.default_rng(seed)
        rings = [spec for spec in TEST_RINGS if spec.d == 0]
        systems = bad = 0
        for spec in rings:
            for k in range(per_ring):
                inst = random_instance(int(rng.integers(2**31)), spec, k % 3, 1 + k % 3)
                ws = wedge_system_from_top(inst, spec.random_unit(rng))
                systems += 1
                bad += not comparison_matches(ws)
                bad += bool(intertwining_defects(ws)) + bool(depth_defects(ws))
        lemma_cases = 0
        for spec in rings:
            for k in range(modules_per_ring):
                m = random_module(spec, rng)
                bad += not value_ideal_in_coefficients(spec, rng, m, int(rng.integers(0, m.gens + 1)))
                mf, basis = module_with_free_part(spec, rng, 1 + k % 2)
                bad += not free_wedge_in_value_ideal(spec, rng, mf, basis)
                lemma_cases += 2
        return bad == 0, f"{systems} wedge systems, {lemma_cases} coefficient cases, {bad} failures"
    return _timed(8, "comparison map over principal rings", run)


def substrate(cases: int = 10_000, seed: int = 6, budget: float = 60.0) -> Criterion:
    def run():
        rng = np.random.default_rng(seed)
        moduli = [Modulus(2, 1), Modulus(2, 2), Modulus(2, 3), Modulus(3, 1), Modulus(3, 2), Modulus(5, 2)]
        start = time.perf_counter()
        bad = 0
        for k in range(cases):
            mod = moduli[k % len(moduli)]
            rows, cols = int(rng.integers(0, 6)), int(rng.integers(1, 6))
            bad += not all(substrate_case(rng, mod, rows, cols))
        elapsed = time.perf_counter() - start
        return bad == 0 and elapsed < budget, f"{cases} matrices, {bad} failures, {elapsed:.1f}s of {budget:.0f}s"
    return _timed(9, "linear-algebra substrate fuzz", run)


def run_all(seed: int = 0) -> list[Criterion]:
    data = corpus(seed=seed)
    return [
        control(data),
        core(data),
        signs(data),
        key_lemma(),
        matlis(),
        reduction(data),
        theta_suite(),
        comparison(),
        substrate(),
    ]


__all__ = [
    "Corpus",
    "Criterion",
    "comparison",
    "control",
    "core",
    "corpus",
    "key_lemma",
    "matlis",
    "reduction",
    "run_all",
    "signs",
    "substrate",
    "theta_suite",
]
