"""Property checks shared by the CLI, the test-suite and the acceptance runner.

Each module-level check returns a plain bool or a ``Check`` record whose
witness is enough to replay the failure.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exterior import (
    BidualElement,
    bidual_functor,
    canonical_l,
    exterior_power,
    phi_map,
    random_bidual,
    wedge_membership,
)
from .fpmod import (
    ModuleMap,
    PresentedModule,
    cokernel,
    double_dual_map,
    dual,
    dual_map,
    fitting_ideal,
    is_isomorphism,
    kernel_of_map,
)
from .generators import Chain, KeySequence, Naturality, free_dual
from .minors import combos, det, wedge_vectors
from .principal import comparison_matches, depth_defects, intertwining_defects, wedge_system_from_top
from .ring import IdealRep, QuotientMap, RingSpec, mul, quotient_specs
from .serialize import ideal_to_json, subset_key, system_to_json
from .stark import (
    StarkSystem,
    consistency_defects,
    core_vertices,
    core_rank_defects,
    find_free_submodule,
    ideal_I,
    max_free_rank,
    ordering_defects,
    poitou_tate_defects,
    reduction_defects,
    regenerate_from,
    rescaled_trivialisation,
    sign_defects,
    stark_from_top,
    theta,
    transition_defects,
)
from .zmod import Modulus, ZMatrix, howell_form, kernel, solve, span_length


@dataclass
class Check:
    name: str
    ok: bool
    witness: dict | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "verdict": "pass" if self.ok else "fail"}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


# exterior-level properties


def chain_sign_holds(chain: Chain, rng: np.random.Generator, extra_degree: int = 1) -> tuple[bool, bool]:
    """(-1)^((s2-s1)(s3-s2)) Phi_31 = Phi_21 o Phi_32; also reports whether the value was non-zero."""
    s1, s2, s3 = chain.profile
    d3 = dual(chain.m3)
    d2 = dual(chain.sq21.m2)
    d1 = dual(chain.sq21.m1)
    r = s3 - s1 + int(rng.integers(0, extra_degree + 1))
    eps = random_bidual(rng, d3, r)
    two = phi_map(chain.sq21, phi_map(chain.sq32, eps, d2), d1)
    one = phi_map(chain.sq31, eps, d1)
    spec = chain.m3.spec
    sign = -1 if ((s2 - s1) * (s3 - s2)) % 2 else 1
    return np.array_equal(two.values, (sign * one.values) % spec.q), bool(one.values.any())


def naturality_holds(nat: Naturality, rng: np.random.Generator, extra_degree: int = 1) -> bool:
    """Phi' o f_* = det(k) g_* o Phi on a random bidual element."""
    spec = nat.f.spec
    s = nat.k.shape[0]
    d_m, d_mp = dual(nat.top.m2), dual(nat.bottom.m2)
    d_n, d_np = dual(nat.top.m1), dual(nat.bottom.m1)
    eps = random_bidual(rng, d_m, s + int(rng.integers(0, extra_degree + 1)))
    lhs = phi_map(nat.bottom, bidual_functor(nat.f, eps, d_mp), d_np)
    rhs = bidual_functor(nat.g, phi_map(nat.top, eps, d_n), d_np)
    dk = det(spec, nat.k) if s else spec.one()
    return np.array_equal(lhs.values, mul(spec, rhs.values, dk))


def key_sequence_holds(seq: KeySequence) -> bool:
    """The image of the top wedge under Phi has value ideal Fitt_0 of the cokernel."""
    spec = seq.square.spec
    free = seq.square.m2
    eps = BidualElement(free_dual(free), free.gens, np.array([spec.one()]))
    out = phi_map(seq.square, eps, dual(seq.square.m1))
    return out.value_ideal() == fitting_ideal(seq.cokernel, 0)


def matlis_holds(m: PresentedModule) -> bool:
    """L(M) = L(M*) and M -> M** is an isomorphism."""
    d1 = dual(m)
    if d1.presented.length != m.length:
        return False
    return is_isomorphism(double_dual_map(m, d1))


def dual_exactness_holds(f: ModuleMap) -> bool:
    """L(ker f*) = L(coker f) and L(coker f*) = L(ker f)."""
    d_src, d_tgt = dual(f.source), dual(f.target)
    fs = dual_map(f, d_src, d_tgt)
    ker_f, _ = kernel_of_map(f)
    ker_fs, _ = kernel_of_map(fs)
    return ker_fs.length == cokernel(f).length and cokernel(fs).length == ker_f.length


def value_ideal_in_coefficients(spec: RingSpec, rng: np.random.Generator, m: PresentedModule, s: int) -> bool:
    """x in J wedge^s M forces the value ideal of l(x) into J."""
    k = len(combos(m.gens, s))
    gens = spec.random(rng, (int(rng.integers(1, 3)),), nonunit=bool(rng.integers(0, 2)))
    ideal = IdealRep.from_generators(spec, gens)
    x = np.zeros((k, spec.n), dtype=np.int64)
    for g in gens:
        x = (x + mul(spec, g, spec.random(rng, (k,)))) % spec.q
    return canonical_l(m, s, x).value_ideal() <= ideal


def free_wedge_in_value_ideal(spec: RingSpec, rng: np.random.Generator, m: PresentedModule, basis) -> bool:
    """For x from a free rank-s submodule, x lies in (value ideal of l(x)) wedge^s M."""
    basis = np.asarray(basis, dtype=np.int64)
    s = basis.shape[1]
    x = mul(spec, wedge_vectors(spec, basis), spec.random(rng))
    ideal = canonical_l(m, s, x).value_ideal()
    return wedge_membership(spec, exterior_power(m, s), x, ideal)


def substrate_case(rng: np.random.Generator, mod: Modulus, rows: int, cols: int) -> tuple[bool, bool, bool]:
    """The substrate invariants on one random matrix: (nullity, idempotent, determined)."""
    a = rng.integers(0, mod.q, size=(rows, cols))
    if rng.random() < 0.5:
        a = (a * mod.p ** int(rng.integers(0, mod.a))) % mod.q
    m = ZMatrix(a, mod)
    ker = kernel(m)
    nullity = (span_length(m) + span_length(ker)) == cols * mod.a and not np.any((a @ ker.data.T) % mod.q)
    h = howell_form(m)
    idempotent = howell_form(h) == h
    x0 = rng.integers(0, mod.q, size=cols)
    b = (a @ x0) % mod.q
    x1 = solve(m, b)
    x2 = solve(ZMatrix(a.copy(), mod), b.copy())
    determined = (
        x1 is not None
        and x2 is not None
        and np.array_equal(x1, x2)
        and np.array_equal((a @ x1) % mod.q, b)
    )
    return bool(nullity), bool(idempotent), bool(determined)


# instance-level suite


def control_check(sys: StarkSystem, i: int) -> Check:
    inst = sys.instance
    lhs = ideal_I(sys, i)
    rhs = fitting_ideal(inst.dual_selmer_dual(()), i)
    if lhs == rhs:
        return Check(f"control[i={i}]", True)
    subset = None
    if i <= inst.N:
        for m in inst.subsets(i):
            if not sys.value_ideal(m) <= rhs:
                subset = subset_key(inst, m)
                break
    return Check(f"control[i={i}]", False, {
        "i": i,
        "subset": subset,
        "ideal_I": ideal_to_json(lhs),
        "fitting": ideal_to_json(rhs),
    })


def _listing(inst, subsets) -> list[str]:
    return [subset_key(inst, m) for m in subsets]


def instance_checks(sys: StarkSystem, max_i: int | None = None, seed: int = 0,
                    exhaustive_orderings: int = 4) -> list[Check]:
    """The full property suite on one system."""
    inst = sys.instance
    spec = inst.spec
    rng = np.random.default_rng(seed)
    max_i = inst.N if max_i is None else max_i
    out: list[Check] = []

    bad = consistency_defects(sys)
    out.append(Check("consistency", not bad, {"subsets": _listing(inst, bad)} if bad else None))

    bad = transition_defects(sys)
    out.append(Check("transition", not bad, {
        "pairs": [{"n": subset_key(inst, b["n"]), "m": subset_key(inst, b["m"])} for b in bad[:5]]
    } if bad else None))

    for i in range(max_i + 1):
        out.append(control_check(sys, i))

    profile = [ideal_I(sys, i) for i in range(inst.N + 1)]
    monotone = all(profile[i] <= profile[i + 1] for i in range(inst.N))
    out.append(Check("monotone", monotone))

    cores = core_vertices(inst)
    upward = all(n in cores for m in cores for n in inst.subsets() if set(m) <= set(n))
    out.append(Check("core_upward", upward and inst.top in cores))
    failed = [m for m in cores if not regenerate_from(sys, m).ok]
    out.append(Check("core", not failed, {"vertices": _listing(inst, failed)} if failed else None))

    if inst.N <= exhaustive_orderings:
        count, bad = ordering_defects(sys)
        out.append(Check("ordering", not bad, {
            "chains": count,
            "failures": [{"n": subset_key(inst, b["n"]), "m": subset_key(inst, b["m"]),
                          "order": [inst.primes[q] for q in b["order"]]} for b in bad[:5]],
        } if bad else None))

    bad = sign_defects(sys)
    out.append(Check("sign", not bad, {
        "pairs": [{"n": subset_key(inst, b["n"]), "m": subset_key(inst, b["m"])} for b in bad[:5]]
    } if bad else None))

    bad = poitou_tate_defects(inst)
    out.append(Check("poitou_tate", not bad, {"pairs": [[subset_key(inst, m), subset_key(inst, n)] for m, n in bad[:5]]}
                     if bad else None))
    bad = core_rank_defects(inst)
    out.append(Check("core_rank", not bad, {"subsets": _listing(inst, bad)} if bad else None))

    for target in quotient_specs(spec):
        if target == spec:
            continue
        bad = reduction_defects(sys, QuotientMap(spec, target))
        out.append(Check(f"reduction[{target}]", not bad, {"defects": len(bad)} if bad else None))

    out.append(_theta_check(sys))

    units = spec.random_unit(rng, (inst.N,)) if inst.N else np.zeros((0, spec.n), dtype=np.int64)
    rescaled = stark_from_top(rescaled_trivialisation(inst, units), sys.unit)
    same = all(ideal_I(rescaled, i) == profile[i] for i in range(inst.N + 1))
    out.append(Check("trivialisation", same))

    if spec.d == 0:
        out.extend(_comparison_checks(sys))
    return out


def _theta_check(sys: StarkSystem) -> Check:
    inst = sys.instance
    free = max_free_rank(inst)
    if free >= inst.rank + 1:
        vanishes = not sys.classes[()].any()
        return Check("theta", vanishes, None if vanishes else {"free_rank": free, "reason": "eps_empty is non-zero"})
    if free < inst.rank:
        return Check("theta", True)
    c = find_free_submodule(inst, inst.rank)
    report = theta(sys, c)
    if report.ok:
        return Check("theta", True)
    return Check("theta", False, {
        "equation": report.equation,
        "fitting": report.fitting,
        "unique": report.unique,
        "theta": report.theta.tolist(),
    })


def _comparison_checks(sys: StarkSystem) -> list[Check]:
    inst = sys.instance
    ws = wedge_system_from_top(inst, sys.unit)
    out = [Check("comparison", comparison_matches(ws))]
    bad = intertwining_defects(ws)
    out.append(Check("intertwining", not bad, {
        "steps": [{"n": subset_key(inst, b["n"]), "q": inst.primes[b["q"]]} for b in bad[:5]]
    } if bad else None))
    bad = depth_defects(ws)
    out.append(Check("depth", not bad, {"t": [b["t"] for b in bad]} if bad else None))
    return out


def failure_witness(sys: StarkSystem, checks: list[Check]) -> dict | None:
    """A replayable record: the instance with its classes and the failed checks."""
    failed = [c.to_json() for c in checks if not c.ok]
    if not failed:
        return None
    out = system_to_json(sys)
    out["failed_checks"] = failed
    return out


__all__ = [
    "Check",
    "chain_sign_holds",
    "control_check",
    "dual_exactness_holds",
    "failure_witness",
    "free_wedge_in_value_ideal",
    "instance_checks",
    "key_sequence_holds",
    "matlis_holds",
    "naturality_holds",
    "substrate_case",
    "value_ideal_in_coefficients",
]
