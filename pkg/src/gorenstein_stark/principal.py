"""Wedge-form Stark systems over principal artinian rings and the comparison map.

Over R = Z/p^a the classes can be kept as honest wedges y_m in
wedge^(r+|m|) H_m, with transitions given by the derivation h-hat.  The
comparison C_m = (-1)^mu(r+|m|) l_m turns such a family into a bidual
system.  A wedge y_m is stored by its coefficients on the sorted generator
wedges of H_m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .exterior import contract, exterior_power, lift_through, mr_derivation, mu, wedge_order
from .fpmod import ModuleMap, PresentedModule
from .minors import combos, compound
from .ring import RingSpec, m_adic_content, matmul
from .stark import (
    SelmerInstance,
    StarkSystem,
    Subset,
    ideal_I,
    phi_tilde_ambient,
    position_sign,
    stark_from_top,
)


def _require_principal(spec: RingSpec) -> None:
    if spec.d != 0:
        raise ValueError("the wedge-form comparison needs a principal artinian ring (d = 0)")


def inclusion(inst: SelmerInstance, m: Subset, n: Subset) -> ModuleMap:
    """H_m -> H_n in generator coordinates, for m contained in n."""
    h_m, emb_m = inst.relaxed_module(m)
    h_n, emb_n = inst.relaxed_module(n)
    coords = lift_through(emb_n, np.transpose(emb_m.matrix, (1, 0, 2)))
    return ModuleMap(h_m, h_n, np.transpose(coords, (1, 0, 2)), check=False)


def localisation(inst: SelmerInstance, n: Subset, q: int) -> ModuleMap:
    """H_n -> W_q = R."""
    h_n, emb_n = inst.relaxed_module(n)
    row = matmul(inst.spec, inst.loc[q][None], emb_n.matrix)
    return ModuleMap(h_n, PresentedModule.free(inst.spec, 1), row, check=False)


def psi_step(inst: SelmerInstance, n: Subset, q: int, y) -> np.ndarray:
    """Psi: the wedge-form transition (-1)^(j-1) h-hat_q from n to n - q."""
    spec = inst.spec
    n = tuple(sorted(n))
    m = tuple(x for x in n if x != q)
    out = mr_derivation(inclusion(inst, m, n), localisation(inst, n, q), inst.degree(n), y)
    return out if position_sign(n, q) > 0 else (-out) % spec.q


@dataclass(eq=False)
class WedgeSystem:
    instance: SelmerInstance
    classes: dict[Subset, np.ndarray]
    unit: np.ndarray


def wedge_system_from_top(inst: SelmerInstance, unit=None) -> WedgeSystem:
    """y_top = unit * e_1 ^ ... ^ e_(r+N), pushed down by Psi, largest prime first."""
    spec = inst.spec
    _require_principal(spec)
    unit = spec.one() if unit is None else np.asarray(unit, dtype=np.int64) % spec.q
    classes = {inst.top: unit.reshape(1, spec.n).copy()}
    for size in range(inst.N - 1, -1, -1):
        for m in combos(inst.N, size):
            q = min(inst.outside(m))
            n = tuple(sorted(m + (q,)))
            classes[m] = psi_step(inst, n, q, classes[n])
    return WedgeSystem(inst, classes, unit)


def ambient_l(inst: SelmerInstance, m: Subset, y) -> np.ndarray:
    """l_m(y) evaluated on the coordinate wedges e_I* of R^(r+N)."""
    spec = inst.spec
    _, emb = inst.relaxed_module(m)
    s = inst.degree(m)
    table = compound(spec, emb.matrix, s)
    return contract(spec, y, np.transpose(table, (1, 0, 2)))


def comparison_C(ws: WedgeSystem) -> StarkSystem:
    """C_m = (-1)^mu(r+|m|) l_m applied classwise."""
    inst = ws.instance
    spec = inst.spec
    _require_principal(spec)
    classes = {}
    for m, y in ws.classes.items():
        vals = ambient_l(inst, m, y)
        classes[m] = vals if mu(inst.degree(m)) % 2 == 0 else (-vals) % spec.q
    top_sign = 1 if mu(inst.T) % 2 == 0 else -1
    return StarkSystem(inst, classes, (top_sign * ws.unit) % spec.q)


def intertwining_defects(ws: WedgeSystem) -> list[dict]:
    """One-step pairs where l(h-hat y) differs from (-1)^(s-1) Phi-tilde(l(y))."""
    inst = ws.instance
    spec = inst.spec
    bad = []
    for n in inst.subsets():
        y = ws.classes[n]
        s = inst.degree(n)
        ly = ambient_l(inst, n, y)
        for q in n:
            m = tuple(x for x in n if x != q)
            hy = psi_step(inst, n, q, y)
            if position_sign(n, q) < 0:
                hy = (-hy) % spec.q
            lhs = ambient_l(inst, m, hy)
            rhs = phi_tilde_ambient(inst, n, q, ly)
            if (s - 1) % 2:
                rhs = (-rhs) % spec.q
            if not np.array_equal(lhs, rhs):
                bad.append({"n": n, "q": q})
    return bad


def comparison_matches(ws: WedgeSystem) -> bool:
    """C(y) agrees with the bidual system built from the matching top unit."""
    conv = comparison_C(ws)
    ref = stark_from_top(ws.instance, conv.unit)
    return conv.equals(ref)


def partial_phi(ws: WedgeSystem, t: int) -> int | float:
    """min over |m| = t of the largest c with y_m in m^c wedge H_m."""
    inst = ws.instance
    spec = inst.spec
    best: int | float = math.inf
    for m in inst.subsets(t):
        h_m, _ = inst.relaxed_module(m)
        wedge = exterior_power(h_m, inst.degree(m))
        best = min(best, wedge_order(spec, wedge, ws.classes[m]))
    return best


def depth_defects(ws: WedgeSystem) -> list[dict]:
    """t where partial_phi(t) differs from the m-adic content of I_t(C(y))."""
    conv = comparison_C(ws)
    bad = []
    for t in range(ws.instance.N + 1):
        lhs = partial_phi(ws, t)
        rhs = m_adic_content(ideal_I(conv, t))
        if lhs != rhs:
            bad.append({"t": t, "partial_phi": lhs, "content": rhs})
    return bad


__all__ = [
    "WedgeSystem",
    "ambient_l",
    "comparison_C",
    "comparison_matches",
    "depth_defects",
    "intertwining_defects",
    "partial_phi",
    "psi_step",
    "wedge_system_from_top",
]
