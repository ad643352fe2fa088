"""Exterior powers, exterior biduals and the transition maps between them.

An element of the r-th exterior bidual of M, Hom(wedge^r M*, R), is stored by
its values on the sorted r-fold wedges of a generating set of M*.  Those
values must kill every relation of wedge^r M*, which is checked when the
element is built.  Maps into or out of biduals are then evaluated pointwise:
to evaluate on a wedge of arbitrary functionals, write them in dual
coordinates and contract the stored values against the compound matrix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .fpmod import DualData, Lattice, ModuleMap, PresentedModule, cokernel, dual, kernel_of_map
from .minors import combo_index, combos, compound, wedge_sign, wedge_vectors
from .ring import IdealRep, RingSpec, blow, maximal_ideal_power, mul, stack_of
from .zmod import Solver, ZMatrix


def contract(spec: RingSpec, values, table) -> np.ndarray:
    """sum_T values[T] * table[T, ...] over the leading axis."""
    values = np.asarray(values, dtype=np.int64)
    table = np.asarray(table, dtype=np.int64)
    if table.shape[0] == 0:
        return np.zeros(table.shape[1:], dtype=np.int64)
    shape = (values.shape[0],) + (1,) * (table.ndim - 2) + (spec.n,)
    return mul(spec, values.reshape(shape), table).sum(axis=0) % spec.q


@dataclass(frozen=True, eq=False)
class WedgePower:
    base: PresentedModule
    degree: int
    presentation: PresentedModule

    @property
    def subsets(self) -> tuple[tuple[int, ...], ...]:
        return combos(self.base.gens, self.degree)


def wedge_relations(spec: RingSpec, t: int, r: int, relations) -> np.ndarray:
    """Columns omega ^ c for (r-1)-subsets omega and relation columns c."""
    relations = np.asarray(relations, dtype=np.int64)
    s = relations.shape[1] if relations.ndim == 3 else 0
    if r == 0 or r > t or s == 0:
        return np.zeros((len(combos(t, r)), 0, spec.n), dtype=np.int64)
    index = combo_index(t, r)
    omegas = combos(t, r - 1)
    out = np.zeros((len(index), len(omegas) * s, spec.n), dtype=np.int64)
    for w, omega in enumerate(omegas):
        for j in range(t):
            if j in omega:
                continue
            target = index[tuple(sorted(omega + (j,)))]
            sign = wedge_sign(omega, j)
            out[target, w * s:(w + 1) * s] += sign * relations[j]
    return out % spec.q


def exterior_power(m: PresentedModule, r: int) -> WedgePower:
    spec = m.spec
    if r < 0:
        raise ValueError("negative exterior degree")
    k = len(combos(m.gens, r))
    rel = wedge_relations(spec, m.gens, r, m.relations)
    return WedgePower(m, r, PresentedModule(spec, k, rel))


@dataclass(frozen=True, eq=False)
class BidualElement:
    """A functional on wedge^k M*, given on sorted wedges of the dual generators."""

    dual: DualData
    degree: int
    values: np.ndarray
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        spec = self.dual.spec
        count = len(combos(self.dual.u, self.degree))
        vals = np.asarray(self.values, dtype=np.int64).reshape(count, spec.n) % spec.q
        object.__setattr__(self, "values", vals)
        if self.validate and not self.is_consistent():
            raise ValueError("values do not vanish on the relations of the wedge power")

    @property
    def spec(self) -> RingSpec:
        return self.dual.spec

    @property
    def module(self) -> PresentedModule:
        return self.dual.module

    def is_consistent(self) -> bool:
        rel = wedge_relations(self.spec, self.dual.u, self.degree, self.dual.presented.relations)
        if rel.shape[1] == 0:
            return True
        return not contract(self.spec, self.values, rel).any()

    def value_ideal(self) -> IdealRep:
        return IdealRep.from_generators(self.spec, self.values)

    def is_zero(self) -> bool:
        return not self.values.any()

    def evaluate(self, coords) -> np.ndarray:
        """Value on phi_1 ^ ... ^ phi_k where coords (u, k, n) holds their dual coordinates."""
        coords = np.asarray(coords, dtype=np.int64)
        return contract(self.spec, self.values, compound(self.spec, coords, self.degree))[0]

    def transport(self, coords, target: DualData) -> "BidualElement":
        """The same functional, read on the generators of another presentation of M*.

        ``coords`` (u, u', n) gives each generator of ``target`` in the
        coordinates of this element's dual.
        """
        table = compound(self.spec, coords, self.degree)
        return BidualElement(target, self.degree, contract(self.spec, self.values, table))

    def scale(self, c) -> "BidualElement":
        return BidualElement(self.dual, self.degree, mul(self.spec, self.values, c), validate=False)

    def __add__(self, other: "BidualElement") -> "BidualElement":
        return BidualElement(self.dual, self.degree, self.values + other.values, validate=False)

    def __neg__(self) -> "BidualElement":
        return BidualElement(self.dual, self.degree, -self.values, validate=False)

    def equals(self, other: "BidualElement") -> bool:
        return self.degree == other.degree and np.array_equal(self.values, other.values)


def canonical_l(m: PresentedModule, r: int, x, dual_data: DualData | None = None) -> BidualElement:
    """l_M(x) for x in wedge^r M given over sorted generator wedges, shape (C(t, r), n).

    The value on f_1 ^ ... ^ f_r of m_1 ^ ... ^ m_r is det(f_i(m_j)).
    """
    d = dual_data or dual(m)
    spec = m.spec
    x = np.asarray(x, dtype=np.int64).reshape(len(combos(m.gens, r)), spec.n)
    table = compound(spec, d.funcs, r)
    # table[S, I] = det(f_S evaluated on e_I); l(x)_S = sum_I x_I table[S, I]
    vals = contract(spec, x, np.transpose(table, (1, 0, 2)))
    return BidualElement(d, r, vals)


def canonical_l_vectors(m: PresentedModule, vectors, dual_data: DualData | None = None) -> BidualElement:
    """l_M(v_1 ^ ... ^ v_r) for vectors (t, r, n) given on the generators of M."""
    vectors = np.asarray(vectors, dtype=np.int64)
    r = vectors.shape[1]
    return canonical_l(m, r, wedge_vectors(m.spec, vectors), dual_data)


def bidual(m: PresentedModule, r: int, dual_data: DualData | None = None) -> DualData:
    """(wedge^r M*)* with its generating functionals on generator wedges of M*."""
    d = dual_data or dual(m)
    return dual(exterior_power(d.presented, r).presentation)


def random_bidual(rng: np.random.Generator, d: DualData, r: int) -> BidualElement:
    """A random element of the bidual as an R-combination of its generators."""
    bd = dual(exterior_power(d.presented, r).presentation)
    spec = d.spec
    count = len(combos(d.u, r))
    if bd.u == 0:
        return BidualElement(d, r, np.zeros((count, spec.n), dtype=np.int64))
    coeffs = spec.random(rng, (bd.u,))
    vals = contract(spec, coeffs, bd.funcs.reshape(bd.u, count, spec.n))
    return BidualElement(d, r, vals)


# lifting through a presentation


def lift_through(f: ModuleMap, vecs) -> np.ndarray:
    """Preimages under f: columns c with f(c) = v in the target, vecs of shape (k, t_tgt, n)."""
    spec = f.spec
    vecs = stack_of(vecs, f.target.gens, spec.n)
    mat = np.concatenate([f.matrix, f.target.relations], axis=1)
    solver = Solver(ZMatrix(blow(spec, mat), spec.mod))
    out = []
    for v in vecs:
        x = solver.solve(v.reshape(-1))
        if x is None:
            raise ValueError("vector is not in the image")
        out.append(x.reshape(-1, spec.n)[: f.source.gens])
    return np.array(out, dtype=np.int64).reshape(len(out), f.source.gens, spec.n)


def check_exact(h: ModuleMap, g: ModuleMap) -> bool:
    """F -h-> M -g-> N -> 0 is exact."""
    if not g.compose(h).is_zero():
        return False
    if cokernel(g).length != 0:
        return False
    return cokernel(h).length == g.target.length


def lemma_base_table(h: ModuleMap, g: ModuleMap, r: int, lifts=None, check: bool = True) -> np.ndarray:
    """Matrix of the map wedge^{r-s} N (x) det F -> wedge^r M.

    Column J holds the coordinates of (lift of e_J) ^ h(e_1) ^ ... ^ h(e_s)
    over the sorted r-wedges of M's generators; det F is trivialised by
    e_1 ^ ... ^ e_s.
    """
    spec = h.spec
    s = h.source.gens
    if not h.source.is_free():
        raise ValueError("the first term must be free")
    if s > r:
        raise ValueError("rank of F exceeds the degree")
    if check and not check_exact(h, g):
        raise ValueError("sequence is not exact")
    tn = g.target.gens
    if lifts is None:
        eye = np.zeros((tn, tn, spec.n), dtype=np.int64)
        eye[np.arange(tn), np.arange(tn), 0] = 1
        lifts = np.transpose(lift_through(g, eye), (1, 0, 2)) if tn else np.zeros((g.source.gens, 0, spec.n))
    lifts = np.asarray(lifts, dtype=np.int64).reshape(g.source.gens, tn, spec.n)
    full = np.concatenate([lifts, h.matrix], axis=1)
    tail = tuple(range(tn, tn + s))
    cols = [sub + tail for sub in combos(tn, r - s)]
    return compound(spec, full, r, cols)


def lemma_base_map(h: ModuleMap, g: ModuleMap, r: int, x, lifts=None, check: bool = True) -> np.ndarray:
    """phi(x) for x in wedge^{r-s} N (x) det F, x of shape (C(t_N, r-s), n)."""
    table = lemma_base_table(h, g, r, lifts, check)
    return contract(h.spec, x, np.transpose(table, (1, 0, 2)))


# cartesian squares and Phi


@dataclass(eq=False)
class CartesianSquare:
    """M1 = preimage of F1 under G: M2 -> F2 = R^s2, with F1 the first s1 coordinates.

    The splitting F2 = F1 + C is the coordinate one, so C is spanned by the
    last s2 - s1 basis vectors.
    """

    m2: PresentedModule
    g: np.ndarray
    s1: int
    m1: PresentedModule | None = None
    iota: ModuleMap | None = None

    def __post_init__(self):
        spec = self.m2.spec
        self.g = stack_of(self.g, self.m2.gens, spec.n) % spec.q
        if not 0 <= self.s1 <= self.s2:
            raise ValueError("need 0 <= s1 <= s2")
        ModuleMap(self.m2, PresentedModule.free(spec, self.s2), self.g)
        if self.m1 is None:
            self.m1, self.iota = kernel_of_map(self.tail_map)

    @property
    def spec(self) -> RingSpec:
        return self.m2.spec

    @property
    def s2(self) -> int:
        return self.g.shape[0]

    @property
    def tail_map(self) -> ModuleMap:
        """M2 -> F2/F1."""
        return ModuleMap(self.m2, PresentedModule.free(self.spec, self.s2 - self.s1), self.g[self.s1:], check=False)

    def verify(self) -> bool:
        """iota is injective with image exactly the preimage of F1."""
        k_iota, _ = kernel_of_map(self.iota)
        if k_iota.length != 0:
            return False
        if not self.tail_map.compose(self.iota).is_zero():
            return False
        k_tail, _ = kernel_of_map(self.tail_map)
        return k_tail.length == self.m1.length


def _restriction_coords(iota: ModuleMap, d2: DualData, d1: DualData) -> np.ndarray:
    """(u1, u2, n): the restriction of each M2* generator in M1* coordinates."""
    spec = iota.spec
    pulled = mul(spec, d2.funcs[:, :, None, :], iota.matrix[None, :, :, :]).sum(axis=1) % spec.q
    cols = [d1.express(f) for f in pulled]
    if not cols:
        return np.zeros((d1.u, 0, spec.n), dtype=np.int64)
    return np.stack(cols, axis=1)


def _restriction_lifts(iota: ModuleMap, d2: DualData, d1: DualData) -> np.ndarray:
    """(u2, u1, n): for each M1* generator, M2* coordinates of some extension."""
    spec = iota.spec
    pulled = mul(spec, d2.funcs[:, :, None, :], iota.matrix[None, :, :, :]).sum(axis=1) % spec.q
    if d2.u == 0:
        return np.zeros((0, d1.u, spec.n), dtype=np.int64)
    mat = np.transpose(pulled, (1, 0, 2))
    solver = Solver(ZMatrix(blow(spec, mat), spec.mod))
    cols = []
    for f in d1.funcs:
        x = solver.solve(f.reshape(-1))
        if x is None:
            raise ValueError("restriction to the submodule is not surjective on duals")
        cols.append(x.reshape(d2.u, spec.n))
    if not cols:
        return np.zeros((d2.u, 0, spec.n), dtype=np.int64)
    return np.stack(cols, axis=1)


def phi_tilde(square: CartesianSquare, eps: BidualElement, dual1: DualData | None = None,
              lifts=None, check: bool = False) -> BidualElement:
    """The dual of the base wedge map for (F2/F1)* -> M2* -> M1* -> 0.

    det((F2/F1)*) is trivialised by the dual basis of the last s2 - s1
    coordinates, in increasing order.
    """
    spec = square.spec
    d2 = eps.dual
    d1 = dual1 or dual(square.m1)
    delta = square.s2 - square.s1
    k = eps.degree - delta
    if k < 0:
        raise ValueError("degree is smaller than the rank difference")
    h_cols = [d2.express(row) for row in square.g[square.s1:]]
    h_mat = np.stack(h_cols, axis=1) if h_cols else np.zeros((d2.u, 0, spec.n), dtype=np.int64)
    h = ModuleMap(PresentedModule.free(spec, delta), d2.presented, h_mat, check=False)
    g = ModuleMap(d2.presented, d1.presented, _restriction_coords(square.iota, d2, d1), check=False)
    if lifts is None:
        lifts = _restriction_lifts(square.iota, d2, d1)
    table = lemma_base_table(h, g, eps.degree, lifts=lifts, check=check)
    return BidualElement(d1, k, contract(spec, eps.values, table))


def phi_sign(s1: int, s2: int) -> int:
    """det F2* = (-1)^(s1 (s2 - s1)) (det (F2/F1)*) ^ (det F1*) under the a ^ b~ convention."""
    return -1 if (s1 * (s2 - s1)) % 2 else 1


def phi_map(square: CartesianSquare, eps: BidualElement, dual1: DualData | None = None,
            lifts=None, check: bool = False) -> BidualElement:
    """Phi on eps (x) (e_1* ^ ... ^ e_s2*), returned as the coefficient of e_1* ^ ... ^ e_s1*."""
    out = phi_tilde(square, eps, dual1, lifts, check)
    if phi_sign(square.s1, square.s2) < 0:
        out = -out
    return out


def bidual_functor(f: ModuleMap, eps: BidualElement, dual_target: DualData | None = None) -> BidualElement:
    """The map induced by f: M -> M' on degree-k biduals."""
    spec = f.spec
    dt = dual_target or dual(f.target)
    d = eps.dual
    cols = []
    for gfun in dt.funcs:
        pulled = mul(spec, gfun[:, None, :], f.matrix).sum(axis=0) % spec.q
        cols.append(d.express(pulled))
    coords = np.stack(cols, axis=1) if cols else np.zeros((d.u, 0, spec.n), dtype=np.int64)
    return eps.transport(coords, dt)


# the derivation of the principal case


def mr_derivation(emb: ModuleMap, h: ModuleMap, s: int, x) -> np.ndarray:
    """h-hat: wedge^s M -> wedge^(s-1) N (x) F for 0 -> N -> M -h-> F = R.

    Only principal artinian bases (d = 0) are supported.  On a wedge of
    generators the value is sum_i (-1)^(i-1) (omit m_i) (x) h(m_i), pushed
    into wedge^(s-1) N by splitting off a generator m0 whose image has the
    least valuation: every m_i = a_i m0 + n_i with n_i in N.
    """
    spec = h.spec
    if spec.d != 0:
        raise ValueError("the derivation is implemented only for principal artinian rings")
    if h.target.gens != 1 or not h.target.is_free():
        raise ValueError("h must land in a free module of rank one")
    if s < 1:
        raise ValueError("s must be positive")
    t = h.source.gens
    tn = emb.source.gens
    x = np.asarray(x, dtype=np.int64).reshape(len(combos(t, s)), spec.n) % spec.q
    out = np.zeros((len(combos(tn, s - 1)), spec.n), dtype=np.int64)
    hv = h.matrix[0, :, 0] % spec.q
    if not hv.any():
        return out
    vals = spec.mod.valuation(hv)
    i0 = int(np.argmin(vals))
    v0 = int(vals[i0])
    u0 = int(hv[i0]) // spec.p**v0
    inv0 = pow(u0, -1, spec.q)
    # h(m_i) = a_i h(m0) with a_i = (h(m_i) / p^v0) / u0
    a = ((hv // spec.p**v0) * inv0) % spec.q
    eye = np.zeros((t, t, 1), dtype=np.int64)
    eye[np.arange(t), np.arange(t), 0] = 1
    rest = eye.copy()
    rest[i0, :, 0] = (rest[i0, :, 0] - a) % spec.q
    # column i of rest is m_i - a_i m0, which lies in N
    ncoords = lift_through(emb, np.transpose(rest, (1, 0, 2)))
    nmat = np.transpose(ncoords, (1, 0, 2))
    wedges = compound(spec, nmat, s - 1)
    index = combo_index(t, s - 1)
    hm0 = int(hv[i0])
    for j, J in enumerate(combos(t, s)):
        c = int(x[j, 0])
        if c == 0:
            continue
        for pos, i in enumerate(J):
            coeff = (c * int(a[i]) * hm0 * (-1) ** pos) % spec.q
            if coeff:
                sub = index[J[:pos] + J[pos + 1:]]
                out[:, 0] = (out[:, 0] + coeff * wedges[:, sub, 0]) % spec.q
    return out


def mu(k: int) -> int:
    """sum_{i=1}^{k-1} i."""
    return k * (k - 1) // 2


def wedge_membership(spec: RingSpec, wedge: WedgePower, x, ideal: IdealRep) -> bool:
    """Whether x lies in ideal * wedge^s M."""
    k = wedge.presentation.gens
    n = spec.n
    rows = []
    for b in ideal.basis.data:
        for i in range(k):
            v = np.zeros((k, n), dtype=np.int64)
            v[i] = b
            rows.append(v.reshape(-1))
    lat = Lattice(spec, k, stack_of(rows, k * n)) + wedge.presentation.relation_lattice
    return bool(lat.contains(np.asarray(x).reshape(1, -1))[0])


def wedge_order(spec: RingSpec, wedge: WedgePower, x) -> int | float:
    """Largest c with x in m_R^c wedge^s M; math.inf when x vanishes."""
    if wedge.presentation.equal_elements(x, np.zeros_like(x)):
        return math.inf
    c = 0
    while wedge_membership(spec, wedge, x, maximal_ideal_power(spec, c + 1)):
        c += 1
    return c


__all__ = [
    "BidualElement",
    "CartesianSquare",
    "WedgePower",
    "bidual",
    "bidual_functor",
    "canonical_l",
    "canonical_l_vectors",
    "contract",
    "exterior_power",
    "lemma_base_map",
    "lemma_base_table",
    "lift_through",
    "mr_derivation",
    "mu",
    "phi_map",
    "phi_sign",
    "phi_tilde",
    "random_bidual",
    "wedge_order",
]
