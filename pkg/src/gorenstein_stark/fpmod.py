"""Finitely presented modules over the truncated polynomial rings.

A module is R^t modulo the R-span of relation columns.  Every question about
it is answered on the Z/p^a lattice underneath: an R-submodule of R^t is the
same thing as a Z/p^a-submodule of (Z/p^a)^(t*n) stable under the variables,
and the relation lattice of a presentation is spanned by the blown-up
relation columns.

Membership in a lattice is tested against its annihilator: Z/p^a is
self-injective, so a vector lies in L exactly when every row of kernel(L)
pairs to zero with it.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .minors import compound
from .ring import IdealRep, QuotientMap, RingSpec, blow, is_unit, matmul, mul, stack_of
from .zmod import Solver, ZMatrix, kernel, span_length


def _flat(spec: RingSpec, vecs) -> np.ndarray:
    """(k, t, n) ring vectors -> (k, t*n) coefficient rows."""
    vecs = np.asarray(vecs, dtype=np.int64)
    return vecs.reshape(vecs.shape[0], -1) % spec.q


def _unflat(spec: RingSpec, rows, t: int) -> np.ndarray:
    rows = np.asarray(rows, dtype=np.int64)
    return rows.reshape(rows.shape[0], t, spec.n)


class Lattice:
    """An R-submodule of R^t held as a Z/p^a lattice with its annihilator."""

    def __init__(self, spec: RingSpec, t: int, rows):
        self.spec = spec
        self.t = t
        rows = np.asarray(rows, dtype=np.int64)
        rows = rows.reshape(-1, t * spec.n) if t else np.zeros((0, 0), dtype=np.int64)
        self.basis = ZMatrix(rows, spec.mod, cols=t * spec.n).howell()

    @classmethod
    def span(cls, spec: RingSpec, t: int, vecs) -> "Lattice":
        """R-span of vectors given with shape (k, t, n)."""
        if t == 0:
            return cls(spec, 0, ())
        vecs = np.asarray(vecs, dtype=np.int64).reshape(-1, t, spec.n)
        if vecs.shape[0] == 0:
            return cls(spec, t, np.zeros((0, t * spec.n), dtype=np.int64))
        # columns of the blow-up of the t x k matrix are all x^b v_j
        mat = np.transpose(vecs, (1, 0, 2))
        return cls(spec, t, blow(spec, mat).T)

    @cached_property
    def annihilator(self) -> np.ndarray:
        return kernel(self.basis).data

    @property
    def length(self) -> int:
        return span_length(self.basis)

    def contains(self, vecs) -> np.ndarray:
        """Membership for each of a stack of vectors (k, t, n) or (k, t*n)."""
        flat = stack_of(vecs, self.t * self.spec.n)
        if self.annihilator.shape[0] == 0:
            return np.ones(flat.shape[0], dtype=bool)
        return ~np.any((self.annihilator @ flat.T) % self.spec.q, axis=0)

    def contains_all(self, vecs) -> bool:
        return bool(np.all(self.contains(vecs)))

    def __add__(self, other: "Lattice") -> "Lattice":
        return Lattice(self.spec, self.t, np.vstack([self.basis.data, other.basis.data]))

    def __eq__(self, other):
        if not isinstance(other, Lattice):
            return NotImplemented
        return self.t == other.t and self.basis == other.basis

    def maximal_multiple(self) -> "Lattice":
        """m_R times this lattice."""
        vecs = _unflat(self.spec, self.basis.data, self.t)
        return Lattice.span(self.spec, self.t, maximal_multiples(self.spec, vecs))


def maximal_multiples(spec: RingSpec, vecs) -> np.ndarray:
    vecs = np.asarray(vecs, dtype=np.int64)
    out = [(spec.p * vecs) % spec.q]
    for k in range(spec.d):
        out.append(mul(spec, vecs, spec.var(k)))
    return np.concatenate(out, axis=0)


def minimal_generators(spec: RingSpec, t: int, lattice_rows, modulo: Lattice | None = None) -> np.ndarray:
    """A minimal R-generating set of (L + modulo) / modulo.

    ``lattice_rows`` span L over Z/p^a.  Candidates are kept greedily when
    they are independent modulo m_R * L + modulo + (already chosen), which by
    Nakayama yields a minimal generating set.
    """
    if t == 0:
        return np.zeros((0, 0, spec.n), dtype=np.int64)
    rows = np.asarray(lattice_rows, dtype=np.int64).reshape(-1, t * spec.n)
    full = Lattice(spec, t, rows)
    base = full.maximal_multiple()
    if modulo is not None:
        base = base + modulo
    chosen: list[np.ndarray] = []
    current = base
    for row in full.basis.data:
        if current.contains(row[None, :])[0]:
            continue
        chosen.append(row)
        current = current + Lattice.span(spec, t, row.reshape(1, t, spec.n))
    if not chosen:
        return np.zeros((0, t, spec.n), dtype=np.int64)
    return _unflat(spec, np.array(chosen), t)


@dataclass(frozen=True, eq=False)
class PresentedModule:
    """coker(R^s -> R^t); ``relations`` has shape (t, s, n)."""

    spec: RingSpec
    gens: int
    relations: np.ndarray

    def __post_init__(self):
        rel = np.asarray(self.relations, dtype=np.int64)
        if rel.size == 0:
            rel = rel.reshape(self.gens, 0 if rel.ndim < 2 else rel.shape[1], self.spec.n)
        if rel.ndim != 3 or rel.shape[0] != self.gens or rel.shape[2] != self.spec.n:
            raise ValueError(f"relations must have shape ({self.gens}, s, {self.spec.n})")
        object.__setattr__(self, "relations", rel % self.spec.q)

    @classmethod
    def free(cls, spec: RingSpec, t: int) -> "PresentedModule":
        return cls(spec, t, np.zeros((t, 0, spec.n), dtype=np.int64))

    @classmethod
    def cyclic(cls, spec: RingSpec, gens) -> "PresentedModule":
        """R / (gens)."""
        gens = np.asarray(gens, dtype=np.int64).reshape(-1, spec.n)
        return cls(spec, 1, gens[None, :, :])

    @property
    def nrel(self) -> int:
        return self.relations.shape[1]

    @cached_property
    def relation_lattice(self) -> Lattice:
        return Lattice.span(self.spec, self.gens, np.transpose(self.relations, (1, 0, 2)))

    @cached_property
    def length(self) -> int:
        return self.gens * self.spec.length - self.relation_lattice.length

    def is_zero(self) -> bool:
        return self.length == 0

    def is_free(self) -> bool:
        return self.relation_lattice.basis.rows == 0

    def equal_elements(self, u, v) -> bool:
        diff = (np.asarray(u) - np.asarray(v)) % self.spec.q
        return bool(self.relation_lattice.contains(diff[None])[0])

    def direct_sum(self, other: "PresentedModule") -> "PresentedModule":
        t1, s1 = self.gens, self.nrel
        t2, s2 = other.gens, other.nrel
        rel = np.zeros((t1 + t2, s1 + s2, self.spec.n), dtype=np.int64)
        rel[:t1, :s1] = self.relations
        rel[t1:, s1:] = other.relations
        return PresentedModule(self.spec, t1 + t2, rel)

    def __repr__(self):
        return f"PresentedModule({self.spec}, gens={self.gens}, rels={self.nrel}, length={self.length})"


@dataclass(frozen=True, eq=False)
class ModuleMap:
    """R-linear map given on generators; ``matrix`` has shape (t_tgt, t_src, n)."""

    source: PresentedModule
    target: PresentedModule
    matrix: np.ndarray
    check: bool = True

    def __post_init__(self):
        spec = self.source.spec
        if self.target.spec != spec:
            raise ValueError("ring spec mismatch")
        mat = np.asarray(self.matrix, dtype=np.int64).reshape(self.target.gens, self.source.gens, spec.n)
        object.__setattr__(self, "matrix", mat % spec.q)
        if self.check and not self.is_well_defined():
            raise ValueError("map does not respect source relations")

    @property
    def spec(self) -> RingSpec:
        return self.source.spec

    def is_well_defined(self) -> bool:
        if self.source.nrel == 0:
            return True
        img = matmul(self.spec, self.matrix, self.source.relations)
        return self.target.relation_lattice.contains_all(np.transpose(img, (1, 0, 2)))

    def apply(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64)
        return matmul(self.spec, self.matrix, v[:, None, :])[:, 0, :]

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """self o other."""
        return ModuleMap(other.source, self.target, matmul(self.spec, self.matrix, other.matrix), check=False)

    def is_zero(self) -> bool:
        return self.target.relation_lattice.contains_all(np.transpose(self.matrix, (1, 0, 2)))

    @classmethod
    def identity(cls, m: PresentedModule) -> "ModuleMap":
        eye = np.zeros((m.gens, m.gens, m.spec.n), dtype=np.int64)
        eye[np.arange(m.gens), np.arange(m.gens), 0] = 1
        return cls(m, m, eye, check=False)


def length(m: PresentedModule) -> int:
    return m.length


def cokernel(f: ModuleMap) -> PresentedModule:
    rel = np.concatenate([f.target.relations, f.matrix], axis=1)
    return PresentedModule(f.spec, f.target.gens, rel)


def image_lattice(f: ModuleMap) -> Lattice:
    """Preimage lattice in R^t_tgt of the image, i.e. im(f) + target relations."""
    cols = np.concatenate([f.target.relations, f.matrix], axis=1)
    return Lattice.span(f.spec, f.target.gens, np.transpose(cols, (1, 0, 2)))


def relation_module(spec: RingSpec, vectors, modulo: Lattice) -> np.ndarray:
    """Generators of {c in R^g : sum c_j v_j in modulo} for v of shape (t, g, n)."""
    vectors = np.asarray(vectors, dtype=np.int64)
    g = vectors.shape[1]
    if g == 0:
        return np.zeros((0, 0, spec.n), dtype=np.int64)
    big = blow(spec, vectors)
    ann = modulo.annihilator
    if ann.shape[0] == 0:
        rows = np.eye(g * spec.n, dtype=np.int64)
    else:
        rows = kernel(ZMatrix((ann @ big) % spec.q, spec.mod)).data
    return minimal_generators(spec, g, rows)


def kernel_of_map(f: ModuleMap) -> tuple[PresentedModule, ModuleMap]:
    """ker f with a minimal generating set, and its embedding into the source."""
    spec = f.spec
    t = f.source.gens
    ann = f.target.relation_lattice.annihilator
    big = blow(spec, f.matrix)
    if ann.shape[0] == 0:
        rows = np.eye(t * spec.n, dtype=np.int64)
    else:
        rows = kernel(ZMatrix((ann @ big) % spec.q, spec.mod, cols=t * spec.n)).data
    gens = minimal_generators(spec, t, rows, modulo=f.source.relation_lattice)
    g = gens.shape[0]
    emb = np.transpose(gens, (1, 0, 2)).reshape(t, g, spec.n)
    if g == 0:
        zero = PresentedModule.free(spec, 0)
        return zero, ModuleMap(zero, f.source, emb, check=False)
    rels = relation_module(spec, emb, f.source.relation_lattice)
    module = PresentedModule(spec, g, np.transpose(rels, (1, 0, 2)).reshape(g, -1, spec.n))
    return module, ModuleMap(module, f.source, emb, check=False)


def tensor_quotient(m: PresentedModule, pi: QuotientMap) -> PresentedModule:
    if pi.source != m.spec:
        raise ValueError("surjection source does not match the module ring")
    return PresentedModule(pi.target, m.gens, pi(m.relations))


def annihilator(m: PresentedModule) -> IdealRep:
    spec = m.spec
    n = spec.n
    ann = m.relation_lattice.annihilator
    if ann.shape[0] == 0 or m.gens == 0:
        return IdealRep.unit(spec)
    # r e_i lies in the relation lattice for every i; x^b r e_i follows
    blocks = [ann[:, i * n:(i + 1) * n] for i in range(m.gens)]
    rows = kernel(ZMatrix(np.vstack(blocks), spec.mod, cols=n)).data
    return IdealRep.from_generators(spec, rows)


def fitting_ideal(m: PresentedModule, i: int) -> IdealRep:
    """Ideal of (t - i)-minors of the relation matrix."""
    spec = m.spec
    k = m.gens - i
    if k <= 0:
        return IdealRep.unit(spec)
    if k > m.nrel:
        return IdealRep.zero(spec)
    minors = compound(spec, m.relations, k).reshape(-1, spec.n)
    if any(is_unit(spec, x) for x in minors):
        return IdealRep.unit(spec)
    return IdealRep.from_generators(spec, minors)


# duals


@dataclass(frozen=True, eq=False)
class DualData:
    """A presentation of M* by functionals.

    ``funcs`` has shape (u, t, n): funcs[j] lists the values of the j-th
    generating functional on the generators of M.  ``relations`` has shape
    (w, u, n): each row is a combination of the functionals that vanishes.
    """

    module: PresentedModule
    funcs: np.ndarray
    relations: np.ndarray

    @property
    def spec(self) -> RingSpec:
        return self.module.spec

    @property
    def u(self) -> int:
        return self.funcs.shape[0]

    @cached_property
    def presented(self) -> PresentedModule:
        if self.u == 0:
            return PresentedModule.free(self.spec, 0)
        rel = np.transpose(self.relations, (1, 0, 2)).reshape(self.u, -1, self.spec.n)
        return PresentedModule(self.spec, self.u, rel)

    @cached_property
    def _solver(self) -> Solver:
        # column j of the blown system is functional j as a vector in R^t
        mat = np.transpose(self.funcs, (1, 0, 2))
        return Solver(ZMatrix(blow(self.spec, mat), self.spec.mod))

    def express(self, func) -> np.ndarray:
        """Coordinates c (u, n) with sum c_j funcs[j] = func."""
        x = self._solver.solve(np.asarray(func, dtype=np.int64).reshape(-1))
        if x is None:
            raise ValueError("functional is not a combination of the dual generators")
        return x.reshape(self.u, self.spec.n)

    def evaluate(self, coords, v) -> np.ndarray:
        """Value of the functional with dual coordinates ``coords`` on v in R^t."""
        f = functional_from_coords(self, coords)
        return mul(self.spec, f, np.asarray(v)).sum(axis=0) % self.spec.q

    def check(self) -> bool:
        """Functionals kill relations and the listed relations hold."""
        spec = self.spec
        m = self.module
        if m.nrel:
            vals = matmul(spec, self.funcs, m.relations)
            if vals.any():
                return False
        if self.relations.shape[0] and self.u:
            combo = matmul(spec, self.relations, self.funcs.reshape(self.u, -1, spec.n))
            if combo.any():
                return False
        return True


def functional_from_coords(dual: DualData, coords) -> np.ndarray:
    coords = np.asarray(coords, dtype=np.int64)
    return mul(dual.spec, coords[:, None, :], dual.funcs).sum(axis=0) % dual.spec.q


def dual(m: PresentedModule) -> DualData:
    """Hom(M, R) with minimal generators and their relations."""
    spec = m.spec
    t = m.gens
    if t == 0:
        z = np.zeros((0, 0, spec.n), dtype=np.int64)
        return DualData(m, z, z)
    if m.nrel == 0:
        rows = np.eye(t * spec.n, dtype=np.int64)
    else:
        big = blow(spec, np.transpose(m.relations, (1, 0, 2)))
        rows = kernel(ZMatrix(big, spec.mod)).data
    funcs = minimal_generators(spec, t, rows)
    return dual_from_functionals(m, funcs)


def dual_from_functionals(m: PresentedModule, funcs) -> DualData:
    """DualData for a generating set of functionals supplied by the caller."""
    spec = m.spec
    funcs = stack_of(funcs, m.gens, spec.n)
    vecs = np.transpose(funcs, (1, 0, 2))
    rels = relation_module(spec, vecs, Lattice(spec, m.gens, np.zeros((0, m.gens * spec.n))))
    return DualData(m, funcs % spec.q, rels)


def dual_length(m: PresentedModule) -> int:
    return dual(m).presented.length


def double_dual_map(m: PresentedModule, d1: DualData | None = None, d2: DualData | None = None) -> ModuleMap:
    """The evaluation map M -> M** in the computed presentations."""
    d1 = d1 or dual(m)
    d2 = d2 or dual(d1.presented)
    spec = m.spec
    # generator e_i of M evaluates to the functional (f_j(e_i))_j on M*
    cols = []
    for i in range(m.gens):
        cols.append(d2.express(d1.funcs[:, i, :]))
    mat = np.stack(cols, axis=1) if cols else np.zeros((d2.u, 0, spec.n), dtype=np.int64)
    return ModuleMap(m, d2.presented, mat)


def is_isomorphism(f: ModuleMap) -> bool:
    if cokernel(f).length != 0:
        return False
    k, _ = kernel_of_map(f)
    return k.length == 0


def dual_map(f: ModuleMap, d_src: DualData, d_tgt: DualData) -> ModuleMap:
    """f*: N* -> M* in the given dual presentations."""
    spec = f.spec
    cols = []
    for j in range(d_tgt.u):
        # (g o f)(e_i) = sum_k g(e_k) f_{k,i}
        g = d_tgt.funcs[j]
        pulled = mul(spec, g[:, None, :], f.matrix).sum(axis=0) % spec.q
        cols.append(d_src.express(pulled))
    mat = np.stack(cols, axis=1) if cols else np.zeros((d_src.u, 0, spec.n), dtype=np.int64)
    return ModuleMap(d_tgt.presented, d_src.presented, mat)


def random_module(spec: RingSpec, rng: np.random.Generator, max_gens: int = 3, max_rels: int = 3,
                  nonunit: bool = True) -> PresentedModule:
    """A small random presentation; relation entries lie in m_R when ``nonunit``."""
    t = int(rng.integers(0, max_gens + 1))
    s = int(rng.integers(0, max_rels + 1))
    rel = spec.random(rng, (t, s), nonunit=nonunit) if t and s else np.zeros((t, s, spec.n), dtype=np.int64)
    return PresentedModule(spec, t, rel)


__all__ = [
    "Lattice",
    "PresentedModule",
    "ModuleMap",
    "DualData",
    "annihilator",
    "cokernel",
    "double_dual_map",
    "dual",
    "dual_from_functionals",
    "dual_map",
    "fitting_ideal",
    "is_isomorphism",
    "kernel_of_map",
    "length",
    "minimal_generators",
    "relation_module",
    "tensor_quotient",
]
