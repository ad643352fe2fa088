"""Truncated polynomial rings (Z/p^a)[x_1..x_d]/(x_1^e_1, ..., x_d^e_d).

Elements are coefficient vectors over the monomial basis in lexicographic
order, so the ring is a free Z/p^a-module of rank prod(e_i) and every
R-linear question can be blown up to a Z/p^a-linear one.  Arrays of ring
elements carry the coefficient axis last.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .zmod import Modulus, ZMatrix, kernel, solve, span_contains, span_length


@dataclass(frozen=True)
class RingSpec:
    p: int
    a: int
    exponents: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        Modulus(self.p, self.a)
        if any(e < 1 for e in self.exponents):
            raise ValueError(f"exponents must be positive, got {self.exponents}")

    @property
    def d(self) -> int:
        return len(self.exponents)

    @property
    def q(self) -> int:
        return self.p**self.a

    @property
    def mod(self) -> Modulus:
        return Modulus(self.p, self.a)

    @cached_property
    def monomials(self) -> tuple[tuple[int, ...], ...]:
        return tuple(itertools.product(*[range(e) for e in self.exponents]))

    @cached_property
    def index(self) -> dict[tuple[int, ...], int]:
        return {m: i for i, m in enumerate(self.monomials)}

    @property
    def n(self) -> int:
        return len(self.monomials)

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.array([sum(m) for m in self.monomials], dtype=np.int64)

    @property
    def length(self) -> int:
        """Length of R over itself, a * prod(e_i)."""
        return self.a * math.prod(self.exponents)

    @cached_property
    def mul_table(self) -> np.ndarray:
        """S[g, a, b] = 1 exactly when x^a * x^b = x^g."""
        n = self.n
        s = np.zeros((n, n, n), dtype=np.int64)
        for ia, ma in enumerate(self.monomials):
            for ib, mb in enumerate(self.monomials):
                mg = tuple(u + v for u, v in zip(ma, mb))
                ig = self.index.get(mg)
                if ig is not None:
                    s[ig, ia, ib] = 1
        return s

    @cached_property
    def _mul_flat(self) -> np.ndarray:
        n = self.n
        return self.mul_table.transpose(1, 2, 0).reshape(n * n, n)

    def __str__(self):
        body = f"Z/{self.p}^{self.a}"
        if self.exponents:
            names = _var_names(self.d)
            gens = ",".join(names)
            rels = ",".join(f"{v}^{e}" for v, e in zip(names, self.exponents))
            body = f"({body})[{gens}]/({rels})"
        return body

    # element constructors

    def zero(self) -> np.ndarray:
        return np.zeros(self.n, dtype=np.int64)

    def one(self) -> np.ndarray:
        z = self.zero()
        z[0] = 1
        return z

    def const(self, c: int) -> np.ndarray:
        z = self.zero()
        z[0] = c % self.q
        return z

    def var(self, i: int) -> np.ndarray:
        z = self.zero()
        mono = [0] * self.d
        mono[i] = 1
        idx = self.index.get(tuple(mono))
        if idx is not None:
            z[idx] = 1
        return z

    def element(self, coeffs) -> np.ndarray:
        arr = np.asarray(coeffs, dtype=np.int64).reshape(self.n) % self.q
        return arr

    def random(self, rng: np.random.Generator, size=(), nonunit: bool = False) -> np.ndarray:
        shape = tuple(np.atleast_1d(size)) if size != () else ()
        arr = rng.integers(0, self.q, size=shape + (self.n,), dtype=np.int64)
        if nonunit:
            arr[..., 0] = (arr[..., 0] * self.p) % self.q
        return arr

    def random_unit(self, rng: np.random.Generator, size=()) -> np.ndarray:
        arr = self.random(rng, size)
        c = arr[..., 0]
        arr[..., 0] = np.where(c % self.p == 0, (c + 1) % self.q, c)
        return arr


def _var_names(d: int) -> list[str]:
    base = "xyzwuv"
    if d <= len(base):
        return list(base[:d])
    return [f"x{i + 1}" for i in range(d)]


# array arithmetic; elements live on the last axis


def stack_of(arr, *inner: int) -> np.ndarray:
    """Reshape to (k, *inner), keeping the leading axis when inner has a zero."""
    arr = np.asarray(arr, dtype=np.int64)
    if math.prod(inner) == 0:
        lead = arr.shape[0] if arr.ndim == len(inner) + 1 else 0
        return np.zeros((lead, *inner), dtype=np.int64)
    return arr.reshape(-1, *inner)


def mul(spec: RingSpec, u, v) -> np.ndarray:
    u = np.asarray(u, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    if spec.n == 1:
        return (u * v) % spec.q
    outer = u[..., :, None] * v[..., None, :]
    flat = outer.reshape(outer.shape[:-2] + (spec.n * spec.n,))
    return (flat @ spec._mul_flat) % spec.q


def mult_matrix(spec: RingSpec, u) -> np.ndarray:
    """The n x n matrix of multiplication by u on coefficient vectors."""
    return np.einsum("gab,a->gb", spec.mul_table, np.asarray(u, dtype=np.int64)) % spec.q


def matmul(spec: RingSpec, a, b) -> np.ndarray:
    """Product of R-matrices with shapes (i, k, n) and (k, j, n)."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if a.shape[1] == 0:
        return np.zeros((a.shape[0], b.shape[1], spec.n), dtype=np.int64)
    prod = mul(spec, a[:, :, None, :], b[None, :, :, :])
    return prod.sum(axis=1) % spec.q


def matvec(spec: RingSpec, a, v) -> np.ndarray:
    return matmul(spec, a, np.asarray(v)[:, None, :])[:, 0, :]


def blow(spec: RingSpec, a) -> np.ndarray:
    """Z/p^a matrix of an R-matrix acting on stacked coefficient columns."""
    a = np.asarray(a, dtype=np.int64)
    rows, cols, n = a.shape
    big = np.einsum("ija,gab->igjb", a, spec.mul_table)
    return big.reshape(rows * n, cols * n) % spec.q


def is_unit(spec: RingSpec, u) -> bool:
    return int(np.asarray(u)[0]) % spec.p != 0


def inverse(spec: RingSpec, u) -> np.ndarray:
    if not is_unit(spec, u):
        raise ValueError("element is not a unit")
    x = solve(ZMatrix(mult_matrix(spec, u), spec.mod), spec.one())
    return x


def valuation(spec: RingSpec, u) -> int | float:
    """Largest n with u in m_R^n, or inf for zero."""
    u = np.asarray(u, dtype=np.int64) % spec.q
    nz = np.flatnonzero(u)
    if nz.size == 0:
        return math.inf
    v = spec.mod.valuation(u[nz])
    return int(np.min(v + spec.degrees[nz]))


@dataclass(frozen=True)
class RingElem:
    """A ring element with operator sugar; arithmetic code uses raw arrays."""

    spec: RingSpec
    coeffs: tuple[int, ...]

    @classmethod
    def of(cls, spec: RingSpec, coeffs) -> "RingElem":
        return cls(spec, tuple(int(c) for c in spec.element(coeffs)))

    @property
    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def _check(self, other: "RingElem"):
        if not isinstance(other, RingElem) or other.spec != self.spec:
            raise ValueError("ring spec mismatch")

    def __add__(self, other):
        self._check(other)
        return RingElem.of(self.spec, self.array + other.array)

    def __sub__(self, other):
        self._check(other)
        return RingElem.of(self.spec, self.array - other.array)

    def __neg__(self):
        return RingElem.of(self.spec, -self.array)

    def __mul__(self, other):
        self._check(other)
        return RingElem.of(self.spec, mul(self.spec, self.array, other.array))

    def is_unit(self) -> bool:
        return is_unit(self.spec, self.array)

    def __str__(self):
        return format_element(self.spec, self.array)


def format_element(spec: RingSpec, u) -> str:
    names = _var_names(spec.d)
    terms = []
    for c, mono in zip(np.asarray(u) % spec.q, spec.monomials):
        if c == 0:
            continue
        factors = [v if e == 1 else f"{v}^{e}" for v, e in zip(names, mono) if e]
        if not factors:
            terms.append(str(int(c)))
        elif c == 1:
            terms.append("*".join(factors))
        else:
            terms.append(f"{int(c)}*" + "*".join(factors))
    return " + ".join(terms) if terms else "0"


def ring_mul(u: RingElem, v: RingElem) -> RingElem:
    return u * v


# ideals


def monomial_multiples(spec: RingSpec, gens) -> np.ndarray:
    """All x^alpha * g, stacked; their Z/p^a span is the ideal (gens)."""
    gens = np.asarray(gens, dtype=np.int64).reshape(-1, spec.n)
    if gens.shape[0] == 0:
        return gens
    # mult by x^alpha sends coefficient b to g where S[g, alpha, b] = 1
    rows = np.einsum("gab,kb->kag", spec.mul_table, gens)
    return rows.reshape(-1, spec.n) % spec.q


@dataclass(frozen=True, eq=False)
class IdealRep:
    spec: RingSpec
    basis: ZMatrix

    @classmethod
    def from_generators(cls, spec: RingSpec, gens) -> "IdealRep":
        rows = monomial_multiples(spec, gens)
        return cls(spec, ZMatrix(rows, spec.mod, cols=spec.n).howell())

    @classmethod
    def zero(cls, spec: RingSpec) -> "IdealRep":
        return cls.from_generators(spec, np.zeros((0, spec.n), dtype=np.int64))

    @classmethod
    def unit(cls, spec: RingSpec) -> "IdealRep":
        return cls.from_generators(spec, spec.one()[None, :])

    def _check(self, other: "IdealRep"):
        if other.spec != self.spec:
            raise ValueError("ring spec mismatch")

    def __eq__(self, other):
        if not isinstance(other, IdealRep):
            return NotImplemented
        self._check(other)
        return self.basis == other.basis

    def __hash__(self):
        return hash((self.spec, self.basis))

    def __le__(self, other: "IdealRep") -> bool:
        self._check(other)
        return all(span_contains(other.basis, row) for row in self.basis.data)

    def __add__(self, other: "IdealRep") -> "IdealRep":
        self._check(other)
        rows = np.vstack([self.basis.data, other.basis.data])
        return IdealRep(self.spec, ZMatrix(rows, self.spec.mod, cols=self.spec.n).howell())

    def __mul__(self, other: "IdealRep") -> "IdealRep":
        self._check(other)
        a, b = self.basis.data, other.basis.data
        prods = mul(self.spec, a[:, None, :], b[None, :, :]).reshape(-1, self.spec.n)
        return IdealRep.from_generators(self.spec, prods)

    def contains(self, u) -> bool:
        return span_contains(self.basis, u)

    @property
    def length(self) -> int:
        return span_length(self.basis)

    def is_zero(self) -> bool:
        return self.basis.rows == 0

    def is_unit(self) -> bool:
        return any(is_unit(self.spec, row) for row in self.basis.data)

    def generators(self) -> np.ndarray:
        return self.basis.data

    def power(self, k: int) -> "IdealRep":
        out = IdealRep.unit(self.spec)
        for _ in range(k):
            out = out * self
        return out

    def __repr__(self):
        gens = [format_element(self.spec, g) for g in self.basis.data]
        return f"IdealRep({self.spec}, [{', '.join(gens)}])"


def ideal_from_generators(spec: RingSpec, gens) -> IdealRep:
    return IdealRep.from_generators(spec, gens)


def ideal_equal(i: IdealRep, j: IdealRep) -> bool:
    return i == j


def ideal_sum(i: IdealRep, j: IdealRep) -> IdealRep:
    return i + j


def ideal_contains(i: IdealRep, u) -> bool:
    return i.contains(u)


def m_adic_content(i: IdealRep) -> int | float:
    """Largest n with i inside m_R^n; the zero ideal gives math.inf."""
    if i.is_zero():
        return math.inf
    return min(valuation(i.spec, row) for row in i.basis.data)


def maximal_ideal(spec: RingSpec) -> IdealRep:
    gens = [spec.const(spec.p)] + [spec.var(k) for k in range(spec.d)]
    return IdealRep.from_generators(spec, np.array(gens))


def maximal_ideal_power(spec: RingSpec, k: int) -> IdealRep:
    rows = []
    for i, deg in enumerate(spec.degrees):
        e = max(0, k - int(deg))
        if e < spec.a:
            z = spec.zero()
            z[i] = spec.p**e
            rows.append(z)
    return IdealRep.from_generators(spec, np.array(rows).reshape(-1, spec.n))


def socle(spec: RingSpec) -> IdealRep:
    """The annihilator of m_R, computed as a kernel."""
    blocks = [spec.p * np.eye(spec.n, dtype=np.int64)]
    blocks += [mult_matrix(spec, spec.var(k)) for k in range(spec.d)]
    k = kernel(ZMatrix(np.vstack(blocks), spec.mod))
    return IdealRep.from_generators(spec, k.data)


def socle_generator(spec: RingSpec) -> np.ndarray:
    z = spec.zero()
    top = tuple(e - 1 for e in spec.exponents)
    z[spec.index[top]] = spec.p ** (spec.a - 1)
    return z


def annihilator_of_element(spec: RingSpec, u) -> IdealRep:
    k = kernel(ZMatrix(mult_matrix(spec, u), spec.mod))
    return IdealRep.from_generators(spec, k.data)


# quotient maps


@dataclass(frozen=True)
class QuotientMap:
    """The surjection R -> R' reducing mod p^a' and truncating monomials."""

    source: RingSpec
    target: RingSpec

    def __post_init__(self):
        s, t = self.source, self.target
        if s.p != t.p or t.a > s.a or s.d != t.d:
            raise ValueError(f"{t} is not a quotient of {s}")
        if any(f > e for e, f in zip(s.exponents, t.exponents)):
            raise ValueError(f"{t} is not a quotient of {s}")

    @cached_property
    def _take(self) -> np.ndarray:
        return np.array([self.source.index[m] for m in self.target.monomials], dtype=np.int64)

    def __call__(self, arr) -> np.ndarray:
        arr = np.asarray(arr, dtype=np.int64)
        return arr[..., self._take] % self.target.q

    def section(self, arr) -> np.ndarray:
        """A set-theoretic lift back to the source (not a homomorphism)."""
        arr = np.asarray(arr, dtype=np.int64)
        out = np.zeros(arr.shape[:-1] + (self.source.n,), dtype=np.int64)
        out[..., self._take] = arr % self.target.q
        return out

    def image_ideal(self, ideal: IdealRep) -> IdealRep:
        return IdealRep.from_generators(self.target, self(ideal.basis.data))

    def is_identity(self) -> bool:
        return self.source == self.target


def quotient_map(spec: RingSpec, target: RingSpec) -> QuotientMap:
    return QuotientMap(spec, target)


def quotient_specs(spec: RingSpec) -> list[RingSpec]:
    """Every ring of the family that is a quotient of spec, spec included."""
    ranges = [range(1, spec.a + 1)] + [range(1, e + 1) for e in spec.exponents]
    return [RingSpec(spec.p, c[0], tuple(c[1:])) for c in itertools.product(*ranges)]
