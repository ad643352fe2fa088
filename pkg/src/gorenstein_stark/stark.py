"""Synthetic Selmer data and the Stark systems they carry.

An instance is a localisation matrix loc : R^(r+N) -> R^N.  For a subset m of
the N primes, the relaxed module H_m is the kernel of the rows outside m and
the dual-Selmer dual D_m is their cokernel, so

    0 -> H_m -> R^(r+N) -> R^(N - |m|) -> D_m -> 0

is exact by construction.  Since R is self-injective, every functional on H_m
extends to R^(r+N) and the functionals vanishing on H_m are spanned by the
rows outside m.  A class in the (r+|m|)-th exterior bidual of H_m is
therefore stored by its values on the coordinate wedges e_I* of R^(r+N);
these values must kill every wedge containing a row outside m.

Subsets of primes are sorted tuples of indices into ``primes``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .exterior import BidualElement, CartesianSquare, contract, lift_through, mu, phi_map
from .fpmod import DualData, ModuleMap, PresentedModule, fitting_ideal, kernel_of_map
from .minors import combo_index, combos, compound, wedge_sign
from .ring import IdealRep, QuotientMap, RingSpec, blow, matmul, mul, mult_matrix
from .zmod import Modulus, ZMatrix, kernel, solve, span_length

Subset = tuple[int, ...]


@dataclass(eq=False)
class SelmerInstance:
    spec: RingSpec
    rank: int
    primes: tuple[str, ...]
    loc: np.ndarray
    provenance: dict | None = None
    _cache: dict = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self):
        self.primes = tuple(str(q) for q in self.primes)
        n_primes = len(self.primes)
        if self.rank < 0:
            raise ValueError("rank must be non-negative")
        if len(set(self.primes)) != n_primes:
            raise ValueError("prime labels must be distinct")
        loc = np.asarray(self.loc, dtype=np.int64).reshape(n_primes, self.rank + n_primes, self.spec.n)
        self.loc = loc % self.spec.q

    @property
    def N(self) -> int:
        return len(self.primes)

    @property
    def T(self) -> int:
        return self.rank + self.N

    @property
    def top(self) -> Subset:
        return tuple(range(self.N))

    def subsets(self, size: int | None = None) -> list[Subset]:
        if size is not None:
            return list(combos(self.N, size))
        return [s for k in range(self.N + 1) for s in combos(self.N, k)]

    def outside(self, m: Subset) -> list[int]:
        return [q for q in range(self.N) if q not in m]

    def degree(self, m: Subset) -> int:
        return self.rank + len(m)

    def _cached(self, key, build):
        if key not in self._cache:
            self._cache[key] = build()
        return self._cache[key]

    def relaxed_module(self, m: Subset) -> tuple[PresentedModule, ModuleMap]:
        """H_m with its embedding into R^(r+N)."""
        m = tuple(sorted(m))

        def build():
            free = PresentedModule.free(self.spec, self.T)
            out = self.outside(m)
            if not out:
                return free, ModuleMap.identity(free)
            target = PresentedModule.free(self.spec, len(out))
            return kernel_of_map(ModuleMap(free, target, self.loc[out], check=False))

        return self._cached(("H", m), build)

    def dual_selmer_dual(self, m: Subset = ()) -> PresentedModule:
        """D_m = coker of the rows outside m."""
        m = tuple(sorted(m))
        out = self.outside(m)
        return PresentedModule(self.spec, len(out), self.loc[out])

    def is_core_vertex(self, m: Subset) -> bool:
        return self.dual_selmer_dual(m).length == 0

    def ambient_dual(self, m: Subset) -> DualData:
        """H_m* generated by the restricted coordinate functionals."""
        m = tuple(sorted(m))

        def build():
            h, emb = self.relaxed_module(m)
            funcs = emb.matrix  # row j is e_j* evaluated on the generators of H_m
            rels = self.loc[self.outside(m)]
            return DualData(h, funcs, rels)

        return self._cached(("dual", m), build)

    def with_loc(self, loc, spec: RingSpec | None = None) -> "SelmerInstance":
        return SelmerInstance(spec or self.spec, self.rank, self.primes, loc, self.provenance)


@lru_cache(maxsize=None)
def _step_tables(T: int, k: int):
    """For each k-subset I and each l outside I: index of I+l among (k+1)-subsets and the sign."""
    up = combo_index(T, k + 1)
    rows = combos(T, k)
    width = T - k
    idx = np.zeros((len(rows), width), dtype=np.int64)
    sign = np.zeros((len(rows), width), dtype=np.int64)
    col = np.zeros((len(rows), width), dtype=np.int64)
    for r, I in enumerate(rows):
        rest = [l for l in range(T) if l not in I]
        for c, l in enumerate(rest):
            idx[r, c] = up[tuple(sorted(I + (l,)))]
            sign[r, c] = wedge_sign(I, l)
            col[r, c] = l
    return idx, sign, col


def wedge_with_functional(spec: RingSpec, values, functional, k: int, T: int) -> np.ndarray:
    """I -> value on e_I* ^ functional, for values on (k+1)-wedges."""
    idx, sign, col = _step_tables(T, k)
    if idx.shape[1] == 0:
        return np.zeros((idx.shape[0], spec.n), dtype=np.int64)
    terms = mul(spec, np.asarray(functional)[col], np.asarray(values)[idx]) * sign[:, :, None]
    return terms.sum(axis=1) % spec.q


def position_sign(n: Subset, q: int) -> int:
    """(-1)^(j-1) for q the j-th smallest element of n."""
    j = sorted(n).index(q)
    return -1 if j % 2 else 1


def step_down(inst: SelmerInstance, n: Subset, q: int, values) -> np.ndarray:
    """The one-prime transition from X_n to X_(n - q) in ambient coordinates.

    With W_n trivialised by the sorted dual basis, Phi reads
    eps_m(e_I*) = (-1)^(j-1) eps_n(e_I* ^ loc_q).
    """
    k = inst.rank + len(n) - 1
    out = wedge_with_functional(inst.spec, values, inst.loc[q], k, inst.T)
    return out if position_sign(n, q) > 0 else (-out) % inst.spec.q


def step_down_via_square(inst: SelmerInstance, n: Subset, q: int, values) -> np.ndarray:
    """The same transition computed by the general cartesian-square Phi.

    F2 = W_n is ordered with W_m first and W_q last; moving q back into
    sorted position contributes (-1)^(|m| - j + 1).
    """
    n = tuple(sorted(n))
    m = tuple(x for x in n if x != q)
    h_n, emb_n = inst.relaxed_module(n)
    h_m, emb_m = inst.relaxed_module(m)
    spec = inst.spec
    rows = inst.loc[list(m) + [q]]
    g = matmul(spec, rows, emb_n.matrix)
    iota = ModuleMap(h_m, h_n, lift_through(emb_n, np.transpose(emb_m.matrix, (1, 0, 2))).transpose(1, 0, 2))
    square = CartesianSquare(h_n, g, len(m), h_m, iota)
    eps = BidualElement(inst.ambient_dual(n), inst.degree(n), values)
    out = phi_map(square, eps, inst.ambient_dual(m), check=True).values
    j = n.index(q)
    return out if (len(m) - j) % 2 == 0 else (-out) % spec.q


def phi_tilde_ambient(inst: SelmerInstance, n: Subset, q: int, values) -> np.ndarray:
    """Phi-tilde for one prime, without the determinant reordering sign."""
    k = inst.rank + len(n) - 1
    return wedge_with_functional(inst.spec, values, inst.loc[q], k, inst.T)


def chain_down(inst: SelmerInstance, n: Subset, order, values) -> np.ndarray:
    """Remove primes from n in the given order, one transition at a time."""
    cur = tuple(sorted(n))
    vals = np.asarray(values, dtype=np.int64)
    for q in order:
        vals = step_down(inst, cur, q, vals)
        cur = tuple(x for x in cur if x != q)
    return vals


def direct_down(inst: SelmerInstance, n: Subset, m: Subset, values) -> np.ndarray:
    """Phi_(n,m) as (-1)^mu(k) times the one-shot wedge map with k = |n - m|.

    Removed primes are wedged in increasing order and det W_n is identified
    with det W_(n/m) ^ det W_m.
    """
    n, m = tuple(sorted(n)), tuple(sorted(m))
    removed = [q for q in n if q not in m]
    spec = inst.spec
    vals = np.asarray(values, dtype=np.int64)
    k_top = inst.rank + len(n)
    # e_I* ^ l_q1 ^ ... ^ l_qk: peel the last functional first
    for step, q in enumerate(reversed(removed)):
        vals = wedge_with_functional(spec, vals, inst.loc[q], k_top - step - 1, inst.T)
    shuffle = sum(sum(1 for x in m if x < q) for q in removed)
    sign = (-1) ** (mu(len(removed)) + shuffle)
    return vals if sign > 0 else (-vals) % spec.q


@dataclass(eq=False)
class StarkSystem:
    instance: SelmerInstance
    classes: dict[Subset, np.ndarray]
    unit: np.ndarray | None = None

    @property
    def spec(self) -> RingSpec:
        return self.instance.spec

    def element(self, m: Subset, validate: bool = True) -> BidualElement:
        m = tuple(sorted(m))
        return BidualElement(self.instance.ambient_dual(m), self.instance.degree(m), self.classes[m], validate)

    def value_ideal(self, m: Subset) -> IdealRep:
        return IdealRep.from_generators(self.spec, self.classes[tuple(sorted(m))])

    def scaled(self, c) -> "StarkSystem":
        classes = {m: mul(self.spec, v, c) for m, v in self.classes.items()}
        unit = mul(self.spec, self.unit, c) if self.unit is not None else None
        return StarkSystem(self.instance, classes, unit)

    def equals(self, other: "StarkSystem") -> bool:
        return self.classes.keys() == other.classes.keys() and all(
            np.array_equal(self.classes[m], other.classes[m]) for m in self.classes
        )


def stark_from_top(inst: SelmerInstance, unit=None) -> StarkSystem:
    """The system whose top class is unit * l(e_1 ^ ... ^ e_(r+N)).

    Lower classes are produced one prime at a time, always removing the
    largest missing prime first.
    """
    spec = inst.spec
    unit = spec.one() if unit is None else np.asarray(unit, dtype=np.int64) % spec.q
    classes: dict[Subset, np.ndarray] = {inst.top: unit.reshape(1, spec.n).copy()}
    for size in range(inst.N - 1, -1, -1):
        for m in combos(inst.N, size):
            q = min(inst.outside(m))
            n = tuple(sorted(m + (q,)))
            classes[m] = step_down(inst, n, q, classes[n])
    return StarkSystem(inst, classes, unit)


def ideal_I(sys: StarkSystem, i: int) -> IdealRep:
    """Sum of the value ideals of the classes at |m| = i; the unit ideal past N."""
    inst = sys.instance
    if i > inst.N:
        return IdealRep.unit(sys.spec)
    vals = [sys.classes[m] for m in inst.subsets(i)]
    return IdealRep.from_generators(sys.spec, np.concatenate(vals, axis=0))


def ideal_profile(sys: StarkSystem, max_i: int | None = None) -> list[IdealRep]:
    top = sys.instance.N if max_i is None else max_i
    return [ideal_I(sys, i) for i in range(top + 1)]


@dataclass
class CheckResult:
    ok: bool
    witness: dict | None = None


def verify_control(sys: StarkSystem, i: int) -> CheckResult:
    """I_i of the system against Fitt_i of D_empty from minors of loc."""
    lhs = ideal_I(sys, i)
    rhs = fitting_ideal(sys.instance.dual_selmer_dual(()), i)
    if lhs == rhs:
        return CheckResult(True)
    return CheckResult(False, {"i": i, "ideal_I": lhs, "fitting": rhs})


def transition_defects(sys: StarkSystem) -> list[dict]:
    """Every one-prime pair (n, n - q) where the stored classes disagree with Phi."""
    inst = sys.instance
    bad = []
    for n in inst.subsets():
        for q in n:
            m = tuple(x for x in n if x != q)
            expect = step_down(inst, n, q, sys.classes[n])
            if not np.array_equal(expect, sys.classes[m]):
                bad.append({"n": n, "m": m, "expected": expect, "found": sys.classes[m]})
    return bad


def consistency_defects(sys: StarkSystem) -> list[Subset]:
    """Subsets whose class does not kill the relations of its wedge power."""
    return [m for m in sys.instance.subsets() if not sys.element(m, validate=False).is_consistent()]


def ordering_defects(sys: StarkSystem) -> tuple[int, list[dict]]:
    """Compare every removal ordering for every pair m < n with the stored class."""
    inst = sys.instance
    count = 0
    bad = []
    for n in inst.subsets():
        for size in range(len(n)):
            for m in combos(len(n), size):
                m = tuple(n[i] for i in m)
                removed = [q for q in n if q not in m]
                for order in itertools.permutations(removed):
                    count += 1
                    got = chain_down(inst, n, order, sys.classes[n])
                    if not np.array_equal(got, sys.classes[m]):
                        bad.append({"n": n, "m": m, "order": order})
    return count, bad


def sign_defects(sys: StarkSystem) -> list[dict]:
    """Compare each stored class with the one-shot map with the mu sign."""
    inst = sys.instance
    bad = []
    for n in inst.subsets():
        for size in range(len(n)):
            for m in combos(len(n), size):
                m = tuple(n[i] for i in m)
                got = direct_down(inst, n, m, sys.classes[n])
                if not np.array_equal(got, sys.classes[m]):
                    bad.append({"n": n, "m": m})
    return bad


# core vertices


def free_rank(inst: SelmerInstance, m: Subset) -> int | None:
    """Rank of H_m when it is free, else None."""
    h, _ = inst.relaxed_module(m)
    if h.length == h.gens * inst.spec.length:
        return h.gens
    return None


def basis_class(inst: SelmerInstance, m: Subset) -> np.ndarray:
    """l(b_1 ^ ... ^ b_k) for the generators of a free H_m, in ambient coordinates."""
    h, emb = inst.relaxed_module(m)
    k = h.gens
    return compound(inst.spec, emb.matrix, k)[:, 0, :]


def solve_multiple(spec: RingSpec, base, target) -> np.ndarray | None:
    """Some u in R with u * base = target entrywise."""
    base = np.asarray(base, dtype=np.int64).reshape(-1, spec.n)
    target = np.asarray(target, dtype=np.int64).reshape(-1)
    mat = np.vstack([mult_matrix(spec, b) for b in base]) if base.shape[0] else np.zeros((0, spec.n))
    return solve(ZMatrix(mat, spec.mod, cols=spec.n), target)


def annihilates_only_zero(spec: RingSpec, base) -> bool:
    base = np.asarray(base, dtype=np.int64).reshape(-1, spec.n)
    mat = np.vstack([mult_matrix(spec, b) for b in base]) if base.shape[0] else np.zeros((0, spec.n))
    return kernel(ZMatrix(mat, spec.mod, cols=spec.n)).rows == 0


@dataclass
class CoreReport:
    vertex: Subset
    free_rank: int | None
    basis_generates: bool
    regenerated: bool
    unique: bool

    @property
    def ok(self) -> bool:
        return (self.free_rank is not None and self.basis_generates and self.regenerated and self.unique)


def regenerate_from(sys: StarkSystem, m: Subset) -> CoreReport:
    """Rebuild the whole system from its class at the core vertex m."""
    inst = sys.instance
    spec = inst.spec
    m = tuple(sorted(m))
    rank = free_rank(inst, m)
    if rank is None or rank != inst.degree(m):
        return CoreReport(m, rank, False, False, False)
    beta = basis_class(inst, m)
    generates = IdealRep.from_generators(spec, beta).is_unit()
    reference = stark_from_top(inst, spec.one()).classes[m]
    unique = annihilates_only_zero(spec, reference)
    u = solve_multiple(spec, reference, sys.classes[m])
    if u is None:
        return CoreReport(m, rank, generates, False, unique)
    rebuilt = stark_from_top(inst, u)
    return CoreReport(m, rank, generates, rebuilt.equals(sys), unique)


def core_vertices(inst: SelmerInstance) -> list[Subset]:
    return [m for m in inst.subsets() if inst.is_core_vertex(m)]


def poitou_tate_defects(inst: SelmerInstance) -> list[tuple[Subset, Subset]]:
    """Pairs m < n where 0 -> H_m -> H_n -> W_(n/m) -> D_m -> D_n -> 0 fails to add up."""
    L = inst.spec.length
    bad = []
    subs = inst.subsets()
    lengths = {m: (inst.relaxed_module(m)[0].length, inst.dual_selmer_dual(m).length) for m in subs}
    for n in subs:
        for m in subs:
            if not set(m) <= set(n):
                continue
            hm, dm = lengths[m]
            hn, dn = lengths[n]
            if hm - hn + (len(n) - len(m)) * L - dm + dn != 0:
                bad.append((m, n))
    return bad


def core_rank_defects(inst: SelmerInstance) -> list[Subset]:
    """Subsets where L(H_m) - L(D_m) differs from (r + |m|) L(R)."""
    L = inst.spec.length
    return [
        m for m in inst.subsets()
        if inst.relaxed_module(m)[0].length - inst.dual_selmer_dual(m).length != inst.degree(m) * L
    ]


# theta


def residue_rank(spec: RingSpec, vectors) -> int:
    """Rank over the residue field of vectors (t, k, n)."""
    vectors = np.asarray(vectors, dtype=np.int64)
    if vectors.size == 0:
        return 0
    res = vectors[:, :, 0] % spec.p
    return span_length(ZMatrix(res.T, Modulus(spec.p, 1)))


def find_free_submodule(inst: SelmerInstance, rank: int, m: Subset = ()) -> np.ndarray | None:
    """Generators of H_m spanning a free rank-``rank`` submodule, as (T, rank, n).

    A family in R^T spans a free direct summand exactly when its residues
    are independent over the residue field.
    """
    spec = inst.spec
    _, emb = inst.relaxed_module(m)
    chosen: list[int] = []
    for j in range(emb.matrix.shape[1]):
        if len(chosen) == rank:
            break
        trial = chosen + [j]
        if residue_rank(spec, emb.matrix[:, trial]) == len(trial):
            chosen = trial
    if len(chosen) < rank:
        return None
    return emb.matrix[:, chosen]


def max_free_rank(inst: SelmerInstance, m: Subset = ()) -> int:
    _, emb = inst.relaxed_module(m)
    return residue_rank(inst.spec, emb.matrix)


def splitting_functionals(spec: RingSpec, c) -> np.ndarray | None:
    """F (r, T, n) with F c = identity, when c spans a free summand of R^T."""
    c = np.asarray(c, dtype=np.int64)
    T, r = c.shape[0], c.shape[1]
    mat = blow(spec, np.transpose(c, (1, 0, 2)))
    rows = []
    for i in range(r):
        rhs = np.zeros((r, spec.n), dtype=np.int64)
        rhs[i, 0] = 1
        x = solve(ZMatrix(mat, spec.mod), rhs.reshape(-1))
        if x is None:
            return None
        rows.append(x.reshape(T, spec.n))
    return np.array(rows, dtype=np.int64).reshape(r, T, spec.n)


@dataclass
class ThetaReport:
    theta: np.ndarray
    equation: bool
    fitting: bool
    unique: bool

    @property
    def ok(self) -> bool:
        return self.equation and self.fitting and self.unique


def theta(sys: StarkSystem, c) -> ThetaReport:
    """The element with eps_empty = l(theta c_1 ^ ... ^ c_r)."""
    inst = sys.instance
    spec = inst.spec
    c = np.asarray(c, dtype=np.int64).reshape(inst.T, inst.rank, spec.n)
    if inst.N and inst.rank and np.any(matmul(spec, inst.loc, c)):
        raise ValueError("the given vectors do not lie in H_empty")
    F = splitting_functionals(spec, c)
    if F is None:
        raise ValueError("the given vectors do not span a free summand")
    eps = sys.classes[()]
    wedge_f = compound(spec, np.transpose(F, (1, 0, 2)), inst.rank)[:, 0, :]
    th = contract(spec, eps, wedge_f)
    lc = compound(spec, c, inst.rank)[:, 0, :]
    equation = np.array_equal(mul(spec, th, lc), eps)
    fitting = IdealRep.from_generators(spec, th[None]) == fitting_ideal(inst.dual_selmer_dual(()), 0)
    unique = annihilates_only_zero(spec, lc)
    return ThetaReport(th, equation, fitting, unique)


# base change


def reduce_instance(inst: SelmerInstance, pi: QuotientMap) -> SelmerInstance:
    if pi.source != inst.spec:
        raise ValueError("surjection source does not match the instance ring")
    return SelmerInstance(pi.target, inst.rank, inst.primes, pi(inst.loc), inst.provenance)


def reduce_system(sys: StarkSystem, pi: QuotientMap) -> StarkSystem:
    """Push the top class through the surjection and regenerate."""
    target = reduce_instance(sys.instance, pi)
    unit = pi(sys.unit if sys.unit is not None else sys.classes[sys.instance.top][0])
    return stark_from_top(target, unit)


def reduction_defects(sys: StarkSystem, pi: QuotientMap) -> list[dict]:
    """Ideal images and entrywise class images against the regenerated system."""
    red = reduce_system(sys, pi)
    bad = []
    for i in range(sys.instance.N + 1):
        img = pi.image_ideal(ideal_I(sys, i))
        got = ideal_I(red, i)
        if img != got:
            bad.append({"i": i, "image": img, "reduced": got})
    for m, vals in sys.classes.items():
        if not np.array_equal(pi(vals), red.classes[m]):
            bad.append({"class": m})
    return bad


def rescaled_trivialisation(inst: SelmerInstance, units) -> SelmerInstance:
    """Change W_q = R by the unit u_q, which rescales row q of loc."""
    units = np.asarray(units, dtype=np.int64).reshape(inst.N, inst.spec.n)
    loc = mul(inst.spec, inst.loc, units[:, None, :])
    return inst.with_loc(loc)


# random instances


def random_instance(seed: int, spec: RingSpec, rank: int, n_primes: int, density: float = 0.5) -> SelmerInstance:
    """loc entries lie in m_R with probability ``density`` and are units otherwise."""
    rng = np.random.default_rng(seed)
    T = rank + n_primes
    loc = spec.random_unit(rng, (n_primes, T)) if n_primes else np.zeros((0, T, spec.n), dtype=np.int64)
    if n_primes:
        nonunit = spec.random(rng, (n_primes, T), nonunit=True)
        mask = rng.random((n_primes, T)) < density
        loc = np.where(mask[:, :, None], nonunit, loc)
    provenance = {
        "seed": int(seed),
        "ring": {"p": spec.p, "a": spec.a, "exponents": list(spec.exponents)},
        "rank_r": rank,
        "n_primes": n_primes,
        "density": float(density),
        "generator": "numpy.random.default_rng",
    }
    primes = tuple(f"q{i + 1}" for i in range(n_primes))
    return SelmerInstance(spec, rank, primes, loc, provenance)


def random_invertible(spec: RingSpec, rng: np.random.Generator, size: int) -> tuple[np.ndarray, np.ndarray]:
    """A random matrix in GL_size(R) and its inverse."""
    if size == 0:
        empty = np.zeros((0, 0, spec.n), dtype=np.int64)
        return empty, empty
    lower = spec.random(rng, (size, size))
    upper = spec.random(rng, (size, size))
    for i in range(size):
        lower[i, i + 1:] = 0
        upper[i, :i] = 0
        lower[i, i] = spec.one()
        upper[i, i] = spec.random_unit(rng)
    u = matmul(spec, lower, upper)
    big = blow(spec, u)
    inv_cols = []
    for j in range(size):
        e = np.zeros((size, spec.n), dtype=np.int64)
        e[j, 0] = 1
        x = solve(ZMatrix(big, spec.mod), e.reshape(-1))
        inv_cols.append(x.reshape(size, spec.n))
    inv = np.stack(inv_cols, axis=1)
    return u, inv


def planted_instance(seed: int, spec: RingSpec, rank: int, n_primes: int, extra: int = 0,
                     density: float = 0.5) -> tuple[SelmerInstance, np.ndarray]:
    """An instance whose H_empty contains a free summand of rank ``rank + extra``.

    Returns the instance and the planted basis (T, rank + extra, n).
    """
    rng = np.random.default_rng(seed)
    T = rank + n_primes
    k = rank + extra
    if k > T:
        raise ValueError("planted rank exceeds the ambient rank")
    base = random_instance(int(rng.integers(2**31)), spec, rank, n_primes, density)
    loc0 = base.loc.copy()
    loc0[:, :k] = 0
    u, u_inv = random_invertible(spec, rng, T)
    loc = matmul(spec, loc0, u_inv) if n_primes else loc0
    planted = u[:, :k]
    prov = dict(base.provenance or {})
    prov.update({"seed": int(seed), "planted_rank": k})
    return SelmerInstance(spec, rank, base.primes, loc, prov), planted


__all__ = [
    "CheckResult",
    "CoreReport",
    "SelmerInstance",
    "StarkSystem",
    "ThetaReport",
    "chain_down",
    "core_vertices",
    "direct_down",
    "find_free_submodule",
    "ideal_I",
    "ideal_profile",
    "planted_instance",
    "random_instance",
    "reduce_system",
    "regenerate_from",
    "stark_from_top",
    "step_down",
    "theta",
    "verify_control",
]
