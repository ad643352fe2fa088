"""Random test data: modules with maps, cartesian chains, naturality squares.

All generators take an explicit numpy Generator so callers control seeding.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exterior import CartesianSquare, lift_through
from .fpmod import DualData, ModuleMap, PresentedModule, dual, dual_from_functionals, kernel_of_map, random_module
from .ring import RingSpec, matmul
from .stark import random_invertible

# rings used by the property corpus
TEST_RINGS = (
    RingSpec(2, 2, ()),
    RingSpec(2, 3, ()),
    RingSpec(3, 2, ()),
    RingSpec(2, 1, (2,)),
    RingSpec(2, 2, (2,)),
    RingSpec(3, 1, (2, 2)),
)


def module_with_gens(spec: RingSpec, rng: np.random.Generator, gens: int, max_rels: int = 2) -> PresentedModule:
    s = int(rng.integers(0, max_rels + 1))
    rel = spec.random(rng, (gens, s), nonunit=True) if gens and s else np.zeros((gens, s, spec.n), dtype=np.int64)
    return PresentedModule(spec, gens, rel)


def random_functionals(spec: RingSpec, rng: np.random.Generator, m: PresentedModule, count: int,
                       d: DualData | None = None) -> np.ndarray:
    """``count`` random elements of M*, as rows (count, t, n)."""
    d = d or dual(m)
    if d.u == 0:
        return np.zeros((count, m.gens, spec.n), dtype=np.int64)
    coeffs = spec.random(rng, (count, d.u))
    return matmul(spec, coeffs, d.funcs.reshape(d.u, -1, spec.n)).reshape(count, m.gens, spec.n)


def free_dual(m: PresentedModule) -> DualData:
    """Coordinate functionals of a free module."""
    spec = m.spec
    eye = np.zeros((m.gens, m.gens, spec.n), dtype=np.int64)
    eye[np.arange(m.gens), np.arange(m.gens), 0] = 1
    return dual_from_functionals(m, eye)


@dataclass(eq=False)
class Chain:
    """M1 < M2 < M3 over F1 < F2 < F3 with both squares cartesian."""

    profile: tuple[int, int, int]
    sq32: CartesianSquare
    sq21: CartesianSquare
    sq31: CartesianSquare

    @property
    def m3(self) -> PresentedModule:
        return self.sq32.m2


def random_chain(spec: RingSpec, rng: np.random.Generator, profile: tuple[int, int, int],
                 extra_gens: int = 2) -> Chain:
    s1, s2, s3 = profile
    if not 0 <= s1 <= s2 <= s3:
        raise ValueError("ranks must increase")
    m3 = module_with_gens(spec, rng, s3 - s1 + int(rng.integers(0, extra_gens + 1)))
    g3 = random_functionals(spec, rng, m3, s3)
    sq32 = CartesianSquare(m3, g3, s2)
    g2 = matmul(spec, g3[:s2], sq32.iota.matrix)
    sq21 = CartesianSquare(sq32.m1, g2, s1)
    iota31 = sq32.iota.compose(sq21.iota)
    sq31 = CartesianSquare(m3, g3, s1, sq21.m1, iota31)
    return Chain(profile, sq32, sq21, sq31)


@dataclass(eq=False)
class Naturality:
    """Rows 0 -> N -> M -> F and 0 -> N' -> M' -> F' with maps f, k and the induced g."""

    top: CartesianSquare
    bottom: CartesianSquare
    f: ModuleMap
    k: np.ndarray
    g: ModuleMap


def random_naturality(spec: RingSpec, rng: np.random.Generator, s: int, extra_gens: int = 2) -> Naturality:
    """M' is a quotient of M by part of ker(kG), plus a random direct summand."""
    m = module_with_gens(spec, rng, s + int(rng.integers(0, extra_gens + 1)))
    t = m.gens
    G = random_functionals(spec, rng, m, s)
    k = spec.random(rng, (s, s))
    kG = matmul(spec, k, G)
    _, emb = kernel_of_map(ModuleMap(m, PresentedModule.free(spec, s), kG))
    w = int(rng.integers(0, 3))
    if emb.matrix.shape[1] and w:
        extra = matmul(spec, emb.matrix, spec.random(rng, (emb.matrix.shape[1], w)))
    else:
        extra = np.zeros((t, 0, spec.n), dtype=np.int64)
    p = module_with_gens(spec, rng, int(rng.integers(0, 2)))
    hp = random_functionals(spec, rng, p, s)
    tp = p.gens
    rel_top = np.concatenate([m.relations, extra, np.zeros((t, p.nrel, spec.n), dtype=np.int64)], axis=1)
    rel_bot = np.concatenate(
        [np.zeros((tp, m.nrel + extra.shape[1], spec.n), dtype=np.int64), p.relations], axis=1
    )
    m_prime = PresentedModule(spec, t + tp, np.concatenate([rel_top, rel_bot], axis=0))
    g_prime = np.concatenate([kG, hp], axis=1)
    fmat = np.zeros((t + tp, t, spec.n), dtype=np.int64)
    fmat[np.arange(t), np.arange(t), 0] = 1
    f = ModuleMap(m, m_prime, fmat)
    top = CartesianSquare(m, G, 0)
    bottom = CartesianSquare(m_prime, g_prime, 0)
    image = matmul(spec, fmat, top.iota.matrix)
    coords = lift_through(bottom.iota, np.transpose(image, (1, 0, 2)))
    g = ModuleMap(top.m1, bottom.m1, np.transpose(coords, (1, 0, 2)))
    return Naturality(top, bottom, f, k, g)


@dataclass(eq=False)
class KeySequence:
    """0 -> N -> R^(s+t) -A-> R^s -> M -> 0."""

    matrix: np.ndarray
    square: CartesianSquare
    cokernel: PresentedModule


def random_key_sequence(spec: RingSpec, rng: np.random.Generator, s: int, t: int,
                        density: float = 0.6) -> KeySequence:
    units = spec.random(rng, (s, s + t))
    nonunits = spec.random(rng, (s, s + t), nonunit=True)
    mask = rng.random((s, s + t)) < density
    a = np.where(mask[:, :, None], nonunits, units)
    free = PresentedModule.free(spec, s + t)
    return KeySequence(a, CartesianSquare(free, a, 0), PresentedModule(spec, s, a))


def random_map_into(spec: RingSpec, rng: np.random.Generator, target: PresentedModule, gens: int) -> ModuleMap:
    """A random X: R^gens -> target, with the source cut down to a quotient on which X stays defined."""
    x = spec.random(rng, (target.gens, gens))
    _, emb = kernel_of_map(ModuleMap(PresentedModule.free(spec, gens), target, x, check=False))
    w = int(rng.integers(0, 3))
    if emb.matrix.shape[1] and w:
        rel = matmul(spec, emb.matrix, spec.random(rng, (emb.matrix.shape[1], w)))
    else:
        rel = np.zeros((gens, 0, spec.n), dtype=np.int64)
    return ModuleMap(PresentedModule(spec, gens, rel), target, x)


def module_with_free_part(spec: RingSpec, rng: np.random.Generator, s: int,
                          extra_gens: int = 2) -> tuple[PresentedModule, np.ndarray]:
    """A module containing a free rank-s summand, returned with its basis (t, s, n)."""
    p = module_with_gens(spec, rng, int(rng.integers(0, extra_gens + 1)))
    t = s + p.gens
    rel = np.concatenate([np.zeros((s, p.nrel, spec.n), dtype=np.int64), p.relations], axis=0)
    u, _ = random_invertible(spec, rng, t)
    m = PresentedModule(spec, t, matmul(spec, u, rel) if p.nrel else rel)
    return m, u[:, :s]


__all__ = [
    "Chain",
    "KeySequence",
    "Naturality",
    "TEST_RINGS",
    "free_dual",
    "module_with_free_part",
    "module_with_gens",
    "random_chain",
    "random_functionals",
    "random_key_sequence",
    "random_map_into",
    "random_module",
    "random_naturality",
]
