"""Exact linear algebra over the residue rings Z/p^a.

Every module computation in the package is eventually reduced to row spans of
integer matrices modulo a prime power.  Over a chain ring like Z/p^a an
echelon form does not pin down a row span, so the canonical certificate used
throughout is the Howell form: pivots are powers of p, entries above a pivot
are reduced modulo that pivot, and the span of every suffix of rows is exactly
the set of span vectors that vanish before the suffix's first pivot column.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class Modulus:
    """The coefficient ring Z/p^a."""

    p: int
    a: int

    def __post_init__(self):
        if not is_prime(int(self.p)):
            raise ValueError(f"modulus base {self.p} is not prime")
        if int(self.a) < 1:
            raise ValueError(f"modulus exponent must be positive, got {self.a}")

    @classmethod
    def of(cls, q: int) -> "Modulus":
        """Factor ``q`` as a prime power; composite non-prime-powers are rejected."""
        if q < 2:
            raise ValueError(f"{q} is not a prime power")
        p = next(d for d in range(2, q + 1) if q % d == 0)
        a, r = 0, q
        while r % p == 0:
            r //= p
            a += 1
        if r != 1:
            raise ValueError(f"{q} is not a prime power")
        return cls(p, a)

    @property
    def q(self) -> int:
        return self.p**self.a

    def valuation(self, x):
        """p-adic valuation of residues, with ``a`` standing in for zero."""
        x = np.asarray(x, dtype=np.int64) % self.q
        v = np.zeros(x.shape, dtype=np.int64)
        pk = 1
        for _ in range(self.a):
            pk *= self.p
            v += (x % pk == 0)
        return v


class ZMatrix:
    """Immutable dense matrix over Z/p^a with a lazily cached Howell form."""

    __slots__ = ("data", "mod", "_howell")

    def __init__(self, data, mod: Modulus, cols: int | None = None):
        arr = np.asarray(data, dtype=np.int64)
        if arr.size == 0:
            if cols is None:
                cols = arr.shape[1] if arr.ndim == 2 else 0
            arr = arr.reshape(0 if arr.ndim < 2 else arr.shape[0], cols)
        if arr.ndim != 2:
            raise ValueError("ZMatrix data must be two-dimensional")
        arr = arr % mod.q
        arr.setflags(write=False)
        self.data = arr
        self.mod = mod
        self._howell = None

    @classmethod
    def zeros(cls, rows: int, cols: int, mod: Modulus) -> "ZMatrix":
        return cls(np.zeros((rows, cols), dtype=np.int64), mod)

    @classmethod
    def identity(cls, n: int, mod: Modulus) -> "ZMatrix":
        return cls(np.eye(n, dtype=np.int64), mod)

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def __eq__(self, other):
        if not isinstance(other, ZMatrix):
            return NotImplemented
        return self.mod == other.mod and np.array_equal(self.data, other.data)

    def __hash__(self):
        return hash((self.mod, self.data.shape, self.data.tobytes()))

    def __repr__(self):
        return f"ZMatrix({self.tolist()}, mod={self.mod.p}^{self.mod.a})"

    def howell(self) -> "ZMatrix":
        if self._howell is None:
            h = ZMatrix(_howell(self.data, self.mod), self.mod, cols=self.cols)
            h._howell = h
            self._howell = h
        return self._howell


def _as_zmatrix(m, mod: Modulus | None = None) -> ZMatrix:
    if isinstance(m, ZMatrix):
        return m
    if mod is None:
        raise TypeError("a Modulus is required for raw arrays")
    return ZMatrix(m, mod)


def _howell(a: np.ndarray, mod: Modulus) -> np.ndarray:
    p, q, e = mod.p, mod.q, mod.a
    cols = a.shape[1]
    pending = a[np.any(a != 0, axis=1)] % q
    pivots: list[tuple[int, int, np.ndarray]] = []
    for j in range(cols):
        if pending.shape[0] == 0:
            break
        col = pending[:, j]
        if not col.any():
            continue
        vals = mod.valuation(col)
        i = int(np.argmin(vals))
        v = int(vals[i])
        pv = p**v
        unit = int(col[i]) // pv
        row = (pending[i] * pow(unit, -1, q)) % q
        rest = np.delete(pending, i, axis=0)
        if rest.shape[0]:
            factor = rest[:, j] // pv
            rest = (rest - factor[:, None] * row[None, :]) % q
        if v > 0:
            extra = (row * p ** (e - v)) % q
            rest = np.vstack([rest, extra[None, :]])
        pending = rest[np.any(rest != 0, axis=1)]
        pivots.append((j, v, row))
    if not pivots:
        return np.zeros((0, cols), dtype=np.int64)
    h = np.array([r for _, _, r in pivots], dtype=np.int64)
    for k, (j, v, _) in enumerate(pivots):
        pv = p**v
        for i in range(k):
            f = int(h[i, j]) // pv
            if f:
                h[i] = (h[i] - f * h[k]) % q
    return h


def pivots(h: ZMatrix) -> list[tuple[int, int]]:
    """(column, valuation) of each row of a matrix already in Howell form."""
    out = []
    for row in h.data:
        j = int(np.flatnonzero(row)[0])
        out.append((j, int(h.mod.valuation(row[j]))))
    return out


def howell_form(m: ZMatrix) -> ZMatrix:
    """Canonical Howell form of the row span of ``m``."""
    return m.howell()


def span_length(m: ZMatrix) -> int:
    """log_p of the number of elements in the row span."""
    h = m.howell()
    a = h.mod.a
    return sum(a - v for _, v in pivots(h))


def kernel(m: ZMatrix) -> ZMatrix:
    """Rows generating {x : m x = 0}, returned in Howell form."""
    mod = m.mod
    r, c = m.rows, m.cols
    aug = np.hstack([m.data.T, np.eye(c, dtype=np.int64)])
    h = _howell(aug, mod)
    keep = [row[r:] for row in h if not row[:r].any()]
    if not keep:
        return ZMatrix(np.zeros((0, c), dtype=np.int64), mod)
    out = ZMatrix(np.array(keep), mod)
    out._howell = out
    return out


def solve(m: ZMatrix, b) -> np.ndarray | None:
    """Some x with m x = b, or None.

    The witness is the one produced by back-substitution on the Howell form
    of the augmented system [m | b]: free columns are set to zero and each
    pivot variable takes its least non-negative admissible value.
    """
    mod = m.mod
    p, q, e = mod.p, mod.q, mod.a
    b = np.asarray(b, dtype=np.int64).reshape(-1) % q
    if b.shape[0] != m.rows:
        raise ValueError("right-hand side length must equal the row count")
    c = m.cols
    h = _howell(np.hstack([m.data, b[:, None]]), mod)
    x = np.zeros(c, dtype=np.int64)
    for row in h[::-1]:
        j = int(np.flatnonzero(row)[0])
        if j == c:
            return None
        v = int(mod.valuation(row[j]))
        rhs = int((row[c] - row[j + 1:c] @ x[j + 1:]) % q)
        if rhs % p**v:
            return None
        x[j] = (rhs // p**v) % p ** (e - v)
    return x


def span_contains(h: ZMatrix, v) -> bool:
    """Membership of ``v`` in the row span of ``h`` (any matrix)."""
    return reduce_by(h, v) is not None


def reduce_by(h: ZMatrix, v):
    """Coefficients c with c . howell(h) = v, or None when v is outside the span."""
    hh = h.howell()
    mod = hh.mod
    q, p = mod.q, mod.p
    t = np.asarray(v, dtype=np.int64).reshape(-1) % q
    coeffs = np.zeros(hh.rows, dtype=np.int64)
    for k, (j, vv) in enumerate(pivots(hh)):
        if t[:j].any():
            return None
        pv = p**vv
        if t[j] % pv:
            return None
        f = int(t[j]) // pv
        coeffs[k] = f
        t = (t - f * hh.data[k]) % q
    if t.any():
        return None
    return coeffs


def span_equal(a: ZMatrix, b: ZMatrix) -> bool:
    return a.howell() == b.howell()


class Solver:
    """Repeated solving of m x = b against a fixed m.

    Precomputes the Howell form of [m^T | I]; each right-hand side is then
    reduced against the rows whose left block is non-zero.  Witnesses are
    reproducible but need not coincide with those of ``solve``.
    """

    def __init__(self, m: ZMatrix):
        self.m = m
        mod = m.mod
        r, c = m.rows, m.cols
        h = _howell(np.hstack([m.data.T, np.eye(c, dtype=np.int64)]), mod)
        img = [row for row in h if row[:r].any()]
        self._rows = r
        self._img = np.array(img, dtype=np.int64).reshape(len(img), r + c)
        self._piv = [(int(np.flatnonzero(row[:r])[0]),) for row in self._img]

    def solve(self, b) -> np.ndarray | None:
        mod = self.m.mod
        p, q = mod.p, mod.q
        r = self._rows
        t = np.asarray(b, dtype=np.int64).reshape(-1) % q
        if t.shape[0] != r:
            raise ValueError("right-hand side length must equal the row count")
        x = np.zeros(self.m.cols, dtype=np.int64)
        for row, (j,) in zip(self._img, self._piv):
            if t[:j].any():
                return None
            vv = int(mod.valuation(row[j]))
            pv = p**vv
            if t[j] % pv:
                return None
            f = int(t[j]) // pv
            if f:
                t = (t - f * row[:r]) % q
                x = (x + f * row[r:]) % q
        if t.any():
            return None
        return x
