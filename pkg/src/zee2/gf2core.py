"""Bit-level linear algebra over Z2.

Group elements of (Z2)^n are plain Python ints used as n-bit masks: bit ``i``
holds coordinate ``x_{i+1}``.  Every cochain evaluator in this module is
vectorized: it accepts ints or numpy integer arrays (broadcasting freely) and
returns values in {0, 1}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

MAX_ARITY = 24
DENSE_TABLE_MAX = 12  # 2-cochain tables are materialized only up to this arity


def check_arity(n: int, low: int = 1) -> None:
    if not isinstance(n, (int, np.integer)) or not low <= n <= MAX_ARITY:
        raise ValueError(f"arity must be an integer in {low}..{MAX_ARITY}, got {n!r}")


def check_element(x: int, n: int) -> int:
    if x < 0 or x >> n:
        raise ValueError(f"{x:#x} is not an element of (Z2)^{n}")
    return int(x)


def weight(x) -> int:
    """Number of 1 entries of ``x``."""
    return int(x).bit_count()


def basis(i: int) -> int:
    """The standard basis vector e_i (1-based, as in x_1..x_n)."""
    return 1 << (i - 1)


def all_ones(n: int) -> int:
    return (1 << n) - 1


def to_bits(x: int, n: int) -> str:
    """Render ``x`` as an n-character bit string, coordinate 1 leftmost."""
    return "".join("1" if (x >> i) & 1 else "0" for i in range(n))


def from_bits(s: str) -> int:
    s = s.strip()
    if not s or set(s) - {"0", "1"}:
        raise ValueError(f"not a bit string: {s!r}")
    return sum(1 << i for i, c in enumerate(s) if c == "1")


def from_coords(*coords: int) -> int:
    """``from_coords(1, 0, 1)`` is the element (1,0,1)."""
    return sum((c & 1) << i for i, c in enumerate(coords))


def parity(v):
    """Parity of the popcount, vectorized."""
    if isinstance(v, np.ndarray):
        return (np.bitwise_count(v) & 1).astype(np.uint8)
    return int(v).bit_count() & 1


def bit(x, i: int):
    """Coordinate x_{i+1} (0-based bit index), vectorized."""
    return (x >> i) & 1


def elements(n: int) -> np.ndarray:
    return np.arange(1 << n, dtype=np.int64)


# ---------------------------------------------------------------------------
# GL(n, Z2)
# ---------------------------------------------------------------------------


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over Z2 of a list of bitmask rows."""
    pivots: list[int] = []
    for r in rows:
        for p in pivots:
            r = min(r, r ^ p)
        if r:
            pivots.append(r)
            pivots.sort(reverse=True)
    return len(pivots)


@dataclass(frozen=True)
class Gl2Map:
    """An automorphism of (Z2)^n.

    ``rows[i]`` is the mask of coordinates j with T[i][j] = 1, so that
    coordinate i of T(x) is the XOR over j of T[i][j] x_j.
    """

    rows: tuple[int, ...]
    n: int = field(init=False)

    def __post_init__(self):
        rows = tuple(int(r) for r in self.rows)
        n = len(rows)
        check_arity(n)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "n", n)
        for r in rows:
            check_element(r, n)
        if gf2_rank(rows) != n:
            raise ValueError("map is not invertible over Z2")

    @classmethod
    def identity(cls, n: int) -> "Gl2Map":
        return cls(tuple(1 << i for i in range(n)))

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> "Gl2Map":
        """Rows as bit strings: ``["100", "110", "111"]`` is x1'=x1, x2'=x1+x2, x3'=x1+x2+x3."""
        return cls(tuple(from_bits(r) for r in rows))

    def __call__(self, x):
        out = 0
        for i, r in enumerate(self.rows):
            out = out | (parity(x & r) << i) if not isinstance(x, np.ndarray) else out | (parity(x & r).astype(np.int64) << i)
        return out

    def transpose(self) -> "Gl2Map":
        return Gl2Map(tuple(sum(((self.rows[j] >> i) & 1) << j for j in range(self.n)) for i in range(self.n)))

    def compose(self, other: "Gl2Map") -> "Gl2Map":
        """``(self ∘ other)(x) = self(other(x))``."""
        cols = [self(other(1 << j)) for j in range(self.n)]
        return Gl2Map(tuple(sum(((cols[j] >> i) & 1) << j for j in range(self.n)) for i in range(self.n)))

    def inverse(self) -> "Gl2Map":
        n = self.n
        # Gauss-Jordan on [T | I]
        aug = [(self.rows[i], 1 << i) for i in range(n)]
        for col in range(n):
            piv = next(k for k in range(col, n) if (aug[k][0] >> col) & 1)
            aug[col], aug[piv] = aug[piv], aug[col]
            for k in range(n):
                if k != col and (aug[k][0] >> col) & 1:
                    aug[k] = (aug[k][0] ^ aug[col][0], aug[k][1] ^ aug[col][1])
        return Gl2Map(tuple(a[1] for a in aug))

    def to_strings(self) -> list[str]:
        return [to_bits(r, self.n) for r in self.rows]


def apply_map(T: Gl2Map, x):
    return T(x)


# ---------------------------------------------------------------------------
# Cochains
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Cochain:
    """A Z2-valued function of ``k`` arguments in (Z2)^n.

    ``fn`` must be vectorized.  For k <= 2 a dense truth table can be produced
    with :meth:`table`; higher cochains are evaluator-only.
    """

    n: int
    k: int
    fn: Callable
    dense: np.ndarray | None = None
    builder: Callable[[], np.ndarray] | None = None

    def __call__(self, *args):
        if len(args) != self.k:
            raise TypeError(f"{self.k}-cochain called with {len(args)} arguments")
        return self.fn(*args)

    @classmethod
    def from_table(cls, table, n: int | None = None) -> "Cochain":
        table = np.asarray(table, dtype=np.uint8) & 1
        k = table.ndim
        if n is None:
            n = int(table.shape[0]).bit_length() - 1
        if table.shape != (1 << n,) * k:
            raise ValueError(f"table shape {table.shape} does not match arity {n}")
        table.setflags(write=False)
        fn = (lambda x: table[x]) if k == 1 else (lambda *a: table[a])
        return cls(n, k, fn, dense=table)

    @classmethod
    def from_function(cls, n: int, k: int, fn: Callable) -> "Cochain":
        return cls(n, k, fn)

    def table(self) -> np.ndarray:
        if self.dense is not None:
            return self.dense
        if self.k > 2:
            raise ValueError("cochains of arity >= 3 are evaluator-only")
        if self.k == 2 and self.n > DENSE_TABLE_MAX:
            raise ValueError(f"2-cochain tables are materialized only for n <= {DENSE_TABLE_MAX}")
        if self.builder is not None:
            out = self.builder()
        else:
            X = elements(self.n)
            grid = np.ix_(*([X] * self.k))
            out = np.broadcast_to(self.fn(*grid), (1 << self.n,) * self.k)
        out = np.ascontiguousarray(out, dtype=np.uint8)
        out.setflags(write=False)
        return out

    def with_table(self) -> "Cochain":
        """Same cochain, evaluation backed by its dense table."""
        return Cochain.from_table(self.table(), self.n)

    def __add__(self, other: "Cochain") -> "Cochain":
        if (self.n, self.k) != (other.n, other.k):
            raise ValueError("cochain shapes differ")
        fn = lambda *a: self.fn(*a) ^ other.fn(*a)
        builder = None
        if self.k <= 2 and self.n <= DENSE_TABLE_MAX:
            builder = lambda: self.table() ^ other.table()
        return Cochain(self.n, self.k, fn, builder=builder)

    def pullback(self, T: Gl2Map) -> "Cochain":
        """``c'(x, y, ...) = c(T x, T y, ...)``."""
        if T.n != self.n:
            raise ValueError("arity mismatch")
        return Cochain(self.n, self.k, lambda *a: self.fn(*(T(v) for v in a)))

    def is_zero(self) -> bool:
        return not self.table().any()


def zero_cochain(n: int, k: int) -> Cochain:
    return Cochain(n, k, lambda *a: np.zeros(np.broadcast(*a).shape, dtype=np.uint8) if any(isinstance(v, np.ndarray) for v in a) else 0)


def as_evaluator(c) -> Callable:
    if isinstance(c, Cochain):
        return c.fn
    if isinstance(c, BoolPoly):
        return c.evaluate
    if callable(c):
        return c
    raise TypeError(f"cannot evaluate {type(c).__name__}")


def _arity_of(c) -> int:
    return c.n


def coboundary(c: Cochain) -> Cochain:
    """The group-cohomology coboundary of a k-cochain.

    δc(g1..g_{k+1}) = c(g2..g_{k+1}) + Σ_i c(.., g_i+g_{i+1}, ..) + c(g1..g_k).
    """
    k, fn = c.k, c.fn

    def d(*g):
        out = fn(*g[1:])
        for i in range(k):
            out = out ^ fn(*g[:i], g[i] ^ g[i + 1], *g[i + 2:])
        return out ^ fn(*g[:k])

    return Cochain(c.n, k + 1, d)


def delta1(b) -> Cochain:
    """δb(x, y) = b(x+y) + b(x) + b(y)."""
    fn = as_evaluator(b)
    return Cochain(_arity_of(b), 2, lambda x, y: fn(x ^ y) ^ fn(x) ^ fn(y))


def delta2_of_cochain2(f: Cochain) -> Cochain:
    """φ(x,y,z) = f(y,z) + f(x+y,z) + f(x,y+z) + f(x,y)."""
    if f.k != 2:
        raise ValueError("expected a 2-cochain")
    return coboundary(f)


def polarize(alpha, k: int) -> Cochain:
    """The k-th polarization δ_k α: sum of α over all nonempty subset sums."""
    fn = as_evaluator(alpha)
    n = _arity_of(alpha)

    def d(*g):
        out = 0
        for r in range(1, k + 2):
            for sub in itertools.combinations(g, r):
                s = sub[0]
                for v in sub[1:]:
                    s = s ^ v
                out = out ^ fn(s)
        return out

    return Cochain(n, k + 1, d)


def delta2_of_fn(alpha) -> Cochain:
    """Seven-term polarization of a one-argument function."""
    return polarize(alpha, 2)


def delta3(alpha) -> Cochain:
    """Fifteen-term operator.

    Vanishes identically iff α is a polynomial of degree <= 3 without constant
    term (α(0) = 0 is forced: δ3 of the constant 1 is 15 = 1 mod 2).
    """
    return polarize(alpha, 3)


def partial_delta(c: Cochain, slot: int) -> Cochain:
    """Coboundary with respect to the argument ``slot`` only, the others frozen.

    ``partial_delta(beta, 0)(x, y, z) = beta(x+y, z) + beta(x, z) + beta(y, z)``.
    """
    k, fn = c.k, c.fn
    if not 0 <= slot < k:
        raise ValueError("slot out of range")

    def d(*g):
        pre, (a, b), post = g[:slot], g[slot:slot + 2], g[slot + 2:]
        return fn(*pre, a ^ b, *post) ^ fn(*pre, a, *post) ^ fn(*pre, b, *post)

    return Cochain(c.n, k + 1, d)


# ---------------------------------------------------------------------------
# Boolean polynomials
# ---------------------------------------------------------------------------


def _mono_key(m: int) -> tuple:
    idx = tuple(i + 1 for i in range(m.bit_length()) if (m >> i) & 1)
    return (-len(idx), idx)


@dataclass(frozen=True)
class BoolPoly:
    """A function (Z2)^n -> Z2 in algebraic normal form.

    ``monomials`` holds one bitmask per monomial; the mask 0 is the constant 1.
    """

    n: int
    monomials: frozenset[int] = frozenset()

    def __post_init__(self):
        check_arity(self.n)
        mons = frozenset(int(m) for m in self.monomials)
        for m in mons:
            check_element(m, self.n)
        object.__setattr__(self, "monomials", mons)

    @classmethod
    def from_terms(cls, n: int, terms: Iterable[Iterable[int]]) -> "BoolPoly":
        """Build from 1-based index tuples; repeated monomials cancel mod 2."""
        acc: set[int] = set()
        for t in terms:
            m = 0
            for i in t:
                if not 1 <= i <= n:
                    raise ValueError(f"index {i} out of range 1..{n}")
                m |= 1 << (i - 1)
            acc ^= {m}
        return cls(n, frozenset(acc))

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return max((weight(m) for m in self.monomials), default=-1)

    def layer(self, d: int) -> frozenset[int]:
        return frozenset(m for m in self.monomials if weight(m) == d)

    def terms(self) -> list[tuple[int, ...]]:
        """Monomials as 1-based index tuples, canonical order."""
        return [_mono_key(m)[1] for m in sorted(self.monomials, key=_mono_key)]

    def evaluate(self, x):
        if isinstance(x, np.ndarray):
            out = np.zeros(x.shape, dtype=np.uint8)
            for m in self.monomials:
                out ^= ((x & m) == m).astype(np.uint8)
            return out
        x = int(x)
        return sum((x & m) == m for m in self.monomials) & 1

    __call__ = evaluate

    def truth_table(self) -> np.ndarray:
        t = np.zeros(1 << self.n, dtype=np.uint8)
        for m in self.monomials:
            t[m] ^= 1
        return mobius(t)

    def __add__(self, other: "BoolPoly") -> "BoolPoly":
        if self.n != other.n:
            raise ValueError("arity mismatch")
        return type(self)(self.n, self.monomials ^ other.monomials) if type(self) is type(other) else BoolPoly(self.n, self.monomials ^ other.monomials)

    def restrict_degree(self, low: int, high: int) -> "BoolPoly":
        return BoolPoly(self.n, frozenset(m for m in self.monomials if low <= weight(m) <= high))

    def cochain(self) -> Cochain:
        return Cochain(self.n, 1, self.evaluate, builder=self.truth_table)

    def __str__(self) -> str:
        if not self.monomials:
            return "0"
        return " + ".join("*".join(f"x{i}" for i in t) if t else "1" for t in self.terms())

    @classmethod
    def parse(cls, text: str, n: int) -> "BoolPoly":
        text = text.strip()
        if text == "0":
            return cls(n)
        terms = []
        for part in text.split("+"):
            part = part.strip()
            if part == "1":
                terms.append(())
                continue
            idx = []
            for fac in part.split("*"):
                fac = fac.strip()
                if not fac.startswith("x") or not fac[1:].isdigit():
                    raise ValueError(f"bad factor {fac!r}")
                idx.append(int(fac[1:]))
            terms.append(idx)
        return cls.from_terms(n, terms)


class CubicPoly(BoolPoly):
    """A Boolean polynomial of degree <= 3 with no constant term."""

    def __post_init__(self):
        super().__post_init__()
        if 0 in self.monomials:
            raise ValueError("cubic polynomials here have no constant term")
        if self.degree > 3:
            raise ValueError(f"degree {self.degree} > 3")

    @classmethod
    def coerce(cls, p: BoolPoly) -> "CubicPoly":
        return cls(p.n, p.monomials)

    @property
    def linear(self) -> frozenset[int]:
        return self.layer(1)

    @property
    def quadratic(self) -> frozenset[int]:
        return self.layer(2)

    @property
    def cubic(self) -> frozenset[int]:
        return self.layer(3)


def mobius(table: np.ndarray) -> np.ndarray:
    """The binary Möbius transform (its own inverse over Z2)."""
    t = np.array(table, dtype=np.uint8) & 1
    size = t.shape[0]
    n = size.bit_length() - 1
    if size != 1 << n:
        raise ValueError("table length must be a power of two")
    for i in range(n):
        v = t.reshape(-1, 2, 1 << i)
        v[:, 1, :] ^= v[:, 0, :]
    return t


def anf(t) -> BoolPoly:
    """Algebraic normal form of a one-argument truth table (or cochain)."""
    if isinstance(t, Cochain):
        if t.k != 1:
            raise ValueError("anf expects a 1-cochain")
        t = t.table()
    coeffs = mobius(np.asarray(t))
    n = coeffs.shape[0].bit_length() - 1
    return BoolPoly(max(n, 1), frozenset(int(m) for m in np.flatnonzero(coeffs)))


# ---------------------------------------------------------------------------
# Polynomials in two vector arguments (twisting functions)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class XYPoly:
    """A Boolean polynomial f(x, y): monomials are pairs (x-mask, y-mask)."""

    n: int
    monomials: frozenset[tuple[int, int]] = frozenset()

    @classmethod
    def build(cls, n: int, pairs: Iterable[tuple[int, int]]) -> "XYPoly":
        acc: set[tuple[int, int]] = set()
        for xm, ym in pairs:
            acc ^= {(int(xm), int(ym))}
        return cls(n, frozenset(acc))

    def __add__(self, other: "XYPoly") -> "XYPoly":
        if self.n != other.n:
            raise ValueError("arity mismatch")
        return XYPoly(self.n, self.monomials ^ other.monomials)

    def evaluate(self, x, y):
        if isinstance(x, np.ndarray) or isinstance(y, np.ndarray):
            out = np.zeros(np.broadcast(x, y).shape, dtype=np.uint8)
            for xm, ym in self.monomials:
                out ^= (((x & xm) == xm) & ((y & ym) == ym)).astype(np.uint8)
            return out
        x, y = int(x), int(y)
        return sum((x & xm) == xm and (y & ym) == ym for xm, ym in self.monomials) & 1

    def table(self) -> np.ndarray:
        # group by y-monomial: f(x,y) = Σ_ym [y ⊇ ym] g_ym(x)
        X = elements(self.n)
        groups: dict[int, np.ndarray] = {}
        for xm, ym in self.monomials:
            g = groups.setdefault(ym, np.zeros(1 << self.n, dtype=np.uint8))
            g ^= ((X & xm) == xm).astype(np.uint8)
        out = np.zeros((1 << self.n, 1 << self.n), dtype=np.uint8)
        for ym, g in groups.items():
            if g.any():
                out ^= np.outer(g, ((X & ym) == ym).astype(np.uint8))
        return out

    def cochain(self) -> Cochain:
        return Cochain(self.n, 2, self.evaluate, builder=self.table)

    def __str__(self) -> str:
        if not self.monomials:
            return "0"

        def key(p):
            xm, ym = p
            return (-(weight(xm) + weight(ym)), _mono_key(xm | ym)[1], -xm)

        def render(p):
            xm, ym = p
            facs = [f"x{i + 1}" for i in range(self.n) if (xm >> i) & 1]
            facs += [f"y{i + 1}" for i in range(self.n) if (ym >> i) & 1]
            return "*".join(facs) or "1"

        return " + ".join(render(p) for p in sorted(self.monomials, key=key))


def sample_elements(rng: np.random.Generator, n: int, size) -> np.ndarray:
    return rng.integers(0, 1 << n, size=size, dtype=np.int64)
