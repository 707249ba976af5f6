"""Code loops: doubly even codes, the Golay code and the Parker loop."""

from __future__ import annotations

import itertools
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import gf2core as g
from .gf2core import BoolPoly, Cochain, XYPoly
from .twist import monomial_twist_poly

# right-hand 12x12 block of the Golay generator matrix; the left block is the identity
_GOLAY_RIGHT = """
101000111011
110100011101
011010001111
101101000111
110110100011
111011010001
011101101001
001110110101
000111011011
100011101101
010001110111
111111111110
"""


class TranscriptionError(AssertionError):
    pass


@dataclass(frozen=True)
class BinaryCode:
    """Span of ``generators`` (``length``-bit masks, column j = bit j)."""

    length: int
    generators: tuple[int, ...]

    def __post_init__(self):
        gens = tuple(int(v) for v in self.generators)
        object.__setattr__(self, "generators", gens)
        for v in gens:
            if v < 0 or v >> self.length:
                raise ValueError("generator longer than the code length")
        if g.gf2_rank(gens) != len(gens):
            raise ValueError("generators are linearly dependent")

    @property
    def dimension(self) -> int:
        return len(self.generators)

    def encode(self, x):
        """XOR of the generator rows selected by the bits of ``x`` (vectorized)."""
        if not isinstance(x, np.ndarray):
            g.check_element(x, max(self.dimension, 1)) if self.dimension else None
            out = 0
            for i, r in enumerate(self.generators):
                if (x >> i) & 1:
                    out ^= r
            return out
        out = np.zeros(x.shape, dtype=np.int64)
        for i, r in enumerate(self.generators):
            out ^= np.where((x >> i) & 1 == 1, np.int64(r), np.int64(0))
        return out

    def codewords(self) -> np.ndarray:
        if self.dimension > 16:
            raise ValueError("enumeration is limited to dimension <= 16")
        return self.encode(np.arange(1 << self.dimension, dtype=np.int64))

    def weight_distribution(self) -> dict[int, int]:
        w = np.bitwise_count(self.codewords())
        vals, counts = np.unique(w, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}

    def row_strings(self) -> list[str]:
        return [g.to_bits(r, self.length) for r in self.generators]


def encode(code: BinaryCode, x):
    return code.encode(x)


def is_doubly_even(code: BinaryCode) -> bool:
    return all(w % 4 == 0 for w in code.weight_distribution())


def golay_rows() -> list[int]:
    rows = []
    for i, line in enumerate(_GOLAY_RIGHT.split()):
        bits = [0] * 12
        bits[i] = 1
        bits += [int(c) for c in line]
        rows.append(sum(b << j for j, b in enumerate(bits)))
    return rows


def golay_intersections() -> dict[str, set[int]]:
    rows = golay_rows()
    pc = lambda v: v.bit_count()
    return {
        "weights": {pc(r) for r in rows[:11]},
        "weight12": {pc(rows[11])},
        "pairwise": {pc(rows[i] & rows[j]) for i, j in itertools.combinations(range(11), 2)},
        "with12": {pc(rows[11] & rows[i]) for i in range(11)},
    }


def golay_code() -> BinaryCode:
    """The Golay code from the printed generator matrix, with transcription self-checks.

    Rows 1-11 must have weight 8 and row 12 weight 12, row 12 must meet every
    other row in 6 places, and rows 1-11 must meet pairwise in a multiple of 4
    (so that they commute).  The printed rows actually meet in exactly 4.
    """
    s = golay_intersections()
    checks = [
        (s["weights"] == {8}, f"rows 1-11 weights {s['weights']}"),
        (s["weight12"] == {12}, f"row 12 weight {s['weight12']}"),
        (s["with12"] == {6}, f"|l12 & li| = {s['with12']}"),
        (all(v % 4 == 0 for v in s["pairwise"]), f"|li & lj| = {s['pairwise']}"),
    ]
    for ok, msg in checks:
        if not ok:
            raise TranscriptionError(f"Golay transcription self-check failed: {msg}")
    return BinaryCode(24, tuple(golay_rows()))


# ---------------------------------------------------------------------------
# Parker loop
# ---------------------------------------------------------------------------


def _mod11(i: int) -> int:
    return (i - 1) % 11 + 1


def parker_alpha_poly() -> BoolPoly:
    """The Parker-loop generating function as an ANF polynomial on (Z2)^12."""
    terms = []
    for i in range(1, 12):
        for k in (5, 8, 9):
            terms.append((i, _mod11(i + 1), _mod11(i + k)))
        for k in (6, 8):
            terms.append((i, _mod11(i + 2), _mod11(i + k)))
    for i in range(1, 12):
        terms.append((i, 12))
    for i, j in itertools.combinations(range(1, 12), 2):
        terms.append((i, j, 12))
    for t in terms:
        if len(set(t)) != len(t):
            raise TranscriptionError(f"degenerate monomial {t}")
    return BoolPoly.from_terms(12, terms)


_PARKER = None


def parker_alpha(x):
    global _PARKER
    if _PARKER is None:
        _PARKER = parker_alpha_poly()
    if not isinstance(x, np.ndarray):
        g.check_element(x, 12)
    return _PARKER.evaluate(x)


@dataclass(frozen=True, eq=False)
class LoopSpec:
    """Loop {±u_x} with u_x u_y = (-1)^f(x,y) u_{x+y}."""

    n: int
    f: Cochain
    linear_correction: frozenset = field(default=frozenset())

    @property
    def order(self) -> int:
        return 1 << (self.n + 1)

    def __call__(self, x, y):
        return self.f.fn(x, y)


def parker_factor_set() -> LoopSpec:
    """Monomial-rule twist of the quadratic and cubic part of α_G, plus x12 y12.

    If axiom (1) fails, the diagonal residual is absorbed by linear terms
    x_i y_i (only possible when it is linear); the indices are recorded.
    """
    alpha = parker_alpha_poly().restrict_degree(2, 3)
    poly = monomial_twist_poly(alpha) + XYPoly.build(12, [(1 << 11, 1 << 11)])
    code = golay_code()
    X = g.elements(12)
    quarter = (np.bitwise_count(code.encode(X)) // 4) & 1
    diag = poly.evaluate(X, X)
    resid = (quarter ^ diag).astype(np.uint8)
    correction: frozenset = frozenset()
    if resid.any():
        lin = g.anf(resid)
        if lin.degree != 1 or 0 in lin.monomials:
            raise TranscriptionError("diagonal residual of the factor set is not linear")
        correction = frozenset(m.bit_length() for m in lin.monomials)
        poly = poly + XYPoly.build(12, [(1 << (i - 1), 1 << (i - 1)) for i in correction])
    table = poly.table()
    c = Cochain.from_table(table, 12)
    return LoopSpec(12, c, correction)


# ---------------------------------------------------------------------------
# verification
# ---------------------------------------------------------------------------


@dataclass
class AxiomResult:
    ok: bool
    checked: int
    witness: Optional[tuple] = None


@dataclass
class FactorSetReport:
    axioms: dict[str, AxiomResult]
    trilinear: bool
    seed: int

    @property
    def ok(self) -> bool:
        return self.trilinear and all(a.ok for a in self.axioms.values())

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "seed": self.seed,
            "trilinearity_certificate": self.trilinear,
            "axioms": {k: {"ok": a.ok, "checked": a.checked,
                           "witness": list(a.witness) if a.witness else None}
                       for k, a in self.axioms.items()},
        }


def resolve_threads(threads: Optional[int] = None) -> int:
    if threads is None:
        env = os.environ.get("ZEE2_THREADS")
        threads = int(env) if env else 1
    return max(1, int(threads))


def _dense_table(f: Cochain) -> Optional[np.ndarray]:
    try:
        return f.table()
    except ValueError:
        return None


def verify_factor_set(code: BinaryCode, f, samples: int = 100_000, seed: int = 0,
                      threads: Optional[int] = None) -> FactorSetReport:
    """Check the three code-loop factor-set axioms for ``f`` on ``code``."""
    fc = f.f if isinstance(f, LoopSpec) else f
    k = code.dimension
    if k == 0:
        empty = {name: AxiomResult(True, 0) for name in ("diagonal", "commutator", "associator")}
        return FactorSetReport(empty, True, seed)
    if fc.n != k:
        raise ValueError("factor set arity differs from code dimension")
    fn = fc.fn
    N = 1 << k
    X = g.elements(k)
    words = code.encode(X)
    axioms = {}

    # (1) f(x,x) = |x|/4
    d = np.asarray(fn(X, X))
    bad = np.flatnonzero(d != ((np.bitwise_count(words) // 4) & 1))
    axioms["diagonal"] = AxiomResult(not len(bad), N, (int(bad[0]),) if len(bad) else None)

    # (2) f(x,y) + f(y,x) = |x & y| / 2, all pairs, split by x-range
    table = _dense_table(fc)
    nthreads = resolve_threads(threads)

    def sweep(lo, hi):
        xs = X[lo:hi]
        if table is not None:
            lhs = table[lo:hi, :] ^ table[:, lo:hi].T
        else:
            lhs = np.asarray(fn(xs[:, None], X[None, :])) ^ np.asarray(fn(X[None, :], xs[:, None]))
        rhs = (np.bitwise_count(words[lo:hi, None] & words[None, :]) // 2) & 1
        bad = np.argwhere(lhs != rhs)
        return (int(xs[bad[0][0]]), int(bad[0][1])) if len(bad) else None

    step = max(1, min(256, N // nthreads or 1))
    ranges = [(lo, min(lo + step, N)) for lo in range(0, N, step)]
    if nthreads > 1:
        with ThreadPoolExecutor(nthreads) as ex:
            found = list(ex.map(lambda r: sweep(*r), ranges))
    else:
        found = [sweep(*r) for r in ranges]
    wit = next((w for w in found if w), None)
    axioms["commutator"] = AxiomResult(wit is None, N * N, wit)

    # (3) δf(x,y,z) = |x & y & z|, all ordered basis triples plus random triples
    phi = g.delta2_of_cochain2(fc).fn
    rng = np.random.default_rng(seed)
    B = np.array([1 << i for i in range(k)], dtype=np.int64)
    bx, by, bz = (v.ravel() for v in np.meshgrid(B, B, B, indexing="ij"))
    rx, ry, rz = (g.sample_elements(rng, k, samples) for _ in range(3))
    xs, ys, zs = (np.concatenate(p) for p in ((bx, rx), (by, ry), (bz, rz)))

    def triple(x, y, z):
        return np.bitwise_count(code.encode(x) & code.encode(y) & code.encode(z)) & 1

    lhs = np.asarray(phi(xs, ys, zs))
    rhs = triple(xs, ys, zs)
    bad = np.flatnonzero(lhs != rhs)
    axioms["associator"] = AxiomResult(not len(bad), len(xs),
                                       tuple(int(v[bad[0]]) for v in (xs, ys, zs)) if len(bad) else None)

    # both sides additive in the first slot on the samples; with symmetry this
    # extends basis agreement to all triples
    x2 = g.sample_elements(rng, k, samples)
    tri = True
    for side in (lambda a, b, c: np.asarray(phi(a, b, c)), triple):
        s = side(rx ^ x2, ry, rz) ^ side(rx, ry, rz) ^ side(x2, ry, rz)
        sym = (side(rx, ry, rz) != side(ry, rx, rz)) | (side(rx, ry, rz) != side(rx, rz, ry))
        tri = tri and not s.any() and not sym.any()
    return FactorSetReport(axioms, bool(tri), seed)


@dataclass
class MoufangResult:
    ok: bool
    checked: int
    exhaustive: bool
    witness: Optional[tuple[int, int, int]] = None


def moufang_check(L, trials: int = 100_000, seed: int = 0) -> MoufangResult:
    """u(v(uw)) = ((uv)u)w on basis triples; signs factor out, so unsigned triples suffice."""
    fc = L.f if isinstance(L, LoopSpec) else L
    f = fc.fn
    n = fc.n
    if n <= 5:
        X = g.elements(n)
        u, v, w = (a.ravel() for a in np.meshgrid(X, X, X, indexing="ij"))
        exhaustive = True
    else:
        rng = np.random.default_rng(seed)
        u, v, w = (g.sample_elements(rng, n, trials) for _ in range(3))
        exhaustive = False
    as_u8 = lambda a: np.asarray(a, dtype=np.uint8)
    lhs = as_u8(f(u, w)) ^ as_u8(f(v, u ^ w)) ^ as_u8(f(u, v ^ u ^ w))
    rhs = as_u8(f(u, v)) ^ as_u8(f(u ^ v, u)) ^ as_u8(f(v, w))
    bad = np.flatnonzero(lhs != rhs)
    wit = tuple(int(a[bad[0]]) for a in (u, v, w)) if len(bad) else None
    return MoufangResult(not len(bad), len(u), exhaustive, wit)


def loop_is_latin(L) -> bool:
    """Every row and column of the unsigned product table is a permutation."""
    fc = L.f if isinstance(L, LoopSpec) else L
    X = g.elements(fc.n)
    prod = X[:, None] ^ X[None, :]
    ok_rows = all(len(set(r)) == len(X) for r in prod)
    return ok_rows and all(len(set(c)) == len(X) for c in prod.T)


def dump_factor_set(L: LoopSpec, path) -> int:
    """Write the 2^(2n)-bit table; bit (x << n) | y, most significant bit of each byte first."""
    t = L.f.table()
    data = np.packbits(t.ravel(), bitorder="big")
    with open(path, "wb") as fh:
        fh.write(data.tobytes())
    return int(data.size)


def read_factor_set(path, n: int = 12) -> np.ndarray:
    raw = np.fromfile(path, dtype=np.uint8)
    return np.unpackbits(raw, bitorder="big")[: 1 << (2 * n)].reshape(1 << n, 1 << n)
