"""Twisting functions f(x, y) on (Z2)^n and their quasialgebra data.

Sign convention (frozen): for every family the generators u_1..u_p square to
+1 and u_{p+1}..u_n square to -1.  For O and Cl the closed form already gives
u_i^2 = -1, so the correction sum x_i y_i runs over i <= p.  The cubic-only M
form gives u_i^2 = +1, so there the correction runs over i > p.  Complex
algebras are modelled by p = n.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import gf2core as g
from .gf2core import BoolPoly, Cochain, CubicPoly, Gl2Map, XYPoly

FAMILIES = ("O", "M", "Cl", "Custom")
EAGER_TABLE_MAX = 10
RECOVER_MAX = 16


class SymmetryError(ValueError):
    """φ is not symmetric, so no generating function exists."""

    def __init__(self, witness):
        self.witness = witness
        x, y, z = witness
        super().__init__(f"association bit is not symmetric at (x,y,z)=({x}, {y}, {z})")


class ConsistencyError(RuntimeError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


# ---------------------------------------------------------------------------
# closed forms
# ---------------------------------------------------------------------------


def _popcount(v):
    if isinstance(v, np.ndarray):
        return np.bitwise_count(v).astype(np.int64)
    return int(v).bit_count()


def cubic_part(n: int, x, y):
    """Σ_{i<j<k} (x_i x_j y_k + x_i y_j x_k + y_i x_j x_k), via prefix popcounts."""
    out = 0
    for k in range(n):
        below = (1 << k) - 1
        above = g.all_ones(n) & ~((1 << (k + 1)) - 1)
        lo = _popcount(x & below)
        hi = _popcount(x & above)
        # pairs of x-bits on either side of a y-bit, in the three positions
        c = (lo * (lo - 1) // 2) + lo * hi + (hi * (hi - 1) // 2)
        out = out + ((y >> k) & 1) * c
    return out & 1


def upper_part(n: int, x, y):
    """Σ_{i<=j} x_i y_j."""
    out = 0
    for j in range(n):
        out = out + ((y >> j) & 1) * _popcount(x & ((1 << (j + 1)) - 1))
    return out & 1


def signature_mask(family: str, n: int, p: int) -> int:
    """Indices i (as a bitmask) carrying the correction term x_i y_i."""
    low = (1 << p) - 1
    if family == "M":
        return g.all_ones(n) & ~low
    return low


def family_poly(family: str, n: int, p: int) -> XYPoly:
    """The twisting function of a family as an explicit polynomial in x and y."""
    pairs = []
    if family in ("O", "M"):
        for i, j, k in itertools.combinations(range(n), 3):
            xi, xj, xk = 1 << i, 1 << j, 1 << k
            pairs += [(xi | xj, xk), (xi | xk, xj), (xj | xk, xi)]
    if family in ("O", "Cl"):
        for i in range(n):
            for j in range(i, n):
                pairs.append((1 << i, 1 << j))
    sig = signature_mask(family, n, p)
    pairs += [(1 << i, 1 << i) for i in range(n) if (sig >> i) & 1]
    return XYPoly.build(n, pairs)


def _family_evaluator(family: str, n: int, p: int):
    sig = signature_mask(family, n, p)

    def f(x, y):
        v = _popcount(x & y & sig)
        if family in ("O", "M"):
            v = v + cubic_part(n, x, y)
        if family in ("O", "Cl"):
            v = v + upper_part(n, x, y)
        if isinstance(v, np.ndarray):
            return (v & 1).astype(np.uint8)
        return int(v) & 1

    return f


# ---------------------------------------------------------------------------
# TwistSpec
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class TwistSpec:
    family: str
    n: int
    p: int = 0
    custom: Optional[Cochain] = None
    poly: Optional[XYPoly] = field(default=None, repr=False)
    cochain: Cochain = field(init=False, repr=False)

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        g.check_arity(self.n)
        if self.family in ("O", "M") and self.n < 3:
            raise ValueError("O and M need n >= 3")
        if not 0 <= self.p <= self.n:
            raise ValueError(f"signature p={self.p} outside 0..{self.n}")
        if self.family == "Custom":
            if self.custom is None or self.custom.k != 2 or self.custom.n != self.n:
                raise ValueError("Custom twist needs a 2-cochain of matching arity")
            c = self.custom
        else:
            c = Cochain(self.n, 2, _family_evaluator(self.family, self.n, self.p))
        if self.n <= EAGER_TABLE_MAX:
            c = c.with_table()
        object.__setattr__(self, "cochain", c)

    @property
    def q(self) -> int:
        return self.n - self.p

    def __call__(self, x, y):
        return self.cochain.fn(x, y)

    def table(self) -> np.ndarray:
        return self.cochain.table()

    def polynomial(self) -> XYPoly:
        if self.poly is not None:
            return self.poly
        if self.family == "Custom":
            raise ValueError("custom twist has no stored polynomial")
        return family_poly(self.family, self.n, self.p)

    def pullback(self, T: Gl2Map) -> "TwistSpec":
        """The twist (x, y) ↦ f(T x, T y)."""
        return TwistSpec("Custom", self.n, custom=self.cochain.pullback(T))

    def plus(self, other: Cochain) -> "TwistSpec":
        return TwistSpec("Custom", self.n, custom=self.cochain + other)

    def to_json(self) -> dict:
        if self.family == "Custom":
            raise ValueError("custom twists have no JSON form")
        return {"family": self.family, "n": self.n, "p": self.p}

    @classmethod
    def from_json(cls, d: dict) -> "TwistSpec":
        return make_twist(d["family"], int(d["n"]), int(d.get("p", 0)))

    def label(self) -> str:
        if self.family == "Custom":
            return f"Custom{self.n}"
        return f"{self.family}_{{{self.p},{self.q}}}"


def make_twist(family: str, n: int, p: int = 0) -> TwistSpec:
    return TwistSpec(family, n, p)


def complex_twist(family: str, n: int) -> TwistSpec:
    """Complex-mode representative: all generators square to +1."""
    return TwistSpec(family, n, n)


def custom_twist(table) -> TwistSpec:
    c = Cochain.from_table(table)
    return TwistSpec("Custom", c.n, custom=c)


def random_twist(rng: np.random.Generator, n: int) -> TwistSpec:
    """Uniform random twisting function with f(0, .) = f(., 0) = 0."""
    t = rng.integers(0, 2, size=(1 << n, 1 << n), dtype=np.uint8)
    t[0, :] = 0
    t[:, 0] = 0
    return custom_twist(t)


def beta_of(f: TwistSpec) -> Cochain:
    fn = f.cochain.fn
    c = Cochain(f.n, 2, lambda x, y: fn(x, y) ^ fn(y, x))
    if f.n <= EAGER_TABLE_MAX:
        t = f.table()
        c = Cochain.from_table(t ^ t.T)
    return c


def phi_of(f: TwistSpec) -> Cochain:
    return g.delta2_of_cochain2(f.cochain)


def phi_table(f: TwistSpec) -> np.ndarray:
    """Dense φ table, only for small n."""
    if f.n > 7:
        raise ValueError("dense φ tables are limited to n <= 7")
    t = f.table()
    X = np.arange(1 << f.n)
    x, y, z = X[:, None, None], X[None, :, None], X[None, None, :]
    return t[y, z] ^ t[x ^ y, z] ^ t[x, y ^ z] ^ t[x, y]


# ---------------------------------------------------------------------------
# generating functions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneratingFunction:
    alpha: CubicPoly
    normalized: bool = field(init=False)

    def __post_init__(self):
        a = self.alpha
        if not isinstance(a, CubicPoly):
            object.__setattr__(self, "alpha", CubicPoly.coerce(a))
        a = self.alpha
        norm = a.evaluate(0) == 0 and all(a.evaluate(1 << i) == 1 for i in range(a.n))
        object.__setattr__(self, "normalized", bool(norm))

    @property
    def n(self) -> int:
        return self.alpha.n

    def __call__(self, x):
        return self.alpha.evaluate(x)

    def table(self) -> np.ndarray:
        return self.alpha.truth_table()

    def weight_profile(self, upto: Optional[int] = None) -> list[int]:
        """α on the element 1..1 0..0 of each weight w = 1..upto."""
        upto = self.n if upto is None else upto
        return [int(self.alpha.evaluate(g.all_ones(w))) for w in range(1, upto + 1)]

    def __str__(self) -> str:
        return str(self.alpha)


def _layer(n: int, d: int) -> list[tuple[int, ...]]:
    return list(itertools.combinations(range(1, n + 1), d))


def closed_alpha(family: str, n: int) -> GeneratingFunction:
    if family == "O":
        degs = (3, 2, 1)
    elif family == "M":
        degs = (3, 1)
    elif family == "Cl":
        degs = (2, 1)
    else:
        raise ValueError(f"no closed form for family {family!r}")
    terms = [t for d in degs for t in _layer(n, d)]
    return GeneratingFunction(CubicPoly.from_terms(n, terms))


def _beta_columns(f: TwistSpec, X: np.ndarray) -> list[np.ndarray]:
    """β(X, e_i) for each i, evaluated on the array X."""
    out = []
    for i in range(f.n):
        e = np.int64(1 << i)
        out.append((f.cochain.fn(X, e) ^ f.cochain.fn(e, X)).astype(np.uint8))
    return out


def _sample_triples(rng, n, count):
    return tuple(g.sample_elements(rng, n, count) for _ in range(3))


def check_phi_symmetric(f: TwistSpec, seed: int = 0, samples: int = 10_000) -> None:
    """Raise SymmetryError with a witness if φ is not symmetric."""
    n = f.n
    if n <= 6:
        phi = phi_table(f)
        for perm in ((1, 0, 2), (0, 2, 1)):
            bad = np.argwhere(phi != phi.transpose(perm))
            if len(bad):
                x, y, z = (int(v) for v in bad[0])
                raise SymmetryError((x, y, z))
        return
    fn = phi_of(f).fn
    basis = np.array([1 << i for i in range(n)], dtype=np.int64)
    bx, by, bz = np.meshgrid(basis, basis, basis, indexing="ij")
    rng = np.random.default_rng(seed)
    rx, ry, rz = _sample_triples(rng, n, samples)
    for x, y, z in ((bx.ravel(), by.ravel(), bz.ravel()), (rx, ry, rz)):
        a, b, c = fn(x, y, z), fn(y, x, z), fn(x, z, y)
        bad = np.flatnonzero((a != b) | (a != c))
        if len(bad):
            k = bad[0]
            raise SymmetryError((int(x[k]), int(y[k]), int(z[k])))


def recover_alpha(f: TwistSpec, seed: int = 0) -> GeneratingFunction:
    """The unique normalized generating function of ``f``.

    Built by induction on the lowest set bit, then checked for path
    independence, δα = β and δ₂α = φ.
    """
    n = f.n
    if n > RECOVER_MAX:
        raise ValueError(f"recover_alpha is limited to n <= {RECOVER_MAX}")
    check_phi_symmetric(f, seed=seed)
    N = 1 << n
    X = np.arange(N, dtype=np.int64)
    cols = _beta_columns(f, X)
    alpha = np.zeros(N, dtype=np.uint8)
    for x in range(1, N):
        low = x & -x
        rest = x ^ low
        i = low.bit_length() - 1
        alpha[x] = 1 if rest == 0 else cols[i][rest] ^ alpha[rest] ^ 1
    # every descent e_i ⊂ x must give the same value
    for i in range(n):
        has = (X >> i) & 1 == 1
        rest = X[has] ^ (1 << i)
        pred = cols[i][rest] ^ alpha[rest] ^ 1
        pred[rest == 0] = 1
        bad = np.flatnonzero(pred != alpha[X[has]])
        if len(bad):
            raise ConsistencyError("induction is path dependent", witness=(int(X[has][bad[0]]), i + 1))
    a_fn = lambda v: alpha[v]
    beta = beta_of(f)
    rng = np.random.default_rng(seed)
    if n <= EAGER_TABLE_MAX:
        da = alpha[X[:, None] ^ X[None, :]] ^ alpha[:, None] ^ alpha[None, :]
        bad = np.argwhere(da != beta.table())
    else:
        x, y = g.sample_elements(rng, n, 20_000), g.sample_elements(rng, n, 20_000)
        bad = np.flatnonzero(g.delta1(Cochain(n, 1, a_fn)).fn(x, y) != beta.fn(x, y))
        bad = [(x[k], y[k]) for k in bad]
    if len(bad):
        raise ConsistencyError("δα differs from β", witness=tuple(int(v) for v in bad[0]))
    d2 = g.delta2_of_fn(Cochain(n, 1, a_fn))
    phi = phi_of(f)
    if n <= 6:
        P = phi_table(f)
        x, y, z = X[:, None, None], X[None, :, None], X[None, None, :]
        bad = np.argwhere(d2.fn(x, y, z) != P)
        bad = [tuple(v) for v in bad]
    else:
        x, y, z = _sample_triples(rng, n, 10_000)
        bad = [(x[k], y[k], z[k]) for k in np.flatnonzero(d2.fn(x, y, z) != phi.fn(x, y, z))]
    if len(bad):
        raise ConsistencyError("δ₂α differs from φ", witness=tuple(int(v) for v in bad[0]))
    poly = g.anf(alpha)
    if poly.degree > 3:
        raise ConsistencyError(f"recovered α has degree {poly.degree}")
    return GeneratingFunction(CubicPoly(n, poly.monomials))


def alpha_to_twist(alpha) -> TwistSpec:
    """A twisting function with f(x, x) = α(x), monomial by monomial."""
    a = alpha.alpha if isinstance(alpha, GeneratingFunction) else alpha
    if a.degree > 3:
        raise ValueError(f"degree {a.degree} > 3 has no twisting function")
    if 0 in a.monomials:
        raise ValueError("α must vanish at 0")
    poly = monomial_twist_poly(a)
    c = Cochain(a.n, 2, poly.evaluate, builder=poly.table)
    return TwistSpec("Custom", a.n, custom=c, poly=poly)


def monomial_twist_poly(a: BoolPoly) -> XYPoly:
    pairs = []
    for m in a.monomials:
        idx = [1 << i for i in range(a.n) if (m >> i) & 1]
        if len(idx) == 3:
            i, j, k = idx
            pairs += [(i | j, k), (i | k, j), (j | k, i)]
        elif len(idx) == 2:
            pairs.append((idx[0], idx[1]))
        else:
            pairs.append((idx[0], idx[0]))
    return XYPoly.build(a.n, pairs)


# ---------------------------------------------------------------------------
# equivalence
# ---------------------------------------------------------------------------


def is_coboundary(c: Cochain) -> Optional[Cochain]:
    """Some b with δb = c, or None."""
    t = c.table()
    if (t != t.T).any() or np.diagonal(t).any():
        return None
    n = c.n
    N = 1 << n
    b = np.zeros(N, dtype=np.uint8)
    for x in range(1, N):
        low = x & -x
        rest = x ^ low
        if rest:
            b[x] = t[rest, low] ^ b[rest]
    X = np.arange(N)
    if (b[X[:, None] ^ X[None, :]] ^ b[:, None] ^ b[None, :] != t).any():
        return None
    return Cochain.from_table(b, n)


@dataclass(frozen=True)
class EquivalenceReport:
    coboundary: Optional[Cochain]
    signature_indices: frozenset
    verdict: str
    same_beta: bool
    same_phi: bool

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict,
            "signature_indices": sorted(self.signature_indices),
            "same_beta": self.same_beta,
            "same_phi": self.same_phi,
        }
        if self.coboundary is not None:
            out["coboundary"] = str(g.anf(self.coboundary))
        return out


def equivalence_report(f: TwistSpec, f2: TwistSpec) -> EquivalenceReport:
    """Write f - f2 as δb + Σ_{i∈S} x_i y_i if possible.

    Verdicts: "equivalent" (S empty: isomorphic over R by u_x ↦ ±u_x),
    "signature-equivalent" (isomorphic over C only) or "unknown".
    """
    if f.n != f2.n:
        raise ValueError("arity mismatch")
    n = f.n
    d = f.table() ^ f2.table()
    S = frozenset(i + 1 for i in range(n) if d[1 << i, 1 << i])
    X = np.arange(1 << n)
    smask = sum(1 << (i - 1) for i in S)
    diag = (np.bitwise_count(X[:, None] & X[None, :] & smask) & 1).astype(np.uint8)
    b = is_coboundary(Cochain.from_table(d ^ diag, n))
    same_beta = not (d ^ d.T).any()
    if n <= 6:
        same_phi = bool((phi_table(f) == phi_table(f2)).all())
    else:
        rng = np.random.default_rng(0)
        x, y, z = _sample_triples(rng, n, 10_000)
        same_phi = bool((phi_of(f).fn(x, y, z) == phi_of(f2).fn(x, y, z)).all())
    if b is None:
        verdict = "unknown"
    elif S:
        verdict = "signature-equivalent"
    else:
        verdict = "equivalent"
    return EquivalenceReport(b, S, verdict, bool(same_beta), same_phi)


def is_sn_invariant(alpha) -> bool:
    a = alpha.alpha if isinstance(alpha, GeneratingFunction) else alpha
    n = a.n
    structural = True
    for d in range(0, n + 1):
        layer = a.layer(d)
        if layer and len(layer) != len(_layer(n, d)):
            structural = False
            break
    # α is invariant iff it is constant on each weight class
    reps = [a.evaluate(g.all_ones(w)) for w in range(n + 1)]
    if n <= RECOVER_MAX:
        t = a.truth_table()
        w = np.bitwise_count(np.arange(1 << n))
        direct = bool((t == np.array(reps, dtype=np.uint8)[w]).all())
        if direct != structural:
            raise ConsistencyError("structural and evaluated invariance disagree")
    return structural


# ---------------------------------------------------------------------------
# tautologies
# ---------------------------------------------------------------------------


def _first_witness(mask, *arrays):
    idx = np.flatnonzero(np.broadcast_to(mask, np.broadcast(*arrays).shape).ravel())
    if not len(idx):
        return None
    k = idx[0]
    return tuple(int(np.broadcast_to(a, mask.shape).ravel()[k]) for a in arrays)


def hexagon_check(f: TwistSpec, samples: int = 10_000, seed: int = 0):
    """First triple violating either hexagon identity, or None.

    Exhaustive for n <= 6, sampled above.
    """
    n = f.n
    if n <= 6:
        P = phi_table(f)
        B = beta_of(f).table()
        X = np.arange(1 << n)
        x, y, z = X[:, None, None], X[None, :, None], X[None, None, :]
        phi = lambda a, b, c: P[a, b, c]
        beta = lambda a, b: B[a, b]
    else:
        rng = np.random.default_rng(seed)
        x, y, z = _sample_triples(rng, n, samples)
        phi, beta = phi_of(f).fn, beta_of(f).fn
    h1 = phi(x, y, z) ^ beta(x, y ^ z) ^ phi(y, z, x) ^ beta(z, x) ^ phi(y, x, z) ^ beta(x, y)
    h2 = phi(x, y, z) ^ beta(z, y) ^ phi(x, z, y) ^ beta(z, x) ^ phi(z, x, y) ^ beta(x ^ y, z)
    bad = (h1 | h2).astype(bool)
    return _first_witness(bad, x, y, z) if bad.any() else None


def pentagon_check(f: TwistSpec, samples: int = 10_000, seed: int = 0):
    """First quadruple with δφ ≠ 0, or None.  Exhaustive for n <= 5."""
    n = f.n
    if n <= 5:
        P = phi_table(f)
        X = np.arange(1 << n)
        x, y, z, t = (X.reshape([-1 if i == k else 1 for i in range(4)]) for k in range(4))
        phi = lambda a, b, c: P[a, b, c]
    else:
        rng = np.random.default_rng(seed)
        x, y, z, t = (g.sample_elements(rng, n, samples) for _ in range(4))
        phi = phi_of(f).fn
    d = phi(y, z, t) ^ phi(x ^ y, z, t) ^ phi(x, y ^ z, t) ^ phi(x, y, z ^ t) ^ phi(x, y, z)
    bad = d.astype(bool)
    return _first_witness(bad, x, y, z, t) if bad.any() else None


def quasialgebra_check(f: TwistSpec, samples: int = 100_000, seed: int = 0):
    """u_x u_y = (-1)^β u_y u_x and u_x(u_y u_z) = (-1)^φ (u_x u_y) u_z on basis elements.

    Both sides are computed from f by direct multiplication of signs, so this
    checks the β and φ evaluators against the product rule.
    """
    n = f.n
    fn = f.cochain.fn
    beta, phi = beta_of(f).fn, phi_of(f).fn
    if n <= 4:
        X = np.arange(1 << n)
        x, y, z = (a.ravel() for a in np.meshgrid(X, X, X, indexing="ij"))
    else:
        rng = np.random.default_rng(seed)
        x, y, z = _sample_triples(rng, n, samples)
    comm = fn(x, y) ^ fn(y, x) ^ beta(x, y)
    left = fn(y, z) ^ fn(x, y ^ z)       # u_x (u_y u_z)
    right = fn(x, y) ^ fn(x ^ y, z)      # (u_x u_y) u_z
    assoc = left ^ right ^ phi(x, y, z)
    bad = (np.asarray(comm) | np.asarray(assoc)).astype(bool)
    return _first_witness(bad, x, y, z) if bad.any() else None


def negative_square_count(f: TwistSpec) -> int:
    """Number of x with u_x^2 = -1; preserved by every real graded isomorphism."""
    X = g.elements(f.n)
    return int(np.count_nonzero(np.asarray(f.cochain.fn(X, X))))


def all_gl_maps(n: int):
    """Every invertible n x n matrix over Z2 (n <= 4), as Gl2Map."""
    if n > 4:
        raise ValueError("exhaustive GL(n,2) enumeration is limited to n <= 4")
    for rows in itertools.product(range(1, 1 << n), repeat=n):
        if g.gf2_rank(rows) == n:
            yield Gl2Map(rows)


def find_graded_isomorphism(f: TwistSpec, f2: TwistSpec) -> Optional[Gl2Map]:
    """A map T with f - f2∘T a coboundary, i.e. u_x ↦ ±u'_{Tx} is a real isomorphism.

    Any real graded isomorphism has this form, so None means there is none.
    """
    if f.n != f2.n:
        raise ValueError("arity mismatch")
    if negative_square_count(f) != negative_square_count(f2):
        return None
    n = f.n
    X = np.arange(1 << n)
    t1, t2 = f.table(), f2.table()
    for T in all_gl_maps(n):
        TX = np.asarray(T(X))
        d = t1 ^ t2[TX[:, None], TX[None, :]]
        if is_coboundary(Cochain.from_table(d, n)) is not None:
            return T
    return None
