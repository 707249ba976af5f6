"""Exact integer polynomials and Hurwitz-Radon square identities."""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Mapping, Optional

import numpy as np

from . import gf2core as g
from .twist import make_twist, upper_part

SYMBOLIC_MAX = 7
DEFAULT_SEED = 20240607


class IntPoly:
    """Polynomial with integer coefficients in named commuting variables.

    A monomial is a sorted tuple of variable names, repeated per exponent.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[tuple, int] | None = None):
        self.terms = {tuple(sorted(m)): int(c) for m, c in (terms or {}).items() if c}

    @classmethod
    def var(cls, name: str) -> "IntPoly":
        return cls({(name,): 1})

    @classmethod
    def const(cls, c: int) -> "IntPoly":
        return cls({(): c})

    def __add__(self, o: "IntPoly") -> "IntPoly":
        out = dict(self.terms)
        for m, c in o.terms.items():
            out[m] = out.get(m, 0) + c
        return IntPoly(out)

    def __neg__(self):
        return IntPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        if isinstance(o, int):
            return IntPoly({m: c * o for m, c in self.terms.items()})
        out: dict[tuple, int] = defaultdict(int)
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                out[tuple(sorted(m1 + m2))] += c1 * c2
        return IntPoly(out)

    __rmul__ = __mul__

    def __eq__(self, o):
        return isinstance(o, IntPoly) and self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def square(self) -> "IntPoly":
        return self * self

    def monomials(self) -> list[tuple]:
        """Canonical graded lexicographic order."""
        return sorted(self.terms, key=lambda m: (-len(m), m))

    def evaluate(self, point: Mapping[str, int]) -> int:
        total = 0
        for m, c in self.terms.items():
            v = c
            for name in m:
                v *= point[name]
            total += v
        return total

    def variables(self) -> set[str]:
        return {v for m in self.terms for v in m}

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m in self.monomials():
            c = self.terms[m]
            body = "*".join(m)
            sgn = "-" if c < 0 else "+"
            mag = abs(c)
            if not body:
                tok = str(mag)
            else:
                tok = body if mag == 1 else f"{mag}*{body}"
            parts.append((sgn, tok))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sgn, tok in parts[1:]:
            out += f" {sgn} {tok}"
        return out


def poly_sum(polys: Iterable[IntPoly]) -> IntPoly:
    acc: dict[tuple, int] = defaultdict(int)
    for p in polys:
        for m, c in p.terms.items():
            acc[m] += c
    return IntPoly(acc)


def rho(N: int) -> int:
    """Hurwitz-Radon number: rho(2^(4m+l) * odd) = 8m + 2^l."""
    if N < 1:
        raise ValueError("N must be a positive integer")
    e = (N & -N).bit_length() - 1
    m, l = divmod(e, 4)
    return 8 * m + (1 << l)


def _check_hr(n: int) -> None:
    if n < 1:
        raise ValueError("n must be positive")
    if n % 4 == 0:
        raise ValueError("n must not be a multiple of 4")


def hr_set(n: int) -> list[int]:
    _check_hr(n)
    full = g.all_ones(n)
    e = [0] + [1 << (i - 1) for i in range(1, n + 1)]  # e_0 = 0
    bar = [full ^ v for v in e]                         # ē_0 = 1..1
    r = n % 4
    if r == 1:
        H = e[1:] + bar[1:]
    elif r == 2:
        H = e + [e[1] | e[j] for j in range(2, n + 1)]
    else:
        H = e + bar
    if len(set(H)) != len(H) or len(H) != rho(1 << n):
        raise AssertionError(f"H_{n} has {len(set(H))} elements, expected {rho(1 << n)}")
    return sorted(H)


def a_var(x: int, n: int) -> str:
    return "a_" + g.to_bits(x, n)


def b_var(y: int, n: int) -> str:
    return "b_" + g.to_bits(y, n)


@dataclass(frozen=True)
class HrInstance:
    n: int
    H: tuple[int, ...]
    signs: tuple[tuple[int, ...], ...]  # signs[x][k] for y = H[k]

    @property
    def rho(self) -> int:
        return len(self.H)

    def form(self, x: int) -> IntPoly:
        n = self.n
        return IntPoly({(a_var(x ^ y, n), b_var(y, n)): s for y, s in zip(self.H, self.signs[x])})

    def forms(self) -> list[IntPoly]:
        return [self.form(x) for x in range(1 << self.n)]

    def mutated(self, x: int = 0, k: int = 0) -> "HrInstance":
        """Negative control: flip one sign."""
        s = [list(r) for r in self.signs]
        s[x][k] = -s[x][k]
        return HrInstance(self.n, self.H, tuple(tuple(r) for r in s))

    def to_json(self, verified: str) -> dict:
        n = self.n
        return {
            "n": n,
            "rho": self.rho,
            "H": [g.to_bits(y, n) for y in self.H],
            "forms": {
                g.to_bits(x, n): [{"y": g.to_bits(y, n), "sign": s} for y, s in zip(self.H, self.signs[x])]
                for x in range(1 << n)
            },
            "verified": verified,
        }

    def to_text(self, verified: str) -> str:
        n = self.n
        lhs_a = " + ".join(f"{a_var(x, n)}^2" for x in range(1 << n))
        lhs_b = " + ".join(f"{b_var(y, n)}^2" for y in self.H)
        lines = [f"# Hurwitz-Radon identity, N = {1 << n}, rho = {self.rho}",
                 f"({lhs_a})", f"  * ({lhs_b})", "  = sum of c_x^2, where"]
        for x in range(1 << n):
            terms = []
            for y, s in zip(self.H, self.signs[x]):
                terms.append(("+ " if s > 0 else "- ") + f"{a_var(x ^ y, n)}*{b_var(y, n)}")
            body = " ".join(terms)
            body = body[2:] if body.startswith("+ ") else "-" + body[2:]
            lines.append(f"c_{g.to_bits(x, n)} = {body}")
        lines.append(f"verified: {verified}")
        return "\n".join(lines) + "\n"


def hr_forms(n: int) -> HrInstance:
    """c_x = Σ_{y∈H} (-1)^{f(x+y, y)} a_{x+y} b_y with f the O twist, all u_i^2 = -1."""
    H = hr_set(n)
    X = g.elements(n)
    Hs = np.array(H, dtype=np.int64)
    if n >= 3:
        f = make_twist("O", n, 0)
    else:
        # below n = 3 the O twist is just its quadratic part
        f = lambda x, y: upper_part(n, x, y)
    bits = np.asarray(f(X[:, None] ^ Hs[None, :], Hs[None, :]))
    signs = tuple(tuple(1 - 2 * int(b) for b in row) for row in np.broadcast_to(bits, (len(X), len(H))))
    return HrInstance(n, tuple(H), signs)


def _sides(inst: HrInstance) -> tuple[IntPoly, IntPoly]:
    n = inst.n
    A = IntPoly({(a_var(x, n), a_var(x, n)): 1 for x in range(1 << n)})
    B = IntPoly({(b_var(y, n), b_var(y, n)): 1 for y in inst.H})
    return A * B, poly_sum(c.square() for c in inst.forms())


def _random_points(inst: HrInstance, seed: int, count: int = 3):
    rng = np.random.default_rng(seed)
    n = inst.n
    names = [a_var(x, n) for x in range(1 << n)] + [b_var(y, n) for y in inst.H]
    for _ in range(count):
        vals = rng.integers(-10**6, 10**6 + 1, size=len(names))
        yield dict(zip(names, (int(v) for v in vals)))


def check_numeric(inst: HrInstance, seed: int = DEFAULT_SEED, count: int = 3) -> bool:
    """The identity at ``count`` random integer points, with exact integer arithmetic."""
    n = inst.n
    for pt in _random_points(inst, seed, count):
        a = [pt[a_var(x, n)] for x in range(1 << n)]
        b = {y: pt[b_var(y, n)] for y in inst.H}
        lhs = sum(v * v for v in a) * sum(v * v for v in b.values())
        rhs = 0
        for x in range(1 << n):
            c = sum(s * a[x ^ y] * b[y] for y, s in zip(inst.H, inst.signs[x]))
            rhs += c * c
        if lhs != rhs:
            return False
    return True


@dataclass(frozen=True)
class HrResult:
    ok: bool
    method: str
    seed: int


def verify_identity(inst: HrInstance, seed: int = DEFAULT_SEED, symbolic: Optional[bool] = None) -> HrResult:
    if symbolic is None:
        symbolic = inst.n <= SYMBOLIC_MAX
    if not check_numeric(inst, seed):
        return HrResult(False, "randomized", seed)
    if not symbolic:
        return HrResult(True, "randomized", seed)
    lhs, rhs = _sides(inst)
    return HrResult(lhs == rhs, "symbolic", seed)


def verify_hr(n: int, seed: int = DEFAULT_SEED) -> HrResult:
    return verify_identity(hr_forms(n), seed)


def lagrange_identity(n: int, drop: Optional[tuple[int, int]] = None) -> bool:
    """(Σ a_i^2)(Σ b_i^2) = (Σ a_i b_i)^2 + Σ_{i<j} (a_i b_j - a_j b_i)^2 for i = 0..n.

    ``drop`` omits one cross term, which should break the identity.
    """
    if n < 1:
        raise ValueError("n must be positive")
    a = [IntPoly.var(f"a{i}") for i in range(n + 1)]
    b = [IntPoly.var(f"b{i}") for i in range(n + 1)]
    lhs = poly_sum(v.square() for v in a) * poly_sum(v.square() for v in b)
    dot = poly_sum(x * y for x, y in zip(a, b))
    cross = [(a[i] * b[j] - a[j] * b[i]).square()
             for i, j in itertools.combinations(range(n + 1), 2) if (i, j) != drop]
    return lhs == dot.square() + poly_sum(cross)


def lagrange_text(n: int) -> str:
    sq = lambda v: " + ".join(f"{v}{i}^2" for i in range(n + 1))
    dot = " + ".join(f"a{i}*b{i}" for i in range(n + 1))
    cross = " + ".join(f"(a{i}*b{j} - a{j}*b{i})^2" for i, j in itertools.combinations(range(n + 1), 2))
    return f"({sq('a')})*({sq('b')}) = ({dot})^2 + {cross}\n"
