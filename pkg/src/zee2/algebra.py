"""The twisted group algebra (K[(Z2)^n], f) with exact scalars."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

import numpy as np

from . import gf2core as g
from .twist import (GeneratingFunction, SymmetryError, TwistSpec, beta_of,
                    make_twist, recover_alpha)

MULT_MAX = 16
SCAN_MAX = 24


class DiagnosticError(RuntimeError):
    """Two independent computations disagree; indicates a defect."""


class NormError(ValueError):
    pass


class GaussianRational:
    """Exact a + b i with rational a, b."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def coerce(cls, v) -> "GaussianRational":
        if isinstance(v, GaussianRational):
            return v
        if isinstance(v, complex):
            raise TypeError("floating complex values are not exact")
        return cls(v)

    @classmethod
    def parse(cls, re: str, im: str = "0") -> "GaussianRational":
        return cls(Fraction(re), Fraction(im))

    @property
    def is_real(self) -> bool:
        return self.im == 0

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __add__(self, o):
        o = GaussianRational.coerce(o)
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, o):
        return self + (-GaussianRational.coerce(o))

    def __rsub__(self, o):
        return GaussianRational.coerce(o) - self

    def __mul__(self, o):
        o = GaussianRational.coerce(o)
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def __truediv__(self, o):
        o = GaussianRational.coerce(o)
        d = o.re * o.re + o.im * o.im
        if d == 0:
            raise ZeroDivisionError("division by zero")
        num = self * o.conjugate()
        return GaussianRational(num.re / d, num.im / d)

    def __eq__(self, o):
        try:
            o = GaussianRational.coerce(o)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        if self.im == 0:
            return f"GaussianRational({self.re})"
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        if self.im == 0:
            return str(self.re)
        return f"{self.re}{'+' if self.im >= 0 else '-'}{abs(self.im)}i"


I = GaussianRational(0, 1)
ONE = GaussianRational(1)
HALF = GaussianRational(Fraction(1, 2))


class AlgebraElement:
    """Sparse Σ a_x u_x; zero coefficients are never stored."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Mapping[int, object] | None = None):
        self.n = n
        out = {}
        for x, c in (coeffs or {}).items():
            g.check_element(x, n)
            c = GaussianRational.coerce(c)
            if c:
                out[int(x)] = c
        self.coeffs = dict(sorted(out.items()))

    @classmethod
    def basis(cls, n: int, x: int, c=1) -> "AlgebraElement":
        return cls(n, {x: c})

    @classmethod
    def one(cls, n: int) -> "AlgebraElement":
        return cls(n, {0: 1})

    def support(self) -> list[int]:
        return list(self.coeffs)

    def __getitem__(self, x) -> GaussianRational:
        return self.coeffs.get(x, GaussianRational())

    def is_real(self) -> bool:
        return all(c.is_real for c in self.coeffs.values())

    def _check(self, o):
        if not isinstance(o, AlgebraElement) or o.n != self.n:
            raise ValueError("elements live in different algebras")

    def __add__(self, o):
        self._check(o)
        out = dict(self.coeffs)
        for x, c in o.coeffs.items():
            out[x] = out.get(x, GaussianRational()) + c
        return AlgebraElement(self.n, out)

    def __neg__(self):
        return AlgebraElement(self.n, {x: -c for x, c in self.coeffs.items()})

    def __sub__(self, o):
        return self + (-o)

    def scale(self, s) -> "AlgebraElement":
        s = GaussianRational.coerce(s)
        return AlgebraElement(self.n, {x: s * c for x, c in self.coeffs.items()})

    def __eq__(self, o):
        return isinstance(o, AlgebraElement) and o.n == self.n and o.coeffs == self.coeffs

    def __hash__(self):
        return hash((self.n, tuple(self.coeffs.items())))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c})u[{g.to_bits(x, self.n)}]" for x, c in self.coeffs.items())

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [{"x": g.to_bits(x, self.n), "re": str(c.re), "im": str(c.im)}
                      for x, c in self.coeffs.items()],
        }

    @classmethod
    def from_json(cls, d: dict) -> "AlgebraElement":
        n = int(d["n"])
        out: dict[int, GaussianRational] = {}
        for t in d["terms"]:
            if len(t["x"]) != n:
                raise ValueError(f"bit string {t['x']!r} has wrong length for n={n}")
            x = g.from_bits(t["x"])
            out[x] = out.get(x, GaussianRational()) + GaussianRational.parse(str(t.get("re", "0")), str(t.get("im", "0")))
        return cls(n, out)


@dataclass(frozen=True)
class SimplicityVerdict:
    computational: bool
    closed_form: bool
    central: tuple[int, ...]
    uz_square: Optional[int]
    summary: str


@dataclass(frozen=True)
class CompositionResult:
    criterion: bool
    direct: bool
    witness: Optional[tuple[int, int, int, int]] = None


class Algebra:
    """Twisted group algebra over Q(i) (``complex=True``) or Q (real mode)."""

    def __init__(self, spec: TwistSpec, complex: bool = False):
        self.spec = spec
        self.n = spec.n
        self.complex = complex
        self._f = spec.cochain.fn
        try:
            self.alpha: Optional[GeneratingFunction] = recover_alpha(spec) if spec.n <= 16 else None
        except SymmetryError:
            self.alpha = None
        if self.alpha is None and spec.family in ("O", "M", "Cl") and spec.n > 16:
            from .twist import closed_alpha
            self.alpha = closed_alpha(spec.family, spec.n)
        self._alpha_table = None
        self._norm_ok = None

    # -- basics --------------------------------------------------------------

    @classmethod
    def of(cls, family: str, n: int, p: Optional[int] = None, complex: bool = False) -> "Algebra":
        if p is None:
            p = n if complex else 0
        return cls(make_twist(family, n, p), complex=complex)

    def label(self) -> str:
        if self.complex and self.spec.family != "Custom":
            return f"{self.spec.family}{self.n}"
        return self.spec.label()

    def alpha_table(self) -> np.ndarray:
        if self.alpha is None:
            raise ValueError("φ is not symmetric; the algebra has no generating function")
        if self._alpha_table is None:
            self._alpha_table = self.alpha.table()
        return self._alpha_table

    def basis_product(self, x: int, y: int) -> tuple[int, int]:
        g.check_element(x, self.n)
        g.check_element(y, self.n)
        return (-1 if self._f(x, y) else 1), x ^ y

    def u(self, x: int, c=1) -> AlgebraElement:
        return AlgebraElement.basis(self.n, x, c)

    def element(self, coeffs: Mapping[int, object]) -> AlgebraElement:
        a = AlgebraElement(self.n, coeffs)
        self._admit(a)
        return a

    def _admit(self, a: AlgebraElement) -> None:
        if a.n != self.n:
            raise ValueError(f"element has arity {a.n}, algebra has {self.n}")
        if not self.complex and not a.is_real():
            raise ValueError("imaginary coefficient in a real-mode algebra")

    def multiply(self, a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
        self._admit(a)
        self._admit(b)
        if self.n > MULT_MAX:
            raise ValueError(f"multiplication is limited to n <= {MULT_MAX}")
        if not a.coeffs or not b.coeffs:
            return AlgebraElement(self.n)
        xs = np.fromiter(a.coeffs, dtype=np.int64)
        ys = np.fromiter(b.coeffs, dtype=np.int64)
        signs = np.asarray(self._f(xs[:, None], ys[None, :]))
        acc: dict[int, GaussianRational] = {}
        ca, cb = list(a.coeffs.values()), list(b.coeffs.values())
        for i, x in enumerate(a.coeffs):
            for j, y in enumerate(b.coeffs):
                c = ca[i] * cb[j]
                if signs[i, j]:
                    c = -c
                z = x ^ y
                acc[z] = acc.get(z, GaussianRational()) + c
        return AlgebraElement(self.n, acc)

    def mul(self, *elems: AlgebraElement) -> AlgebraElement:
        """Left-nested product ((a b) c) ..."""
        out = elems[0]
        for e in elems[1:]:
            out = self.multiply(out, e)
        return out

    # -- involution and norm -------------------------------------------------

    def conjugate(self, a: AlgebraElement) -> AlgebraElement:
        t = self.alpha_table()
        return AlgebraElement(self.n, {x: (-c if t[x] else c) for x, c in a.coeffs.items()})

    @property
    def norm_ok(self) -> bool:
        """Whether f(x, x) = α(x) everywhere, the hypothesis of the Euclidean norm formula."""
        if self._norm_ok is None:
            if self.alpha is None:
                self._norm_ok = False
            else:
                X = g.elements(self.n)
                self._norm_ok = bool((np.asarray(self._f(X, X)) == self.alpha_table()).all())
        return self._norm_ok

    def norm(self, a: AlgebraElement):
        if not self.norm_ok:
            raise NormError(f"{self.label()} does not satisfy f(x,x) = α(x); N(a) = Σ a_x² does not apply")
        s = GaussianRational()
        for c in a.coeffs.values():
            s = s + c * c
        return s.re if s.is_real and not self.complex else s

    # -- center ----------------------------------------------------------------

    def _beta_row(self, x: int, Y: np.ndarray) -> np.ndarray:
        if self.alpha is not None and self.n <= SCAN_MAX:
            t = self.alpha_table()
            return t[x ^ Y] ^ t[x] ^ t[Y]
        return np.asarray(self._f(x, Y)) ^ np.asarray(self._f(Y, x))

    def centralizer_dim(self, x: int) -> int:
        """Number of y with u_x u_y = u_y u_x."""
        g.check_element(x, self.n)
        total = 0
        chunk = 1 << 20
        for start in range(0, 1 << self.n, chunk):
            Y = np.arange(start, min(start + chunk, 1 << self.n), dtype=np.int64)
            total += int(np.count_nonzero(self._beta_row(x, Y) == 0))
        return total

    def center(self) -> tuple[int, list[int]]:
        if self.alpha is None:
            raise ValueError("center needs a generating function (homogeneous reduction)")
        if self.n > 14:
            raise ValueError("center scan is limited to n <= 14")
        if self.n <= 12:
            b = beta_of(self.spec).table() if self.n <= 10 else None
            if b is None:
                t = self.alpha_table()
                X = g.elements(self.n)
                basis = [x for x in range(1 << self.n) if not (t[x ^ X] ^ t[x] ^ t).any()]
            else:
                basis = [int(x) for x in np.flatnonzero(~b.any(axis=1))]
        else:
            X = g.elements(self.n)
            basis = [x for x in range(1 << self.n) if not self._beta_row(x, X).any()]
        return len(basis), basis

    def square_sign(self, x: int) -> int:
        return self.basis_product(x, x)[0]

    # -- simplicity ------------------------------------------------------------

    def restrict(self, mask: int) -> "Algebra":
        """Subalgebra spanned by u_x with x supported on ``mask``, re-indexed densely."""
        idx = [i for i in range(self.n) if (mask >> i) & 1]
        m = len(idx)

        def embed(v):
            out = 0
            for k, i in enumerate(idx):
                out = out | (((v >> k) & 1) << i)
            return out

        fn = self._f
        c = g.Cochain(m, 2, lambda x, y: fn(embed(x), embed(y)))
        spec = TwistSpec("Custom", m, custom=c)
        return Algebra(spec, complex=self.complex)

    def is_simple(self) -> SimplicityVerdict:
        fam = self.spec.family
        if fam not in ("O", "M"):
            raise ValueError("is_simple is defined for the O and M families only")
        _, cbasis = self.center()
        central = tuple(x for x in cbasis if x)
        uz = None
        if not central:
            comp = True
            summary = "simple"
        else:
            if len(central) != 1:
                raise DiagnosticError(f"unexpected homogeneous center {central}")
            z = central[0]
            uz = self.square_sign(z)
            k = z.bit_length() - 1
            sub = g.all_ones(self.n) & ~(1 << k)
            sublabel = f"{fam}{self.n - 1}"
            if self.complex or uz == 1:
                comp = False
                if not self.complex:
                    sublabel = self.restrict(sub).signature_label(fam)
                summary = f"not simple; splits as {sublabel} ⊕ {sublabel}"
            else:
                # u_z^2 = -1: A is the complexification of the hyperplane subalgebra
                inner = self.restrict(sub)
                inner = Algebra(inner.spec, complex=True)
                comp = inner.center()[0] == 1
                summary = f"simple; complexification of {self.restrict(sub).signature_label(fam)}" if comp else "not simple"
        closed = simple_closed_form(fam, self.n, None if self.complex else self.spec.p)
        if comp != closed:
            raise DiagnosticError(f"{self.label()}: computational={comp} closed_form={closed}")
        return SimplicityVerdict(comp, closed, central, uz, summary)

    def signature_label(self, fam: str) -> str:
        X = np.array([1 << i for i in range(self.n)], dtype=np.int64)
        d = np.asarray(self._f(X, X))
        p = int(np.count_nonzero(d == 0))
        return f"{fam}_{{{p},{self.n - p}}}"

    def split_central(self) -> tuple[AlgebraElement, AlgebraElement]:
        z = g.all_ones(self.n)
        if self.centralizer_dim(z) != 1 << self.n:
            raise ValueError("u_z is not central")
        if self.square_sign(z) != 1:
            raise ValueError("u_z^2 = -1: use complexification_map instead")
        one, uz = self.u(0), self.u(z)
        return (one + uz).scale(HALF), (one - uz).scale(HALF)

    def splitting_map(self, sign: int = 1):
        """u_x ↦ ½ u_{(x,0)} (1 ± u_z) from the hyperplane subalgebra into A."""
        z = g.all_ones(self.n)
        e = self.split_central()[0 if sign > 0 else 1]
        m = self.n - 1
        return lambda x: self.multiply(self.u(x), e), m

    def verify_splitting(self) -> bool:
        """Both splitting maps are multiplicative on all basis pairs and the images are disjoint."""
        m = self.n - 1
        sub = self.restrict(g.all_ones(m))
        for sign in (1, -1):
            phi, _ = self.splitting_map(sign)
            imgs = {x: phi(x) for x in range(1 << m)}
            for x in range(1 << m):
                for y in range(1 << m):
                    s, zxy = sub.basis_product(x, y)
                    if self.multiply(imgs[x], imgs[y]) != imgs[zxy].scale(s):
                        return False
        ep, em = self.split_central()
        return (self.multiply(ep, em) == AlgebraElement(self.n)
                and self.multiply(ep, ep) == ep and self.multiply(em, em) == em
                and ep + em == self.u(0))

    def complexification_map(self) -> bool:
        """Check u_x⊗1 ↦ u_(x,0), u_x⊗i ↦ u_(x,0) u_z is multiplicative (u_z^2 = -1 case)."""
        z = g.all_ones(self.n)
        if self.centralizer_dim(z) != 1 << self.n or self.square_sign(z) != -1:
            raise ValueError("needs a central u_z with u_z^2 = -1")
        m = self.n - 1
        sub = self.restrict(g.all_ones(m))
        uz = self.u(z)
        img = {}
        for x in range(1 << m):
            img[(x, 0)] = self.u(x)
            img[(x, 1)] = self.multiply(self.u(x), uz)
        for (x, a), (y, b) in itertools.product(img, repeat=2):
            s, zxy = sub.basis_product(x, y)
            # (u_x ⊗ i^a)(u_y ⊗ i^b) = s u_{x+y} ⊗ i^{a+b}
            c = a + b
            target = img[(zxy, c & 1)].scale(s * (-1 if c == 2 else 1))
            if self.multiply(img[(x, a)], img[(y, b)]) != target:
                return False
        return True

    # -- composition -----------------------------------------------------------

    def composition_pair(self, a: AlgebraElement, b: AlgebraElement) -> CompositionResult:
        t = self.alpha_table()
        witness = None
        sa, sb = a.support(), b.support()
        sbset = set(sb)
        for x, z in itertools.permutations(sa, 2):
            if not t[x ^ z]:
                for y in sb:
                    tt = x ^ y ^ z
                    if tt in sbset and tt != y:
                        witness = (x, y, z, tt)
                        break
            if witness:
                break
        crit = witness is None
        direct = self.norm(self.multiply(a, b)) == self.norm(a) * self.norm(b)
        if crit != direct:
            raise DiagnosticError(f"composition criterion {crit} but direct test {direct}")
        return CompositionResult(crit, direct, witness)

    # -- signature change ------------------------------------------------------

    def signature_iso(self, indices: Iterable[int]) -> dict[int, GaussianRational]:
        """θ(u_x) = i^{Σ_k x_k} u'_x onto the twist f + Σ_k x_k y_k; verified on all pairs."""
        if not self.complex:
            raise ValueError("signature isomorphisms need complex scalars")
        indices = sorted(set(indices))
        mask = 0
        for i in indices:
            if not 1 <= i <= self.n:
                raise ValueError(f"index {i} out of range")
            mask |= 1 << (i - 1)
        powers = [ONE, I, -ONE, -I]
        theta = {x: powers[g.weight(x & mask) % 4] for x in range(1 << self.n)}
        sig = g.Cochain(self.n, 2, lambda x, y: g.parity(x & y & mask))
        target = Algebra(self.spec.plus(sig), complex=True)
        for x in range(1 << self.n):
            for y in range(1 << self.n):
                s, z = self.basis_product(x, y)
                lhs = theta[z] * s
                s2, _ = target.basis_product(x, y)
                if lhs != theta[x] * theta[y] * s2:
                    raise DiagnosticError(f"θ fails at ({g.to_bits(x, self.n)}, {g.to_bits(y, self.n)})")
        return theta


def simple_closed_form(family: str, n: int, p: Optional[int]) -> bool:
    """Parity rules for simplicity; ``p=None`` means complex."""
    bad = 0 if family == "O" else 2
    if n % 4 != bad:
        return True
    if p is None:
        return False
    return p % 2 == 1 and (n - p) % 2 == 1


def random_element(rng: np.random.Generator, n: int, support: Iterable[int], bound: int = 10**6) -> AlgebraElement:
    """Random rational coefficients (numerators up to ``bound``, small denominators)."""
    out = {}
    for x in support:
        num = int(rng.integers(-bound, bound + 1))
        den = int(rng.integers(1, 17))
        out[int(x)] = Fraction(num or 1, den)
    return AlgebraElement(n, out)
