"""Exact arithmetic in the field tower F_p < F_{p^2} < F_{p^4}.

Every field is built as a chain of quadratic extensions.  An element of
F_{p^n} is stored as a flat coefficient tuple of length n over F_p: for
n = 2 the tuple (a0, a1) means a0 + a1*X, and for n = 4 the tuple
(a0, a1, b0, b1) means (a0 + a1*X) + (b0 + b1*X)*Y.  Because the lower
half of a tuple is the base-field coordinate, an element lies in a
subfield exactly when its trailing coefficients vanish.

Moduli are chosen deterministically:

* odd p: X^2 = u with u the least non-square of F_p, then Y^2 = v with v
  the lexicographically least non-square of F_{p^2};
* p = 2: X^2 + X + 1 = 0, then Y^2 + Y + c = 0 with c the lexicographically
  least element of F_4 making the polynomial irreducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

Coeffs = tuple[int, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorisation by trial division (n is at most ~251^4)."""
    if n < 1:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for prime, exp in factorize(n).items():
        divs = [d * prime**k for d in divs for k in range(exp + 1)]
    return sorted(divs)


class TowerField:
    """The field F_{p^n}, n in {1, 2, 4}, as a tower of quadratic extensions.

    For n > 1 the field is base[Y]/(Y^2 - s*Y - r) where base = F_{p^(n/2)};
    ``mod_s`` and ``mod_r`` hold s and r as base-field coefficient tuples.
    Use :func:`build_field` rather than calling the constructor, so that
    towers are shared and elements of a subfield can be embedded.
    """

    def __init__(self, p: int, n: int, base: "TowerField | None",
                 mod_s: Coeffs | None, mod_r: Coeffs | None):
        self.p = p
        self.n = n
        self.order = p**n
        self.base = base
        self.mod_s = mod_s
        self.mod_r = mod_r
        self._nonsquare: Coeffs | None = None

    def __repr__(self) -> str:
        return f"TowerField(p={self.p}, n={self.n})"

    def __reduce__(self):
        return (build_field, (self.p, self.n))

    @property
    def modulus_chain(self) -> list[tuple[Coeffs, Coeffs]]:
        """(s, r) pairs, bottom first, with Y^2 = s*Y + r at each level."""
        chain = [] if self.base is None else self.base.modulus_chain
        if self.n > 1:
            chain = chain + [(self.mod_s, self.mod_r)]
        return chain

    # -- raw tuple arithmetic -------------------------------------------------

    def _add(self, a: Coeffs, b: Coeffs) -> Coeffs:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def _sub(self, a: Coeffs, b: Coeffs) -> Coeffs:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def _neg(self, a: Coeffs) -> Coeffs:
        p = self.p
        return tuple((-x) % p for x in a)

    def _mul(self, a: Coeffs, b: Coeffs) -> Coeffs:
        if self.n == 1:
            return ((a[0] * b[0]) % self.p,)
        base = self.base
        h = self.n // 2
        a0, a1 = a[:h], a[h:]
        b0, b1 = b[:h], b[h:]
        a1b1 = base._mul(a1, b1)
        lo = base._add(base._mul(a0, b0), base._mul(a1b1, self.mod_r))
        hi = base._add(base._add(base._mul(a0, b1), base._mul(a1, b0)),
                       base._mul(a1b1, self.mod_s))
        return lo + hi

    def _inv(self, a: Coeffs) -> Coeffs:
        if not any(a):
            raise ZeroDivisionError("inverse of zero in " + repr(self))
        if self.n == 1:
            return (pow(a[0], self.p - 2, self.p),)
        base = self.base
        h = self.n // 2
        a0, a1 = a[:h], a[h:]
        # (a0 + a1 Y)(a0 + a1 s - a1 Y) = a0^2 + a0 a1 s - a1^2 r
        conj0 = base._add(a0, base._mul(a1, self.mod_s))
        norm = base._sub(base._add(base._mul(a0, a0), base._mul(base._mul(a0, a1), self.mod_s)),
                         base._mul(base._mul(a1, a1), self.mod_r))
        ninv = base._inv(norm)
        return base._mul(conj0, ninv) + base._mul(base._neg(a1), ninv)

    def _pow(self, a: Coeffs, e: int) -> Coeffs:
        if e < 0:
            a = self._inv(a)
            e = -e
        result = self.one_coeffs
        while e:
            if e & 1:
                result = self._mul(result, a)
            a = self._mul(a, a)
            e >>= 1
        return result

    @property
    def one_coeffs(self) -> Coeffs:
        return (1,) + (0,) * (self.n - 1)

    # -- element construction ---------------------------------------------------

    def __call__(self, value: "int | Sequence[int] | TowerElement") -> "TowerElement":
        if isinstance(value, TowerElement):
            return self.embed(value)
        if isinstance(value, int):
            return TowerElement(self, (value % self.p,) + (0,) * (self.n - 1))
        coeffs = tuple(int(c) % self.p for c in value)
        if len(coeffs) > self.n:
            raise ValueError(f"too many coefficients for {self!r}")
        return TowerElement(self, coeffs + (0,) * (self.n - len(coeffs)))

    def zero(self) -> "TowerElement":
        return TowerElement(self, (0,) * self.n)

    def one(self) -> "TowerElement":
        return TowerElement(self, self.one_coeffs)

    def gen(self) -> "TowerElement":
        """The generator of the top quadratic step (X for n=2, Y for n=4)."""
        if self.n == 1:
            raise ValueError("prime field has no extension generator")
        h = self.n // 2
        return TowerElement(self, (0,) * h + (1,) + (0,) * (h - 1))

    def embed(self, a: "TowerElement") -> "TowerElement":
        """Canonical embedding of an element of a subfield of this tower."""
        if a.field.p != self.p or self.n % a.field.n:
            raise ValueError(f"cannot embed {a.field!r} into {self!r}")
        return TowerElement(self, a.coeffs + (0,) * (self.n - a.field.n))

    def elements(self) -> Iterator["TowerElement"]:
        """All elements in lexicographic order of coefficient vectors."""
        for coeffs in itertools.product(range(self.p), repeat=self.n):
            yield TowerElement(self, coeffs)

    def subfield(self, degree: int) -> "TowerField":
        if degree not in (1, 2, 4) or self.n % degree:
            raise ValueError(f"{self!r} has no subfield of degree {degree}")
        return build_field(self.p, degree)

    def nonsquare(self) -> "TowerElement":
        """The lexicographically least non-square (odd characteristic)."""
        if self.p == 2:
            raise ValueError("every element of a field of characteristic 2 is a square")
        if self._nonsquare is None:
            half = (self.order - 1) // 2
            one = self.one_coeffs
            for coeffs in itertools.product(range(self.p), repeat=self.n):
                if any(coeffs) and self._pow(coeffs, half) != one:
                    self._nonsquare = coeffs
                    break
        return TowerElement(self, self._nonsquare)


@lru_cache(maxsize=None)
def build_field(p: int, n: int = 1) -> TowerField:
    """Return the deterministic tower field F_{p^n} for n in {1, 2, 4}."""
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"characteristic must be prime, got {p!r}")
    if n not in (1, 2, 4):
        raise ValueError(f"unsupported degree {n!r}; expected 1, 2 or 4")
    if n == 1:
        return TowerField(p, 1, None, None, None)
    base = build_field(p, n // 2)
    if p == 2:
        # Y^2 + Y + c = 0, i.e. Y^2 = Y + c in characteristic 2.
        s = base.one_coeffs
        for c in itertools.product(range(2), repeat=base.n):
            if not _has_root_char2(base, c):
                return TowerField(p, n, base, s, c)
        raise AssertionError("no irreducible Artin-Schreier polynomial found")
    r = base.nonsquare().coeffs
    field = TowerField(p, n, base, (0,) * base.n, r)
    return field


def _has_root_char2(base: TowerField, c: Coeffs) -> bool:
    for y in itertools.product(range(2), repeat=base.n):
        val = base._add(base._add(base._mul(y, y), y), c)
        if not any(val):
            return True
    return False


@dataclass(frozen=True, eq=False)
class TowerElement:
    field: TowerField
    coeffs: Coeffs

    # -- coercion ---------------------------------------------------------------

    def _coerce(self, other) -> Coeffs:
        if isinstance(other, TowerElement):
            if other.field is self.field:
                return other.coeffs
            if other.field.p == self.field.p and self.field.n % other.field.n == 0:
                return other.coeffs + (0,) * (self.field.n - other.field.n)
            raise ValueError(f"field mismatch: {self.field!r} vs {other.field!r}")
        if isinstance(other, int):
            return (other % self.field.p,) + (0,) * (self.field.n - 1)
        return NotImplemented

    def _wrap(self, coeffs: Coeffs) -> "TowerElement":
        return TowerElement(self.field, coeffs)

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field._add(self.coeffs, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field._sub(self.coeffs, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field._sub(b, self.coeffs))

    def __mul__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field._mul(self.coeffs, b))

    __rmul__ = __mul__

    def __truediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field._mul(self.coeffs, self.field._inv(b)))

    def __rtruediv__(self, other):
        b = self._coerce(other)
        if b is NotImplemented:
            return b
        return self._wrap(self.field._mul(b, self.field._inv(self.coeffs)))

    def __neg__(self):
        return self._wrap(self.field._neg(self.coeffs))

    def __pow__(self, e: int):
        return self._wrap(self.field._pow(self.coeffs, e))

    def inverse(self) -> "TowerElement":
        return self._wrap(self.field._inv(self.coeffs))

    def __eq__(self, other) -> bool:
        if isinstance(other, (TowerElement, int)):
            try:
                return self.coeffs == self._coerce(other)
            except ValueError:
                return False
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, self.coeffs[:self.degree()]))

    def __bool__(self) -> bool:
        return any(self.coeffs)

    def __lt__(self, other: "TowerElement") -> bool:
        return self.coeffs < self._coerce(other)

    def __repr__(self) -> str:
        return f"TowerElement({self.field.p}^{self.field.n}, {self.coeffs})"

    def __str__(self) -> str:
        if self.field.n == 1:
            return str(self.coeffs[0])
        return "(" + ",".join(map(str, self.coeffs)) + ")"

    # -- structure --------------------------------------------------------------

    def degree(self) -> int:
        """Degree over F_p of the smallest tower subfield containing self."""
        n = self.field.n
        while n > 1 and not any(self.coeffs[n // 2:n]):
            n //= 2
        return n

    def restrict(self, degree: int) -> "TowerElement":
        """Project onto the subfield of the given degree (must contain self)."""
        if self.degree() > degree:
            raise ValueError(f"{self!r} does not lie in the degree-{degree} subfield")
        return TowerElement(build_field(self.field.p, degree), self.coeffs[:degree])

    def as_int(self) -> int:
        if self.degree() != 1:
            raise ValueError(f"{self!r} is not in the prime field")
        return self.coeffs[0]

    def signed(self) -> int:
        """Prime-field representative in (-p/2, p/2]."""
        v, p = self.as_int(), self.field.p
        return v - p if v > p // 2 else v


# -- module-level operations ---------------------------------------------------

def is_square(a: TowerElement) -> bool:
    """True iff a = b^2 in a's field; 0 counts as a square."""
    field = a.field
    if field.p == 2 or not a:
        return True
    return field._pow(a.coeffs, (field.order - 1) // 2) == field.one_coeffs


def sqrt(a: TowerElement) -> TowerElement | None:
    """Canonical square root (lexicographically smaller of +-b), or None."""
    field = a.field
    if not a:
        return field.zero()
    if field.p == 2:
        return a ** (field.order // 2)
    if not is_square(a):
        return None
    # Tonelli-Shanks in the cyclic group F_q^*.
    q = field.order
    s, m = q - 1, 0
    while s % 2 == 0:
        s //= 2
        m += 1
    z = field.nonsquare()
    c = z ** s
    x = a ** ((s + 1) // 2)
    t = a ** s
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2
            i += 1
        b = c ** (2 ** (m - i - 1))
        x = x * b
        c = b * b
        t = t * c
        m = i
    assert x * x == a
    other = -x
    return x if x.coeffs <= other.coeffs else other


def frobenius(a: TowerElement, k: int = 1) -> TowerElement:
    """a^(p^k); k is taken modulo the field degree."""
    k %= a.field.n
    return a ** (a.field.p ** k) if k else a


def sum_of_two_squares(t: TowerElement) -> tuple[TowerElement, TowerElement]:
    """First (e, f) in lexicographic order of e with e^2 + f^2 + t + 2 = 0, f != 0."""
    field = t.field
    if field.p == 2:
        raise ValueError("sum_of_two_squares requires odd characteristic")
    for e in field.elements():
        f = sqrt(-(e * e + t + 2))
        if f is not None and f:
            return e, f
    raise AssertionError("no representation found")


@dataclass(frozen=True)
class QuadraticRoots:
    """Roots of a2*x^2 + a1*x + a0 over the coefficient field."""

    roots: tuple[TowerElement, ...]
    field: TowerField
    repeated: bool
    split_in_base: bool


def solve_quadratic(a2: TowerElement, a1: TowerElement, a0: TowerElement) -> QuadraticRoots:
    """Solve a quadratic; roots live in the base field or its quadratic extension."""
    base = a2.field
    a1, a0 = base(a1), base(a0)
    if not a2:
        raise ValueError("degenerate leading coefficient")
    p = base.p
    if p != 2:
        disc = a1 * a1 - 4 * a2 * a0
        if not disc:
            r = -a1 / (2 * a2)
            return QuadraticRoots((r,), base, True, True)
        root = sqrt(disc)
        field = base
        if root is None:
            field = _extension(base)
            root = sqrt(field(disc))
        two_a2 = field(2 * a2)
        r1 = (field(-a1) + root) / two_a2
        r2 = (field(-a1) - root) / two_a2
        roots = tuple(sorted((r1, r2), key=lambda e: e.coeffs))
        return QuadraticRoots(roots, field, False, field is base)
    # characteristic 2
    if not a1:
        r = sqrt(a0 / a2)
        return QuadraticRoots((r,), base, True, True)
    # x = (a1/a2) y turns the equation into y^2 + y + c = 0.
    c = a0 * a2 / (a1 * a1)
    for field in (base, _extension(base)):
        cf = field(c)
        ys = [y for y in field.elements() if y * y + y + cf == 0]
        if ys:
            scale = field(a1 / a2)
            roots = tuple(sorted((scale * y for y in ys), key=lambda e: e.coeffs))
            return QuadraticRoots(roots, field, False, field is base)
    raise AssertionError("Artin-Schreier equation has no root in the extension")


def _extension(base: TowerField) -> TowerField:
    if base.n == 4:
        raise ValueError("no tower extension beyond degree 4")
    return build_field(base.p, base.n * 2)


def evaluate_quadratic(a2, a1, a0, x: TowerElement) -> TowerElement:
    return x * x * a2 + x * a1 + a0
