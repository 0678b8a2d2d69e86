"""2x2 matrices over tower fields, compared up to scalars."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .finite_fields import (
    TowerElement,
    TowerField,
    divisors,
    factorize,
    is_prime,
    is_square,
)


class ProjectiveMatrix:
    """An element of PGL_2(F) stored as a normalised 2x2 matrix.

    The normal form scales the first non-zero entry (row-major) to 1, so two
    matrices represent the same projective element iff their normal forms
    agree.  ``raw`` keeps the entries as given, which matters when a specific
    lift (e.g. a det-1 or trace-1 representative) is needed.
    """

    __slots__ = ("field", "raw", "normal", "_det")

    def __init__(self, entries: Sequence, field: TowerField | None = None):
        if len(entries) == 2:
            entries = (entries[0][0], entries[0][1], entries[1][0], entries[1][1])
        if field is None:
            field = next(e.field for e in entries if isinstance(e, TowerElement))
        raw = tuple(field(e) for e in entries)
        det = raw[0] * raw[3] - raw[1] * raw[2]
        if not det:
            raise ValueError("singular matrix")
        self.field = field
        self.raw = raw
        self._det = det
        lead = next(e for e in raw if e)
        inv = lead.inverse()
        self.normal = tuple(e * inv for e in raw)

    @classmethod
    def identity(cls, field: TowerField) -> "ProjectiveMatrix":
        return cls((1, 0, 0, 1), field)

    # -- basic accessors ------------------------------------------------------

    @property
    def det(self) -> TowerElement:
        return self._det

    @property
    def trace(self) -> TowerElement:
        return self.raw[0] + self.raw[3]

    def rows(self):
        a, b, c, d = self.raw
        return ((a, b), (c, d))

    def key(self) -> tuple:
        return tuple(e.coeffs for e in self.normal)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProjectiveMatrix):
            return NotImplemented
        if other.field is not self.field:
            return False
        return self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return "ProjectiveMatrix(" + ", ".join(str(e) for e in self.normal) + ")"

    # -- algebra --------------------------------------------------------------

    def __mul__(self, other: "ProjectiveMatrix") -> "ProjectiveMatrix":
        return multiply(self, other)

    def inverse(self) -> "ProjectiveMatrix":
        a, b, c, d = self.raw
        return ProjectiveMatrix((d, -b, -c, a), self.field)

    def __pow__(self, n: int) -> "ProjectiveMatrix":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        result = ProjectiveMatrix.identity(self.field)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self, g: "ProjectiveMatrix") -> "ProjectiveMatrix":
        """self^g = g^-1 * self * g."""
        return g.inverse() * self * g

    def is_identity(self) -> bool:
        a, b, c, d = self.normal
        return not b and not c and a == d

    def scaled(self, lam: TowerElement | int) -> "ProjectiveMatrix":
        return ProjectiveMatrix(tuple(e * lam for e in self.raw), self.field)

    def map_entries(self, fn, field: TowerField | None = None) -> "ProjectiveMatrix":
        return ProjectiveMatrix(tuple(fn(e) for e in self.raw), field or self.field)

    def embed(self, field: TowerField) -> "ProjectiveMatrix":
        return ProjectiveMatrix(tuple(field(e) for e in self.raw), field)

    def entry_degree(self) -> int:
        """Degree over F_p of the field generated by the normalised entries."""
        return max(e.degree() for e in self.normal)


def multiply(m: ProjectiveMatrix, n: ProjectiveMatrix) -> ProjectiveMatrix:
    if m.field is not n.field:
        raise ValueError(f"field mismatch: {m.field!r} vs {n.field!r}")
    a, b, c, d = m.raw
    e, f, g, h = n.raw
    return ProjectiveMatrix((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h), m.field)


def word(letters: Iterable[ProjectiveMatrix], field: TowerField) -> ProjectiveMatrix:
    result = ProjectiveMatrix.identity(field)
    for m in letters:
        result = result * m
    return result


def is_in_psl(m: ProjectiveMatrix) -> bool:
    """True iff det is a square; rescaling multiplies det by a square."""
    return is_square(m.det)


def _order_bound_candidates(q: int, p: int) -> list[int]:
    return [p, q - 1, q + 1]


def projective_order(m: ProjectiveMatrix, in_psl: bool | None = None) -> int:
    """Least k >= 1 with m^k scalar.

    Every element of PGL_2(q) has order dividing p, q - 1 or q + 1, so the
    order is found by testing those three exponents and then removing prime
    factors one at a time.  ``in_psl`` is accepted for interface symmetry; the
    computation is the same either way.
    """
    field = m.field
    q, p = field.order, field.p
    if m.is_identity():
        return 1
    for n in _order_bound_candidates(q, p):
        if (m ** n).is_identity():
            break
    else:
        raise AssertionError("element order does not divide p, q-1 or q+1")
    for prime in factorize(n):
        while n % prime == 0 and (m ** (n // prime)).is_identity():
            n //= prime
    return n


def trace_ratio(m: ProjectiveMatrix) -> TowerElement:
    """tr^2/det, a projective invariant of m."""
    tr = m.trace
    return tr * tr / m.det


def trace_order_class(m: ProjectiveMatrix) -> int | str:
    """Order 1, 2, 3 or 5 read off from tr^2/det, else 'other'.

    With tau = tr^2/det: tau = 0 gives order 2, tau = 1 gives order 3, and
    tau^2 - 3 tau + 1 = 0 gives order 5 (tau is then t^2 for a golden-ratio
    trace t).  These identities hold in every characteristic, covering the
    unipotent cases p = 2, 3, 5 as well.
    """
    if m.is_identity():
        return 1
    tau = trace_ratio(m)
    if not tau:
        return 2
    if tau == 1:
        return 3
    if tau * tau - 3 * tau + 1 == 0:
        return 5
    return "other"


def commutes(a: ProjectiveMatrix, b: ProjectiveMatrix) -> bool:
    return a * b == b * a


@dataclass(frozen=True)
class OrderMod:
    n: int
    twist: int


def order_mod_cyclic(h: ProjectiveMatrix, g: ProjectiveMatrix) -> OrderMod:
    """Least n >= 1 with h^n in <g>, and the signed exponent of g it equals.

    Divisors of |h| are tried in increasing order; this is also correct when
    the centraliser of g is not cyclic.  The twist is reported in
    (-m/2, m/2] where m = |g|.
    """
    if not commutes(h, g):
        raise ValueError("h does not commute with g")
    m = projective_order(g)
    powers = {}
    gk = ProjectiveMatrix.identity(g.field)
    for k in range(m):
        powers[gk] = k
        gk = gk * g
    for n in divisors(projective_order(h)):
        hn = h ** n
        if hn in powers:
            k = powers[hn]
            if k > m // 2:
                k -= m
            return OrderMod(n, k)
    raise AssertionError("h^|h| must be the identity")


# -- group atlas --------------------------------------------------------------

def prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            if not is_prime(p):
                break
            n, r = 0, q
            while r % p == 0:
                r //= p
                n += 1
            if r != 1:
                break
            return p, n
    raise ValueError(f"{q} is not a prime power")


def psl2_order(q: int) -> int:
    return q * (q * q - 1) // math.gcd(2, q - 1)


def _phi(n: int) -> int:
    out = n
    for prime in factorize(n):
        out = out // prime * (prime - 1)
    return out


@dataclass(frozen=True)
class OrderClassData:
    order: int
    classes: int
    class_size: int


@dataclass(frozen=True)
class GroupAtlas:
    q: int
    p: int
    group_order: int
    order_frequencies: dict = field(hash=False)
    small_classes: dict = field(hash=False)

    def involutions(self) -> int:
        return self.order_frequencies[2]


def group_atlas(q: int) -> GroupAtlas:
    """Element-order statistics of L_2(q) and class data for orders 1, 2, 3, 5."""
    p, n = prime_power(q)
    if n not in (1, 2, 4):
        raise ValueError(f"unsupported q={q}")
    g = math.gcd(2, q - 1)
    order = psl2_order(q)
    freq: dict[int, int] = {1: 1}
    # p-elements: q^2 - 1 of order p (unipotent, elementary abelian Sylow).
    freq[p] = freq.get(p, 0) + q * q - 1
    split, nonsplit = (q - 1) // g, (q + 1) // g
    for m in divisors(split)[1:]:
        freq[m] = freq.get(m, 0) + _phi(m) * q * (q + 1) // 2
    for m in divisors(nonsplit)[1:]:
        freq[m] = freq.get(m, 0) + _phi(m) * q * (q - 1) // 2
    assert sum(freq.values()) == order
    classes: dict[int, OrderClassData] = {1: OrderClassData(1, 1, 1)}
    for m in (2, 3, 5):
        if m == p:
            if p == 2:
                classes[m] = OrderClassData(m, 1, q * q - 1)
            else:
                classes[m] = OrderClassData(m, 2, (q * q - 1) // 2)
        elif split % m == 0:
            k = max(1, _phi(m) // 2)
            classes[m] = OrderClassData(m, k, freq[m] // k)
        elif nonsplit % m == 0:
            k = max(1, _phi(m) // 2)
            classes[m] = OrderClassData(m, k, freq[m] // k)
    return GroupAtlas(q, p, order, dict(sorted(freq.items())), classes)


# -- linear algebra over a tower field ------------------------------------------

def nullspace(rows: Sequence[Sequence[TowerElement]], field: TowerField) -> list[list[TowerElement]]:
    """Basis of the right null space of a matrix given as a list of rows."""
    mat = [[field(v) for v in row] for row in rows]
    ncols = len(mat[0]) if mat else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = mat[r][c].inverse()
        mat[r] = [v * inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c]:
                factor = mat[i][c]
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [field.zero() for _ in range(ncols)]
        vec[fc] = field.one()
        for i, pc in enumerate(pivots):
            vec[pc] = -mat[i][fc]
        basis.append(vec)
    return basis
