"""Combinatorics of the quotient tessellation: counts, fixed points, characters.

L_2(q) acts transitively on the vertices and cells of the tessellation with
icosahedral stabilisers (order 60), and on the edges and faces with
dihedral stabilisers of order 6.  Only elements of order 1, 2, 3 or 5 can
fix anything, so fixed-point counts for those orders determine every cycle
structure through the divisor lattice of the element order.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

from .finite_fields import divisors, factorize
from .golden import GoldenNumber, two_cos_2pi_over3, two_cos_2pi_over5
from .projective_linear import group_atlas, prime_power, psl2_order


class ActionKind(enum.Enum):
    VERTICES = 0
    EDGES = 1
    FACES = 2
    CELLS = 3

    @property
    def stabilizer_order(self) -> int:
        return 60 if self in (ActionKind.VERTICES, ActionKind.CELLS) else 6

    @classmethod
    def parse(cls, name: "str | ActionKind") -> "ActionKind":
        if isinstance(name, ActionKind):
            return name
        return cls[name.upper()]


def _supported(q: int) -> tuple[int, int]:
    p, n = prime_power(q)
    if p == 2 and q != 16:
        raise ValueError(f"unsupported q={q}: the only even quotient field is F_16")
    return p, n


def object_count(q: int, action: ActionKind | str) -> int:
    action = ActionKind.parse(action)
    _supported(q)
    return psl2_order(q) // action.stabilizer_order


def _pm(q: int, modulus: int) -> int:
    """+1 if q = 1 mod modulus, -1 if q = -1 mod modulus, else 0."""
    r = q % modulus
    if r == 1:
        return 1
    if r == modulus - 1:
        return -1
    return 0


# Class tags separate the two classes of order-3 elements at q = 9 (the class
# of the image of alpha versus that of gamma) and of order-5 elements at
# q = 25 (the class of the image of beta versus the other one).
ALPHA, GAMMA, BETA, OTHER = "alpha", "gamma", "beta", "other"


def fixed_points(q: int, order: int, action: ActionKind | str, class_tag: str | None = None) -> int:
    """Number of points fixed by an element of the given order (1, 2, 3 or 5)."""
    action = ActionKind.parse(action)
    p, _ = _supported(q)
    if order == 1:
        return object_count(q, action)
    if order not in (2, 3, 5):
        raise ValueError(f"elements of order {order} have no fixed points in this action")
    big = action in (ActionKind.VERTICES, ActionKind.CELLS)
    if q == 16:
        table = {2: (4, 8), 3: (5, 5), 5: (3, 0)}
        return table[order][0 if big else 1]
    if order == 2:
        s = _pm(q, 4)
        return (q - s) // 4 if big else (q - s) // 2
    if order == 3:
        if q == 9:
            tag = class_tag or ALPHA
            if tag not in (ALPHA, GAMMA):
                raise ValueError("q=9 order-3 class tag must be 'alpha' or 'gamma'")
            on_alpha_side = action in (ActionKind.CELLS, ActionKind.FACES)
            return 3 if (tag == ALPHA) == on_alpha_side else 0
        s = _pm(q, 3)
        if not s:
            raise ValueError(f"order-3 fixed points not tabulated for q={q}")
        return (q - s) // 6
    if not big:
        return 0
    if q == 25:
        tag = class_tag or BETA
        if tag not in (BETA, OTHER):
            raise ValueError("q=25 order-5 class tag must be 'beta' or 'other'")
        return 10 if tag == BETA else 0
    s = _pm(q, 5)
    if not s:
        raise ValueError(f"no elements of order 5 with fixed points for q={q}")
    return (q - s) // 10


@dataclass(frozen=True)
class CycleStructure:
    counts: dict = field(hash=False)
    total: int

    def fixed(self) -> int:
        return self.counts.get(1, 0)

    def __str__(self) -> str:
        return " ".join(f"{length}^{count}" for length, count in sorted(self.counts.items()))


def _mobius(n: int) -> int:
    f = factorize(n)
    if any(e > 1 for e in f.values()):
        return 0
    return -1 if len(f) % 2 else 1


def _fix_of_power(q: int, order: int, action: ActionKind, class_tag: str | None) -> int:
    if order in (1, 2, 3, 5):
        return fixed_points(q, order, action, class_tag)
    return 0


def cycle_structure(q: int, order: int, action: ActionKind | str, class_tag: str | None = None) -> CycleStructure:
    """Cycle lengths of an element of the given order, via fixed points of its powers."""
    action = ActionKind.parse(action)
    total = object_count(q, action)
    fix = {d: _fix_of_power(q, order // d, action, class_tag) for d in divisors(order)}
    counts: dict[int, int] = {}
    for length in divisors(order):
        moved = sum(_mobius(length // d) * fix[d] for d in divisors(length))
        if moved % length:
            raise ArithmeticError(f"inconsistent divisor data for order {order}")
        counts[length] = moved // length
    counts.setdefault(1, 0)
    if sum(k * v for k, v in counts.items()) != total or any(v < 0 for v in counts.values()):
        raise ArithmeticError(f"cycle counts do not partition {total} points")
    return CycleStructure(dict(sorted(counts.items())), total)


# -- permutation characters and rank ----------------------------------------------

@dataclass(frozen=True)
class ClassFixedPoints:
    order: int
    class_size: int
    fixed: int
    tag: str | None = None


def permutation_character(q: int, action: ActionKind | str) -> list[ClassFixedPoints]:
    """Fixed-point counts on every class that fixes something (orders 1, 2, 3, 5)."""
    action = ActionKind.parse(action)
    atlas = group_atlas(q)
    out = [ClassFixedPoints(1, 1, object_count(q, action))]
    for m in (2, 3, 5):
        data = atlas.small_classes.get(m)
        if data is None:
            continue
        if q == 9 and m == 3:
            for tag in (ALPHA, GAMMA):
                out.append(ClassFixedPoints(m, data.class_size, fixed_points(q, m, action, tag), tag))
        elif q == 25 and m == 5:
            for tag in (BETA, OTHER):
                out.append(ClassFixedPoints(m, data.class_size, fixed_points(q, m, action, tag), tag))
        else:
            fix = fixed_points(q, m, action)
            out.append(ClassFixedPoints(m, data.class_size * data.classes, fix))
    return out


def rank(q: int, action: ActionKind | str) -> int:
    """Number of orbits of a point stabiliser, (1/|G|) * sum of pi(g)^2."""
    total = sum(c.class_size * c.fixed ** 2 for c in permutation_character(q, action))
    order = psl2_order(q)
    if total % order:
        raise ArithmeticError("Burnside sum is not divisible by the group order")
    return total // order


# -- character multiplicities -------------------------------------------------------

def char_multiplicity_generic(values) -> int:
    """n_chi from the character values at elements of order 1, 2, 3, 5 and 5^2 of I."""
    v1, v2, v3, v5, v5b = (GoldenNumber.of(v) for v in values)
    n = v1 / 60 + v2 / 4 + v3 / 3 + v5 / 5 + v5b / 5
    if not n.is_integer() or int(n) < 0:
        raise ArithmeticError(f"non-integral multiplicity {n}; character values are wrong")
    return int(n)


def char_multiplicity_faces(values) -> int:
    """n_chi for the edge/face actions from the values at orders 1, 2, 3."""
    v1, v2, v3 = (GoldenNumber.of(v) for v in values[:3])
    n = v1 / 6 + v2 / 2 + v3 / 3
    if not n.is_integer() or int(n) < 0:
        raise ArithmeticError(f"non-integral multiplicity {n}; character values are wrong")
    return int(n)


@dataclass(frozen=True)
class CharacterEntry:
    family: str
    degree: int
    k: int | None
    values: tuple


def characters_q11_mod60(q: int) -> list[CharacterEntry]:
    """Irreducible characters of L_2(q), q = 11 mod 60, at classes of orders 1, 2, 3, 5, 5^2.

    Here q = 3 mod 4, so involutions and elements of order 3 lie in the
    non-split torus of order (q+1)/2 and elements of order 5 in the split
    torus of order (q-1)/2.
    """
    if q % 60 != 11:
        raise ValueError(f"q={q} is not 11 mod 60")
    chars = [CharacterEntry("principal", 1, None, (1, 1, 1, 1, 1))]
    half_sign = -1 if ((q - 3) // 4) % 2 else 1
    for _ in range(2):
        chars.append(CharacterEntry("half", (q - 1) // 2, None, ((q - 1) // 2, half_sign, -1, 0, 0)))
    chars.append(CharacterEntry("steinberg", q, None, (q, -1, -1, 1, 1)))
    for k in range(1, (q - 3) // 4 + 1):
        chars.append(CharacterEntry("q-1", q - 1, k, (q - 1, -2 * (-1) ** k, -two_cos_2pi_over3(k), 0, 0)))
    for k in range(1, (q - 3) // 4 + 1):
        chars.append(CharacterEntry("q+1", q + 1, k, (q + 1, 0, 0, two_cos_2pi_over5(k), two_cos_2pi_over5(2 * k))))
    return chars


def char_multiplicity(q: int, family: str, k: int | None = None) -> int:
    """Closed-form multiplicities in the vertex/cell character for q = 11 mod 60."""
    if q % 60 != 11:
        raise ValueError(f"q={q} is not 11 mod 60")
    if family == "principal":
        return 1
    if family == "half":
        return (q - 11) // 120 if q % 120 == 11 else (q - 71) // 120
    if family == "steinberg":
        return (q - 11) // 60
    if k is None or not 1 <= k <= (q - 3) // 4:
        raise ValueError(f"family {family!r} needs 1 <= k <= {(q - 3) // 4}")
    if family == "q-1":
        r = k % 6
        if r == 0:
            return (q - 71) // 60
        if r in (1, 5):
            return (q + 49) // 60
        return (q - 11) // 60
    if family == "q+1":
        return (q + 49) // 60 if k % 5 == 0 else (q - 11) // 60
    raise ValueError(f"unknown character family {family!r}")


@dataclass(frozen=True)
class CharMultiplicityReport:
    q: int
    action: ActionKind
    entries: tuple
    rank: int

    def degree_sum(self) -> int:
        return sum(n * c.degree for c, n in self.entries)


def multiplicity_report(q: int, action: ActionKind | str) -> CharMultiplicityReport:
    """Decompose a permutation character for q = 11 mod 60 over the character list."""
    action = ActionKind.parse(action)
    chars = characters_q11_mod60(q)
    entries = []
    for c in chars:
        if action in (ActionKind.VERTICES, ActionKind.CELLS):
            n = char_multiplicity_generic(c.values)
        else:
            n = char_multiplicity_faces(c.values)
        entries.append((c, n))
    return CharMultiplicityReport(q, action, tuple(entries), sum(n * n for _, n in entries))


def closed_form_report(q: int) -> CharMultiplicityReport:
    """The vertex/cell decomposition using the closed-form multiplicities only."""
    entries = []
    for c in characters_q11_mod60(q):
        entries.append((c, char_multiplicity(q, c.family, c.k)))
    return CharMultiplicityReport(q, ActionKind.VERTICES, tuple(entries), sum(n * n for _, n in entries))
