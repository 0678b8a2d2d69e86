"""Rotation axes of the quotient manifolds and single-icosahedron quotients.

Screw transformations h commuting with a rotation g give the bracelets (order
3) and necklaces (order 5) of invariant cells.  Complements S of an
icosahedral subgroup I in L_2(q) give manifolds made of one icosahedron
with its faces glued in pairs; the gluing is computed from the flag model of
the tessellation, with flags of the base cell written as even elements u of I
and odd elements u*c.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .classifier import EpimorphismWitness
from .finite_fields import build_field, divisors, factorize
from .projective_linear import (
    ProjectiveMatrix,
    commutes,
    order_mod_cyclic,
    prime_power,
    projective_order,
    psl2_order,
    word,
)
from .tessellation_stats import ALPHA, BETA, ActionKind, fixed_points


# -- screw transformations ----------------------------------------------------------

def _commutator_word(x: ProjectiveMatrix, y: ProjectiveMatrix) -> ProjectiveMatrix:
    """x y^-1 x^-1 y."""
    return x * y.inverse() * x.inverse() * y


def screw_word(w: EpimorphismWitness, m: int) -> ProjectiveMatrix:
    """The screw transformation as the image of its defining word in alpha, beta, gamma."""
    a, b, c = w.images()
    F = w.field
    if m == 3:
        k = _commutator_word(a, b)
        return word([k, k, a, c], F)
    if m == 5:
        k1 = _commutator_word(a, b)
        k2 = _commutator_word(b, c)
        return word([k1, k1, a, b.inverse(), c, k2, k2], F)
    raise ValueError("screw transformations exist for m = 3 and m = 5 only")


def signed_sqrt_4t5(w: EpimorphismWitness):
    """sqrt(4t+5) with the sign of the branch that produced the root x."""
    return w.root_branch() * w.sqrt_4t5()


def screw_closed_form(w: EpimorphismWitness, m: int) -> ProjectiveMatrix:
    """The screw transformation from its closed form in t, e, f (or t, x for p = 2)."""
    F = w.field
    t, x = w.t, w.x
    if not w.odd:
        if m == 3:
            return ProjectiveMatrix((x * t + t, 0, t + 1, x * t), F)
        if m == 5:
            return ProjectiveMatrix((x + t, t, 1, x + t + 1), F)
        raise ValueError("screw transformations exist for m = 3 and m = 5 only")
    e, f = w.e, w.f
    D = signed_sqrt_4t5(w)
    half = F(2).inverse()
    if m == 3:
        entries = (t * (D + e), f * t + 1 - t, f * t - 1 + t, t * (D - e))
        return ProjectiveMatrix(tuple(half * v for v in entries), F)
    if m == 5:
        c = t / (2 * (2 + t) * (2 + t))
        u = D * (3 + 2 * t)
        entries = (-(2 + t + f * u), u * (1 + e), u * (e - 1), f * u - (2 + t))
        return ProjectiveMatrix(tuple(c * v for v in entries), F)
    raise ValueError("screw transformations exist for m = 3 and m = 5 only")


def screw_matrix(w: EpimorphismWitness, m: int) -> ProjectiveMatrix:
    """Screw matrix h for m = 3 (commutes with alpha) or m = 5 (commutes with beta).

    The closed form is returned after checking that it agrees projectively
    with the defining word and commutes with the rotation.
    """
    h = screw_closed_form(w, m)
    if h != screw_word(w, m):
        raise AssertionError(f"closed-form screw matrix disagrees with its word (p={w.p}, m={m})")
    g = w.alpha if m == 3 else w.beta
    if not commutes(h, g):
        raise AssertionError("screw matrix does not commute with the rotation")
    if w.odd:
        expected = w.t * signed_sqrt_4t5(w) if m == 3 else -(w.t ** 3)
        if h.trace != expected:
            raise AssertionError("screw matrix trace differs from its closed form")
    return h


@dataclass(frozen=True)
class AxisReport:
    q: int
    m: int
    h: ProjectiveMatrix = field(repr=False)
    h_order: int
    n: int
    twist: int
    fixed_cells: int

    @property
    def axes(self) -> int:
        return self.fixed_cells // self.n


def _axis_report(w: EpimorphismWitness, m: int) -> AxisReport:
    h = screw_matrix(w, m)
    g = w.alpha if m == 3 else w.beta
    om = order_mod_cyclic(h, g)
    tag = ALPHA if m == 3 else BETA
    cells = fixed_points(w.q, m, ActionKind.CELLS, tag)
    if cells % om.n:
        raise AssertionError(f"{om.n} cells per axis does not divide {cells} fixed cells")
    return AxisReport(w.q, m, h, projective_order(h), om.n, om.twist, cells)


def bracelet_params(w: EpimorphismWitness) -> AxisReport:
    """Bracelets of cells around the axis of the order-3 rotation alpha."""
    return _axis_report(w, 3)


def necklace_params(w: EpimorphismWitness) -> AxisReport:
    """Necklaces of cells around the axis of the order-5 rotation beta."""
    return _axis_report(w, 5)


# -- complements of an icosahedral subgroup ----------------------------------------------

@dataclass(frozen=True)
class ComplementReport:
    q: int
    order: int
    exists: bool
    family: str
    coprime_to_30: bool
    unipotent_order: int = 1
    torus_order: int = 1

    @property
    def homology_witness(self) -> int | None:
        """Order of the abelianisation of S, a quotient of H_1 of the glued icosahedron."""
        if not self.exists:
            return None
        return self.order if self.family == "cyclic" else self.torus_order


def complement_exists(q: int) -> ComplementReport:
    """Search the subgroup families of L_2(q) with order coprime to 30 for order |L_2(q)|/60.

    Subgroups of order prime to 6 are cyclic (inside a torus or of order p)
    or lie in a Borel subgroup as p^a : d; every other family has even order
    or order divisible by 3.
    """
    p, n = prime_power(q)
    g = math.gcd(2, q - 1)
    order = psl2_order(q) // 60
    coprime = math.gcd(order, 30) == 1
    if not coprime or order == 1:
        return ComplementReport(q, order, False, "none", coprime)
    if (q - 1) // g % order == 0 or (q + 1) // g % order == 0 or order in (1, p):
        return ComplementReport(q, order, True, "cyclic", True)
    for a in range(1, n + 1):
        pa = p ** a
        if order % pa:
            continue
        d = order // pa
        bound = (q - 1) // g if a == n else math.gcd((q - 1) // g, pa - 1)
        if bound % d == 0:
            return ComplementReport(q, order, True, "frobenius", True, pa, d)
    return ComplementReport(q, order, False, "none", True)


def small_quotient_cells(q: int, subgroup_order: int) -> int:
    """Cells of the tessellation of M/S when S of the given order acts freely."""
    total = psl2_order(q)
    if total % subgroup_order:
        raise ValueError(f"{subgroup_order} does not divide |L_2({q})| = {total}")
    if math.gcd(subgroup_order, 30) != 1:
        raise ValueError(f"a subgroup of order {subgroup_order} need not act freely")
    cells, rem = divmod(total, 60 * subgroup_order)
    if rem:
        raise ValueError("the subgroup is too large to act freely on the cells")
    return cells


def _primitive_root(q: int) -> int:
    for a in range(2, q):
        if all(pow(a, (q - 1) // r, q) != 1 for r in factorize(q - 1)):
            return a
    raise ValueError(f"no primitive root mod {q}")


def complement_generators(q: int) -> list[ProjectiveMatrix]:
    """Generators of a complement S to an icosahedral subgroup (prime q only)."""
    rep = complement_exists(q)
    if not rep.exists:
        raise ValueError(f"no complement for q={q}")
    if q != prime_power(q)[0]:
        raise NotImplementedError("complements are only built for prime q")
    F = build_field(q, 1)
    gens = [ProjectiveMatrix((1, 1, 0, 1), F)]
    if rep.family == "frobenius" and rep.torus_order > 1:
        lam = pow(_primitive_root(q), (q - 1) // (2 * rep.torus_order), q)
        gens.append(ProjectiveMatrix((lam, 0, 0, pow(lam, -1, q)), F))
    elif rep.family == "cyclic" and rep.order != q:
        raise NotImplementedError("torus complements are not needed for any classified q")
    return gens


def closure_words(gens: dict[str, ProjectiveMatrix]) -> dict[ProjectiveMatrix, str]:
    """Every element of <gens> with its shortest, then lexicographically least, word."""
    F = next(iter(gens.values())).field
    one = ProjectiveMatrix.identity(F)
    words = {one: ""}
    queue = deque([one])
    letters = sorted(gens)
    while queue:
        x = queue.popleft()
        for letter in letters:
            y = x * gens[letter]
            if y not in words:
                words[y] = words[x] + letter
                queue.append(y)
    return words


def group_closure(gens: list[ProjectiveMatrix]) -> set[ProjectiveMatrix]:
    return set(closure_words({chr(97 + i): g for i, g in enumerate(gens)}))


# -- face identifications ---------------------------------------------------------

@dataclass(frozen=True)
class FacePairing:
    face: int
    partner: int
    word: str  # word in alpha, beta for the partner-face flag the glued flag lands on


@dataclass(frozen=True)
class FaceIdentification:
    q: int
    complement_order: int
    pairings: tuple
    vertices: int
    edges: int
    faces: int
    cells: int

    @property
    def euler_characteristic(self) -> int:
        return self.vertices - self.edges + self.faces - self.cells

    def export_lines(self) -> list[str]:
        return [f"{fp.face}\t{fp.partner}\t{fp.word or '1'}" for fp in self.pairings]


def _orbits(n: int, perms: list[list[int]]) -> int:
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for perm in perms:
        for i, j in enumerate(perm):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    return len({find(i) for i in range(n)})


def face_identifications(w: EpimorphismWitness) -> FaceIdentification:
    """Glue the faces of one icosahedron using a complement S of I = <alpha, beta>.

    Faces of the base cell are the cosets x<alpha> in I.  The odd flag u*c
    lies in the face of u*beta^-1; its image across the face under d is the
    flag u*gamma, which the deck group identifies with the even flag t of
    the base cell where u*gamma = s*t, s in S, t in I.
    """
    q = w.q
    gens = complement_generators(q)
    if w.field.n != 1:
        raise NotImplementedError("face identifications are built for prime q only")
    S = group_closure(gens)
    a, b, c = w.images()
    words = closure_words({"a": a, "b": b})
    if len(words) != 60:
        raise AssertionError("alpha and beta must generate an icosahedral group")
    if len(S) * 60 != psl2_order(q):
        raise AssertionError("S does not complement I")
    ordered = sorted(words, key=lambda x: (len(words[x]), words[x]))
    index = {x: i for i, x in enumerate(ordered)}
    a_pows = [ProjectiveMatrix.identity(w.field), a, a * a]
    face_of: dict[ProjectiveMatrix, int] = {}
    reps: list[ProjectiveMatrix] = []
    for x in ordered:
        if x not in face_of:
            for y in (x * k for k in a_pows):
                face_of[y] = len(reps)
            reps.append(x)
    if len(reps) != 20:
        raise AssertionError("an icosahedron has 20 faces")

    def attach(u: ProjectiveMatrix) -> ProjectiveMatrix:
        h = u * c
        found = [t for t in ordered if h * t.inverse() in S]
        if len(found) != 1:
            raise AssertionError("factorisation h = s t is not unique")
        return found[0]

    binv = b.inverse()
    # d on flags: odd u*c is glued to even attach(u), and back.
    glue = {u: attach(u) for u in ordered}
    if len(set(glue.values())) != 60:
        raise AssertionError("gluing is not a bijection on flags")
    pairings = []
    partner_of = {}
    for i, x in enumerate(reps):
        partners = {face_of[glue[x * k * b]] for k in a_pows}
        if len(partners) != 1:
            raise AssertionError("odd flags of one face are glued to different faces")
        u = min((x * k * b for k in a_pows), key=lambda v: (len(words[v]), words[v]))
        t = glue[u]
        partner_of[i] = face_of[t]
        pairings.append(FacePairing(i, face_of[t], words[t]))
    for i, j in partner_of.items():
        if i == j or partner_of[j] != i:
            raise AssertionError("face pairing is not a fixed-point-free involution")

    # flags 0..59 are even u, 60..119 are odd u*c
    n = 120
    pos = {x: i for i, x in enumerate(ordered)}
    ab = a * b
    perm_a, perm_b, perm_c, perm_d = [0] * n, [0] * n, [0] * n, [0] * n
    back = {t: u for u, t in glue.items()}
    for x in ordered:
        i = pos[x]
        perm_a[i] = 60 + pos[x * ab]
        perm_b[i] = 60 + pos[x * b]
        perm_c[i] = 60 + i
        perm_d[i] = 60 + pos[back[x]]
        perm_a[60 + i] = pos[x * ab]
        perm_b[60 + i] = pos[x * binv]
        perm_c[60 + i] = i
        perm_d[60 + i] = pos[glue[x]]
    for perm in (perm_a, perm_b, perm_c, perm_d):
        if any(perm[perm[i]] != i for i in range(n)):
            raise AssertionError("flag generators must act as involutions")
    vertices = _orbits(n, [perm_b, perm_c, perm_d])
    edges = _orbits(n, [perm_a, perm_c, perm_d])
    faces = _orbits(n, [perm_a, perm_b, perm_d])
    cells = _orbits(n, [perm_a, perm_b, perm_c])
    return FaceIdentification(q, len(S), tuple(pairings), vertices, edges, faces, cells)
