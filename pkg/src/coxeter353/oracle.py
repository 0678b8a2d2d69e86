"""Brute-force ground truth in small groups L_2(q), q <= 29.

Everything here is computed from scratch: the field F_q is built from its
own irreducible polynomial with lookup tables, PGL_2(q) is enumerated as
normalised integer 4-tuples, and products are evaluated in bulk with numpy.
Nothing in this module imports the tower-field or classifier code, so
agreement with those modules is a genuine cross-check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

SUPPORTED_Q = (9, 11, 16, 19, 25, 29)
SLOW_Q = (29,)


def _prime_power(q: int) -> tuple[int, int]:
    for p in range(2, q + 1):
        if q % p == 0:
            n, r = 0, q
            while r % p == 0:
                r //= p
                n += 1
            if r != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, n
    raise ValueError(f"{q} is not a prime power")


class OracleField:
    """F_q as integers 0..q-1 (base-p digits of a polynomial in z) with lookup tables."""

    def __init__(self, q: int):
        p, n = _prime_power(q)
        self.q, self.p, self.n = q, p, n
        digits = np.array([[(x // p ** i) % p for i in range(n)] for x in range(q)], dtype=np.int64)
        weights = p ** np.arange(n)
        self.add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        self.neg = ((-digits) % p) @ weights
        self.modulus = None
        if n == 1:
            a = np.arange(q)
            self.mul = np.outer(a, a) % q
        else:
            for tail in itertools.product(range(p - 1, -1, -1), repeat=n):
                mul = self._mul_table(digits, list(tail[::-1]))
                if mul is not None:
                    self.modulus = tuple(tail[::-1]) + (1,)
                    self.mul = mul
                    break
            else:
                raise AssertionError("no irreducible polynomial found")
        one = 1
        inv = np.zeros(q, dtype=np.int64)
        for x in range(1, q):
            inv[x] = int(np.nonzero(self.mul[x] == one)[0][0])
        self.inv = inv
        self.squares = np.zeros(q, dtype=bool)
        self.squares[np.unique(self.mul[np.arange(1, q), np.arange(1, q)])] = True
        frob = np.arange(q)
        for _ in range(p - 1):
            frob = self.mul[frob, np.arange(q)]
        self.frob = frob

    def _mul_table(self, digits: np.ndarray, low: list[int]):
        """Multiplication mod z^n + low[n-1] z^(n-1) + ... + low[0], or None if reducible."""
        p, n, q = self.p, self.n, self.q
        table = np.zeros((q, q), dtype=np.int64)
        weights = p ** np.arange(n)
        for x in range(q):
            for y in range(q):
                prod = [0] * (2 * n - 1)
                for i in range(n):
                    for j in range(n):
                        prod[i + j] += int(digits[x, i]) * int(digits[y, j])
                for k in range(2 * n - 2, n - 1, -1):
                    c = prod[k] % p
                    if c:
                        for i in range(n):
                            prod[k - n + i] -= c * low[i]
                    prod[k] = 0
                table[x, y] = int(np.dot(np.array(prod[:n]) % p, weights))
        for x in range(1, q):
            if not (table[x] == 1).any():
                return None
        return table

    def from_int(self, k: int) -> int:
        return k % self.p

    def power(self, x: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = int(self.mul[r, x])
        return r

    def roots(self, coeffs) -> list[int]:
        """Roots of sum coeffs[i] y^i, by trying every element."""
        out = []
        for y in range(self.q):
            acc, yk = 0, 1
            for c in coeffs:
                acc = int(self.add[acc, self.mul[c, yk]])
                yk = int(self.mul[yk, y])
            if acc == 0:
                out.append(y)
        return out


class SmallGroup:
    """PGL_2(q) as an explicit list of normalised matrices, with L_2(q) marked inside."""

    def __init__(self, q: int):
        if q not in SUPPORTED_Q:
            raise ValueError(f"oracle supports q in {SUPPORTED_Q}, not {q}")
        F = OracleField(q)
        self.q, self.p, self.F = q, F.p, F
        grid = np.array(list(itertools.product(range(q), repeat=4)), dtype=np.int64)
        a, b, c, d = grid.T
        det = F.add[F.mul[a, d], F.neg[F.mul[b, c]]]
        lead = np.where(a != 0, a, b)
        keep = (det != 0) & (lead == 1)
        self.entries = grid[keep]
        self.codes = self._encode(self.entries)
        order = np.argsort(self.codes)
        self.entries, self.codes = self.entries[order], self.codes[order]
        self.size = len(self.codes)
        self.det = det[keep][order]
        self.in_psl = F.squares[self.det] | (self.p == 2)
        self.identity = self.lookup([[1, 0, 0, 1]])[0]
        self.psl = np.nonzero(self.in_psl)[0]
        self.orders = self._orders()

    # -- element arithmetic -------------------------------------------------------

    def _encode(self, e: np.ndarray) -> np.ndarray:
        q = self.q
        return ((e[:, 0] * q + e[:, 1]) * q + e[:, 2]) * q + e[:, 3]

    def _normalise(self, e: np.ndarray) -> np.ndarray:
        F = self.F
        lead = np.where(e[:, 0] != 0, e[:, 0], e[:, 1])
        inv = F.inv[lead]
        return F.mul[e, inv[:, None]]

    def lookup(self, raw) -> np.ndarray:
        e = self._normalise(np.asarray(raw, dtype=np.int64).reshape(-1, 4))
        codes = self._encode(e)
        idx = np.searchsorted(self.codes, codes)
        if np.any(idx >= self.size) or np.any(self.codes[np.minimum(idx, self.size - 1)] != codes):
            raise ValueError("singular or invalid matrix")
        return idx

    def mul(self, i, j) -> np.ndarray:
        i, j = np.broadcast_arrays(np.asarray(i, dtype=np.int64), np.asarray(j, dtype=np.int64))
        shape = i.shape
        A, B = self.entries[i.ravel()], self.entries[j.ravel()]
        M, S = self.F.mul, self.F.add
        prod = np.stack([
            S[M[A[:, 0], B[:, 0]], M[A[:, 1], B[:, 2]]],
            S[M[A[:, 0], B[:, 1]], M[A[:, 1], B[:, 3]]],
            S[M[A[:, 2], B[:, 0]], M[A[:, 3], B[:, 2]]],
            S[M[A[:, 2], B[:, 1]], M[A[:, 3], B[:, 3]]],
        ], axis=1)
        e = self._normalise(prod)
        return np.searchsorted(self.codes, self._encode(e)).reshape(shape)

    def inverse(self, i) -> np.ndarray:
        i = np.asarray(i, dtype=np.int64)
        A = self.entries[i.ravel()]
        N = self.F.neg
        adj = np.stack([A[:, 3], N[A[:, 1]], N[A[:, 2]], A[:, 0]], axis=1)
        return np.searchsorted(self.codes, self._encode(self._normalise(adj))).reshape(i.shape)

    def frobenius(self, i) -> np.ndarray:
        i = np.asarray(i, dtype=np.int64)
        e = self.F.frob[self.entries[i.ravel()]]
        return np.searchsorted(self.codes, self._encode(self._normalise(e))).reshape(i.shape)

    def word(self, *letters: int) -> int:
        out = self.identity
        for x in letters:
            out = int(self.mul(out, x))
        return out

    def power(self, i: int, k: int) -> int:
        out = self.identity
        for _ in range(k):
            out = int(self.mul(out, i))
        return out

    def trace_ratio(self, i) -> np.ndarray:
        """tr^2/det, an invariant of the projective class."""
        e = self.entries[np.asarray(i).ravel()]
        F = self.F
        tr = F.add[e[:, 0], e[:, 3]]
        return F.mul[F.mul[tr, tr], F.inv[self.det[np.asarray(i).ravel()]]]

    def _orders(self) -> np.ndarray:
        all_idx = np.arange(self.size)
        orders = np.zeros(self.size, dtype=np.int64)
        cur = all_idx.copy()
        k = 1
        while (orders == 0).any():
            done = (cur == self.identity) & (orders == 0)
            orders[done] = k
            cur = self.mul(cur, all_idx)
            k += 1
            if k > 2 * self.q + 2:
                raise AssertionError("element order exceeds q+1")
        return orders

    # -- subgroups ----------------------------------------------------------------

    def closure(self, gens) -> np.ndarray:
        """Sorted element indices of the subgroup generated by gens."""
        member = np.zeros(self.size, dtype=bool)
        member[self.identity] = True
        frontier = np.array([self.identity])
        gens = np.asarray(gens, dtype=np.int64)
        while len(frontier):
            new = self.mul(frontier[:, None], gens[None, :]).ravel()
            new = np.unique(new[~member[new]])
            member[new] = True
            frontier = new
        return np.nonzero(member)[0]

    def _primitive(self) -> int:
        return next(x for x in range(1, self.q) if self._mult_order(x) == self.q - 1)

    def psl_generators(self) -> list[int]:
        w = self._primitive()
        diag = [w, 0, 0, int(self.F.inv[w])]
        return [int(x) for x in self.lookup([[1, 1, 0, 1], [1, 0, 1, 1], diag])]

    def pgl_generators(self) -> list[int]:
        w = self._primitive()
        return [int(x) for x in self.lookup([[w, 0, 0, 1], [1, 1, 0, 1], [0, 1, 1, 0]])]

    def _mult_order(self, x: int) -> int:
        k, y = 1, x
        while y != 1:
            y = int(self.F.mul[y, x])
            k += 1
        return k

    def conjugation_perm(self, g: int) -> np.ndarray:
        """i -> g^-1 i g on all of PGL_2(q)."""
        gi = int(self.inverse(g))
        return self.mul(self.mul(gi, np.arange(self.size)), g)

    def automorphism_perms(self) -> list[np.ndarray]:
        perms = [self.conjugation_perm(g) for g in self.pgl_generators()]
        if self.F.n > 1:
            perms.append(self.frobenius(np.arange(self.size)))
        return perms

    @property
    def psl_order(self) -> int:
        return len(self.psl)

    @property
    def aut_order(self) -> int:
        return self.size * self.F.n

    def conjugacy_classes(self) -> list[np.ndarray]:
        """Classes of L_2(q) under conjugation by L_2(q)."""
        perms = [self.conjugation_perm(g) for g in self.psl_generators()]
        labels = _orbit_labels(self.size, perms)
        out = {}
        for i in self.psl:
            out.setdefault(int(labels[i]), []).append(int(i))
        classes = [np.array(v) for v in out.values()]
        classes.sort(key=lambda c: (int(self.orders[c[0]]), len(c), int(c[0])))
        return classes


def _orbit_labels(n: int, perms: list[np.ndarray]) -> np.ndarray:
    rows = np.concatenate([np.arange(n)] * len(perms))
    cols = np.concatenate(perms)
    graph = coo_matrix((np.ones(len(rows), dtype=np.int8), (rows, cols)), shape=(n, n))
    _, labels = connected_components(graph, directed=True, connection="weak")
    return labels


@lru_cache(maxsize=None)
def small_group(q: int) -> SmallGroup:
    return SmallGroup(q)


# -- epimorphisms Delta -> L_2(q) --------------------------------------------------

@dataclass(frozen=True)
class EpimorphismTriple:
    alpha: int
    beta: int
    gamma: int


def relations_hold(G: SmallGroup, a: int, b: int, c: int) -> bool:
    o = G.orders
    ab = int(G.mul(a, b))
    return (o[a] == 3 and o[b] == 5 and o[c] == 3 and o[ab] == 2
            and o[int(G.mul(b, c))] == 2 and o[int(G.mul(ab, c))] == 2)


def relation_triples(G: SmallGroup) -> np.ndarray:
    """All (alpha, beta, gamma) in L_2(q) satisfying the six relations, as an (N, 3) array.

    Pairs are pruned by orders: with beta*gamma and (alpha*beta)*gamma both
    involutions, gamma is read off two boolean tables instead of a triple loop.
    """
    o = G.orders
    psl = G.psl
    P3 = psl[o[psl] == 3]
    P5 = psl[o[psl] == 5]
    P2 = psl[o[psl] == 2]
    pos2 = np.full(G.size, -1)
    pos2[P2] = np.arange(len(P2))
    pos5 = np.full(G.size, -1)
    pos5[P5] = np.arange(len(P5))
    T1 = o[G.mul(P5[:, None], P3[None, :])] == 2
    T2 = o[G.mul(P2[:, None], P3[None, :])] == 2
    out = []
    for a in P3:
        ab = G.mul(a, P5)
        hit = o[ab] == 2
        for b, p in zip(P5[hit], ab[hit]):
            cand = T1[pos5[b]] & T2[pos2[p]]
            for c in P3[cand]:
                out.append((a, b, c))
    return np.array(out, dtype=np.int64).reshape(-1, 3)


def generates(G: SmallGroup, triple) -> bool:
    return len(G.closure(list(triple))) == G.psl_order


@dataclass
class KernelClasses:
    q: int
    triples: np.ndarray = field(repr=False)
    labels: np.ndarray = field(repr=False)
    generating: dict = field(default_factory=dict)

    @property
    def count(self) -> int:
        return sum(self.generating.values())

    def representatives(self) -> list[EpimorphismTriple]:
        reps = []
        for label, ok in sorted(self.generating.items()):
            if ok:
                i = int(np.nonzero(self.labels == label)[0][0])
                reps.append(EpimorphismTriple(*map(int, self.triples[i])))
        return reps

    def label_of(self, triple) -> int:
        hit = np.nonzero((self.triples == np.asarray(triple)).all(axis=1))[0]
        if not len(hit):
            raise KeyError("triple does not satisfy the relations")
        return int(self.labels[hit[0]])

    def generating_triples(self) -> int:
        return int(sum(np.count_nonzero(self.labels == lab) for lab, ok in self.generating.items() if ok))


def enumerate_epimorphisms(q: int, allow_slow: bool = False) -> list[EpimorphismTriple]:
    return [EpimorphismTriple(*map(int, t)) for t in _generating(q, allow_slow)]


def _check_q(q: int, allow_slow: bool) -> None:
    if q not in SUPPORTED_Q:
        raise ValueError(f"oracle supports q in {SUPPORTED_Q}, not {q}")
    if q in SLOW_Q and not allow_slow:
        raise ValueError(f"q={q} takes minutes; pass allow_slow=True")


def _generating(q: int, allow_slow: bool) -> np.ndarray:
    kc = kernel_classes(q, allow_slow)
    keep = np.isin(kc.labels, [lab for lab, ok in kc.generating.items() if ok])
    return kc.triples[keep]


@lru_cache(maxsize=None)
def kernel_classes(q: int, allow_slow: bool = False) -> KernelClasses:
    """Orbits of Aut(L_2(q)) = PGammaL_2(q) on relation triples, flagged by generation."""
    _check_q(q, allow_slow)
    G = small_group(q)
    triples = relation_triples(G)
    n = len(triples)
    N = G.size
    codes = (triples[:, 0] * N + triples[:, 1]) * N + triples[:, 2]
    order = np.argsort(codes)
    triples, codes = triples[order], codes[order]
    perms = []
    for perm in G.automorphism_perms():
        img = perm[triples]
        img_codes = (img[:, 0] * N + img[:, 1]) * N + img[:, 2]
        idx = np.searchsorted(codes, img_codes)
        if np.any(codes[np.minimum(idx, n - 1)] != img_codes):
            raise AssertionError("automorphism does not preserve the relation triples")
        perms.append(idx)
    labels = _orbit_labels(n, perms) if n else np.zeros(0, dtype=np.int64)
    generating = {}
    for lab in np.unique(labels):
        i = int(np.nonzero(labels == lab)[0][0])
        generating[int(lab)] = generates(G, triples[i])
    return KernelClasses(q, triples, labels, generating)


# -- coset actions and permutation characters ----------------------------------------

@dataclass
class CosetAction:
    group: SmallGroup = field(repr=False)
    subgroup: np.ndarray = field(repr=False)
    coset_keys: np.ndarray = field(repr=False)
    reps: np.ndarray = field(repr=False)

    @property
    def degree(self) -> int:
        return len(self.coset_keys)

    def _key(self, x) -> np.ndarray:
        x = np.atleast_1d(np.asarray(x))
        return self.group.mul(self.subgroup[None, :], x[:, None]).min(axis=1)

    def image(self, g: int) -> np.ndarray:
        """Permutation of the right cosets H x -> H x g."""
        keys = self._key(self.group.mul(self.reps, g))
        return np.searchsorted(self.coset_keys, keys)


def coset_action(G: SmallGroup, gens) -> CosetAction:
    H = G.closure(list(gens))
    if G.psl_order % len(H):
        raise AssertionError("subgroup order must divide the group order")
    seen: dict[int, int] = {}
    key0 = int(G.mul(H, G.identity).min())
    seen[key0] = G.identity
    frontier = [G.identity]
    step = G.psl_generators()
    while frontier:
        nxt = []
        xs = G.mul(np.array(frontier)[:, None], np.array(step)[None, :]).ravel()
        keys = G.mul(H[None, :], xs[:, None]).min(axis=1)
        for x, k in zip(xs, keys):
            k = int(k)
            if k not in seen:
                seen[k] = int(x)
                nxt.append(int(x))
        frontier = nxt
    keys = np.array(sorted(seen))
    reps = np.array([seen[int(k)] for k in keys])
    if len(keys) * len(H) != G.psl_order:
        raise AssertionError("coset enumeration is incomplete")
    return CosetAction(G, H, keys, reps)


def permutation_character(action: CosetAction, g: int) -> int:
    perm = action.image(g)
    return int(np.count_nonzero(perm == np.arange(action.degree)))


def cycle_type(action: CosetAction, g: int) -> dict[int, int]:
    perm = action.image(g)
    seen = np.zeros(action.degree, dtype=bool)
    counts: dict[int, int] = {}
    for i in range(action.degree):
        if not seen[i]:
            j, length = i, 0
            while not seen[j]:
                seen[j] = True
                j = int(perm[j])
                length += 1
            counts[length] = counts.get(length, 0) + 1
    return counts


def burnside_rank(action: CosetAction) -> int:
    """(1/|G|) sum over classes of |class| * fix^2."""
    G = action.group
    total = 0
    for cls in G.conjugacy_classes():
        total += len(cls) * permutation_character(action, int(cls[0])) ** 2
    if total % G.psl_order:
        raise AssertionError("Burnside sum not divisible by |G|")
    return total // G.psl_order


def stabilizer_orbit_rank(action: CosetAction) -> int:
    """Number of orbits of the point stabiliser H on the cosets, counted directly."""
    gens = action.subgroup
    perms = [action.image(int(h)) for h in gens]
    return len(np.unique(_orbit_labels(action.degree, perms)))


# -- tessellation actions -------------------------------------------------------------

STABILIZER_WORDS = {
    "cells": (("a",), ("b",)),
    "vertices": (("b",), ("c",)),
    "faces": (("a",), ("a", "b", "c")),
    "edges": (("c",), ("a", "b")),
}


def tessellation_action(G: SmallGroup, triple: EpimorphismTriple, kind: str) -> CosetAction:
    letters = {"a": triple.alpha, "b": triple.beta, "c": triple.gamma}
    gens = [G.word(*(letters[x] for x in w)) for w in STABILIZER_WORDS[kind]]
    return coset_action(G, gens)


# -- the orientation-reversing element g and the second gamma -------------------------

def omega_elements(G: SmallGroup, triple: EpimorphismTriple) -> np.ndarray:
    """All g in PGL_2(q) with g^2 = 1, beta^g = beta^-1 and alpha^g = gamma^-1."""
    allg = np.arange(G.size)
    ginv = G.inverse(allg)
    sq = G.mul(allg, allg) == G.identity
    conj_b = G.mul(G.mul(ginv, triple.beta), allg)
    conj_a = G.mul(G.mul(ginv, triple.alpha), allg)
    ok = sq & (conj_b == int(G.inverse(triple.beta))) & (conj_a == int(G.inverse(triple.gamma)))
    return np.nonzero(ok)[0]


def gamma_extensions(G: SmallGroup, alpha: int, beta: int) -> list[int]:
    """Every gamma completing (alpha, beta) to a relation triple."""
    o = G.orders
    psl = G.psl
    P3 = psl[o[psl] == 3]
    ab = int(G.mul(alpha, beta))
    ok = (o[G.mul(beta, P3)] == 2) & (o[G.mul(ab, P3)] == 2)
    return [int(c) for c in P3[ok]]


# -- transport of tower-field matrices into the oracle ---------------------------------

def field_embedding(G: SmallGroup, modulus_chain, p: int):
    """Map flat tower coefficient tuples to oracle field elements.

    ``modulus_chain`` lists, level by level, the (s, r) coefficient tuples of
    Y^2 = s*Y + r; a root of each is located by exhaustive search.
    """
    F = G.F
    gens: list[int] = []

    def value(coeffs) -> int:
        coeffs = list(coeffs)
        if len(coeffs) == 1:
            return coeffs[0] % p
        half = len(coeffs) // 2
        level = {2: 0, 4: 1}[len(coeffs)]
        lo, hi = value(coeffs[:half]), value(coeffs[half:])
        return int(F.add[lo, F.mul[hi, gens[level]]])

    for s, r in modulus_chain:
        sv, rv = value(s), value(r)
        roots = F.roots([int(F.neg[rv]), int(F.neg[sv]), 1])
        if not roots:
            raise AssertionError("tower modulus has no root in the oracle field")
        gens.append(roots[0])
    return value


def transport(G: SmallGroup, embed, entries) -> int:
    """Oracle index of a matrix given by tower coefficient tuples."""
    return int(G.lookup([[embed(e) for e in entries]])[0])
