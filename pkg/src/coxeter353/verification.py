"""Cross-checks of the classifier, tessellation statistics and geometry against the oracle."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import oracle as orc
from . import tessellation_stats as ts
from .classifier import TIMES, base_field_degree, kernels_for_prime, primes_up_to
from .geometry_quotients import complement_generators


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


@dataclass
class VerifyResult:
    q: int
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(f"q={self.q} {name}", bool(ok), detail))


def _transported_triple(G: orc.SmallGroup, w) -> tuple[list[int], object]:
    embed = orc.field_embedding(G, w.field.modulus_chain, G.p)
    tri = [orc.transport(G, embed, [e.coeffs for e in m.raw]) for m in w.images()]
    return tri, embed


def _class_tag(q: int, order: int, members: set[int], triple: orc.EpimorphismTriple) -> str | None:
    if q == 9 and order == 3:
        return ts.ALPHA if triple.alpha in members else ts.GAMMA
    if q == 25 and order == 5:
        return ts.BETA if triple.beta in members else ts.OTHER
    return None


def _nonzero(counts: dict) -> dict:
    return {k: v for k, v in counts.items() if v}


def verify_q(q: int, allow_slow: bool = False) -> VerifyResult:
    """Compare every classifier and tessellation statistic at q with the oracle."""
    res = VerifyResult(q)
    G = orc.small_group(q)
    kc = orc.kernel_classes(q, allow_slow)
    kernels = [k for k in kernels_for_prime(G.p) if k.q == q]
    res.add("kernel count", kc.count == len(kernels), f"oracle {kc.count}, classifier {len(kernels)}")

    labels = []
    for k in kernels:
        w = k.representative
        tri, embed = _transported_triple(G, w)
        triple = orc.EpimorphismTriple(*tri)
        tag = f"kernel t{k.trace_index}/root{k.orbit_label + 1}"
        res.add(f"{tag} relations", orc.relations_hold(G, *tri) and orc.generates(G, tri))
        labels.append(kc.label_of(tri))
        gs = orc.omega_elements(G, triple)
        mine = orc.transport(G, embed, [e.coeffs for e in k.omega_g.raw])
        in_psl = bool(G.in_psl[mine])
        res.add(f"{tag} omega element", len(gs) == 1 and int(gs[0]) == mine,
                f"{len(gs)} solutions in PGL")
        res.add(f"{tag} omega symbol", in_psl == (k.omega_symbol == TIMES),
                f"g in L_2(q): {in_psl}, symbol {k.omega_symbol}")
        if q == 11:
            ext = orc.gamma_extensions(G, tri[0], tri[1])
            res.add(f"{tag} unique gamma", ext == [tri[2]], f"{len(ext)} extensions")
    res.add("kernel labels bijective", sorted(labels) == list(range(kc.count)), str(labels))

    rep = kc.representatives()[0]
    classes = G.conjugacy_classes()
    for kind in ts.ActionKind:
        name = kind.name.lower()
        act = orc.tessellation_action(G, rep, name)
        res.add(f"{name} count", act.degree == ts.object_count(q, kind), str(act.degree))
        bad = []
        for c in classes:
            g = int(c[0])
            m = int(G.orders[g])
            tag = _class_tag(q, m, set(c.tolist()), rep)
            mine = ts.cycle_structure(q, m, kind, tag)
            theirs = orc.cycle_type(act, g)
            if _nonzero(mine.counts) != _nonzero(theirs):
                bad.append(f"order {m}{'/' + tag if tag else ''}")
        res.add(f"{name} cycle structures", not bad, ", ".join(bad) or f"{len(classes)} classes")
        r1, r2, r3 = orc.burnside_rank(act), orc.stabilizer_orbit_rank(act), ts.rank(q, kind)
        res.add(f"{name} rank", r1 == r2 == r3, f"burnside {r1}, orbits {r2}, formula {r3}")
    return res


def complement_is_regular(q: int) -> tuple[int, int, bool]:
    """(|S|, cells, regular) for the complement S acting on the oracle's cell cosets."""
    G = orc.small_group(q)
    if G.q != G.p:
        raise ValueError("complement transport is implemented for prime q")
    gens = [int(G.lookup([[x.as_int() for x in m.raw]])[0]) for m in complement_generators(q)]
    S = G.closure(gens)
    w = next(k for k in kernels_for_prime(q) if k.q == q).representative
    rep = orc.EpimorphismTriple(*_transported_triple(G, w)[0])
    act = orc.tessellation_action(G, rep, "cells")
    orbit = {0}
    frontier = [0]
    perms = [act.image(int(s)) for s in gens]
    while frontier:
        nxt = []
        for i in frontier:
            for perm in perms:
                j = int(perm[i])
                if j not in orbit:
                    orbit.add(j)
                    nxt.append(j)
        frontier = nxt
    regular = len(S) == act.degree and len(orbit) == act.degree
    return len(S), act.degree, regular


@dataclass(frozen=True)
class FieldGrowthReport:
    kernels: int
    larger_field: int
    larger_field_times: int
    counterexamples: tuple

    @property
    def holds(self) -> bool:
        return not self.counterexamples


def field_growth_report(pmax: int = 251) -> FieldGrowthReport:
    """How often a kernel whose quotient field exceeds the base field has symbol TIMES."""
    total = larger = times = 0
    bad = []
    for p in primes_up_to(pmax):
        base = base_field_degree(p)
        for k in kernels_for_prime(p):
            total += 1
            if k.degree > base:
                larger += 1
                if k.omega_symbol == TIMES:
                    times += 1
                else:
                    bad.append((p, k.trace_index, k.orbit_label + 1))
    return FieldGrowthReport(total, larger, times, tuple(bad))

