"""Per-kernel report: tessellation statistics, axis geometry and complements."""

from __future__ import annotations

import math

from . import tessellation_stats as ts
from .classifier import NOT_NORMAL, full_isometry_group_name, normalizer, omega_plus_quotient_name, select_kernel, witness_for
from .geometry_quotients import bracelet_params, complement_exists, face_identifications, necklace_params
from .projective_linear import prime_power

SELECTED_ORDERS = (2, 3, 5, 6, 10, 15, 30)


def element_orders(q: int) -> list[int]:
    """Orders from SELECTED_ORDERS that occur in L_2(q)."""
    p, _ = prime_power(q)
    d = math.gcd(2, q - 1)
    return [m for m in SELECTED_ORDERS if m == p or ((q - 1) // d) % m == 0 or ((q + 1) // d) % m == 0]


def _tags(q: int, m: int) -> list[str | None]:
    if q == 9 and m == 3:
        return [ts.ALPHA, ts.GAMMA]
    if q == 25 and m == 5:
        return [ts.BETA, ts.OTHER]
    return [None]


def _key(m: int, tag: str | None) -> str:
    return str(m) if tag is None else f"{m}/{tag}"


def _axis(r) -> dict:
    return {"h_order": r.h_order, "n": r.n, "twist": r.twist, "fixed_cells": r.fixed_cells, "axes": r.axes}


def kernel_report(p: int, trace: int = 1, root: int = 1) -> dict:
    """Everything known about one kernel; raises KeyError for an unknown selector."""
    k = select_kernel(p, trace, root)
    w = witness_for(p, trace, root)
    q = w.q
    gamma_name = omega_plus_quotient_name(k) if k.gamma_symbol == NOT_NORMAL else full_isometry_group_name(k)
    out: dict = {
        "kernel": {
            "p": p, "q": q, "trace": trace, "root": root, "degree": k.degree,
            "gamma": k.gamma_symbol, "omega": k.omega_symbol, "case": k.case_letter,
            "normalizer": normalizer(k), "isometry_group": gamma_name,
        },
        "objects": {}, "rank": {}, "fixed_points": {}, "cycle_structures": {},
    }
    orders = element_orders(q)
    for kind in ts.ActionKind:
        name = kind.name.lower()
        out["objects"][name] = ts.object_count(q, kind)
        out["rank"][name] = ts.rank(q, kind)
        fixed, cycles = {}, {}
        for m in orders:
            for tag in _tags(q, m):
                if m in (2, 3, 5):
                    fixed[_key(m, tag)] = ts.fixed_points(q, m, kind, tag)
                cycles[_key(m, tag)] = str(ts.cycle_structure(q, m, kind, tag))
        out["fixed_points"][name] = fixed
        out["cycle_structures"][name] = cycles
    out["axes"] = {"bracelet": _axis(bracelet_params(w)), "necklace": _axis(necklace_params(w))}
    c = complement_exists(q)
    out["complement"] = {
        "order": c.order, "exists": c.exists, "family": c.family,
        "unipotent_order": c.unipotent_order, "torus_order": c.torus_order,
        "homology_witness": c.homology_witness,
    }
    out["face_identification"] = None
    if c.exists:
        fi = face_identifications(w)
        out["face_identification"] = {
            "complement_order": fi.complement_order,
            "vertices": fi.vertices, "edges": fi.edges, "faces": fi.faces, "cells": fi.cells,
            "euler_characteristic": fi.euler_characteristic,
            "pairings": [[fp.face, fp.partner, fp.word or "1"] for fp in fi.pairings],
        }
    return out


def render_text(rep: dict) -> str:
    k = rep["kernel"]
    lines = [
        f"kernel p={k['p']} trace={k['trace']} root={k['root']}: quotient L2({k['q']}), "
        f"gamma {k['gamma']}, omega {k['omega']}, case ({k['case']}), isometry group {k['isometry_group']}",
    ]
    for name, n in rep["objects"].items():
        lines.append(f"{n} {name} (rank {rep['rank'][name]})")
    for name, fixed in rep["fixed_points"].items():
        lines.append(f"fixed {name}: " + ", ".join(f"order {m} -> {v}" for m, v in fixed.items()))
    for name, cyc in rep["cycle_structures"].items():
        for m, s in cyc.items():
            lines.append(f"cycles {name} order {m}: {s}")
    for label, a in rep["axes"].items():
        lines.append(f"{label}: |h|={a['h_order']} n={a['n']} twist={a['twist']} "
                     f"axes={a['axes']} fixed cells={a['fixed_cells']}")
    c = rep["complement"]
    if c["exists"]:
        lines.append(f"complement: order {c['order']} ({c['family']}), covering witness {c['homology_witness']}")
    else:
        lines.append(f"complement: none of order {c['order']}")
    fi = rep["face_identification"]
    if fi:
        lines.append(f"face identification: V={fi['vertices']} E={fi['edges']} F={fi['faces']} "
                     f"C={fi['cells']} chi={fi['euler_characteristic']}")
        lines += [f"  face {a} -> {b} onto flag {wd}" for a, b, wd in fi["pairings"]]
    return "\n".join(lines) + "\n"
