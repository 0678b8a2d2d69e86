"""Serialisable classification records, table renderers and the reference-table diff."""

from __future__ import annotations

import csv
import io
import json
import os
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from importlib import resources

from .classifier import (
    ASCII_SYMBOLS,
    NOT_NORMAL,
    ClassificationRow,
    KernelDescriptor,
    classify_prime,
    full_isometry_group_name,
    normalizer,
    omega_plus_quotient_name,
    primes_up_to,
)
from .finite_fields import build_field, is_square, sqrt

THREADS_ENV = "COXETER353_THREADS"

COLUMNS = (
    "p", "sqrt5", "t1", "t2", "D1", "D2", "count1", "count2",
    "quotient1", "quotient2", "gamma1", "gamma2", "omega1", "omega2", "case",
    "normalizer1", "normalizer2", "isometry1", "isometry2",
)


# -- records ------------------------------------------------------------------------

def _signed(v: int, p: int) -> int:
    return v - p if v > p // 2 else v


def _small_root(r: int, p: int) -> int:
    return min(r, p - r)


def _isometry_name(k: KernelDescriptor) -> str:
    if k.gamma_symbol == NOT_NORMAL:
        return omega_plus_quotient_name(k)
    return full_isometry_group_name(k)


def _witness_in_t(p: int, t, d) -> list[int] | None:
    """(a, b) with (a + b t)^2 = d, for t generating F_{p^2}; None if d is not a square."""
    if not is_square(d):
        return None
    r = sqrt(d)
    t0, t1 = t.coeffs[0], t.coeffs[1]
    c0, c1 = r.coeffs[0], r.coeffs[1]
    b = c1 * pow(t1, -1, p) % p
    a = (c0 - b * t0) % p
    return [a, b]


def row_record(row: ClassificationRow) -> dict:
    """A JSON-ready description of one classification row (field values unsigned)."""
    p = row.p
    symbolic = p == 2 or row.traces[0].field.n > 1
    traces = []
    for i, t in enumerate(row.traces):
        entry: dict = {"index": i + 1}
        if symbolic:
            entry.update(t=None, D=None, D_root=None, D_witness=None)
            if p != 2:
                entry["D_witness"] = _witness_in_t(p, t, row.discriminants[i])
        else:
            d = row.discriminants[i]
            r = row.discriminant_roots[i]
            entry.update(t=t.as_int(), D=d.as_int(), D_root=None if r is None else _small_root(r.as_int(), p),
                         D_witness=None)
        traces.append(entry)
    groups = []
    n_groups = 1 if row.merged else len(row.counts)
    for i in range(n_groups):
        members = [k for k in row.kernels if row.merged or (i + 1) in k.trace_indices]
        rep = members[0]
        groups.append({
            "traces": [j + 1 for j in range(len(row.traces))] if row.merged else [i + 1],
            "count": row.counts[i],
            "quotient": {"p": p, "exponent": row.degrees[i]},
            "gamma": row.gamma_symbols[i],
            "omega": row.omega_symbols[i],
            "normalizer": normalizer(rep),
            "isometry_group": _isometry_name(rep),
        })
    return {
        "p": p,
        "case": row.case_letter,
        "sqrt5": None if row.sqrt5 is None else row.sqrt5.as_int(),
        "symbolic": symbolic,
        "merged": row.merged,
        "traces": traces,
        "groups": groups,
    }


def record_for_prime(p: int) -> dict:
    return row_record(classify_prime(p))


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise ValueError(f"{THREADS_ENV} must be an integer, got {raw!r}") from None
    return max(1, n)


def classify_records(pmax: int, threads: int | None = None) -> list[dict]:
    """Records for every prime up to pmax, in increasing order of p."""
    primes = primes_up_to(pmax)
    threads = thread_count() if threads is None else threads
    if threads <= 1 or len(primes) < 2:
        return [record_for_prime(p) for p in primes]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(record_for_prime, primes))


# -- rendering --------------------------------------------------------------------------

_SUPERSCRIPT = {1: "", 2: "²", 4: "⁴"}


def _symbol(s: str, ascii_only: bool) -> str:
    return ASCII_SYMBOLS[s] if ascii_only else s


def _quotient(q: dict, ascii_only: bool) -> str:
    p, k = q["p"], q["exponent"]
    if ascii_only:
        return f"L2({p})" if k == 1 else f"L2({p}^{k})"
    return f"L₂({p}{_SUPERSCRIPT[k]})"


def _group_name(name: str, ascii_only: bool) -> str:
    if not ascii_only:
        return name
    for a, b in (("₂", "2"), ("²", "^2"), ("⁴", "^4"), ("⁺", "+"), ("×", "x"), ("Σ", "Sigma"),
                 ("Γ", "Gamma"), ("Ω", "Omega")):
        name = name.replace(a, b)
    return name


def _witness_sign(w: list[int], p: int) -> tuple[int, int]:
    """The sign of the witness (a, b) with the smaller constant term."""
    a, b = w
    neg = ((-a) % p, (-b) % p)
    return min((a, b), neg)


def _trace_cells(rec: dict, ascii_only: bool) -> tuple[list[str], list[str]]:
    p = rec["p"]
    ts, ds = [], []
    for tr in rec["traces"]:
        label = f"t{tr['index']}"
        if rec["symbolic"]:
            ts.append(label)
            w = tr["D_witness"]
            if w is not None:
                a, b = _witness_sign(w, p)
                ds.append(f"{a}+{'' if b == 1 else b}{label}")
            else:
                ds.append(f"sqrt(5+4{label})" if ascii_only else f"√(5+4{label})")
        else:
            ts.append(str(_signed(tr["t"], p)))
            d = str(_signed(tr["D"], p))
            if tr["D_root"] is not None:
                d += f"={tr['D_root']}^2" if ascii_only else f"={tr['D_root']}²"
            ds.append(d)
    while len(ts) < 2:
        ts.append("")
        ds.append("")
    return ts, ds


def signed_row(rec: dict, ascii_only: bool = False) -> list[str]:
    """The row as display strings with signed residues, one per column of COLUMNS."""
    p = rec["p"]
    if rec["sqrt5"] is None:
        root5 = ""
    elif rec["sqrt5"] == 0:
        root5 = "0"
    else:
        root5 = f"{'+-' if ascii_only else '±'}{_small_root(rec['sqrt5'], p)}"
    ts, ds = _trace_cells(rec, ascii_only)
    g = rec["groups"]

    def pair(fn):
        vals = [fn(x) for x in g]
        return vals + [""] * (2 - len(vals))

    return [
        str(p), root5, ts[0], ts[1], ds[0], ds[1],
        *pair(lambda x: str(x["count"])),
        *pair(lambda x: _quotient(x["quotient"], ascii_only)),
        *pair(lambda x: _symbol(x["gamma"], ascii_only)),
        *pair(lambda x: _symbol(x["omega"], ascii_only)),
        f"({rec['case']})",
        *pair(lambda x: _group_name(x["normalizer"], ascii_only)),
        *pair(lambda x: _group_name(x["isometry_group"], ascii_only)),
    ]


def render(records: list[dict], fmt: str, ascii_only: bool = False) -> str:
    if fmt == "json":
        return json.dumps({"columns": list(COLUMNS), "rows": records}, ensure_ascii=ascii_only, indent=1) + "\n"
    rows = [signed_row(r, ascii_only) for r in records]
    if fmt in ("tsv", "csv"):
        buf = io.StringIO()
        writer = csv.writer(buf, delimiter="\t" if fmt == "tsv" else ",", lineterminator="\n")
        writer.writerow(COLUMNS)
        writer.writerows(rows)
        return buf.getvalue()
    if fmt == "markdown":
        lines = ["| " + " | ".join(COLUMNS) + " |", "|" + "---|" * len(COLUMNS)]
        lines += ["| " + " | ".join(c or " " for c in row) + " |" for row in rows]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")


def parse_tsv(text: str) -> list[dict[str, str]]:
    reader = csv.reader(io.StringIO(text), delimiter="\t")
    header = next(reader)
    return [dict(zip(header, row)) for row in reader]


def load_schema() -> dict:
    return json.loads(resources.files("coxeter353").joinpath("data/classify.schema.json").read_text("utf-8"))


# -- comparison with the reference tables -------------------------------------------------

@dataclass(frozen=True)
class Discrepancy:
    p: int
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"p={self.p}: {self.kind}: {self.detail}"


# Known faults in the published tables; everything else must match.
KNOWN_DISCREPANCIES = frozenset({
    (59, "D"),
    (5, "quotient"),
    (149, "quotient"),
    (73, "case"),
    (127, "duplicate"),
    (167, "missing"),
})


def load_reference() -> list[dict]:
    text = resources.files("coxeter353").joinpath("data/reference_tables.json").read_text("utf-8")
    return json.loads(text)["rows"]


def _expand_pm(s: str) -> list[str]:
    if s.startswith("±"):
        return [s[1:], "-" + s[1:]]
    if s.startswith("∓"):
        return ["-" + s[1:], s[1:]]
    return [s]


def _parse_quotient(s: str) -> tuple[int, int]:
    m = re.fullmatch(r"L_2\((\d+)(?:\^(\d+))?\)", s)
    if not m:
        raise ValueError(f"cannot parse quotient {s!r}")
    return int(m.group(1)), int(m.group(2) or 1)


def _field_group(rec: dict, trace_index: int) -> dict:
    for g in rec["groups"]:
        if trace_index in g["traces"]:
            return g
    raise KeyError(trace_index)


def _compare_group(p: int, ref: dict, i: int, mine: dict, out: list[Discrepancy]) -> None:
    if ref["count"][i] != mine["count"]:
        out.append(Discrepancy(p, "count", f"reference {ref['count'][i]}, computed {mine['count']}"))
    base, exp = _parse_quotient(ref["quotient"][i])
    if (base, exp) != (p, mine["quotient"]["exponent"]):
        out.append(Discrepancy(p, "quotient",
                               f"reference {ref['quotient'][i]}, computed L_2({p}^{mine['quotient']['exponent']})"))
    for key in ("gamma", "omega"):
        if ref[key][i] != mine[key]:
            out.append(Discrepancy(p, key, f"reference {ref[key][i]}, computed {mine[key]}"))


def _diff_numeric(rec: dict, ref: dict, out: list[Discrepancy], notes: list[str]) -> None:
    p = rec["p"]
    if ref["sqrt5"] is not None:
        r = int(_expand_pm(ref["sqrt5"])[0])
        if (r * r - 5) % p:
            out.append(Discrepancy(p, "sqrt5", f"{ref['sqrt5']} does not square to 5"))
    mine_t = {tr["t"]: tr["index"] for tr in rec["traces"]}
    mine_d = {tr["D"]: tr["index"] for tr in rec["traces"]}
    ref_t = [int(x) for s in ref["t"] for x in _expand_pm(s)]
    for t in ref_t:
        if t % p in mine_t:
            continue
        if -t % p in mine_t:
            notes.append(f"p={p}: trace {t} is printed with the opposite sign")
        else:
            out.append(Discrepancy(p, "trace", f"{t} is not a root of t^2+t-1"))
    ref_d = [x for s in ref["D"] for x in _expand_pm(s)]
    t_order = [mine_t.get(t % p, mine_t.get(-t % p)) for t in ref_t]
    d_order = []
    for i, s in enumerate(ref_d):
        value, _, root = s.partition("=")
        d = int(value) % p
        idx = mine_d.get(d)
        d_order.append(idx)
        if idx is None:
            out.append(Discrepancy(p, "D", f"{value} is not 4t+5 for either trace"))
            continue
        tr = rec["traces"][idx - 1]
        if root:
            r = int(root.split("^")[0])
            if (r * r - d) % p:
                out.append(Discrepancy(p, "D", f"witness {s} is wrong"))
        if bool(root) != (tr["D_root"] is not None):
            out.append(Discrepancy(p, "D", f"square witness for {value} {'present' if root else 'absent'} in reference"))
        if not rec["merged"]:
            _compare_group(p, ref, i, _field_group(rec, idx), out)
    if rec["merged"]:
        _compare_group(p, ref, 0, rec["groups"][0], out)
    if not rec["merged"] and t_order != d_order and None not in d_order:
        notes.append(f"p={p}: D column and following columns are listed in the opposite order to t")


def _diff_symbolic(rec: dict, ref: dict, out: list[Discrepancy]) -> None:
    p = rec["p"]
    roots = []
    if p != 2:
        roots = [t for t in build_field(p, 2).elements() if t * t + t - 1 == 0]
    for i, s in enumerate(ref["D"]):
        if s.startswith("sqrt"):
            if p != 2 and rec["case"] not in ("g",):
                out.append(Discrepancy(p, "D", f"reference gives no witness for sqrt(5+4t{i + 1}) but 5+4t is a square"))
            continue
        m = re.fullmatch(r"(-?\d+)\+(-?\d+)?t[12]", s)
        if not m:
            out.append(Discrepancy(p, "D", f"cannot parse witness {s!r}"))
            continue
        a, b = int(m.group(1)), int(m.group(2) or 1)
        if not any((a + b * t) * (a + b * t) == 5 + 4 * t for t in roots):
            out.append(Discrepancy(p, "D", f"witness {s} does not square to 5+4t"))
    if rec["merged"]:
        _compare_group(p, ref, 0, rec["groups"][0], out)
    else:
        for i in range(len(ref["count"])):
            _compare_group(p, ref, i, rec["groups"][i], out)


def diff_reference(records: list[dict], reference: list[dict] | None = None) -> tuple[list[Discrepancy], list[str]]:
    """Compare computed records with the reference tables; return (discrepancies, notes)."""
    reference = load_reference() if reference is None else reference
    by_p: dict[int, list[dict]] = {}
    for r in reference:
        by_p.setdefault(r["p"], []).append(r)
    out: list[Discrepancy] = []
    notes: list[str] = []
    for rec in records:
        p = rec["p"]
        refs = by_p.get(p, [])
        if not refs:
            out.append(Discrepancy(p, "missing", "no row in the reference tables"))
            continue
        if len(refs) > 1:
            out.append(Discrepancy(p, "duplicate", f"{len(refs)} rows in the reference tables"))
        ref = refs[0]
        if ref["case"] != rec["case"]:
            out.append(Discrepancy(p, "case", f"reference ({ref['case']}), computed ({rec['case']})"))
        if rec["symbolic"]:
            _diff_symbolic(rec, ref, out)
        else:
            _diff_numeric(rec, ref, out, notes)
    return out, notes


def unexpected(discrepancies: list[Discrepancy]) -> list[Discrepancy]:
    return [d for d in discrepancies if (d.p, d.kind) not in KNOWN_DISCREPANCIES]
