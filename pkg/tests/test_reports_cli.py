from __future__ import annotations

import io
import json

import jsonschema
import pytest

from coxeter353 import cli
from coxeter353.kernel_report import kernel_report, render_text
from coxeter353.reports import (
    COLUMNS,
    KNOWN_DISCREPANCIES,
    classify_records,
    diff_reference,
    load_reference,
    load_schema,
    parse_tsv,
    render,
    thread_count,
    unexpected,
)


@pytest.fixture(scope="module")
def records():
    return classify_records(251, threads=1)


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_record_count(records):
    assert len(records) == 54


def test_json_validates_and_round_trips(records):
    text = render(records, "json")
    doc = json.loads(text)
    jsonschema.validate(doc, load_schema())
    assert doc["rows"] == records
    assert doc["columns"] == list(COLUMNS)


def test_tsv_has_constant_width(records):
    rows = render(records, "tsv").splitlines()
    widths = {len(r.split("\t")) for r in rows}
    assert widths == {len(COLUMNS)}


def test_csv_and_markdown_render(records):
    assert render(records[:3], "csv").splitlines()[0] == ",".join(COLUMNS)
    md = render(records[:3], "markdown").splitlines()
    assert len(md) == 5 and md[0].startswith("| p |")
    with pytest.raises(ValueError):
        render(records, "xml")


def test_signed_display_p19(records):
    row = parse_tsv(render(records, "tsv"))[7]
    assert row["p"] == "19"
    assert (row["sqrt5"], row["t1"], row["t2"], row["D1"], row["D2"]) == ("±9", "4", "-5", "2", "4=2²")
    assert (row["count1"], row["count2"], row["quotient1"], row["quotient2"]) == ("1", "2", "L₂(19²)", "L₂(19)")
    assert (row["gamma1"], row["gamma2"], row["omega1"], row["omega2"], row["case"]) == ("Σ", "−", "×", "•", "(e)")


def test_p2_row(records):
    row = parse_tsv(render(records[:1], "tsv"))[0]
    assert (row["quotient1"], row["gamma1"], row["omega1"], row["case"]) == ("L₂(2⁴)", "Σ⁺", "×", "(a)")


def test_ascii_aliases(records):
    row = parse_tsv(render(records[:5], "tsv", ascii_only=True))[4]
    assert (row["gamma1"], row["gamma2"], row["omega1"], row["omega2"]) == ("x", "S", "*", "x")
    assert all(ord(ch) < 128 for ch in render(records, "tsv", ascii_only=True))


def test_json_uses_unsigned_residues(records):
    rec = next(r for r in records if r["p"] == 19)
    assert [tr["t"] for tr in rec["traces"]] == [4, 14]


def test_diff_reference_only_known(records):
    found, notes = diff_reference(records)
    assert unexpected(found) == []
    assert {(d.p, d.kind) for d in found} == set(KNOWN_DISCREPANCIES)
    assert any("p=181" in n for n in notes)


def test_diff_reference_detects_a_changed_symbol(records):
    ref = json.loads(json.dumps(load_reference()))
    row = next(r for r in ref if r["p"] == 31)
    row["omega"] = ["•", "•"]
    found, _ = diff_reference(records, ref)
    assert any(d.p == 31 for d in unexpected(found))


def test_parallel_output_matches_serial(records):
    assert classify_records(60, threads=3) == records[:17]


def test_thread_count_env(monkeypatch):
    monkeypatch.setenv("COXETER353_THREADS", "4")
    assert thread_count() == 4
    monkeypatch.setenv("COXETER353_THREADS", "many")
    with pytest.raises(ValueError):
        thread_count()


def test_kernel_report_q11():
    rep = kernel_report(11, 1, 1)
    assert rep["objects"]["cells"] == 11
    assert rep["complement"]["homology_witness"] == 11
    assert len(rep["face_identification"]["pairings"]) == 20
    assert "11 cells" in render_text(rep)


def test_kernel_report_q16():
    rep = kernel_report(2)
    assert rep["axes"]["bracelet"]["n"] == 5 and rep["axes"]["necklace"]["n"] == 3
    assert rep["face_identification"] is None


def test_kernel_report_q59_all_kernels():
    h3, h5 = set(), set()
    for trace in (1, 2):
        for root in (1, 2):
            rep = kernel_report(59, trace, root)
            h3.add(rep["axes"]["bracelet"]["h_order"])
            h5.add(rep["axes"]["necklace"]["h_order"])
    assert h3 == {30, 15} and h5 == {10, 15}


def test_cli_classify_pmax11(capsys):
    code, out, _ = run(["classify", "--pmax", "11"], capsys)
    assert code == 0
    assert [r["p"] for r in parse_tsv(out)] == ["2", "3", "5", "7", "11"]


def test_cli_classify_is_byte_stable(capsys):
    _, a, _ = run(["classify", "--pmax", "40", "--format", "json"], capsys)
    _, b, _ = run(["classify", "--pmax", "40", "--format", "json"], capsys)
    assert a == b


def test_cli_diff_reference(capsys):
    code, _, err = run(["classify", "--pmax", "251", "--diff-paper"], capsys)
    assert code == 0
    assert "UNEXPECTED" not in err and "p=73: case" in err


@pytest.mark.parametrize("argv", [
    ["classify", "--pmax", "1"],
    ["classify", "--pmax", "10", "--format", "yaml"],
    ["report", "--p", "9"],
    ["report", "--p", "5", "--trace", "2"],
    ["verify", "--q", "13"],
    ["verify", "--q", "29"],
    ["verify", "--q", "a,b"],
    [],
])
def test_cli_usage_errors(argv, capsys):
    assert cli.main(argv) == 2


def test_cli_report_json(capsys):
    code, out, _ = run(["report", "--p", "11", "--format", "json"], capsys)
    assert code == 0 and json.loads(out)["objects"]["cells"] == 11


def test_cli_verify(capsys):
    code, out, _ = run(["verify", "--q", "9,11,16"], capsys)
    assert code == 0
    assert "FAIL" not in out and out.rstrip().endswith("PASS verify 9,11,16")
    assert "info:" in out


def test_cli_verify_empty(capsys):
    code, out, _ = run(["verify", "--q", ""], capsys)
    assert code == 0 and "PASS verify (empty)" in out


def test_cli_verify_mismatch_exit_code(capsys, monkeypatch):
    from coxeter353 import tessellation_stats as ts

    real = ts.rank
    monkeypatch.setattr(ts, "rank", lambda q, kind: real(q, kind) + 1)
    code, out, _ = run(["verify", "--q", "11"], capsys)
    assert code == 1 and "FAIL" in out
