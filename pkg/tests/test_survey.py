import csv
import json
from decimal import Decimal

import pytest
from hypothesis import given, strategies as st

from vrprimes.errors import CheckpointVersionMismatch, VRError
from vrprimes.survey import (
    CSV_HEADER,
    Checkpoint,
    Table,
    density_prediction,
    emit_table,
    percentage,
    records_to_csv,
    scan,
)
from vrprimes.veryregular import Verdict, list_very_regular_discriminants


class Interrupt(Exception):
    pass


def test_small_scan_matches_list():
    r = scan(3, 200)
    vr = [-rec.d for rec in r.records if rec.verdict is Verdict.VERY_REGULAR]
    assert vr == list_very_regular_discriminants(3, 199)
    assert (r.split_count, r.vr_count) == (24, 19)


def test_boundary_convention():
    strict = scan(3, 1000)
    inclusive = scan(3, 1000, strict=False)
    assert all(-rec.d < 1000 for rec in strict.records)
    assert inclusive.split_count >= strict.split_count


def test_output_identical_across_jobs(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    ra = scan(5, 4000, jobs=1, out=a, block_size=256)
    rb = scan(5, 4000, jobs=2, out=b, block_size=256)
    assert a.read_bytes() == b.read_bytes()
    assert (ra.split_count, ra.vr_count) == (rb.split_count, rb.vr_count)


@pytest.mark.parametrize("stop_after", [1, 3, 7])
def test_resume_after_interruption(tmp_path, stop_after):
    full_out = tmp_path / "full.jsonl"
    full = scan(3, 5000, out=full_out, fmt="jsonl", block_size=512)
    ck, out = tmp_path / "ck.json", tmp_path / "part.jsonl"
    seen = []

    def bomb(state):
        seen.append(state.last_d)
        if len(seen) == stop_after:
            raise Interrupt

    with pytest.raises(Interrupt):
        scan(3, 5000, checkpoint_path=ck, out=out, fmt="jsonl", block_size=512, on_block=bomb)
    assert Checkpoint.load(ck).last_d == seen[-1]
    resumed = scan(3, 5000, checkpoint_path=ck, out=out, fmt="jsonl", block_size=512)
    assert (resumed.split_count, resumed.vr_count) == (full.split_count, full.vr_count)
    assert out.read_bytes() == full_out.read_bytes()


def test_monotone_refinement():
    small = scan(3, 1000)
    big = scan(3, 10000)
    prefix = [r for r in big.records if -r.d < 1000]
    assert [(r.d, r.verdict) for r in prefix] == [(r.d, r.verdict) for r in small.records]
    assert small.percentage == Decimal("68.1")
    assert big.percentage == Decimal("64.6")


def test_checkpoint_version_mismatch(tmp_path):
    ck = tmp_path / "ck.json"
    ck.write_text(json.dumps({"version": 99, "p": 3, "last_d": 0, "split_count": 0, "vr_count": 0}))
    with pytest.raises(CheckpointVersionMismatch):
        scan(3, 1000, checkpoint_path=ck)


def test_checkpoint_for_other_prime(tmp_path):
    ck = tmp_path / "ck.json"
    Checkpoint(5, 1024).save(ck)
    with pytest.raises(VRError):
        scan(3, 3000, checkpoint_path=ck)


def test_unwritable_output_names_path(tmp_path):
    bad = tmp_path / "missing" / "out.csv"
    with pytest.raises(VRError, match="missing"):
        scan(3, 100, out=bad)


def test_csv_schema(tmp_path):
    out = tmp_path / "r.csv"
    r = scan(11, 400, out=out)
    rows = list(csv.reader(out.open()))
    assert rows[0] == CSV_HEADER
    assert len(rows) == 1 + r.split_count
    assert out.read_text() == records_to_csv(r.records)
    for row in rows[1:]:
        rec = dict(zip(CSV_HEADER, row))
        assert rec["split"] == "true"
        assert rec["verdict"] in {v.value for v in Verdict}


def test_jsonl_schema(tmp_path):
    out = tmp_path / "r.jsonl"
    r = scan(11, 400, out=out, fmt="jsonl")
    lines = [json.loads(s) for s in out.read_text().splitlines()]
    assert len(lines) == r.split_count
    assert {"d", "h", "p", "split", "zeta_witnesses", "l_witnesses", "artin_ok", "verdict"} <= set(lines[0])


def test_density_prediction():
    assert density_prediction(3) == 0.560126
    assert density_prediction(2) == 0.288788
    assert abs(density_prediction(10007) - 0.9999) < 1e-6


@given(st.integers(0, 10**6), st.integers(1, 10**6))
def test_percentage_rounds_half_up(part, whole):
    if part > whole:
        return
    exact = Decimal(100 * part) / Decimal(whole)
    got = percentage(part, whole)
    assert abs(got - exact) <= Decimal("0.05")


def test_percentage_half_up():
    assert percentage(1, 8) == Decimal("12.5")
    assert percentage(1, 16) == Decimal("6.3")


def test_table_anchors_and_roundtrip():
    t = emit_table()
    assert t.cells[37, 3] == "31"
    assert t.cells[29, 7] == "18"
    assert t.cells[97, 3] == "✓"
    assert t.cells[13, 3] == "✗"
    assert t.cells[3, 3] == ""
    again = Table.from_json(json.loads(json.dumps(t.to_json(), ensure_ascii=False)))
    assert again.to_text() == t.to_text()
