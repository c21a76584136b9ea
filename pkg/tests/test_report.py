"""Deterministic file outputs and figure rendering."""

import json

from natext.cayley import build_ball
from natext.dynamics import entropy_summary
from natext.groups import sgroup_bs12
from natext.report import (
    dumps,
    ensure_dir,
    entropy_csv,
    entropy_figure,
    core_figure,
    write_csv,
    write_json,
)
from natext.subshift import nn_spec


def golden():
    return nn_spec(("0", "1"), ("s",), [[(0, 0), (0, 1), (1, 0)]],
                   carrier_kind="grid")


def test_json_output_is_sorted_and_stable(tmp_path):
    blob = {"b": 1, "a": [3, 2], "nested": {"z": 0, "y": 1}}
    p = tmp_path / "out.json"
    write_json(blob, p)
    text = p.read_text()
    assert text.endswith("\n")
    assert text.index('"a"') < text.index('"b"') < text.index('"nested"')
    assert json.loads(text) == blob
    write_json(blob, tmp_path / "again.json")
    assert (tmp_path / "again.json").read_text() == text
    assert dumps(blob) + "\n" == text


def test_csv_round_trip(tmp_path):
    p = tmp_path / "rows.csv"
    write_csv([(1, "x"), (2, "y")], p, ("n", "label"))
    lines = p.read_text().splitlines()
    assert lines == ["n,label", "1,x", "2,y"]


def test_entropy_csv_columns(tmp_path):
    summary = entropy_summary(golden(), 6)
    p = tmp_path / "entropy.csv"
    entropy_csv(summary, p)
    lines = p.read_text().splitlines()
    assert lines[0] == "n,window_size,count,estimate,method"
    assert len(lines) == 7
    first = lines[1].split(",")
    assert first[0] == "1"
    assert first[2] == "2"
    assert first[4] == "transfer"
    entropy_csv(summary, tmp_path / "again.csv")
    assert (tmp_path / "again.csv").read_text() == p.read_text()


def test_entropy_figure_renders(tmp_path):
    summary = entropy_summary(golden(), 8)
    p = tmp_path / "entropy.png"
    entropy_figure(summary, p, reference=0.4812118250596035)
    data = p.read_bytes()
    assert data[:8] == b"\x89PNG\r\n\x1a\n"
    assert len(data) > 5000


def test_core_figure_renders(tmp_path):
    ball = build_ball(sgroup_bs12(), 3)
    p = tmp_path / "core.png"
    core_figure(ball, [0, 1, 2, 6, 8, 22], p, title="contradiction core")
    data = p.read_bytes()
    assert data[:8] == b"\x89PNG\r\n\x1a\n"
    assert len(data) > 5000


def test_ensure_dir(tmp_path):
    target = tmp_path / "a" / "b"
    out = ensure_dir(target)
    assert str(target) == str(out)
    assert target.is_dir()
    # idempotent
    ensure_dir(target)
