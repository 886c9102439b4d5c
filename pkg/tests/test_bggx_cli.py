import json
import subprocess
import sys

import pytest

from bggkit.bggx import BGGXError, emit_bggx, parse_bggx
from bggkit.cli import main
from bggkit.complexes import CochainComplex
from bggkit.exactfield import Matrix
from bggkit.generators import fixture, generate, mixed_diagram
from bggkit.reports import build_report, render

INTERVAL = emit_bggx(fixture("INTERVAL"))


def test_round_trip_complex_and_diagram():
    for obj in (fixture("SPHERE_TETRA", 2), mixed_diagram(3), generate("phi-probe", 1)):
        text = emit_bggx(obj)
        assert emit_bggx(parse_bggx(text).body) == text


def test_rational_entries_round_trip():
    c = CochainComplex(0, (1, 1), (Matrix([["-3/7"]]),), "frac")
    doc = parse_bggx(emit_bggx(c))
    assert doc.complex.d(0)[0, 0] == Matrix([["-3/7"]])[0, 0]


def test_zero_denominator_names_the_entry():
    bad = INTERVAL.replace('"-1", "1"', '"3/0", "1"')
    with pytest.raises(BGGXError, match=r"diffs\[0\] \(degree 0\)\[0\]\[0\]"):
        parse_bggx(bad)


def test_row_length_error_names_degree():
    bad = INTERVAL.replace('["-1", "1"]', '["-1"]')
    with pytest.raises(BGGXError, match=r"degree 0\) row 0: 1 entries, expected 2"):
        parse_bggx(bad)


def test_json_syntax_error_has_position():
    with pytest.raises(BGGXError, match=r"line 4, column 3"):
        parse_bggx(INTERVAL.replace('"version": 1,', '"version": 1'))


def test_unknown_kind_and_format():
    obj = json.loads(INTERVAL)
    obj["kind"] = "sheaf"
    with pytest.raises(BGGXError, match="unknown kind"):
        parse_bggx(json.dumps(obj))
    obj["format"] = "OTHER"
    with pytest.raises(BGGXError, match="format"):
        parse_bggx(json.dumps(obj))


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


def test_cli_exit_codes(tmp_path, capsys):
    good = _write(tmp_path, "circle.bggx", emit_bggx(fixture("CIRCLE3")))
    assert main(["cohomology", "-i", good]) == 0
    assert "betti" in capsys.readouterr().out
    c = fixture("SPHERE_TETRA")
    arr = c.d(1).array()
    arr[0, 0] += 1
    broken = CochainComplex(c.lo, c.dims, (c.d(0), Matrix(arr)), "broken")
    bad = _write(tmp_path, "broken.bggx", emit_bggx(broken))
    assert main(["validate", "-i", bad]) == 1
    assert main(["cohomology", "-i", str(tmp_path / "missing.bggx")]) == 2
    assert main(["cone", "-i", good]) == 2
    garbage = _write(tmp_path, "garbage.bggx", "{ not json")
    assert main(["validate", "-i", garbage]) == 2
    capsys.readouterr()


def test_cli_generate_then_analyse(tmp_path, capsys):
    out = str(tmp_path / "probe.bggx")
    assert main(["generate", "--kind", "phi-probe", "--seed", "2", "-o", out]) == 0
    for cmd in ("validate", "cone", "les", "bgg-pattern", "bgg-reduce", "spectral"):
        assert main([cmd, "-i", out, "--format", "machine"]) == 0, cmd
    capsys.readouterr()


def test_degree_range_restricts_tables():
    text = emit_bggx(fixture("SPHERE_TETRA"))
    full = build_report("cohomology", text)
    part = build_report("cohomology", text, degree_range=(1, 2))
    assert json.dumps(part) != json.dumps(full)
    assert "betti" in render(part)


def test_reports_are_identical_across_processes(tmp_path):
    path = _write(tmp_path, "mixed.bggx", emit_bggx(mixed_diagram(4)))
    outs = []
    for _ in range(2):
        proc = subprocess.run([sys.executable, "-m", "bggkit.cli", "spectral", "-i", path,
                               "--format", "machine"], capture_output=True, text=True, check=False)
        assert proc.returncode == 0, proc.stderr
        outs.append(proc.stdout)
    assert outs[0] == outs[1]
    assert json.loads(outs[0])["status"] == "ok"
