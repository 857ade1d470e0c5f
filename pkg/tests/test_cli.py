import json
import re
import subprocess
import sys
from pathlib import Path

import numpy as np
import pytest

from tilecode.cli import format_listing, main
from tilecode.encoder import helix_trace

from conftest import SYNTHETIC_SEQUENCE, pdb_text

DATA = Path(__file__).resolve().parents[1] / "data"


def run(capsys, *argv):
    status = main([str(a) for a in argv])
    out = capsys.readouterr()
    return status, out.out, out.err


def test_listing_blocks():
    text = format_listing(SYNTHETIC_SEQUENCE, "..000RQAAA" + "A" * 24 + "..")
    top, bottom = text.splitlines()
    assert top == "MISDEQLNSL AITFGIVMMT LIVIYHAVDS TMSPKN"
    assert bottom.endswith("..") and len(bottom.split()) == 4


def test_encode_text(capsys, synthetic_pdb):
    status, out, _ = run(capsys, "encode", synthetic_pdb)
    assert status == 0
    header, seq, codes = out.splitlines()
    assert header.startswith("> chain A (36 residues)")
    assert seq.startswith("MISDEQLNSL") and len(seq.split()) == 4
    assert codes.startswith("..") and codes.endswith("..")


def test_encode_json(capsys, synthetic_pdb, tmp_path):
    out_path = tmp_path / "out.json"
    status, _, _ = run(capsys, "encode", synthetic_pdb, "--format", "json", "--out", out_path)
    assert status == 0
    doc = json.loads(out_path.read_text())
    (chain,) = doc["chains"]
    assert len(chain["records"]) == 36
    assert [r["residue"] for r in chain["records"]] == list(SYNTHETIC_SEQUENCE)
    assert all(r["padded"] == (r["letter"] == ".") for r in chain["records"])


def test_encode_empty_chain(capsys, caplog, synthetic_pdb):
    status, _, _ = run(capsys, "encode", synthetic_pdb, "--chain", "Z")
    assert status == 2 and any(r.levelname == "WARNING" for r in caplog.records)


def test_encode_errors(capsys, caplog, tmp_path):
    bad = tmp_path / "bad.pdb"
    bad.write_text("HEADER\nATOM      1  CA  ALA A   1    xx\n")
    status, _, _ = run(capsys, "encode", bad)
    assert status == 1 and "line 2" in caplog.text
    status, _, _ = run(capsys, "encode", tmp_path / "missing.pdb")
    assert status == 1
    status, _, _ = run(capsys, "encode", bad, "--scale", "-1")
    assert status == 1


def test_flow_triangle(capsys):
    status, out, _ = run(capsys, "flow", DATA / "peaks_triangle.txt", "--dim", "3")
    assert status == 0
    lines = out.splitlines()
    assert "closed, length 10" in lines
    assert lines[-1] == "code DDDUDUUUDU"
    assert all(re.fullmatch(r"\d+\t\S+\t\S+\t[UD]", line) for line in lines[:10])


def test_flow_tetra(capsys):
    status, out, _ = run(capsys, "flow", DATA / "peaks_tetra.txt", "--dim", "4")
    assert status == 0 and "closed, length 6" in out and out.rstrip().endswith("code DUDUDU")
    status, out, _ = run(capsys, "flow", DATA / "peaks_tetra.txt", "--dim", "4", "--start", "1,1,0,1[3,4,1]")
    assert "closed, length 6" in out


@pytest.mark.parametrize("name,dim", [("peaks_triangle.txt", 3), ("peaks_tetra.txt", 4)])
def test_flow_truncated(capsys, name, dim):
    status, out, _ = run(capsys, "flow", DATA / name, "--dim", dim, "--max-steps", 3)
    assert status == 0 and "truncated" in out


def test_flow_json_and_errors(capsys, caplog):
    status, out, _ = run(capsys, "flow", DATA / "peaks_tetra.txt", "--dim", "4", "--format", "json")
    doc = json.loads(out)
    assert doc["closed"] and doc["code"] == "DUDUDU" and len(doc["steps"]) == 6
    status, _, _ = run(capsys, "flow", DATA / "peaks_tetra.txt", "--dim", "3")
    assert status == 1 and "line 2" in caplog.text
    status, _, _ = run(capsys, "flow", DATA / "peaks_tetra.txt", "--dim", "4", "--start", "1 1")
    assert status == 1


def test_export_svg(capsys, tmp_path):
    out = tmp_path / "f.svg"
    status, _, _ = run(capsys, "export", "--what", "flow-svg", DATA / "peaks_triangle.txt", "--out", out)
    assert status == 0
    assert out.read_text().count('class="trajectory-triangle"') == 10


def test_export_obj_from_xyz_and_pdb(capsys, tmp_path, synthetic_pdb):
    xyz = tmp_path / "frag.xyz"
    np.savetxt(xyz, helix_trace(5))
    status, out, _ = run(capsys, "export", "--what", "fold-obj", xyz)
    assert status == 0
    assert sum(line.startswith("v ") for line in out.splitlines()) == 20
    assert sum(line.startswith("g ") for line in out.splitlines()) == 5
    status, out, _ = run(capsys, "export", "--what", "fold-obj", synthetic_pdb, "--residue", "15")
    assert status == 0 and "(A)" in out
    status, _, _ = run(capsys, "export", "--what", "fold-obj", synthetic_pdb, "--residue", "2")
    assert status == 1


def test_export_bad_what(capsys):
    with pytest.raises(SystemExit) as info:
        main(["export", "--what", "png", "x"])
    assert info.value.code == 2


def test_table(capsys):
    status, out, _ = run(capsys, "table")
    rows = out.splitlines()[1:]
    assert status == 0 and len(rows) == 32
    assert "DDDUU\t3\t3" in rows and "DUDUD\t10\tA" in rows and rows[-1] == "UUUUU\t31\tV"


def test_module_entry_point(tmp_path):
    pdb = tmp_path / "h.pdb"
    pdb.write_text(pdb_text(helix_trace(8), "ACDEFGHI"))
    res = subprocess.run([sys.executable, "-m", "tilecode", "encode", str(pdb)], capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.splitlines()[2] == "..AAAA.."
