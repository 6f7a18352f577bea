import csv
import io
import json
import subprocess
import sys

import pytest

from conftest import scrambled_pairs
from pachner import decode, fixtures, z2_homology_ranks
from pachner.cli import CSV_COLUMNS, main, read_casefile

DT_SIG = "bcbmqbhaGaeya"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def fixture_files(tmp_path):
    paths = {}
    for name, text in fixtures.ALL.items():
        path = tmp_path / f"{name}.txt"
        path.write_text(text)
        paths[name] = str(path)
    bad = tmp_path / "bad.txt"
    bad.write_text("0:1:2 nonsense\n")
    paths["bad"] = str(bad)
    return paths


def test_validate_exit_codes(capsys, fixture_files):
    assert run(capsys, "validate", fixture_files["double_tetrahedron"])[0] == 0
    assert run(capsys, "validate", fixture_files["figure_eight"])[0] == 2
    assert run(capsys, "validate", fixture_files["reversed_edge"])[0] == 3
    code, _, err = run(capsys, "validate", fixture_files["bad"])
    assert code == 1 and "error" in err
    assert run(capsys, "validate", "fixture:nope")[0] == 1


def test_validate_json(capsys):
    code, out, _ = run(capsys, "validate", "--format", "json", DT_SIG)
    info = json.loads(out)
    assert code == 0 and info["material_vertex_count"] == 4 and info["z2_homology"] == [1, 0, 0, 1]


def test_sig_round_trip(capsys, tmp_path):
    code, out, _ = run(capsys, "sig", "encode", "fixture:projective_space")
    sig = out.strip()
    assert code == 0
    code, table, _ = run(capsys, "sig", "decode", sig)
    path = tmp_path / "t.txt"
    path.write_text(table)
    assert run(capsys, "sig", "encode", str(path))[1].strip() == sig
    code, table, _ = run(capsys, "sig", "decode", DT_SIG)
    assert "1:0:0 1:1:0 1:2:0 1:3:0" in table and len(table.strip().splitlines()) == 3
    assert run(capsys, "sig", "decode", "not*a*sig")[0] == 1
    assert run(capsys, "sig", "decode", "bcbmq")[0] == 1


def test_scramble(capsys):
    code, out, _ = run(capsys, "scramble", "fixture:projective_space", "--steps", "0")
    assert code == 0 and out.strip() == decode(out.strip()).signature()
    first = run(capsys, "scramble", "fixture:projective_space", "--steps", "5", "--max-size", "5",
                "--seed", "3", "--count", "4", "--check")
    second = run(capsys, "scramble", "fixture:projective_space", "--steps", "5", "--max-size", "5",
                 "--seed", "3", "--count", "4", "--check")
    assert first == second and first[0] == 0
    sigs = first[1].split()
    assert len(sigs) == 4
    assert all(z2_homology_ranks(decode(s)) == (1, 1, 1, 1) for s in sigs)
    code, _, err = run(capsys, "scramble", DT_SIG, "--steps", "1", "--max-size", "2")
    assert code == 1 and "no 2-3 or 3-2 move" in err


def _casefile(tmp_path, body):
    path = tmp_path / "cases.txt"
    path.write_text(body)
    return str(path)


def test_connect_csv(capsys, tmp_path):
    ((a, b),) = scrambled_pairs(fixtures.double_tetrahedron(), 1, rng_seed=5, max_size=5)
    pair = (a.signature(), b.signature())
    body = f"case same\n{DT_SIG}\n{DT_SIG}\n\ncase pair\n{pair[0]}\n{pair[1]}\n\ncase broken\n{DT_SIG}\nfixture:projective_space\n"
    out_csv = tmp_path / "out.csv"
    paths = tmp_path / "paths"
    code, _, _ = run(capsys, "connect", _casefile(tmp_path, body), "--csv", str(out_csv),
                     "--emit-paths", str(paths), "--max-extra-tets", "5")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out_csv.read_text())))
    assert list(rows[0]) == CSV_COLUMNS
    assert len(rows) == 9 and all(set(r) == set(CSV_COLUMNS) for r in rows)
    same = [r for r in rows if r["case_id"] == "same"]
    assert {r["height"] for r in same} == {"0"} and {r["height_gap"] for r in same} == {"0"}
    broken = [r for r in rows if r["case_id"] == "broken"]
    assert all(r["error"].startswith("SeedMismatch") for r in broken)
    mono, semi = [r for r in rows if r["case_id"] == "pair"][1:]
    if mono["height"] == semi["height"]:
        assert mono["nodes_23_32"] == semi["nodes_23_32"]
    files = sorted(p.name for p in paths.iterdir())
    assert any(name.startswith("pair.semi-monotonic.") for name in files)


def test_connect_node_limit_and_json(capsys, tmp_path):
    ((a, b),) = scrambled_pairs(fixtures.projective_space(), 1, rng_seed=2, max_size=5)
    pair = (a.signature(), b.signature())
    body = f"case hard\n{pair[0]}\n{pair[1]}\n"
    code, out, _ = run(capsys, "connect", _casefile(tmp_path, body), "--node-limit", "3",
                       "--strategy", "monotonic", "--format", "json")
    (row,) = json.loads(out)
    assert code == 0 and row["terminated_early"] is True and row["connected"] is False


def test_casefile_errors(capsys, tmp_path):
    assert run(capsys, "connect", _casefile(tmp_path, "bcbmqbhaGaeya\n"))[0] == 1
    with pytest.raises(Exception):
        read_casefile("case a\nx\n\ncase a\ny\n")
    assert read_casefile("# note\ncase a\nx\ny\n\ncase b\nz\n") == [("a", ["x", "y"]), ("b", ["z"])]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "pachner", "validate", "fixture:figure_eight"],
                          capture_output=True, text=True)
    assert proc.returncode == 2 and "pseudo-manifold" in proc.stdout
