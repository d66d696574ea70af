import json
import subprocess
import sys
from pathlib import Path

import pytest

from oquiver.cli import main
from oquiver.icmod import icmodule_from_doc
from oquiver.quiver import parse_relations


def run_cli(*argv, capsys):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_proc(*argv, env=None):
    return subprocess.run(
        [sys.executable, "-m", "oquiver.cli", *argv],
        capture_output=True,
        env=env,
        cwd=str(Path(__file__).resolve().parent.parent),
    )


def test_weyl(capsys):
    code, out, _ = run_cli("weyl", "--type", "B2", capsys=capsys)
    assert code == 0
    assert "W(B2): 8 elements" in out
    assert "1.2.1.2  (length 4)" in out


def test_cohomology_table(capsys):
    code, out, _ = run_cli("cohomology", "--type", "A2", "--table", capsys=capsys)
    assert code == 0
    assert "dimension 6" in out
    assert "σ[1.2] + σ[2.1]" in out


def test_cohomology_invariants(capsys):
    code, out, _ = run_cli("cohomology", "--type", "A2", capsys=capsys)
    assert code == 0
    assert "invariants of s_1: 1, σ[2], σ[1.2]" in out


def test_ih_graded_dims(capsys):
    code, out, _ = run_cli(
        "ih", "--type", "A2", "--element", "1.2.1", "--no-cache", capsys=capsys
    )
    assert code == 0
    assert out.strip() == "1 2 2 1"


def test_ih_dump(capsys):
    code, out, _ = run_cli(
        "ih", "--type", "A2", "--element", "1", "--dump", "--no-cache", capsys=capsys
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["degrees"] == [-1, 1]
    assert doc["action"]["1"] == [["0", "0"], ["1", "0"]]


def test_hom(capsys):
    code, out, _ = run_cli(
        "hom", "--type", "A2", "--from", "e", "--to", "1", "--degree", "1",
        "--no-cache", capsys=capsys,
    )
    assert code == 0
    assert "dim Hom^1(V[e], V[1]) = 1" in out


def test_kl(capsys):
    code, out, _ = run_cli("kl", "--type", "B2", "--from", "e", "--to", "1.2.1.2", capsys=capsys)
    assert code == 0
    assert "P[e, 1.2.1.2] = 1" in out
    assert "mu = 0" in out


def test_quiver_text_appendix(capsys):
    code, out, _ = run_cli(
        "quiver", "--type", "A2", "--format", "text", "--appendix-numbering",
        "--no-cache", capsys=capsys,
    )
    assert code == 0
    assert "quiver A2: 6 vertices, 16 arrows, 22 relators" in out
    assert "(121)" in out and "(131)" in out


def test_quiver_json_round_trip(tmp_path, capsys):
    out_file = tmp_path / "a2.json"
    code, _, _ = run_cli(
        "quiver", "--type", "A2", "--format", "json", "--no-cache",
        "--out", str(out_file), capsys=capsys,
    )
    assert code == 0
    doc = json.loads(out_file.read_text())
    from oquiver.cache import build_pipeline

    q = build_pipeline("A2").quiver
    assert q.verify_relator_space(parse_relations(q, doc))


def test_quiver_dot(capsys):
    code, out, _ = run_cli(
        "quiver", "--type", "A1", "--format", "dot", "--no-cache", capsys=capsys
    )
    assert code == 0
    assert out.startswith('digraph "A1"')
    assert out.count("->") == 2


def test_check_suite(capsys):
    code, out, _ = run_cli(
        "check", "--type", "A2", "--suite", "ring", "--no-cache", "--seed", "3",
        capsys=capsys,
    )
    assert code == 0
    assert "ok   ring-commutative" in out
    assert "checks passed" in out


def test_unknown_type_is_domain_error(capsys):
    code, _, err = run_cli("weyl", "--type", "Z9", capsys=capsys)
    assert code == 1
    assert "error:" in err


def test_bad_element_is_domain_error(capsys):
    code, _, err = run_cli(
        "ih", "--type", "A2", "--element", "7.7", "--no-cache", capsys=capsys
    )
    assert code == 1
    assert "error:" in err


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["quiver", "--type", "A2", "--format", "yaml"])
    assert info.value.code == 2


def test_icmod_commands(tmp_path, capsys):
    from oquiver.cache import build_pipeline
    from oquiver.icmod import ICModule, icmodule_to_doc
    from oquiver.linalg import QMatrix

    pipeline = build_pipeline("A1")
    q = pipeline.quiver
    g = pipeline.group
    e, s = g.identity, g.longest
    module = ICModule({e.idx: 1, s.idx: 1}, {(s.idx, e.idx): [(0, QMatrix([[1]]))]})
    file = tmp_path / "p1.json"
    file.write_text(json.dumps(icmodule_to_doc(q, module)))

    code, out, _ = run_cli("icmod", "validate", str(file), "--no-cache", capsys=capsys)
    assert code == 0 and "valid: d^2 = 0" in out

    code, out, _ = run_cli("icmod", "cohomology", str(file), "--no-cache", capsys=capsys)
    assert code == 0 and out.strip() == "H^1: 1"

    dual_file = tmp_path / "dual.json"
    code, _, _ = run_cli(
        "icmod", "dual", str(file), "--out", str(dual_file), "--no-cache", capsys=capsys
    )
    assert code == 0
    dual = icmodule_from_doc(q, json.loads(dual_file.read_text()))
    assert set(dual.boundary) == {(e.idx, s.idx)}

    # an invalid module: both boundary maps nonzero
    bad = ICModule(
        {e.idx: 1, s.idx: 1},
        {(s.idx, e.idx): [(0, QMatrix([[1]]))], (e.idx, s.idx): [(0, QMatrix([[1]]))]},
    )
    bad_file = tmp_path / "bad.json"
    bad_file.write_text(json.dumps(icmodule_to_doc(q, bad)))
    code, out, _ = run_cli("icmod", "validate", str(bad_file), "--no-cache", capsys=capsys)
    assert code == 1 and "invalid" in out
    code, _, err = run_cli("icmod", "cohomology", str(bad_file), "--no-cache", capsys=capsys)
    assert code == 1 and "error:" in err


def test_cold_warm_and_corrupt_cache(tmp_path):
    env = {"PATH": "/usr/bin:/bin", "OQUIVER_CACHE": str(tmp_path / "cache")}
    args = ("quiver", "--type", "A2", "--format", "json")
    cold = run_proc(*args, env=env)
    assert cold.returncode == 0
    warm = run_proc(*args, env=env)
    assert warm.returncode == 0
    assert cold.stdout == warm.stdout
    assert warm.stderr == b""

    # flip one byte inside the cache file: checksum must catch it
    (cache_file,) = (tmp_path / "cache").glob("*.json")
    blob = bytearray(cache_file.read_bytes())
    pos = blob.find(b'"degrees"')
    blob[pos + 1 : pos + 2] = b"x"
    cache_file.write_bytes(bytes(blob))
    again = run_proc(*args, env=env)
    assert again.returncode == 0
    assert b"recomputing" in again.stderr
    assert again.stdout == cold.stdout

    nocache = run_proc(*args, "--no-cache", env=env)
    assert nocache.stdout == cold.stdout


def test_unwritable_cache_dir_is_domain_error(tmp_path, capsys):
    blocker = tmp_path / "blocker"
    blocker.write_text("not a directory")
    code, _, err = run_cli(
        "ih", "--type", "A2", "--element", "e",
        "--cache-dir", str(blocker / "sub"), capsys=capsys,
    )
    assert code == 1
    assert "error:" in err
