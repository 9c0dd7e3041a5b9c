import json
from fractions import Fraction

import pytest

from bilinrank.cli import main
from bilinrank.errors import ReducibleModulus, SchemaError
from bilinrank.serialize import (
    export_algorithm,
    import_algorithm,
    parse_known_values,
    read_bound_table_csv,
)
from bilinrank.tower_bounds import pointwise_bound


def run(*args):
    return main([str(a) for a in args])


@pytest.fixture
def alg_file(tmp_path):
    out = tmp_path / "alg.json"
    assert run("construct", "--q", 2, "--n", 3, "--max-degree", 4, "--strategy", "default", "--out", out) == 0
    return out


def test_construct_and_verify(alg_file, capsys):
    doc = json.loads(alg_file.read_text())
    assert doc["rank"] == 7 == len(doc["terms"])
    assert doc["modulus_Q"] == [1, 1, 0, 1]
    capsys.readouterr()
    assert run("verify", alg_file, "--mode", "exhaustive") == 0
    out = capsys.readouterr().out
    assert "64/64 pairs ok" in out and "seed 0" in out


def test_round_trip_is_byte_exact(alg_file):
    text = alg_file.read_text()
    assert export_algorithm(import_algorithm(text)) == text


def test_round_trip_extension_field(tmp_path):
    out = tmp_path / "a9.json"
    assert run("construct", "--q", 9, "--n", 2, "--max-degree", 1, "--out", out) == 0
    text = out.read_text()
    assert "base_modulus" in json.loads(text)
    assert export_algorithm(import_algorithm(text)) == text
    assert run("verify", out) == 0


def test_import_rejects_reducible_modulus(alg_file):
    doc = json.loads(alg_file.read_text())
    doc["modulus_Q"] = [1, 0, 0, 1]  # x^3 + 1 = (x+1)(x^2+x+1)
    with pytest.raises(ReducibleModulus):
        import_algorithm(json.dumps(doc))


def test_import_rejects_rank_mismatch(alg_file):
    doc = json.loads(alg_file.read_text())
    doc["rank"] = 6
    with pytest.raises(SchemaError):
        import_algorithm(json.dumps(doc))


def test_corrupted_term_exits_one(alg_file, tmp_path):
    doc = json.loads(alg_file.read_text())
    doc["terms"][2]["w"] = [1 - v for v in doc["terms"][2]["w"]]
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    assert run("verify", bad, "--mode", "exhaustive") == 1
    assert run("verify", bad, "--mode", "random", "--samples", 500) == 1


def test_config_errors_exit_two(tmp_path):
    assert run("bound", "--q", 5, "--n", 30) == 2
    assert run("bound", "--q", 2, "--n", 5) == 2
    assert run("construct", "--q", 6, "--n", 3) == 2
    assert run("construct", "--q", 2) == 2
    assert run("verify", tmp_path / "missing.json") == 2
    assert run("table", "--q", 2, "--from", 30, "--to", 20) == 2
    assert run("frobnicate") == 2
    kv = tmp_path / "kv.json"
    kv.write_text('{"0": {"value": 3, "source": "x"}}')
    assert run("bound", "--q", 2, "--n", 2, "--known-values", kv) == 2


def test_known_values_schema():
    ok = parse_known_values({"2": {"value": 3, "source": "Winograd equality"}})
    assert ok == {2: {"value": 3, "source": "Winograd equality"}}
    for bad in ({"0": {"value": 1, "source": "s"}},
                {"2": {"value": 3}},
                {"2": {"value": 2.5, "source": "s"}},
                {"x": {"value": 3, "source": "s"}},
                [1, 2]):
        with pytest.raises(SchemaError):
            parse_known_values(bad)


def test_bound_command(tmp_path, capsys):
    out = tmp_path / "b.json"
    assert run("bound", "--q", 3, "--n", 13, "--mode", "certified", "--out", out) == 0
    doc = json.loads(out.read_text())
    assert doc["branches"]["a:G_3"] == "231"
    assert Fraction(doc["bound_rational"]) <= 231
    assert doc["trace"] and all(t["status"] == "holds" for t in doc["trace"])


def test_bound_with_known_values(tmp_path, capsys):
    kv = tmp_path / "kv.json"
    kv.write_text('{"2": {"value": 3, "source": "Winograd equality"}}')
    assert run("bound", "--q", 2, "--n", 2, "--known-values", kv) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["bound_rational"] == "3" and doc["source"] == "table: Winograd equality"


def test_table_csv_parses_back(tmp_path):
    out = tmp_path / "t.csv"
    assert run("table", "--q", 2, "--from", 19, "--to", 100, "--out", out) == 0
    rows = read_bound_table_csv(out.read_text())
    assert [r["n"] for r in rows] == list(range(19, 101))
    for r in rows:
        assert r["bound_rational"] == pointwise_bound(2, r["n"]).bound
        assert r["bound_floor"] == int(r["bound_rational"] // 1)
    head = out.read_text().splitlines()[0]
    assert head == "n,mode,step_i,step_s,genus_used,bound_rational,bound_floor"


def test_tower_and_audit_commands(tmp_path):
    t = tmp_path / "tower.json"
    assert run("tower", "--q", 2, "--i-max", 1, "--out", t) == 0
    data = json.loads(t.read_text())
    h1 = next(d for d in data if d["step"]["label"] == "H_1")
    assert h1["genus_exact"] == 9 and h1["exact_counts"] == [4, 2, 12]
    a = tmp_path / "audit.json"
    assert run("audit", "--q", 3, "--i-max", 20, "--out", a) == 0
    doc = json.loads(a.read_text())
    assert doc["consistent"] and not doc["mandatory_failures"]


@pytest.mark.parametrize("args", [
    ("construct", "--q", 3, "--n", 5, "--max-degree", 2),
    ("verify", "ALG", "--mode", "random", "--samples", 3000, "--seed", 5),
    ("table", "--q", 3, "--from", 13, "--to", 40, "--format", "json"),
    ("audit", "--q", 2, "--i-max", 6),
    ("tower", "--q", 3, "--i-max", 3),
])
def test_outputs_are_byte_identical(args, alg_file, tmp_path):
    args = [alg_file if a == "ALG" else a for a in args]
    outs = []
    for k in range(2):
        out = tmp_path / f"o{k}"
        main([str(a) for a in args] + ["--out", str(out)])
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] and outs[0]
