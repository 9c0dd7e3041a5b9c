"""Acceptance checks, one group per criterion; a summary line per criterion is printed at the end."""
import json
import sys
import time
from fractions import Fraction

import pytest

from bilinrank.audit import VERDICTS, audit, audit_consistent
from bilinrank.cc_builder import base_algorithm, build_algorithm, select_plan, verify_base
from bilinrank.cli import main
from bilinrank.errors import InsufficientPlaces
from bilinrank.ff_core import make_field
from bilinrank.tower_bounds import (
    TARGET_SLOPE,
    STATED_STEP_DATA,
    certified_place_sum,
    exact_counts,
    genus_exact,
    genus_exact_T0,
    genus_sandwich_T0,
    pointwise_bound,
    select_step,
    step,
)

C1 = pytest.mark.criterion(1, "construct + verify, q=2 n<=17 (deg 4), q=3 n<=13 (deg 2)")
C2 = pytest.mark.criterion(2, "rank >= 2n-1; search reaches rank 3 for n=2")
C3 = pytest.mark.criterion(3, "base-table witnesses confirmed by exhaustion")
C4 = pytest.mark.criterion(4, "tower genus and place data, sandwich for i<=30")
C5 = pytest.mark.criterion(5, "step selection for q=2, n=19 and n=20")
C6 = pytest.mark.criterion(6, "certified bound tables to n=2000")
C7 = pytest.mark.criterion(7, "audit completes with a consistent verdict list")
C8 = pytest.mark.criterion(8, "byte-identical outputs on re-run")

CASES = [(2, 4, n) for n in range(2, 18)] + [(3, 2, n) for n in range(2, 14)]
_ranks = {}


def cli(*args):
    return main([str(a) for a in args])


@C1
@pytest.mark.parametrize("q,d,n", CASES, ids=[f"q{q}-n{n}" for q, d, n in CASES])
def test_construct_and_verify(q, d, n, tmp_path, capsys):
    alg = tmp_path / "alg.json"
    assert cli("construct", "--q", q, "--n", n, "--max-degree", d, "--out", alg) == 0, capsys.readouterr().err
    exhaustive = q ** (2 * n) <= 2 ** 20
    mode = ["--mode", "exhaustive"] if exhaustive else ["--mode", "random", "--samples", 100_000, "--seed", 0]
    rep = tmp_path / "rep.txt"
    assert cli("verify", alg, *mode, "--out", rep) == 0
    text = rep.read_text()
    pairs = q ** (2 * n) if exhaustive else 100_000
    assert f"{pairs}/{pairs} pairs ok" in text
    _ranks[q, n] = json.loads(alg.read_text())["rank"]


@C2
@pytest.mark.parametrize("q,d,n", CASES, ids=[f"q{q}-n{n}" for q, d, n in CASES])
def test_winograd_floor(q, d, n):
    rank = _ranks.get((q, n))
    if rank is None:
        try:
            rank = build_algorithm(select_plan(make_field(q), n, d)).rank
        except InsufficientPlaces:
            pytest.skip("no algorithm exists under this degree cap, so there is no rank to check")
    assert rank >= 2 * n - 1


@C2
@pytest.mark.parametrize("q,d", [(2, 4), (3, 2)])
def test_search_reaches_rank_three(q, d, tmp_path):
    alg = tmp_path / "alg.json"
    assert cli("construct", "--q", q, "--n", 2, "--max-degree", d, "--strategy", "search", "--out", alg) == 0
    assert json.loads(alg.read_text())["rank"] == 3
    assert cli("verify", alg, "--mode", "exhaustive", "--out", tmp_path / "r.txt") == 0


@C3
@pytest.mark.parametrize("k,u,rank", [(1, 1, 1), (2, 1, 3), (4, 1, 9), (1, 2, 3)])
def test_base_witness(k, u, rank):
    b = base_algorithm(make_field(2), k, u)
    assert b.rank == rank
    rep = verify_base(b)
    assert rep.mode == "exhaustive" and rep.pairs == 4 ** (k * u)
    assert not rep.failures and not rep.asymmetric


@C4
def test_tower_data():
    assert genus_exact_T0(4, 1) == 9
    assert genus_exact_T0(4, 2) == 45
    for (i, s), (g, counts) in {(1, 0): (9, (4, 2, 12)), (1, 1): (21, (4, 2, 25))}.items():
        st = step(2, i, s)
        assert genus_exact(st) == g and exact_counts(st) == counts
        assert STATED_STEP_DATA[i, s] == (g, counts)
    assert certified_place_sum(step(2, 1, 0)) == 4 + 2 * 2 + 4 * 12


@C4
@pytest.mark.parametrize("q", [3, 4])
def test_sandwich_to_thirty(q):
    for i in range(31):
        g = genus_exact_T0(q, i)
        lo, loose, tight = genus_sandwich_T0(q, i)
        assert lo <= g <= tight <= loose
        if i >= 1:
            assert lo < g


@C5
def test_step_selection():
    assert select_step(2, 19).label == "H_1"
    assert (select_step(2, 19).i, select_step(2, 19).s) == (1, 0)
    assert select_step(2, 20).label == "H_{1,1}"


@C6
@pytest.mark.parametrize("q,n0", [(2, 19), (3, 13)])
def test_bound_table(q, n0):
    t = time.perf_counter()
    for n in range(n0, 2001):
        rep = pointwise_bound(q, n, "certified")
        assert isinstance(rep.bound, Fraction)
        assert rep.bound >= 2 * n - 1
        assert rep.reverify() and rep.certified
    assert time.perf_counter() - t < 60


@C7
@pytest.mark.parametrize("q", [2, 3])
def test_audit(q, tmp_path):
    out = tmp_path / "audit.json"
    assert cli("audit", "--q", q, "--i-max", 20, "--out", out) == 0
    doc = json.loads(out.read_text())
    assert doc["items"] and doc["consistent"]
    assert all(it["verdict"] in VERDICTS for it in doc["items"])
    assert sum(doc["counts"].values()) == len(doc["items"])
    assert any(it["id"].startswith("cap_factor2") and it["verdict"] == "mismatch" for it in doc["items"])
    assert audit_consistent(audit(q, 20))
    assert TARGET_SLOPE == {2: Fraction(1035, 68), 3: Fraction(1933, 250)}


@C8
@pytest.mark.parametrize("args", [
    ("construct", "--q", 2, "--n", 12, "--max-degree", 4),
    ("construct", "--q", 3, "--n", 9, "--max-degree", 2, "--strategy", "search"),
    ("verify", "ALG", "--mode", "random", "--samples", 20_000, "--seed", 3),
    ("bound", "--q", 3, "--n", 13, "--mode", "certified"),
    ("table", "--q", 2, "--from", 19, "--to", 300),
    ("table", "--q", 3, "--from", 13, "--to", 300, "--mode", "paper", "--format", "json"),
    ("audit", "--q", 2, "--i-max", 20),
    ("audit", "--q", 3, "--i-max", 20),
    ("tower", "--q", 2, "--i-max", 4),
], ids=lambda a: "-".join(str(x) for x in a[:3]))
def test_determinism(args, tmp_path):
    alg = tmp_path / "alg.json"
    cli("construct", "--q", 2, "--n", 11, "--out", alg)
    args = [alg if a == "ALG" else a for a in args]
    blobs = []
    for k in range(2):
        out = tmp_path / f"out{k}"
        assert cli(*args, "--out", out) == 0
        blobs.append(out.read_bytes())
    assert blobs[0] and blobs[0] == blobs[1]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
