"""JSON and CSV formats: algorithms, known-value tables, bound reports, tower data."""
from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path

from .cc_builder import EvaluationPlan, SymmetricBilinearAlgorithm
from .errors import ReducibleModulus, SchemaError
from .ff_core import FieldSpec, Polynomial, field_of_order, is_irreducible, make_field, prime_power
from .function_field import Divisor, Place
from .tower_bounds import (
    BoundReport,
    TowerStep,
    capacity_slack,
    delta_genus_lower,
    fmt,
    step_capacity,
    step_data,
)


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=True) + "\n"


# --------------------------------------------------------------- algorithms

def export_algorithm(alg: SymmetricBilinearAlgorithm) -> str:
    F = alg.q
    doc = {"q": F.q, "n": alg.n}
    if not F.is_prime:
        doc["base_modulus"] = list(F.modulus.coeffs)
    doc["modulus_Q"] = list(alg.modulus_Q.coeffs)
    doc["rank"] = alg.rank
    doc["terms"] = [{"phi": list(phi), "w": list(w)} for phi, w in alg.terms]
    if alg.plan is not None:
        plan = alg.plan
        doc["plan"] = {
            "places": [P.encode() for P, _ in plan.places],
            "multiplicities": [u for _, u in plan.places],
            "divisor": [[P.encode(), a] for P, a in plan.D.terms],
        }
    return dumps(doc)


def _int_list(x, name: str, length: int | None = None, bound: int | None = None) -> list[int]:
    if not isinstance(x, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in x):
        raise SchemaError(f"{name} must be a list of integers")
    if length is not None and len(x) != length:
        raise SchemaError(f"{name} must have length {length}")
    if bound is not None and any(not 0 <= v < bound for v in x):
        raise SchemaError(f"{name} entries must lie in [0, {bound})")
    return x


def _field_from_doc(doc: dict) -> FieldSpec:
    q = doc.get("q")
    if not isinstance(q, int) or isinstance(q, bool) or q < 2:
        raise SchemaError("q must be an integer >= 2")
    p, k = prime_power(q)
    if k == 1:
        return make_field(p)
    if "base_modulus" in doc:
        from .ff_core import prime_field

        coeffs = _int_list(doc["base_modulus"], "base_modulus", k + 1, p)
        return make_field(p, k, Polynomial(prime_field(p), coeffs))
    return field_of_order(q)


def _place(F: FieldSpec, data) -> Place:
    if data == "inf":
        return Place(F)
    coeffs = _int_list(data, "place", bound=F.q)
    try:
        return Place(F, Polynomial(F, coeffs))
    except ValueError as exc:
        raise SchemaError(f"bad place {data}: {exc}") from exc


def import_algorithm(text: str) -> SymmetricBilinearAlgorithm:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError("algorithm document must be an object")
    for key in ("q", "n", "modulus_Q", "rank", "terms"):
        if key not in doc:
            raise SchemaError(f"missing field {key!r}")
    F = _field_from_doc(doc)
    n = doc["n"]
    if not isinstance(n, int) or n < 1:
        raise SchemaError("n must be a positive integer")
    mq = Polynomial(F, _int_list(doc["modulus_Q"], "modulus_Q", n + 1, F.q))
    if not mq.is_monic() or mq.degree != n or not is_irreducible(mq):
        raise ReducibleModulus(f"modulus_Q {list(mq.coeffs)} is not a monic irreducible of degree {n}")
    terms_doc = doc["terms"]
    if not isinstance(terms_doc, list) or doc["rank"] != len(terms_doc):
        raise SchemaError("rank must equal the number of terms")
    terms = []
    for t in terms_doc:
        if not isinstance(t, dict) or set(t) != {"phi", "w"}:
            raise SchemaError("each term needs exactly 'phi' and 'w'")
        terms.append((tuple(_int_list(t["phi"], "phi", n, F.q)), tuple(_int_list(t["w"], "w", n, F.q))))
    plan = None
    if "plan" in doc:
        pd = doc["plan"]
        try:
            places = [_place(F, x) for x in pd["places"]]
            mults = _int_list(pd["multiplicities"], "multiplicities", len(places))
            D = Divisor([(_place(F, P), a) for P, a in pd["divisor"]])
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"malformed plan: {exc}") from exc
        plan = EvaluationPlan(F, n, Place(F, mq), D, tuple(zip(places, mults)))
    return SymmetricBilinearAlgorithm(F, n, mq, tuple(terms), plan)


# ------------------------------------------------------------- known values

def parse_known_values(doc) -> dict[int, dict]:
    if not isinstance(doc, dict):
        raise SchemaError("known values must be a JSON object")
    out = {}
    for key, entry in doc.items():
        if not isinstance(key, str) or not key.isdigit() or str(int(key)) != key:
            raise SchemaError(f"key {key!r} is not a decimal integer")
        n = int(key)
        if n < 2:
            raise SchemaError(f"n = {n} must be >= 2")
        if not isinstance(entry, dict):
            raise SchemaError(f"entry for {key} must be an object")
        if "value" not in entry or "source" not in entry:
            raise SchemaError(f"entry for {key} needs 'value' and 'source'")
        value, source = entry["value"], entry["source"]
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise SchemaError(f"value for {key} must be a positive integer")
        if not isinstance(source, str) or not source:
            raise SchemaError(f"source for {key} must be a non-empty string")
        out[n] = {"value": value, "source": source}
    return out


def import_known_values(path) -> dict[int, dict]:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not JSON: {exc}") from exc
    return parse_known_values(doc)


# ------------------------------------------------------------------ reports

def _step_json(st: TowerStep | None):
    if st is None:
        return None
    return {"tower": st.tower.name, "i": st.i, "s": st.s, "label": st.label}


def bound_report_json(rep: BoundReport) -> dict:
    return {
        "q": rep.q,
        "n": rep.n,
        "mode": rep.mode,
        "source": rep.source,
        "step": _step_json(rep.step),
        "branch": rep.branch,
        "genus_used": rep.genus_used,
        "b_sum": None if rep.b_sum is None else fmt(rep.b_sum),
        "bound_rational": fmt(rep.bound),
        "bound_floor": rep.bound_floor,
        "certified": rep.certified,
        "branches": {k: fmt(v) for k, v in rep.branches.items()},
        "trace": [t.to_json() for t in rep.trace],
    }


CSV_COLUMNS = ("n", "mode", "step_i", "step_s", "genus_used", "bound_rational", "bound_floor")


def bound_table_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        w.writerow([r.n, r.mode,
                    "" if r.step is None else r.step.i,
                    "" if r.step is None else r.step.s,
                    "" if r.genus_used is None else r.genus_used,
                    fmt(r.bound), r.bound_floor])
    return buf.getvalue()


def read_bound_table_csv(text: str) -> list[dict]:
    rows = list(csv.DictReader(io.StringIO(text)))
    for row in rows:
        row["n"] = int(row["n"])
        row["bound_rational"] = Fraction(row["bound_rational"])
        row["bound_floor"] = int(row["bound_floor"])
    return rows


def step_data_json(st: TowerStep) -> dict:
    d = step_data(st)
    return {
        "step": _step_json(st),
        "genus_exact": d.genus_exact,
        "genus_lower": fmt(d.genus_lower),
        "genus_upper": fmt(d.genus_upper),
        "weighted_place_sum_lower": d.weighted_place_sum_lower,
        "exact_counts": None if d.exact_counts is None else list(d.exact_counts),
        "capacity_certified": step_capacity(st, "certified"),
        "capacity_paper": step_capacity(st, "paper"),
        "delta_genus_lower": delta_genus_lower(st),
        "capacity_slack": capacity_slack(st, "certified"),
        "flags": {"ordinary": st.ordinary, "nonspecial_divisor_g_minus_1": st.nonspecial_divisor_g_minus_1},
    }
