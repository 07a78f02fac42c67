"""JSON payloads: extension specs, places, Brauer classes, group-extension data and report encoders."""

from __future__ import annotations

import json
from dataclasses import asdict, is_dataclass
from pathlib import Path
from typing import Any

from ncp.abext import AbExt, LocalData, build_extension, extension_from_radicands
from ncp.arith import QZ
from ncp.brauer import BrauerClass, make_class
from ncp.covers import BoundReport, Cover
from ncp.errors import InputError
from ncp.functions import RationalFunction
from ncp.groupext import CentralExt, ScanResult, ext_build
from ncp.isolation import IsolationReport
from ncp.places import INF, POLY, PRIME, REAL, BaseField, Place
from ncp.reports import CertReport, PaperReport


def load_json(path: str | Path) -> Any:
    try:
        with open(path) as f:
            return json.load(f)
    except OSError as e:
        raise InputError(f"Cannot read {path}: {e}") from e
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from e


def parse_base(spec: dict) -> BaseField:
    kind = spec.get("base", "Q")
    if kind == "Q":
        return BaseField.rationals()
    if kind in ("Fq", "F_q(t)"):
        if "q" not in spec:
            raise InputError("Function field spec needs 'q'")
        return BaseField.function_field(int(spec["q"]))
    raise InputError(f"Unknown base {kind!r}")


def _factor(base: BaseField, item) -> RationalFunction:
    q = base.q
    if isinstance(item, int) and not isinstance(item, bool):
        return RationalFunction.constant(q, item)
    if isinstance(item, str):
        return RationalFunction.parse(item, q)
    if isinstance(item, list):
        # ascending coefficients
        return RationalFunction.build(q, 1, [(tuple(reversed(item)), 1)])
    raise InputError(f"Cannot read factor {item!r}")


def parse_radicand(base: BaseField, item):
    if not base.is_function_field:
        if isinstance(item, bool) or not isinstance(item, int):
            raise InputError(f"Radicands over Q are integers, got {item!r}")
        return item
    q = base.q
    if isinstance(item, (str, int)):
        return _factor(base, item)
    if isinstance(item, dict):
        value = RationalFunction.constant(q, int(item.get("const", 1)))
        for coeffs, e in item.get("factors", []):
            value = value * _factor(base, coeffs) ** int(e)
        return value
    if isinstance(item, list):
        value = RationalFunction.constant(q, 1)
        for entry in item:
            if not isinstance(entry, list) or len(entry) != 2:
                raise InputError(f"Factored radicands are [factor, exponent] pairs, got {entry!r}")
            value = value * _factor(base, entry[0]) ** int(entry[1])
        return value
    raise InputError(f"Cannot read radicand {item!r}")


def parse_extension(spec: dict, allow_mixed: bool = False) -> AbExt:
    if not isinstance(spec, dict):
        raise InputError("Extension spec must be a JSON object")
    base = parse_base(spec)
    n = int(spec.get("n", 2))
    radicands = [parse_radicand(base, r) for r in spec.get("radicands", [])]
    if allow_mixed:
        return extension_from_radicands(base, n, radicands)
    return build_extension(base, n, radicands)


def parse_place(base: BaseField, value) -> Place:
    if isinstance(value, dict):
        kind = value.get("type")
        if kind == PRIME:
            place = Place.prime(int(value["p"]))
        elif kind == REAL:
            place = Place.real()
        elif kind == INF:
            place = Place.infinity(base.q)
        elif kind == POLY:
            place = Place.from_ascending(value["coeffs"], base.q)
        else:
            raise InputError(f"Unknown place type {kind!r}")
    elif isinstance(value, int) and not isinstance(value, bool):
        place = Place.prime(value)
    elif isinstance(value, str):
        text = value.strip()
        if text == "real":
            place = Place.real()
        elif text in ("inf", "infinity"):
            place = Place.infinity(base.q)
        elif text.isdigit():
            place = Place.prime(int(text))
        elif not base.is_function_field:
            raise InputError(f"Cannot read place {value!r} over Q")
        else:
            f = RationalFunction.parse(text, base.q)
            if len(f.factors) != 1 or f.factors[0][1] != 1:
                raise InputError(f"{text!r} is not irreducible")
            place = Place.poly(f.factors[0][0], base.q)
    else:
        raise InputError(f"Cannot read place {value!r}")
    if not base.owns(place):
        raise InputError(f"{place} is not a place of {base}")
    return place


def parse_places(base: BaseField, values) -> list[Place]:
    if isinstance(values, str):
        values = [v for v in values.split(",") if v.strip()]
    return [parse_place(base, v) for v in values]


def parse_class(base: BaseField, spec) -> BrauerClass:
    """{"invariants": [{"place": ..., "inv": "7/8"}, ...]} or {"invariants": {"7": "1/8", ...}}."""
    entries = spec.get("invariants", []) if isinstance(spec, dict) else spec
    inv: dict[Place, QZ] = {}
    if isinstance(entries, dict):
        entries = [{"place": k, "inv": v} for k, v in entries.items()]
    for entry in entries:
        P = parse_place(base, entry["place"])
        inv[P] = inv.get(P, QZ()) + QZ.parse(entry["inv"])
    return make_class(inv)


def parse_groupext(spec: dict) -> CentralExt:
    try:
        p, a, b, t = int(spec["p"]), int(spec["a"]), list(spec["b"]), list(spec["t"])
    except KeyError as e:
        raise InputError(f"Group extension spec is missing {e}") from e
    return ext_build(p, a, b, t, spec.get("c"))


def place_to_json(P: Place) -> dict:
    if P.kind == PRIME:
        return {"type": PRIME, "p": P.p}
    if P.kind == POLY:
        return {"type": POLY, "coeffs": list(reversed(P.coeffs)), "name": str(P)}
    return {"type": P.kind}


def ext_to_json(M: AbExt) -> dict:
    out = {"base": "Fq" if M.base.is_function_field else "Q", "n": M.n}
    if M.base.is_function_field:
        out["q"] = M.base.q
    out["radicands"] = [f if isinstance(f, int) else str(f) for f in M.radicands]
    out["orders"] = list(M.orders)
    out["degree"] = M.degree
    out["name"] = str(M)
    return out


def class_to_json(alpha: BrauerClass) -> dict:
    return {"invariants": [{"place": place_to_json(P), "inv": str(x)} for P, x in alpha.entries]}


def local_data_to_json(data: LocalData) -> dict:
    return {
        "place": place_to_json(data.place),
        "local_degree": data.local_degree,
        "ramification_index": data.ramification_index,
        "residue_degree": data.residue_degree,
        "decomposition_group": [list(s) for s in data.decomposition],
        "inertia_group": [list(s) for s in data.inertia],
        "frobenius": list(data.frobenius) if not data.is_ramified() else None,
    }


def isolation_to_json(report: IsolationReport) -> dict:
    return {
        "p": report.p,
        "u1": report.u1,
        "u2": report.u2,
        "gap": report.gap,
        "isolated_place": place_to_json(report.isolated_place) if report.isolated_place else None,
    }


def cover_to_json(C: Cover) -> dict:
    return {
        "name": str(C),
        "extra_radicands": [f if isinstance(f, int) else str(f) for f in C.extra_radicands],
        "exponent": C.L.n,
        "rel_degree": C.rel_degree,
        "relative_group": list(C.relative_moduli),
    }


def _checks(report) -> list[dict]:
    return [{"name": c.name, "passed": c.passed, "value": to_jsonable(c.value)} for c in report.checks]


def cert_to_json(report: CertReport) -> dict:
    return {
        "condition": report.condition,
        "params": to_jsonable(report.params),
        "places": [place_to_json(P) for P in report.places],
        "witness": cover_to_json(report.witness) if report.witness is not None else None,
        "unconditional": report.unconditional,
        "checks": _checks(report),
        "notes": list(report.notes),
        "passed": report.passed,
    }


def paper_to_json(report: PaperReport) -> dict:
    return {
        "example": report.example,
        "parameters": to_jsonable(report.parameters),
        "checks": _checks(report),
        "notes": list(report.notes),
        "verdict": report.verdict,
    }


def bound_to_json(report: BoundReport) -> dict:
    out = asdict(report)
    if report.wild:
        out["upper"] = "inf"
    elif report.exact is None:
        out["upper"] = "inf" if report.upper is None else report.upper
        out["interpretation"] = (
            "b_p lies in [lower, upper]; the lower end is the largest n certified on the tested place sets"
        )
    return out


def scan_to_json(result: ScanResult) -> dict:
    return {
        "p": result.p,
        "examined": result.examined,
        "pruned": result.pruned,
        "hits": [groupext_to_json(E) for E in result.hits],
        "counterexamples": [groupext_to_json(E) for E in result.counterexamples],
    }


def groupext_to_json(E: CentralExt) -> dict:
    return {"p": E.p, "a": E.a, "b": list(E.B.exponents), "t": list(E.t), "c": [list(r) for r in E.c]}


def to_jsonable(value):
    if isinstance(value, Place):
        return str(value)
    if isinstance(value, (QZ, RationalFunction, AbExt, Cover, BrauerClass)):
        return str(value)
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        return [to_jsonable(v) for v in value]
    if is_dataclass(value):
        return to_jsonable(asdict(value))
    return value


def dumps(payload, pretty: bool = False) -> str:
    return json.dumps(payload, indent=2 if pretty else None, sort_keys=False)
