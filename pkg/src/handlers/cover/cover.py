import logging

from handlers.common import (
    OK,
    dispatch,
    extension,
    int_param,
    places,
    scan_bound_param,
    status_of,
)
from ncp.abext import ramified_places
from ncp.covers import (
    abelian_covers,
    bound_report,
    build_cover,
    certify_Bm,
    certify_powers,
    check_Bm,
    check_cor210,
    cor210_scan,
    cover_local_degree,
    induced_certificate,
)
from ncp.errors import InputError
from ncp.serialize import bound_to_json, cert_to_json, parse_place, parse_radicand

logger = logging.getLogger()
logger.setLevel(logging.INFO)


def _condition(params):
    condition = params.get("condition", "Bm")
    if condition not in ("Bm", "cor210"):
        raise InputError(f"Unknown condition {condition!r}; expected Bm or cor210")
    return condition


def _degree(params, condition):
    if condition == "Bm":
        return int_param(params, "m"), None, None
    p, n = int_param(params, "p"), int_param(params, "n")
    return p**n, p, n


def _given_cover(M, params):
    extra = params.get("extra")
    if not extra:
        return None
    if isinstance(extra, str):
        extra = [int(v) if v.strip().lstrip("-").isdigit() else v.strip() for v in extra.split(",")]
    radicands = [parse_radicand(M.base, f) for f in extra]
    exponent = params.get("exponent")
    return build_cover(M, radicands, int(exponent) if exponent else None)


def _with_induced(report, params):
    payload = cert_to_json(report)
    if params.get("induce"):
        induced = induced_certificate(report, int_param(params, "induce"))
        payload["induced"] = cert_to_json(induced)
    return payload


def check(params):
    M = extension(params)
    condition = _condition(params)
    S = places(M, params)
    m, p, n = _degree(params, condition)
    C = _given_cover(M, params)
    if condition == "cor210":
        if C is None:
            raise InputError("cor210 checks need a cover: pass 'extra' radicands")
        report = check_cor210(M, p, n, S, C)
    elif C is None:
        report = check_Bm(M, m, S, scan_bound_param(params))
    else:
        report = certify_Bm(C, m, S)
    return _with_induced(report, params), status_of(report.passed)


def scan(params):
    M = extension(params)
    condition = _condition(params)
    S = places(M, params)
    bound = scan_bound_param(params)
    m, p, n = _degree(params, condition)
    if condition == "cor210":
        report = cor210_scan(M, p, n, S, bound)
    else:
        report = check_Bm(M, m, S, bound)
    return _with_induced(report, params), status_of(report.passed)


def _obstruction(M, p, P, bound):
    """No abelian p-cover with [L:M]_P = p below the bound."""
    for C in abelian_covers(M, p, bound):
        if cover_local_degree(C, P) == p:
            logger.info(f"{C} reaches local degree {p} at {P}: no obstruction")
            return False
    return True


def _certificates(M, p, chi_order, params):
    """(B_{p^n}) scans on the given places, or on the ramified ones, for n up to certify_up_to and the ceiling."""
    n_max = int_param(params, "certify_up_to")
    ceiling = bound_report(M, p, chi_order).ceiling
    if ceiling is not None:
        n_max = min(n_max, ceiling)
    S = places(M, params) or ramified_places(M)
    return certify_powers(M, p, n_max, S, scan_bound_param(params))


def report(params):
    M = extension(params)
    p = int_param(params, "p")
    chi_order = int_param(params, "chi_order", M.exponent)
    obstruction = False
    if params.get("obstruction_place"):
        P = parse_place(M.base, params["obstruction_place"])
        obstruction = _obstruction(M, p, P, scan_bound_param(params))
    certificates = _certificates(M, p, chi_order, params) if params.get("certify_up_to") else []
    result = bound_report(M, p, chi_order, obstruction=obstruction, certificates=certificates)
    payload = bound_to_json(result)
    payload["extension"] = str(M)
    payload["obstruction"] = obstruction
    return payload, OK


ACTIONS = {"check": check, "scan": scan, "bound-report": report}


def handler(event, context):
    return dispatch("cover", event, ACTIONS)
