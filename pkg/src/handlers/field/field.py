import logging

from sympy import primefactors

from handlers.common import OK, dispatch, extension, places
from ncp.abext import is_real_in, local_data, ramified_places, roots_of_unity_s
from ncp.isolation import isolated_places, isolation_report
from ncp.serialize import ext_to_json, isolation_to_json, local_data_to_json, place_to_json

logger = logging.getLogger()
logger.setLevel(logging.INFO)


def _tame_primes(M):
    return [p for p in primefactors(M.degree) if p != M.base.characteristic]


def describe_field(params):
    M = extension(params)
    payload = ext_to_json(M)
    payload["ramified_places"] = [place_to_json(P) for P in ramified_places(M)]
    payload["roots_of_unity"] = {str(p): roots_of_unity_s(M, p) for p in _tame_primes(M)}
    if not M.base.is_function_field:
        payload["real"] = is_real_in(M)
    return payload, OK


def local_degrees(params):
    M = extension(params)
    targets = places(M, params) or ramified_places(M)
    logger.info(f"Computing local data of {M} at {len(targets)} places")
    return {"extension": str(M), "local_data": [local_data_to_json(local_data(M, P)) for P in targets]}, OK


def isolated(params):
    M = extension(params)
    return {
        "extension": str(M),
        "reports": [isolation_to_json(isolation_report(M, p)) for p in _tame_primes(M)],
        "isolated": [{"place": place_to_json(P), "p": p} for P, p in isolated_places(M)],
    }, OK


ACTIONS = {"field": describe_field, "local-degree": local_degrees, "isolated": isolated}


def handler(event, context):
    return dispatch("field", event, ACTIONS, default="field")
