import logging

from handlers.common import EXHAUSTED, OK, bound_param, dispatch, extension, int_list, int_param
from ncp.abext import find_primes_with_frobenius, qsigma_modulus, qsigma_search
from ncp.covers import s0_search
from ncp.serialize import place_to_json

logger = logging.getLogger()
logger.setLevel(logging.INFO)


def _found(M, found, count, bound, **extra):
    payload = {
        "extension": str(M),
        "bound": bound,
        "requested": count,
        "places": [place_to_json(P) for P in found],
        "exhausted": len(found) < count,
        **extra,
    }
    return payload, EXHAUSTED if len(found) < count else OK


def frobenius(params):
    M = extension(params)
    sigma = int_list(params, "sigma")
    count, bound = int_param(params, "count", 1), bound_param(params)
    congruence = None
    if params.get("congruence"):
        modulus, residue = int_list(params, "congruence")
        congruence = (modulus, residue)
    found = find_primes_with_frobenius(M, sigma, count, bound, congruence)
    return _found(M, found, count, bound, sigma=sigma)


def qsigma(params):
    M = extension(params)
    sigma = int_list(params, "sigma")
    p = int_param(params, "p")
    count, bound = int_param(params, "count", 1), bound_param(params)
    found = qsigma_search(M, sigma, p, count, bound)
    return _found(M, found, count, bound, sigma=sigma, p=p, modulus=qsigma_modulus(M, p))


def s0(params):
    M = extension(params)
    p, n = int_param(params, "p"), int_param(params, "n", 1)
    bound = bound_param(params)
    chosen = s0_search(M, p, n, bound)
    missing = [sigma for sigma, P in chosen.items() if P is None]
    payload = {
        "extension": str(M),
        "p": p,
        "n": n,
        "bound": bound,
        "places": [
            {"sigma": list(sigma), "place": place_to_json(P) if P is not None else None}
            for sigma, P in chosen.items()
        ],
        "exhausted": bool(missing),
    }
    return payload, EXHAUSTED if missing else OK


ACTIONS = {"frobenius": frobenius, "qsigma": qsigma, "s0": s0}


def handler(event, context):
    return dispatch("search", event, ACTIONS)
