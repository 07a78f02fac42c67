import logging

from handlers.common import OK, dispatch, extension, int_param, places, require, status_of
from ncp.brauer import (
    check_lemma_2_1,
    construct_class,
    constructor_defects,
    fiber_index,
    index,
    restricted_index,
    restricted_local_index,
    splits,
)
from ncp.errors import InputError
from ncp.places import BaseField
from ncp.serialize import class_to_json, parse_base, parse_class, parse_place, place_to_json

logger = logging.getLogger()
logger.setLevel(logging.INFO)


def _base(params):
    ext = params.get("ext")
    return parse_base(ext) if isinstance(ext, dict) else BaseField.rationals()


def _class(params):
    return parse_class(_base(params), require(params, "class"))


def class_index(params):
    alpha = _class(params)
    payload = {
        "class": class_to_json(alpha),
        "index": index(alpha),
        "local_indices": [{"place": place_to_json(P), "index": x.order} for P, x in alpha.entries],
    }
    if params.get("ext") is not None:
        M = extension(params)
        payload["restricted_index"] = restricted_index(alpha, M)
        if params.get("chi_order") is not None:
            payload["fiber_index"] = fiber_index(alpha, M, int_param(params, "chi_order"))
    return payload, OK


def restrict(params):
    M = extension(params)
    alpha = parse_class(M.base, require(params, "class"))
    return {
        "extension": str(M),
        "class": class_to_json(alpha),
        "restricted_index": restricted_index(alpha, M),
        "local_indices": [
            {"place": place_to_json(P), "index": restricted_local_index(alpha, M, P)} for P in alpha.support
        ],
    }, OK


def split(params):
    base = _base(params)
    alpha = parse_class(base, require(params, "class"))
    over = params.get("over", "K")
    raw = require(params, "local_degrees")
    if isinstance(raw, dict):
        raw = [{"place": k, "degree": v} for k, v in raw.items()]
    degrees = {parse_place(base, entry["place"]): int(entry["degree"]) for entry in raw}
    M = extension(params) if over == "M" else None
    result = splits(degrees, alpha, over=over, M=M, complete=bool(params.get("complete", False)))
    return {"class": class_to_json(alpha), "over": over, "splits": result}, OK


def construct(params):
    M = extension(params)
    m = int_param(params, "m")
    S = places(M, params)
    alpha = construct_class(M, m, S)
    defects = constructor_defects(alpha, M, m, S)
    logger.info(f"Constructed {alpha} over {M} with {len(defects)} defects")
    return {
        "extension": str(M),
        "m": m,
        "places": [place_to_json(P) for P in S],
        "class": class_to_json(alpha),
        "restricted_index": restricted_index(alpha, M),
        "defects": defects,
    }, status_of(not defects)


def lemma21(params):
    M = extension(params)
    alpha = parse_class(M.base, require(params, "class"))
    p = int_param(params, "p")
    if p < 2:
        raise InputError(f"p must be a prime, got {p}")
    holds = check_lemma_2_1(alpha, M, p)
    return {"extension": str(M), "class": class_to_json(alpha), "p": p, "holds": holds}, status_of(holds)


ACTIONS = {
    "index": class_index,
    "restrict": restrict,
    "split": split,
    "construct": construct,
    "lemma21": lemma21,
}


def handler(event, context):
    return dispatch("brauer", event, ACTIONS)
