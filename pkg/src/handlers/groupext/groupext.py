import logging
import random

from handlers.common import dispatch, int_list, int_param, require, status_of
from ncp.config import get_settings
from ncp.errors import InputError
from ncp.groupext import (
    all_fibers_cyclic,
    fiber_is_cyclic,
    gamma,
    prop32_scan,
    verify_lemma_33,
    verify_lemma_34,
    verify_lemma_35,
)
from ncp.serialize import groupext_to_json, parse_groupext, scan_to_json

logger = logging.getLogger()
logger.setLevel(logging.INFO)


def scan(params):
    p = int_param(params, "p", 2)
    a_max = int_param(params, "max_a", 3)
    max_orders = int_list(params, "max_b", [p**2] * 3)
    if len(max_orders) < 2:
        raise InputError("A non-cyclic B needs at least two factor bounds")
    result = prop32_scan(p, a_max, max_orders)
    payload = scan_to_json(result)
    payload["max_a"] = a_max
    payload["max_b"] = max_orders
    return payload, status_of(not result.counterexamples)


def verify(params):
    E = parse_groupext(require(params, "group"))
    rng = None
    if params.get("sampled"):
        rng = random.Random(f"{int_param(params, 'seed', get_settings().default_seed)}:lemma33")
    lemma33 = verify_lemma_33(E, rng)
    torsion = [x for x in E.B.torsion() if x != E.B.zero()]
    fibers = [
        {
            "x": list(x),
            "cyclic": fiber_is_cyclic(E, x),
            "gamma": gamma(E, x),
            "lemma34": verify_lemma_34(E, x),
        }
        for x in torsion
    ]
    lemma35 = verify_lemma_35(E)
    passed = all(lemma33.values()) and all(f["lemma34"] for f in fibers) and lemma35["consistent"]
    return {
        "group": groupext_to_json(E),
        "name": str(E),
        "order": E.order,
        "all_fibers_cyclic": all_fibers_cyclic(E),
        "lemma33": lemma33,
        "fibers": fibers,
        "lemma35": lemma35,
        "passed": passed,
    }, status_of(passed)


ACTIONS = {"scan": scan, "verify": verify}


def handler(event, context):
    return dispatch("groupext", event, ACTIONS)
