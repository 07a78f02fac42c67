import logging

from handlers.common import dispatch, int_param, require, status_of
from ncp.paper import run_ex41, run_ex43, run_prop42
from ncp.serialize import paper_to_json, parse_base, parse_place

logger = logging.getLogger()
logger.setLevel(logging.INFO)


def _bound(params):
    return int_param(params, "bound") if params.get("bound") is not None else None


def ex41(params):
    report = run_ex41(int_param(params, "l"), int_param(params, "q"), _bound(params))
    return paper_to_json(report), status_of(report.verdict)


def ex43(params):
    report = run_ex43(int_param(params, "p"), int_param(params, "q"), int_param(params, "a"), _bound(params))
    return paper_to_json(report), status_of(report.verdict)


def prop42(params):
    base = parse_base(params.get("ext") or {"base": "Q"})
    pp = parse_place(base, require(params, "place"))
    report = run_prop42(int_param(params, "p"), base, pp, _bound(params))
    return paper_to_json(report), status_of(report.verdict)


ACTIONS = {"ex41": ex41, "ex43": ex43, "prop42": prop42}


def handler(event, context):
    return dispatch("paper", event, ACTIONS)
