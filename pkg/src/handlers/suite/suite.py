import logging

from handlers.common import dispatch, int_param, status_of
from ncp.config import get_settings
from ncp.suite import run_property_suite

logger = logging.getLogger()
logger.setLevel(logging.INFO)


def run_suite(params):
    seed = int_param(params, "seed", get_settings().default_seed)
    only = params.get("only")
    if isinstance(only, str):
        only = [name.strip() for name in only.split(",") if name.strip()]
    summary = run_property_suite(seed, params.get("sizes"), only)
    failed = [name for name, result in summary["batteries"].items() if not result["passed"]]
    if failed:
        logger.info(f"Suite failures for seed {seed}: {failed}")
    return summary, status_of(summary["passed"])


def handler(event, context):
    return dispatch("suite", event, {"suite": run_suite}, default="suite")
