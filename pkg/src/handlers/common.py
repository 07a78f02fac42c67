"""Shared request plumbing: status codes, event decoding and parameter helpers."""

import json
import logging

from ncp.config import get_settings
from ncp.errors import InputError, SearchExhaustedError, WildPrimeError
from ncp.serialize import dumps, parse_extension, parse_places

logger = logging.getLogger()
logger.setLevel(logging.INFO)

OK = 200
BAD_REQUEST = 400
CHECK_FAILED = 422
SERVER_ERROR = 500
EXHAUSTED = 504


def respond(status, payload):
    return {"statusCode": status, "body": dumps(payload)}


def request(event):
    """Event fields, with a JSON 'body' merged over them."""
    params = {k: v for k, v in event.items() if k != "body"}
    body = event.get("body")
    if isinstance(body, str) and body.strip():
        try:
            body = json.loads(body)
        except json.JSONDecodeError as e:
            raise InputError(f"Request body is not valid JSON: {e}") from e
    if isinstance(body, dict):
        params.update(body)
    return params


def run(verb, event, action):
    """action(params) -> (payload, status)."""
    logger.info(f"Processing {verb} request")
    try:
        payload, status = action(request(event))
        logger.info(f"Completed {verb} with status {status}")
        return respond(status, payload)
    except SearchExhaustedError as e:
        logger.error(f"Error in {verb}: {str(e)}")
        return respond(EXHAUSTED, {"error": str(e), "type": type(e).__name__})
    except (InputError, WildPrimeError) as e:
        logger.error(f"Error in {verb}: {str(e)}")
        return respond(BAD_REQUEST, {"error": str(e), "type": type(e).__name__})
    except Exception as e:
        logger.error(f"Error in {verb}: {str(e)}")
        return respond(SERVER_ERROR, {"error": str(e), "type": type(e).__name__})


def status_of(passed):
    return OK if passed else CHECK_FAILED


def require(params, key):
    value = params.get(key)
    if value is None:
        raise InputError(f"Missing parameter {key!r}")
    return value


def int_param(params, key, default=None):
    value = params.get(key, default)
    if value is None:
        raise InputError(f"Missing parameter {key!r}")
    try:
        return int(value)
    except (TypeError, ValueError) as e:
        raise InputError(f"Parameter {key!r} must be an integer, got {value!r}") from e


def int_list(params, key, default=None):
    value = params.get(key, default)
    if value is None:
        raise InputError(f"Missing parameter {key!r}")
    if isinstance(value, str):
        value = [v for v in value.split(",") if v.strip()]
    try:
        return [int(v) for v in value]
    except (TypeError, ValueError) as e:
        raise InputError(f"Parameter {key!r} must be a list of integers, got {value!r}") from e


def bound_param(params):
    return int_param(params, "bound", get_settings().default_bound)


def scan_bound_param(params):
    return int_param(params, "bound", get_settings().scan_bound)


def extension(params, allow_mixed=False):
    return parse_extension(require(params, "ext"), allow_mixed=allow_mixed)


def places(M, params, key="places"):
    return parse_places(M.base, params.get(key) or [])


def dispatch(verb, event, actions, default=None):
    name = event.get("action") or default
    action = actions.get(name)
    if action is None:
        logger.error(f"Error in {verb}: unknown action {name!r}")
        return respond(BAD_REQUEST, {"error": f"Unknown {verb} action {name!r}", "type": "InputError"})
    return run(f"{verb} {name}", event, action)
