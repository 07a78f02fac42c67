"""Command-line entry point: builds a request event per verb, runs the matching handler and prints its JSON body."""

from __future__ import annotations

import argparse
import json
import logging
import sys

from handlers.brauer import brauer
from handlers.cover import cover
from handlers.field import field
from handlers.groupext import groupext
from handlers.paper import paper
from handlers.search import search
from handlers.suite import suite
from ncp.config import get_settings
from ncp.errors import InputError
from ncp.serialize import load_json

logger = logging.getLogger(__name__)

EXIT_CODES = {200: 0, 422: 1, 400: 2, 504: 3, 500: 4}

HANDLERS = {
    "field": field.handler,
    "local-degree": field.handler,
    "isolated": field.handler,
    "brauer": brauer.handler,
    "cover": cover.handler,
    "bound-report": cover.handler,
    "search": search.handler,
    "groupext": groupext.handler,
    "paper": paper.handler,
    "suite": suite.handler,
}


def _json_arg(value):
    """Inline JSON or a path to a JSON file."""
    if value is None:
        return None
    text = value.strip()
    if text.startswith(("{", "[")):
        try:
            return json.loads(text)
        except json.JSONDecodeError as e:
            raise InputError(f"Inline JSON is not valid: {e}") from e
    return load_json(text)


def _pairs(value):
    """'7=2,3=4' -> {"7": 2, "3": 4}."""
    if not value:
        return None
    out = {}
    for item in value.split(","):
        key, sep, number = item.partition("=")
        if not sep:
            raise InputError(f"Expected key=value, got {item!r}")
        try:
            out[key.strip()] = int(number)
        except ValueError as e:
            raise InputError(f"Expected an integer in {item!r}") from e
    return out


def _global_flags(suppress: bool) -> argparse.ArgumentParser:
    default = argparse.SUPPRESS if suppress else None
    parser = argparse.ArgumentParser(add_help=False)
    parser.add_argument("--ext", default=default, help="extension spec: JSON file or inline JSON")
    parser.add_argument("--bound", type=int, default=default, help="search or scan bound")
    parser.add_argument("--seed", type=int, default=default, help="seed for randomized checks")
    parser.add_argument(
        "--pretty", action="store_true", default=argparse.SUPPRESS if suppress else False,
        help="also write a readable table to stderr",
    )
    return parser


def build_parser() -> argparse.ArgumentParser:
    flags = _global_flags(suppress=True)
    parser = argparse.ArgumentParser(prog="ncp", parents=[_global_flags(suppress=False)])
    verbs = parser.add_subparsers(dest="verb", required=True)

    verbs.add_parser("field", parents=[flags], help="degree, ramification and roots of unity of M")
    sub = verbs.add_parser("local-degree", parents=[flags], help="decomposition and inertia data")
    sub.add_argument("--places", help="comma-separated places, default: the ramified ones")
    verbs.add_parser("isolated", parents=[flags], help="u-values, gaps and isolated places")

    brauer_cmd = verbs.add_parser("brauer", help="Brauer classes as invariant vectors").add_subparsers(
        dest="action", required=True
    )
    sub = brauer_cmd.add_parser("index", parents=[flags])
    sub.add_argument("--class", dest="klass", required=True)
    sub.add_argument("--chi-order", type=int)
    sub = brauer_cmd.add_parser("restrict", parents=[flags])
    sub.add_argument("--class", dest="klass", required=True)
    sub = brauer_cmd.add_parser("split", parents=[flags])
    sub.add_argument("--class", dest="klass", required=True)
    sub.add_argument("--degrees", required=True, help="local degrees as place=degree pairs")
    sub.add_argument("--over", choices=("K", "M"), default="K")
    sub.add_argument("--complete", action="store_true")
    sub = brauer_cmd.add_parser("construct", parents=[flags])
    sub.add_argument("--m", type=int, required=True)
    sub.add_argument("--places", default="")
    sub = brauer_cmd.add_parser("lemma21", parents=[flags])
    sub.add_argument("--class", dest="klass", required=True)
    sub.add_argument("--p", type=int, required=True)

    cover_cmd = verbs.add_parser("cover", help="cover certificates").add_subparsers(dest="action", required=True)
    for name in ("check", "scan"):
        sub = cover_cmd.add_parser(name, parents=[flags])
        sub.add_argument("--condition", choices=("Bm", "cor210"), default="Bm")
        sub.add_argument("--m", type=int)
        sub.add_argument("--p", type=int)
        sub.add_argument("--n", type=int)
        sub.add_argument("--places", default="")
        sub.add_argument("--induce", type=int, help="also derive the certificate for this divisor of m")
        if name == "check":
            sub.add_argument("--extra", help="comma-separated radicands of a given cover")
            sub.add_argument("--exponent", type=int, help="Kummer exponent of the cover")
    sub = verbs.add_parser("bound-report", parents=[flags], help="what is known about b_p(chi)")
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--chi-order", type=int)
    sub.add_argument("--obstruction-place", help="scan for p-covers of local degree p at this place")
    sub.add_argument("--certify-up-to", type=int, help="scan (B_{p^n}) for n up to this value to raise the lower end")
    sub.add_argument("--places", help="places for the certificate scans, default: the ramified ones")

    search_cmd = verbs.add_parser("search", help="Chebotarev searches").add_subparsers(dest="action", required=True)
    sub = search_cmd.add_parser("frobenius", parents=[flags])
    sub.add_argument("--sigma", required=True)
    sub.add_argument("--count", type=int, default=1)
    sub.add_argument("--congruence", help="modulus,residue")
    sub = search_cmd.add_parser("qsigma", parents=[flags])
    sub.add_argument("--sigma", required=True)
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--count", type=int, default=1)
    sub = search_cmd.add_parser("s0", parents=[flags])
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--n", type=int, default=1)

    group_cmd = verbs.add_parser("groupext", help="central extensions").add_subparsers(dest="action", required=True)
    sub = group_cmd.add_parser("scan", parents=[flags])
    sub.add_argument("--p", type=int, default=2)
    sub.add_argument("--max-a", type=int, default=3)
    sub.add_argument("--max-b", default=None, help="comma-separated factor bounds, e.g. 4,4,4")
    sub = group_cmd.add_parser("verify", parents=[flags])
    sub.add_argument("--group", required=True, help="extension datum: JSON file or inline JSON")
    sub.add_argument("--sampled", action="store_true")

    paper_cmd = verbs.add_parser("paper", help="worked examples").add_subparsers(dest="action", required=True)
    sub = paper_cmd.add_parser("ex41", parents=[flags])
    sub.add_argument("--l", type=int, required=True)
    sub.add_argument("--q", type=int, required=True)
    sub = paper_cmd.add_parser("ex43", parents=[flags])
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--q", type=int, required=True)
    sub.add_argument("--a", type=int, required=True)
    sub = paper_cmd.add_parser("prop42", parents=[flags])
    sub.add_argument("--p", type=int, required=True)
    sub.add_argument("--place", required=True)

    sub = verbs.add_parser("suite", parents=[flags], help="property batteries")
    sub.add_argument("--only", help="comma-separated battery names")
    sub.add_argument("--sizes", help="overrides such as classes=100,random=50")
    return parser


def build_event(args: argparse.Namespace) -> dict:
    event = {"action": getattr(args, "action", None) or args.verb}
    if args.ext is not None:
        event["ext"] = _json_arg(args.ext)
    if args.bound is not None:
        event["bound"] = args.bound
    if args.seed is not None:
        event["seed"] = args.seed
    renamed = {"klass": "class"}
    skip = {"verb", "action", "ext", "bound", "seed", "pretty"}
    for key, value in vars(args).items():
        if key in skip or value is None:
            continue
        event[renamed.get(key, key)] = value
    if "class" in event:
        event["class"] = _json_arg(event["class"])
    if "group" in event:
        event["group"] = _json_arg(event["group"])
    if "degrees" in event:
        event["local_degrees"] = _pairs(event.pop("degrees"))
    if "sizes" in event:
        event["sizes"] = _pairs(event["sizes"])
    return event


def _table(payload) -> str:
    if not isinstance(payload, dict):
        return str(payload)
    rows = []
    for check in payload.get("checks", []):
        mark = "ok  " if check["passed"] else "FAIL"
        rows.append(f"{mark}  {check['name']}: {json.dumps(check['value'])}")
    for name, result in payload.get("batteries", {}).items():
        mark = "ok  " if result["passed"] else "FAIL"
        rows.append(f"{mark}  {name}: {result['checked']} checks, {result['seconds']} s")
    if not rows:
        rows = [f"{key}: {json.dumps(value)}" for key, value in payload.items()]
    for note in payload.get("notes", []):
        rows.append(f"note  {note}")
    return "\n".join(rows)


def main(argv=None) -> int:
    settings = get_settings()
    logging.basicConfig(
        stream=sys.stderr,
        level=getattr(logging, settings.log_level, logging.WARNING),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    args = build_parser().parse_args(argv)
    try:
        event = build_event(args)
    except InputError as e:
        logger.error(f"Error in {args.verb}: {str(e)}")
        print(json.dumps({"error": str(e), "type": type(e).__name__}))
        return EXIT_CODES[400]
    response = HANDLERS[args.verb](event, None)
    print(response["body"])
    if args.pretty:
        print(_table(json.loads(response["body"])), file=sys.stderr)
    return EXIT_CODES.get(response["statusCode"], EXIT_CODES[500])
