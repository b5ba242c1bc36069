"""``witt`` command-line front end.

Computation verbs print one canonical JSON document (sorted keys, integers
as decimal strings).  Exit status: 0 on success, 1 on a domain error (the
error class name is printed verbatim), 2 on a usage error.
"""

import argparse
import json
import os
import sys

from . import universal
from .errors import UnknownIdentity, WittError
from .ghost import ghost_inverse, ghost_map
from .identities import IDENTITIES, check_identity, default_plan, run_plan
from .ring import make_ring
from .trunc import divisor_set, from_elements, p_typical
from .universal import PolyCacheKey, SizeLimits, cache_load, output_set
from .vectors import GhostVector, WittVector
from .witt import frobenius, norm, restrict, teichmuller, theta, verschiebung, witt_add, witt_mul, witt_neg

VERBS = (
    "ghost",
    "unghost",
    "add",
    "mul",
    "neg",
    "restrict",
    "frobenius",
    "verschiebung",
    "norm",
    "theta",
    "teichmuller",
    "poly",
    "check",
)


class UsageError(Exception):
    pass


def parse_set(text):
    """``1,2,4``, ``div:6`` or ``ptyp:2,3``; an empty string is the empty set."""
    text = text.strip()
    try:
        if text.startswith("div:"):
            return divisor_set(int(text[4:]))
        if text.startswith("ptyp:"):
            p, n = text[5:].split(",")
            return p_typical(int(p), int(n))
        return from_elements([int(v) for v in text.split(",") if v.strip()])
    except ValueError as exc:
        if isinstance(exc, WittError):
            raise
        raise UsageError(f"--set: cannot parse {text!r}") from None


def dumps(obj):
    return json.dumps(obj, sort_keys=True)


def _read_json(text, flag):
    if text == "-":
        text = sys.stdin.read()
    elif text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{flag}: invalid JSON ({exc.msg})") from None


def _load_vector(args, flag, cls=WittVector):
    raw = getattr(args, flag.lstrip("-").replace("-", "_"))
    if raw is None:
        raise UsageError(f"{flag} is required")
    obj = _read_json(raw, flag)
    if not isinstance(obj, dict):
        raise UsageError(f"{flag}: expected a JSON object")
    try:
        return _vector_from_obj(args, obj, cls)
    except (ValueError, KeyError, TypeError) as exc:
        if isinstance(exc, WittError):
            raise
        raise UsageError(f"{flag}: {exc}") from None


def _vector_from_obj(args, obj, cls):
    if "coords" in obj:
        ring = make_ring(args.ring or obj.get("ring", "Z"))
        S = parse_set(args.set) if args.set else from_elements(obj.get("set", [int(k) for k in obj["coords"]]))
        return cls.from_json(obj["coords"], ring=ring, S=S)
    if not args.set:
        raise UsageError("--set is required")
    return cls.from_json(obj, ring=make_ring(args.ring or "Z"), S=parse_set(args.set))


def _need(args, *flags):
    for flag in flags:
        if getattr(args, flag) is None:
            raise UsageError(f"--{flag.replace('_', '-')} is required")


def _limits(args):
    return SizeLimits(args.limit_element, args.limit_size)


def _cache(args):
    path = args.cache or os.environ.get("WITT_CACHE")
    cache = cache_load(path) if path else universal.PolyCache()
    cache.limits = _limits(args)
    return cache, path


def _emit_vector(v, kind="witt"):
    obj = v.to_json()
    obj["kind"] = kind
    print(dumps(obj))


def cmd_ghost(args):
    _emit_vector(ghost_map(_load_vector(args, "--vec")), "ghost")


def cmd_unghost(args):
    _emit_vector(ghost_inverse(_load_vector(args, "--vec", GhostVector)))


def _binary(args, op):
    cache, path = _cache(args)
    a, b = _load_vector(args, "--vec"), _load_vector(args, "--vec2")
    _emit_vector(op(a, b, args.method, cache))
    _persist(cache, path)


def cmd_add(args):
    _binary(args, witt_add)


def cmd_mul(args):
    _binary(args, witt_mul)


def cmd_neg(args):
    cache, path = _cache(args)
    _emit_vector(witt_neg(_load_vector(args, "--vec"), args.method, cache))
    _persist(cache, path)


def cmd_restrict(args):
    _need(args, "target_set")
    _emit_vector(restrict(_load_vector(args, "--vec"), parse_set(args.target_set)))


def cmd_frobenius(args):
    _need(args, "d")
    cache, path = _cache(args)
    _emit_vector(frobenius(_load_vector(args, "--vec"), args.d, args.method, cache))
    _persist(cache, path)


def cmd_verschiebung(args):
    _need(args, "d", "target_set")
    _emit_vector(verschiebung(_load_vector(args, "--vec"), args.d, parse_set(args.target_set)))


def cmd_norm(args):
    _need(args, "d")
    cache, path = _cache(args)
    _emit_vector(norm(_load_vector(args, "--vec"), args.d, args.method, cache))
    _persist(cache, path)


def cmd_theta(args):
    _need(args, "p")
    cache, path = _cache(args)
    _emit_vector(theta(_load_vector(args, "--vec"), args.p, args.method, cache))
    _persist(cache, path)


def cmd_teichmuller(args):
    _need(args, "set", "value")
    R = make_ring(args.ring or "Z")
    r = R.element(R.from_json(_read_json(args.value, "--value")))
    _emit_vector(teichmuller(r, parse_set(args.set)))


def cmd_poly(args):
    _need(args, "op", "set")
    op = args.op
    param = None
    if op in universal.PARAM_OPS:
        param = args.p if op == "theta" and args.p is not None else args.d
        if param is None:
            raise UsageError(f"--op {op} needs --d" + (" or --p" if op == "theta" else ""))
    S = parse_set(args.set)
    cache, path = _cache(args)
    try:
        target = output_set(op, param, S)
    except ValueError as exc:
        if isinstance(exc, WittError):
            raise
        raise UsageError(str(exc)) from None
    if args.coord is not None:
        if args.coord not in target:
            raise UsageError(f"--coord {args.coord} is not in the output set {target}")
        print(cache.get(PolyCacheKey(op, param, S, args.coord)).to_text())
    else:
        for t, p in zip(target, cache.vector(op, param, S)):
            print(f"{t}: {p.to_text()}")
    _persist(cache, path)


def _identity_params(args):
    params = {}
    for name in ("d", "e", "p", "q"):
        v = getattr(args, name)
        if v is not None:
            params[name] = v
    return params


def cmd_check(args):
    limits = _limits(args)
    if args.suite:
        if args.suite != "all":
            raise UsageError(f"--suite: unknown suite {args.suite!r}")
        results = run_plan(default_plan(args.max_element), seed=args.seed, samples=args.samples, limits=limits)
    else:
        _need(args, "identity", "set")
        if args.identity not in IDENTITIES:
            raise UnknownIdentity(f"unknown identity {args.identity!r}")
        S = parse_set(args.set)
        mode = args.mode
        if mode is None:
            mode = "symbolic" if S.max <= 12 and (args.ring or "Z") == "Z" else "sampled"
        try:
            result = check_identity(
                args.identity, S, _identity_params(args), mode, args.ring or "Z",
                seed=args.seed, samples=args.samples, limits=limits,
            )
        except ValueError as exc:
            if isinstance(exc, WittError):
                raise
            raise UsageError(str(exc)) from None
        results = [result]
    for r in results:
        print(r.line())
    failed = sum(not r.passed for r in results)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 1 if failed else 0


def _persist(cache, path):
    if path:
        cache.store(path)


def build_parser():
    parser = argparse.ArgumentParser(prog="witt", description="Truncated big Witt vectors: norm, Frobenius, Verschiebung.")
    parser.add_argument("verb", choices=VERBS)
    parser.add_argument("--set", help="truncation set: 1,2,4 | div:N | ptyp:P,N")
    parser.add_argument("--target-set", help="target truncation set (restrict, verschiebung)")
    parser.add_argument("--ring", help="Z | Zmod:M | cyclo:P | poly:a1,a2")
    parser.add_argument("--vec", help="JSON map index -> value, a full vector object, @file or -")
    parser.add_argument("--vec2", help="second operand for add/mul")
    parser.add_argument("--value", help="ring value for teichmuller (JSON)")
    parser.add_argument("--d", type=int)
    parser.add_argument("--e", type=int)
    parser.add_argument("--p", type=int)
    parser.add_argument("--q", type=int)
    parser.add_argument("--op", choices=universal.OPS)
    parser.add_argument("--coord", type=int)
    parser.add_argument("--method", choices=("auto", "ghost", "universal"), default="auto")
    parser.add_argument("--cache", help="polynomial cache file (default: $WITT_CACHE, else none)")
    parser.add_argument("--suite")
    parser.add_argument("--identity")
    parser.add_argument("--mode", choices=("symbolic", "sampled"))
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--samples", type=int, default=50)
    parser.add_argument("--max-element", type=int, default=12, help="largest set element used by --suite")
    parser.add_argument("--limit-element", type=int, default=universal.DEFAULT_LIMITS.max_element)
    parser.add_argument("--limit-size", type=int, default=universal.DEFAULT_LIMITS.max_size)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = globals()[f"cmd_{args.verb}"]
    try:
        status = handler(args)
    except UsageError as exc:
        print(f"witt {args.verb}: usage error: {exc}", file=sys.stderr)
        return 2
    except WittError as exc:
        print(dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return 1
    return status or 0


if __name__ == "__main__":
    sys.exit(main())
