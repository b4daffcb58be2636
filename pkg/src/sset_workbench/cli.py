"""Command-line front end.

Exit codes: 0 the property holds or the construction succeeded, 1 the
property fails (a counterexample is emitted), 2 invalid input, 3 a
precondition is unmet (not complemented, not propositional, size guard).
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import constructions as C
from .interchange import (
    InterchangeError,
    bundle_from_json,
    bundle_to_json,
    dumps,
    kind,
    load_map,
    load_sset,
    read_json,
    sset_from_json,
)
from .lem import (
    NoFiller,
    NonEmptyFiber,
    NotComplemented,
    NotPropositional,
    SizeGuardExceeded,
    decompose_base,
    is_propositional_homotopy,
    is_propositional_rlp,
    lem_section,
    verify_certificate,
)
from .lifting import boundary_rlp, default_bound, horn_rlp, prism_rlp, pushout_product
from .simplicial import SimplicialError, validate, validate_map

OK, FAILS, INVALID, PRECONDITION = 0, 1, 2, 3


class InvalidInput(Exception):
    pass


def thread_cap() -> int:
    """Parallelism cap from WORKBENCH_THREADS; 0 or unset means the default (1)."""
    raw = os.environ.get("WORKBENCH_THREADS", "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise InvalidInput(f"WORKBENCH_THREADS must be an integer, got {raw!r}") from None
    if n < 0:
        raise InvalidInput("WORKBENCH_THREADS must be non-negative")
    return n or 1


def _checked_map(path):
    f = load_map(path)
    for X in (f.domain, f.codomain):
        rep = validate(X)
        if not rep:
            raise InvalidInput(f"{X.name}: {rep.message}")
    rep = validate_map(f)
    if not rep:
        raise InvalidInput(f"{path}: {rep.message}")
    return f


def _report(rep) -> dict:
    return {"ok": rep.ok, "message": rep.message, "where": list(rep.where)}


def cmd_validate(args):
    obj = read_json(args.file)
    k = kind(obj)
    if k == "sset":
        X = sset_from_json(obj)
        rep = validate(X)
        return (OK if rep else FAILS), {"kind": "sset", "name": X.name, **_report(rep)}
    if k == "map":
        f = load_map(args.file)
        for X in (f.domain, f.codomain):
            rep = validate(X)
            if not rep:
                return FAILS, {"kind": "map", **_report(rep)}
        rep = validate_map(f)
        return (OK if rep else FAILS), {"kind": "map", **_report(rep)}
    ssets, maps = bundle_from_json(obj)
    results = []
    code = OK
    for X in ssets:
        rep = validate(X)
        results.append({"kind": "sset", "name": X.name, **_report(rep)})
        code = code if rep else FAILS
    for f in maps:
        rep = validate_map(f)
        results.append({"kind": "map", "domain": f.domain.name, **_report(rep)})
        code = code if rep else FAILS
    return code, {"kind": "bundle", "ok": code == OK, "results": results}


def cmd_check(args):
    p = _checked_map(args.map)
    if args.family == "boundary":
        lo = 1 if args.min is None else args.min
        hi = default_bound(p) if args.max is None else args.max
        rep = boundary_rlp(p, lo, hi)
    elif args.family == "horn":
        lo = 1 if args.min is None else args.min
        hi = default_bound(p) + 1 if args.max is None else args.max
        rep = horn_rlp(p, hi, n_min=lo)
    else:
        lo = 0 if args.min is None else args.min
        hi = default_bound(p) if args.max is None else args.max
        rep = prism_rlp(p, hi, n_min=lo)
    return (OK if rep.holds else FAILS), rep.to_json()


def cmd_decompose(args):
    p = _checked_map(args.map)
    dec = decompose_base(p)
    return OK, {
        "base": dec.base.name,
        "gamma0": dec.gamma0.sorted_ids(),
        "gamma1": dec.gamma1.sorted_ids(),
    }


def cmd_prop(args):
    p = _checked_map(args.map)
    rep = is_propositional_rlp(p, args.bound)
    if args.homotopy:
        rep.via_homotopy = is_propositional_homotopy(p)
    return (OK if rep.propositional else FAILS), rep.to_json()


def cmd_lem(args):
    p = _checked_map(args.map)
    cert = lem_section(p, args.bound)
    return OK, cert.to_json()


def cmd_verify(args):
    p = _checked_map(args.map)
    rep = verify_certificate(read_json(args.cert), p)
    return (OK if rep else FAILS), _report(rep)


def cmd_build(args):
    what = args.what
    vals = args.args
    try:
        if what == "simplex":
            (n,) = map(int, vals)
            ssets, maps = [C.std_simplex(n)], []
        elif what == "boundary":
            (n,) = map(int, vals)
            f = C.boundary_inclusion(n)
            ssets, maps = [f.domain, f.codomain], [f]
        elif what == "horn":
            n, k = map(int, vals)
            f = C.horn_inclusion(n, k)
            ssets, maps = [f.domain, f.codomain], [f]
        elif what == "product":
            a, b = vals
            P, p1, p2 = C.product(load_sset(a), load_sset(b))
            ssets, maps = [p1.codomain, p2.codomain, P], [p1, p2]
        else:
            a, b = vals
            f = pushout_product(load_map(a), load_map(b))
            ssets, maps = [f.domain, f.codomain], [f]
    except ValueError as exc:
        raise InvalidInput(f"build {what}: {exc}") from None
    # drop repeated sets (e.g. product of a set with itself)
    unique = {}
    for X in ssets:
        unique.setdefault(X.name, X)
    return OK, bundle_to_json(list(unique.values()), maps)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write the JSON result here instead of stdout")
    ap = argparse.ArgumentParser(prog="sset-workbench", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[common], help="validate a simplicial set, map or bundle file")
    p.add_argument("file")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("check", parents=[common], help="exhaustive lifting check for a family of maps")
    p.add_argument("--map", required=True)
    p.add_argument("--family", required=True, choices=["horn", "boundary", "prism"])
    p.add_argument("--min", type=int)
    p.add_argument("--max", type=int)
    p.set_defaults(run=cmd_check)

    p = sub.add_parser("decompose", parents=[common], help="split the base into image and complement")
    p.add_argument("--map", required=True)
    p.set_defaults(run=cmd_decompose)

    p = sub.add_parser("prop", parents=[common], help="propositionality check")
    p.add_argument("--map", required=True)
    p.add_argument("--bound", type=int)
    p.add_argument("--homotopy", action="store_true")
    p.set_defaults(run=cmd_prop)

    p = sub.add_parser("lem", parents=[common], help="synthesize an excluded-middle certificate")
    p.add_argument("--map", required=True)
    p.add_argument("--bound", type=int)
    p.set_defaults(run=cmd_lem)

    p = sub.add_parser("verify", parents=[common], help="re-check a certificate against its map")
    p.add_argument("--cert", required=True)
    p.add_argument("--map", required=True)
    p.set_defaults(run=cmd_verify)

    p = sub.add_parser("build", parents=[common], help="construct an object and emit it as a bundle")
    p.add_argument("what", choices=["simplex", "boundary", "horn", "product", "pushout-product"])
    p.add_argument("args", nargs="*")
    p.set_defaults(run=cmd_build)

    return ap


def _emit(obj, out, stream):
    text = dumps(obj)
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        stream.write(text)


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else OK
    out = args.out
    try:
        thread_cap()
        code, obj = args.run(args)
    except (InterchangeError, InvalidInput, SimplicialError) as exc:
        _emit({"error": "invalid input", "message": str(exc)}, None, stderr)
        return INVALID
    except (NotComplemented, NotPropositional, NoFiller, SizeGuardExceeded) as exc:
        obj = {"error": type(exc).__name__, "message": str(exc)}
        _emit(obj, out, stdout)
        return PRECONDITION
    except NonEmptyFiber as exc:
        _emit({"error": "NonEmptyFiber", "message": str(exc)}, None, stderr)
        return PRECONDITION
    _emit(obj, out, stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
