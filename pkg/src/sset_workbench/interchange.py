"""JSON interchange format for simplicial sets, maps and bundles.

Simplicial set::

    {"name": str, "simplices": [{"id": str, "dim": int, "faces": [Expr]}]}

Map::

    {"domain": str, "codomain": str, "assignments": {id: Expr}}

with ``Expr = {"collapse": [int ascending], "target": str}``.  A bundle is
``{"simplicial_sets": [...], "maps": [...]}``.  Writers are canonical:
simplices sorted by (dim, id), sorted keys, two-space indent.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Callable, Mapping, Union

from .ordinal import OrdinalSurjection
from .simplicial import Simplex, SimplexExpr, SimplicialMap, SimplicialSet


class InterchangeError(ValueError):
    """Input does not follow the interchange format."""


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def expr_to_json(e: SimplexExpr) -> dict:
    return {"collapse": list(e.collapse), "target": e.base}


def sset_to_json(X: SimplicialSet) -> dict:
    return {
        "name": X.name,
        "simplices": [
            {"id": s.id, "dim": s.dim, "faces": [expr_to_json(f) for f in s.faces]}
            for s in X.simplices
        ],
    }


def map_to_json(f: SimplicialMap) -> dict:
    return {
        "domain": f.domain.name,
        "codomain": f.codomain.name,
        "assignments": {k: expr_to_json(v) for k, v in f.assignments.items()},
    }


def bundle_to_json(ssets=(), maps=()) -> dict:
    return {
        "simplicial_sets": [sset_to_json(X) for X in ssets],
        "maps": [map_to_json(f) for f in maps],
    }


def _need(obj, key, typ, where):
    if not isinstance(obj, dict):
        raise InterchangeError(f"{where}: expected an object")
    if key not in obj:
        raise InterchangeError(f"{where}: missing field {key!r}")
    val = obj[key]
    if typ is int and isinstance(val, bool):
        raise InterchangeError(f"{where}.{key}: expected int")
    if not isinstance(val, typ):
        raise InterchangeError(f"{where}.{key}: expected {typ.__name__}")
    return val


def expr_from_json(obj, dims: Mapping[str, int], where="expr", expected_dim=None) -> SimplexExpr:
    collapse = _need(obj, "collapse", list, where)
    target = _need(obj, "target", str, where)
    if any(isinstance(c, bool) or not isinstance(c, int) for c in collapse):
        raise InterchangeError(f"{where}.collapse: expected a list of ints")
    if target not in dims:
        raise InterchangeError(f"{where}.target: unknown simplex {target!r}")
    source = dims[target] + len(collapse)
    if expected_dim is not None and source != expected_dim:
        raise InterchangeError(f"{where}: expression has dimension {source}, expected {expected_dim}")
    try:
        return SimplexExpr(OrdinalSurjection(source, tuple(sorted(collapse))), target)
    except ValueError as exc:
        raise InterchangeError(f"{where}.collapse: {exc}") from None


def sset_from_json(obj) -> SimplicialSet:
    name = _need(obj, "name", str, "simplicial set")
    raw = _need(obj, "simplices", list, "simplicial set")
    dims = {}
    for k, s in enumerate(raw):
        where = f"simplices[{k}]"
        sid = _need(s, "id", str, where)
        dim = _need(s, "dim", int, where)
        if sid in dims:
            raise InterchangeError(f"{where}.id: duplicate id {sid!r}")
        dims[sid] = dim
    cells = []
    for k, s in enumerate(raw):
        where = f"simplices[{k}]"
        faces = _need(s, "faces", list, where)
        if len(faces) != (0 if s["dim"] == 0 else s["dim"] + 1):
            raise InterchangeError(f"{where}.faces: wrong number of faces for dimension {s['dim']}")
        cells.append(
            Simplex(
                s["id"],
                s["dim"],
                tuple(
                    expr_from_json(f, dims, f"{where}.faces[{j}]", s["dim"] - 1)
                    for j, f in enumerate(faces)
                ),
            )
        )
    return SimplicialSet(name, cells)


Resolver = Union[Mapping[str, SimplicialSet], Callable[[str], SimplicialSet]]


def _resolve(resolver: Resolver, name: str) -> SimplicialSet:
    try:
        return resolver(name) if callable(resolver) else resolver[name]
    except KeyError:
        raise InterchangeError(f"map refers to unknown simplicial set {name!r}") from None


def map_from_json(obj, resolver: Resolver) -> SimplicialMap:
    X = _resolve(resolver, _need(obj, "domain", str, "map"))
    Y = _resolve(resolver, _need(obj, "codomain", str, "map"))
    raw = _need(obj, "assignments", dict, "map")
    dims = {s.id: s.dim for s in Y.simplices}
    vals = {}
    for sid, e in raw.items():
        if sid not in X:
            raise InterchangeError(f"map.assignments: unknown domain simplex {sid!r}")
        vals[sid] = expr_from_json(e, dims, f"map.assignments[{sid!r}]", X.dim_of(sid))
    return SimplicialMap(X, Y, vals)


def bundle_from_json(obj):
    ssets = [sset_from_json(s) for s in _need(obj, "simplicial_sets", list, "bundle")]
    table = {X.name: X for X in ssets}
    maps = [map_from_json(m, table) for m in _need(obj, "maps", list, "bundle")]
    return ssets, maps


def read_json(path) -> object:
    path = Path(path)
    try:
        return json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise InterchangeError(f"{path}: line {exc.lineno}: {exc.msg}") from None
    except OSError as exc:
        raise InterchangeError(f"{path}: {exc.strerror}") from None


def kind(obj) -> str:
    if isinstance(obj, dict):
        if "simplicial_sets" in obj:
            return "bundle"
        if "simplices" in obj:
            return "sset"
        if "assignments" in obj:
            return "map"
    raise InterchangeError("unrecognised object: expected a simplicial set, map or bundle")


def load_sset(path) -> SimplicialSet:
    return sset_from_json(read_json(path))


def directory_index(directory) -> dict:
    """Simplicial sets found in the *.json files of a directory, by name."""
    table = {}
    for p in sorted(Path(directory).glob("*.json")):
        try:
            obj = json.loads(p.read_text(encoding="utf-8"))
            k = kind(obj)
        except (ValueError, OSError):
            continue
        if k == "sset":
            table.setdefault(obj["name"], obj)
        elif k == "bundle":
            for s in obj.get("simplicial_sets", []):
                if isinstance(s, dict) and "name" in s:
                    table.setdefault(s["name"], s)
    return table


def load_map(path, extra=()) -> SimplicialMap:
    """Load a map file, finding its domain and codomain by name.

    Sets come from ``extra``, from a bundle (if ``path`` is one), or from
    sibling files in the same directory; a sibling named ``<set name>.json``
    is tried before scanning the rest.
    """
    obj = read_json(path)
    if kind(obj) == "bundle":
        ssets, maps = bundle_from_json(obj)
        if len(maps) != 1:
            raise InterchangeError(f"{path}: bundle must contain exactly one map")
        return maps[0]
    known = {X.name: X for X in extra}
    raw = None
    cache = {}

    def resolve(name):
        nonlocal raw
        if name in known:
            return known[name]
        if name not in cache:
            direct = Path(path).parent / f"{name}.json"
            if direct.is_file():
                cand = read_json(direct)
                if isinstance(cand, dict) and cand.get("name") == name and kind(cand) == "sset":
                    cache[name] = sset_from_json(cand)
                    return cache[name]
            if raw is None:
                raw = directory_index(Path(path).parent)
            if name not in raw:
                raise KeyError(name)
            cache[name] = sset_from_json(raw[name])
        return cache[name]

    return map_from_json(obj, resolve)


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj), encoding="utf-8")
