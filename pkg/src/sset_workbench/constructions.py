"""Builders and universal constructions on finite simplicial sets."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .ordinal import OrdinalSurjection
from .simplicial import (
    Simplex,
    SimplexExpr,
    SimplicialError,
    SimplicialMap,
    SimplicialSet,
    Subcomplex,
    nondeg,
)


def vertex_label(vs: Sequence[int]) -> str:
    if all(v < 10 for v in vs):
        return "".join(map(str, vs))
    return ".".join(map(str, vs))


def empty(name: str = "empty") -> SimplicialSet:
    return SimplicialSet(name, [])


def _simplex_cells(n: int, keep) -> list:
    cells = []
    for d in range(n + 1):
        for vs in combinations(range(n + 1), d + 1):
            if not keep(vs):
                continue
            faces = ()
            if d > 0:
                faces = tuple(nondeg(vertex_label(vs[:k] + vs[k + 1:]), d - 1) for k in range(d + 1))
            cells.append(Simplex(vertex_label(vs), d, faces))
    return cells


@lru_cache(maxsize=None)
def std_simplex(n: int) -> SimplicialSet:
    """The standard n-simplex; simplex ids are their vertex lists, e.g. '012'."""
    if n < 0:
        raise SimplicialError("n must be non-negative")
    return SimplicialSet(f"Delta[{n}]", _simplex_cells(n, lambda vs: True))


@lru_cache(maxsize=None)
def boundary(n: int) -> SimplicialSet:
    if n < 0:
        raise SimplicialError("n must be non-negative")
    return SimplicialSet(f"dDelta[{n}]", _simplex_cells(n, lambda vs: len(vs) <= n))


@lru_cache(maxsize=None)
def horn(n: int, k: int) -> SimplicialSet:
    if n < 1:
        raise SimplicialError("horns need n >= 1")
    if not 0 <= k <= n:
        raise SimplicialError(f"horn index {k} out of range for n = {n}")
    missing = tuple(v for v in range(n + 1) if v != k)
    return SimplicialSet(
        f"Lambda[{n},{k}]",
        _simplex_cells(n, lambda vs: len(vs) <= n and vs != missing),
    )


def _inclusion_into(S: SimplicialSet, X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(S, X, {s.id: nondeg(s.id, s.dim) for s in S.simplices})


def boundary_inclusion(n: int) -> SimplicialMap:
    """i_n : boundary of Delta[n] -> Delta[n]."""
    return _inclusion_into(boundary(n), std_simplex(n))


def horn_inclusion(n: int, k: int) -> SimplicialMap:
    return _inclusion_into(horn(n, k), std_simplex(n))


def simplex_map(X: SimplicialSet, e: SimplexExpr) -> SimplicialMap:
    """The map Delta[n] -> X classifying the n-simplex e."""
    D = std_simplex(e.dim)
    vals = {}
    for s in D.simplices:
        theta = tuple(int(c) for c in (s.id if "." not in s.id else s.id.split(".")))
        vals[s.id] = X.act(e, theta)
    return SimplicialMap(D, X, vals)


def pair_id(a: SimplexExpr, b: SimplexExpr) -> str:
    return f"({a.encode()}, {b.encode()})"


def _joint(a: SimplexExpr, b: SimplexExpr) -> SimplexExpr:
    """Normal form of the pair (a, b) as a simplex of a product."""
    common = sorted(set(a.collapse) & set(b.collapse))
    if common:
        a = SimplexExpr(a.surjection.factor_out(common), a.base)
        b = SimplexExpr(b.surjection.factor_out(common), b.base)
    return SimplexExpr(OrdinalSurjection(a.dim + len(common), tuple(common)), pair_id(a, b))


def _paired(X, Y, name, keep=None):
    cells, left, right = [], {}, {}
    for n in range(X.dimension + Y.dimension + 1):
        Xn, Yn = X.expressions(n), Y.expressions(n)
        for a in Xn:
            ca = set(a.collapse)
            for b in Yn:
                if ca & set(b.collapse):
                    continue
                if keep is not None and not keep(a, b):
                    continue
                faces = ()
                if n > 0:
                    faces = tuple(_joint(X.face(a, i), Y.face(b, i)) for i in range(n + 1))
                sid = pair_id(a, b)
                cells.append(Simplex(sid, n, faces))
                left[sid], right[sid] = a, b
    P = SimplicialSet(name, cells)
    return P, SimplicialMap(P, X, left), SimplicialMap(P, Y, right)


def product(X: SimplicialSet, Y: SimplicialSet, name: Optional[str] = None):
    """X x Y with its two projections.

    Nondegenerate n-simplices are the pairs of n-simplices whose collapse sets
    are disjoint.
    """
    return _paired(X, Y, name or f"({X.name} x {Y.name})")


def pullback(f: SimplicialMap, g: SimplicialMap, name: Optional[str] = None):
    """X x_Z Y for f: X -> Z and g: Y -> Z, with its two projections."""
    if f.codomain != g.codomain:
        raise SimplicialError("pullback needs maps with a common codomain")
    return _paired(
        f.domain,
        g.domain,
        name or f"({f.domain.name} x_{f.codomain.name} {g.domain.name})",
        keep=lambda a, b: f.apply(a) == g.apply(b),
    )


def restrict(p: SimplicialMap, S: Subcomplex, name: Optional[str] = None) -> SimplicialMap:
    """The pullback of p along the inclusion of S, as a map onto S."""
    _, _, over = pullback(p, S.inclusion(), name)
    return over


def coproduct_many(parts: Sequence[SimplicialSet], name: Optional[str] = None):
    """Disjoint union; the k-th summand's ids are prefixed with 'k:'."""
    cells, injections = [], []

    def tag(k, e):
        return SimplexExpr(e.surjection, f"{k}:{e.base}")

    for k, X in enumerate(parts):
        for s in X.simplices:
            cells.append(Simplex(f"{k}:{s.id}", s.dim, tuple(tag(k, f) for f in s.faces)))
    S = SimplicialSet(name or " + ".join(X.name for X in parts) or "empty", cells)
    for k, X in enumerate(parts):
        injections.append(
            SimplicialMap(X, S, {s.id: nondeg(f"{k}:{s.id}", s.dim) for s in X.simplices})
        )
    return S, injections


def coproduct(X: SimplicialSet, Y: SimplicialSet, name: Optional[str] = None):
    S, (i1, i2) = coproduct_many([X, Y], name)
    return S, i1, i2


def map_coproduct(maps: Sequence[SimplicialMap], name: Optional[str] = None,
                  codomain_name: Optional[str] = None) -> SimplicialMap:
    """The sum f_0 + f_1 + ... between coproducts of domains and codomains."""
    src, _ = coproduct_many([f.domain for f in maps], name)
    tgt, _ = coproduct_many([f.codomain for f in maps], codomain_name)
    vals = {}
    for k, f in enumerate(maps):
        for sid, v in f.assignments.items():
            vals[f"{k}:{sid}"] = SimplexExpr(v.surjection, f"{k}:{v.base}")
    return SimplicialMap(src, tgt, vals)


def subcomplex_closure(X: SimplicialSet, seed: Iterable[str]) -> Subcomplex:
    """Least face-closed set of nondegenerate simplices containing seed."""
    todo = list(seed)
    for sid in todo:
        X.simplex(sid)
    members = set()
    while todo:
        sid = todo.pop()
        if sid in members:
            continue
        members.add(sid)
        todo.extend(f.base for f in X.simplex(sid).faces if f.base not in members)
    return Subcomplex(X, frozenset(members))


def image(f: SimplicialMap) -> Subcomplex:
    members = frozenset(v.base for v in f.assignments.values())
    closed = subcomplex_closure(f.codomain, members)
    assert closed.members == members, "image of a simplicial map must be face-closed"
    return Subcomplex(f.codomain, members)


def full_subcomplex(X: SimplicialSet, vertices: Iterable[str]) -> Subcomplex:
    """All nondegenerate simplices whose vertices lie in the given set."""
    keep = set(vertices)
    return Subcomplex(
        X, frozenset(s.id for s in X.simplices if set(X.vertices(X.top(s.id))) <= keep)
    )
