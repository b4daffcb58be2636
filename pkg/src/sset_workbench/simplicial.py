"""Finitely presented simplicial sets in Eilenberg-Zilber normal form.

A simplicial set is given by its nondegenerate simplices; each stores its
faces as :class:`SimplexExpr` values, i.e. pairs (eta, x) of a monotone
surjection and a nondegenerate simplex.  Every simplex, degenerate or not,
has exactly one such expression, so equality of simplices is equality of
expressions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from types import MappingProxyType
from typing import Iterable, Mapping, Optional

from .ordinal import (
    Monotone,
    OrdinalSurjection,
    codegeneracy,
    coface,
    compose as compose_monotone,
    epi_mono,
)


class SimplicialError(ValueError):
    """Malformed expression, index out of range, or invalid object."""


@dataclass(frozen=True)
class SimplexExpr:
    surjection: OrdinalSurjection
    base: str
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.surjection, self.base)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, SimplexExpr):
            return NotImplemented
        a, b = self.surjection, other.surjection
        return (self._hash == other._hash and self.base == other.base
                and a.source_dim == b.source_dim and a.collapse == b.collapse)

    @classmethod
    def of(cls, base: str, dim: int, collapse=()) -> "SimplexExpr":
        return cls(OrdinalSurjection(dim, tuple(collapse)), base)

    @property
    def dim(self) -> int:
        return self.surjection.source_dim

    @property
    def base_dim(self) -> int:
        return self.surjection.target_dim

    @property
    def collapse(self):
        return self.surjection.collapse

    @property
    def is_nondegenerate(self) -> bool:
        return self.surjection.is_identity

    def sort_key(self):
        return (self.dim, self.base_dim, self.base, self.collapse)

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def encode(self) -> str:
        if self.is_nondegenerate:
            return self.base
        return f"{self.surjection}{self.base}"

    def __str__(self):
        return self.encode()


def nondeg(base: str, dim: int) -> SimplexExpr:
    return SimplexExpr(OrdinalSurjection.identity(dim), base)


@dataclass(frozen=True)
class Simplex:
    id: str
    dim: int
    faces: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "faces", tuple(self.faces))


@dataclass(frozen=True)
class Report:
    """Outcome of a check: truthy when ok, otherwise carries the first failure."""

    ok: bool
    message: str = ""
    where: tuple = ()

    def __bool__(self):
        return self.ok


OK = Report(True)


class SimplicialSet:
    """Immutable finite simplicial set presented by nondegenerate simplices."""

    def __init__(self, name: str, simplices: Iterable[Simplex]):
        self.name = name
        self.simplices = tuple(sorted(simplices, key=lambda s: (s.dim, s.id)))
        self._by_id = {}
        for s in self.simplices:
            self._by_id.setdefault(s.id, s)
        self._by_dim = {}
        for s in self.simplices:
            self._by_dim.setdefault(s.dim, []).append(s.id)
        # memo tables; never change observable state
        self._face_memo = {}
        self._expr_memo = {}
        self._filler_memo = {}
        self._canon = {}
        self._degen_memo = {}
        self._search_order = None
        self._search_plan = None

    # -- basic queries -------------------------------------------------
    def __repr__(self):
        return f"SimplicialSet({self.name!r}, counts={self.counts()})"

    def __eq__(self, other):
        return isinstance(other, SimplicialSet) and self.simplices == other.simplices

    def __hash__(self):
        return hash(self.simplices)

    def __contains__(self, sid):
        return sid in self._by_id

    def __len__(self):
        return len(self.simplices)

    @property
    def ids(self):
        return [s.id for s in self.simplices]

    @property
    def dimension(self) -> int:
        return self.simplices[-1].dim if self.simplices else -1

    def simplex(self, sid: str) -> Simplex:
        try:
            return self._by_id[sid]
        except KeyError:
            raise SimplicialError(f"unknown simplex {sid!r} in {self.name}") from None

    def dim_of(self, sid: str) -> int:
        return self.simplex(sid).dim

    def nondegenerate(self, d: int):
        return list(self._by_dim.get(d, ()))

    def counts(self) -> tuple:
        return tuple(len(self._by_dim.get(d, ())) for d in range(self.dimension + 1))

    def top(self, sid: str) -> SimplexExpr:
        return nondeg(sid, self.dim_of(sid))

    def order_key(self, sid: str):
        return (self.dim_of(sid), sid)

    @property
    def search_order(self) -> tuple:
        """Nondegenerate simplices with every simplex right after its faces.

        Post-order walk of the face graph, rooted at simplices taken by
        descending dimension then id.  Backtracking in this order prunes on an
        edge as soon as its endpoints are chosen.
        """
        if self._search_order is None:
            seen, out = set(), []
            for root in sorted(self.simplices, key=lambda s: (-s.dim, s.id)):
                stack = [(root, False)]
                while stack:
                    s, expanded = stack.pop()
                    if s.id in seen:
                        continue
                    if expanded:
                        seen.add(s.id)
                        out.append(s)
                        continue
                    stack.append((s, True))
                    for f in reversed(s.faces):
                        if f.base not in seen:
                            stack.append((self._by_id[f.base], False))
            self._search_order = tuple(out)
        return self._search_order

    @property
    def search_plan(self) -> tuple:
        """``search_order`` paired with each simplex's faces as (base, surjection or None)."""
        if self._search_plan is None:
            self._search_plan = tuple(
                (s, tuple((f.base, f.surjection if f.surjection.collapse else None) for f in s.faces))
                for s in self.search_order)
        return self._search_plan

    # -- the normalization engine --------------------------------------
    def check_expr(self, e: SimplexExpr) -> None:
        if not isinstance(e, SimplexExpr):
            raise SimplicialError(f"not a simplex expression: {e!r}")
        if e.base not in self._by_id:
            raise SimplicialError(f"expression refers to unknown simplex {e.base!r}")
        if self._by_id[e.base].dim != e.base_dim:
            raise SimplicialError(
                f"expression {e} has target dimension {e.base_dim} but "
                f"{e.base!r} has dimension {self._by_id[e.base].dim}"
            )

    def _restrict_base(self, sid: str, mono: Monotone) -> SimplexExpr:
        """Canonical expression of mono^*(x) for an injective monotone map."""
        key = (sid, mono)
        hit = self._face_memo.get(key)
        if hit is not None:
            return hit
        n = self._by_id[sid].dim
        if len(mono) == n + 1:
            out = nondeg(sid, n)
        else:
            image = set(mono)
            j = max(t for t in range(n + 1) if t not in image)
            rest = tuple(t if t < j else t - 1 for t in mono)
            out = self.act(self._by_id[sid].faces[j], rest)
        self._face_memo[key] = out
        return out

    def act(self, e: SimplexExpr, theta: Monotone) -> SimplexExpr:
        """Canonical expression of theta^*(e) for a monotone theta: [k] -> [dim e]."""
        eta = e.surjection.values
        surj, mono = epi_mono(compose_monotone(eta, theta))
        y = self._restrict_base(e.base, mono)
        yv = y.surjection.values
        return SimplexExpr(OrdinalSurjection.from_values(tuple(yv[s] for s in surj)), y.base)

    def face(self, e: SimplexExpr, i: int) -> SimplexExpr:
        if e.dim == 0 or not 0 <= i <= e.dim:
            raise SimplicialError(f"face index {i} out of range for a {e.dim}-simplex")
        if e.is_nondegenerate:
            return self._by_id[e.base].faces[i]
        return self.act(e, coface(e.dim, i))

    def degeneracy(self, e: SimplexExpr, i: int) -> SimplexExpr:
        if not 0 <= i <= e.dim:
            raise SimplicialError(f"degeneracy index {i} out of range for a {e.dim}-simplex")
        v = e.surjection.values
        return SimplexExpr(
            OrdinalSurjection.from_values(tuple(v[t] for t in codegeneracy(e.dim, i))), e.base
        )

    def vertices(self, e: SimplexExpr) -> tuple:
        """Vertex ids of e, in order (with repeats for degenerate e)."""
        return tuple(self.act(e, (j,)).base for j in range(e.dim + 1))

    def expressions(self, n: int) -> list:
        """Every n-simplex (degenerate ones included) in canonical order."""
        hit = self._expr_memo.get(n)
        if hit is None:
            hit = []
            for s in self.simplices:
                if s.dim > n:
                    break
                for c in combinations(range(n), n - s.dim):
                    hit.append(SimplexExpr(OrdinalSurjection(n, c), s.id))
            hit.sort(key=SimplexExpr.sort_key)
            self._expr_memo[n] = hit
            for e in hit:
                self._canon[e] = e
        return hit

    def canonical(self, e: SimplexExpr) -> SimplexExpr:
        """The shared instance equal to e (searches compare these by identity)."""
        hit = self._canon.get(e)
        if hit is None:
            if e.dim not in self._expr_memo:
                self.expressions(e.dim)
            hit = self._canon.get(e, e)
        return hit

    def degenerate(self, e: SimplexExpr, eta: OrdinalSurjection) -> SimplexExpr:
        """Canonical instance of eta^*(e) for a surjection eta onto [dim e]."""
        key = (e, eta)
        hit = self._degen_memo.get(key)
        if hit is None:
            hit = self.canonical(SimplexExpr(e.surjection.after(eta), e.base))
            self._degen_memo[key] = hit
        return hit

    def boundary_of(self, e: SimplexExpr) -> tuple:
        if e.dim == 0:
            return ()
        return tuple(self.face(e, i) for i in range(e.dim + 1))

    def fillers(self, n: int) -> dict:
        """Index of n-simplices by their tuple of faces."""
        hit = self._filler_memo.get(n)
        if hit is None:
            hit = {}
            for e in self.expressions(n):
                key = tuple(self.canonical(f) for f in self.boundary_of(e))
                hit.setdefault(key, []).append(e)
            self._filler_memo[n] = hit
        return hit


def normalize(X: SimplicialSet, e: SimplexExpr, op: str, index: int) -> SimplexExpr:
    """Apply the face (``op='d'``) or degeneracy (``op='s'``) operator to e."""
    X.check_expr(e)
    if op == "d":
        return X.face(e, index)
    if op == "s":
        return X.degeneracy(e, index)
    raise SimplicialError(f"unknown operator {op!r}; expected 'd' or 's'")


class SimplicialMap:
    """A map given by its values on nondegenerate simplices."""

    def __init__(self, domain: SimplicialSet, codomain: SimplicialSet,
                 assignments: Mapping[str, SimplexExpr]):
        self.domain = domain
        self.codomain = codomain
        self.assignments = MappingProxyType(dict(assignments))
        self._over_memo = {}

    def __repr__(self):
        return f"SimplicialMap({self.domain.name} -> {self.codomain.name})"

    def __eq__(self, other):
        return (
            isinstance(other, SimplicialMap)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and dict(self.assignments) == dict(other.assignments)
        )

    def __hash__(self):
        return hash(tuple(sorted((k, v.sort_key()) for k, v in self.assignments.items())))

    def __getitem__(self, sid):
        return self.assignments[sid]

    def apply(self, e: SimplexExpr) -> SimplexExpr:
        v = self.assignments[e.base]
        if not e.surjection.collapse:
            return v
        return SimplexExpr(v.surjection.after(e.surjection), v.base)

    def fillers_over(self, n: int) -> dict:
        """Index of the domain's n-simplices by (tuple of faces, image)."""
        hit = self._over_memo.get(n)
        if hit is None:
            hit = {}
            for key, cands in self.domain.fillers(n).items():
                for c in cands:
                    img = self.codomain.canonical(self.apply(c))
                    hit.setdefault((key, img), []).append(c)
            self._over_memo[n] = hit
        return hit

    def sort_key(self):
        """Key matching the order in which map searches yield maps."""
        return tuple(self.assignments[s.id].sort_key() for s in self.domain.search_order)

    @property
    def is_mono(self) -> bool:
        seen = set()
        for v in self.assignments.values():
            if not v.is_nondegenerate or v.base in seen:
                return False
            seen.add(v.base)
        return True


def identity(X: SimplicialSet) -> SimplicialMap:
    return SimplicialMap(X, X, {s.id: nondeg(s.id, s.dim) for s in X.simplices})


def compose(g: SimplicialMap, f: SimplicialMap) -> SimplicialMap:
    """The composite g o f (apply f first)."""
    if f.codomain != g.domain:
        raise SimplicialError(f"cannot compose {g!r} after {f!r}")
    return SimplicialMap(f.domain, g.codomain, {k: g.apply(v) for k, v in f.assignments.items()})


def validate(X: SimplicialSet) -> Report:
    """Check every invariant of a presentation; report the first violation."""
    seen = set()
    for s in X.simplices:
        if s.id in seen:
            return Report(False, f"duplicate simplex id {s.id!r}", (s.id,))
        seen.add(s.id)
        if s.dim < 0:
            return Report(False, f"negative dimension at {s.id!r}", (s.id,))
        expected = 0 if s.dim == 0 else s.dim + 1
        if len(s.faces) != expected:
            return Report(False, f"{s.id!r} has {len(s.faces)} faces, expected {expected}", (s.id,))
        for k, f in enumerate(s.faces):
            try:
                X.check_expr(f)
            except SimplicialError as exc:
                return Report(False, f"face d_{k} of {s.id!r}: {exc}", (s.id, k))
            if f.dim != s.dim - 1:
                return Report(False, f"face d_{k} of {s.id!r} has dimension {f.dim}", (s.id, k))
    for s in X.simplices:
        if s.dim < 2:
            continue
        for j in range(s.dim + 1):
            for i in range(j):
                lhs = X.face(s.faces[j], i)
                rhs = X.face(s.faces[i], j - 1)
                if lhs != rhs:
                    return Report(
                        False,
                        f"simplicial identity d_{i} d_{j} = d_{j - 1} d_{i} fails at {s.id!r}: "
                        f"{lhs} != {rhs}",
                        (s.id, i, j),
                    )
    return OK


def validate_map(f: SimplicialMap) -> Report:
    """Check dimensions and face commutation on every nondegenerate simplex."""
    X, Y = f.domain, f.codomain
    for s in X.simplices:
        if s.id not in f.assignments:
            return Report(False, f"no value assigned to {s.id!r}", (s.id,))
        v = f.assignments[s.id]
        try:
            Y.check_expr(v)
        except SimplicialError as exc:
            return Report(False, f"value at {s.id!r}: {exc}", (s.id,))
        if v.dim != s.dim:
            return Report(False, f"value at {s.id!r} has dimension {v.dim}, expected {s.dim}", (s.id,))
    extra = set(f.assignments) - set(X.ids)
    if extra:
        bad = min(extra)
        return Report(False, f"assignment for unknown simplex {bad!r}", (bad,))
    for s in X.simplices:
        v = f.assignments[s.id]
        for i, face in enumerate(s.faces):
            if f.apply(face) != Y.face(v, i):
                return Report(False, f"map does not commute with d_{i} at {s.id!r}", (s.id, i))
    return OK


@dataclass(frozen=True)
class Subcomplex:
    ambient: SimplicialSet
    members: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))

    def sorted_ids(self):
        return sorted(self.members, key=self.ambient.order_key)

    def is_closed(self) -> bool:
        X = self.ambient
        return all(f.base in self.members for sid in self.members for f in X.simplex(sid).faces)

    def as_simplicial_set(self, name: Optional[str] = None) -> SimplicialSet:
        return SimplicialSet(
            name or f"{self.ambient.name}|sub",
            [s for s in self.ambient.simplices if s.id in self.members],
        )

    def inclusion(self, name: Optional[str] = None) -> SimplicialMap:
        S = self.as_simplicial_set(name)
        return SimplicialMap(S, self.ambient, {s.id: nondeg(s.id, s.dim) for s in S.simplices})
