"""Lifting problems, exhaustive lifting, and right-lifting-property checks.

Every search here walks the nondegenerate simplices of the source in
``search_order`` (each simplex right after its faces) and tries candidate
values in canonical order, so solutions come out in lexicographic order of
``SimplicialMap.sort_key`` and the first one found is the least.  Counterexample
squares are ordered by (dimension, bottom map, top map).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Mapping, Optional

from .constructions import (
    boundary_inclusion,
    horn_inclusion,
    pair_id,
    product,
    simplex_map,
    vertex_label,
)
from .interchange import map_to_json, sset_to_json
from .ordinal import OrdinalSurjection
from .simplicial import (
    SimplexExpr,
    SimplicialError,
    SimplicialMap,
    SimplicialSet,
    Subcomplex,
    compose,
    identity,
    nondeg,
)


def _search(B: SimplicialSet, X: SimplicialSet, constraints=None, over=None,
            reverse=False, trusted=False) -> Iterator[dict]:
    """Backtracking core; yields assignment dicts for maps B -> X.

    ``over`` is an optional pair (p, target) asking for p(value(b)) == target[b].
    Constrained simplices whose faces are all constrained are checked once up
    front (skipped when ``trusted``: the caller knows they form a valid map)
    and then left out of the branching.
    """
    constraints = constraints or {}
    assign = {}
    indexes = {}

    def index(d):
        hit = indexes.get(d)
        if hit is None:
            hit = indexes[d] = X.fillers(d) if over is None else over[0].fillers_over(d)
        return hit

    degenerate = X.degenerate

    def plan(s, faces):
        tgt = None
        if over is not None:
            tgt = over[0].codomain.canonical(over[1][s.id])
        return s.id, faces, index(s.dim), tgt, constraints.get(s.id)

    def options(step):
        sid, faces, idx, tgt, fixed = step
        key = tuple([assign[b] if c is None else degenerate(assign[b], c) for b, c in faces])
        cands = idx.get(key if tgt is None else (key, tgt), ())
        if fixed is not None:
            cands = [fixed] if fixed in cands else []
        return cands[::-1] if reverse else cands

    order = []
    for s, faces in B.search_plan:
        if s.id in constraints and all(b in constraints for b, _ in faces):
            assign[s.id] = constraints[s.id]
            if not trusted and not options(plan(s, faces)):
                return
        else:
            order.append(plan(s, faces))
    total = len(order)
    if total == 0:
        yield dict(assign)
        return
    stack = [(options(order[0]), 0)]
    while stack:
        cands, idx = stack[-1]
        depth = len(stack) - 1
        if idx >= len(cands):
            stack.pop()
            assign.pop(order[depth][0], None)
            continue
        stack[-1] = (cands, idx + 1)
        assign[order[depth][0]] = cands[idx]
        if depth + 1 == total:
            yield dict(assign)
        else:
            stack.append((options(order[depth + 1]), 0))


def enumerate_maps(B: SimplicialSet, X: SimplicialSet,
                   constraints: Optional[Mapping[str, SimplexExpr]] = None,
                   reverse: bool = False) -> Iterator[SimplicialMap]:
    """Every simplicial map B -> X extending the given partial assignment."""
    for a in _search(B, X, dict(constraints or {}), None, reverse):
        yield SimplicialMap(B, X, a)


@dataclass(frozen=True)
class LiftingProblem:
    """A commuting square  p o top == bottom o left  with left a mono."""

    left: SimplicialMap
    right: SimplicialMap
    top: SimplicialMap
    bottom: SimplicialMap

    def __post_init__(self):
        i, p, u, v = self.left, self.right, self.top, self.bottom
        if not (i.domain == u.domain and i.codomain == v.domain
                and p.domain == u.codomain and p.codomain == v.codomain):
            raise SimplicialError("lifting problem: maps do not form a square")
        if not i.is_mono:
            raise SimplicialError("lifting problem: left map must be a monomorphism")
        if compose(p, u) != compose(v, i):
            raise SimplicialError("lifting problem: square does not commute")

    def is_lift(self, h: SimplicialMap) -> bool:
        return compose(h, self.left) == self.top and compose(self.right, h) == self.bottom

    def to_json(self) -> dict:
        return {
            "left": map_to_json(self.left),
            "top": map_to_json(self.top),
            "bottom": map_to_json(self.bottom),
            "sets": {
                "left_domain": sset_to_json(self.left.domain),
                "left_codomain": sset_to_json(self.left.codomain),
            },
        }


def _lift_constraints(i: SimplicialMap, u: SimplicialMap) -> dict:
    return {i.assignments[a].base: u.assignments[a] for a in i.assignments}


def _lifts(i, p, u, v, reverse=False):
    # u is a valid map over v o i, so its values need no re-checking
    return _search(i.codomain, p.domain, _lift_constraints(i, u), (p, v), reverse, trusted=True)


def solve_lift(prob: LiftingProblem, reverse: bool = False) -> Optional[SimplicialMap]:
    """The least diagonal filler of the square, or None if none exists."""
    for a in _lifts(prob.left, prob.right, prob.top, prob.bottom, reverse):
        h = SimplicialMap(prob.left.codomain, prob.right.domain, a)
        if not prob.is_lift(h):
            raise AssertionError("search produced a non-lift")
        return h
    return None


@dataclass
class RLPReport:
    holds: bool
    family: str
    dim_range: tuple
    counterexample: Optional[LiftingProblem] = None
    note: str = ""
    failed_at: Optional[str] = None

    def to_json(self) -> dict:
        out = {
            "holds": self.holds,
            "family": self.family,
            "dims": list(self.dim_range),
            "note": self.note,
        }
        if self.counterexample is not None:
            out["counterexample"] = dict(self.counterexample.to_json(), at=self.failed_at)
        return out


def squares(i: SimplicialMap, p: SimplicialMap, reverse: bool = False):
    """Every commuting square (u, v) from i to p, as (u, v) pairs in canonical order."""
    A, B = i.domain, i.codomain
    Y, X = p.domain, p.codomain
    for va in _search(B, X, reverse=reverse):
        v = SimplicialMap(B, X, va)
        vi = compose(v, i)
        for ua in _search(A, Y, None, (p, vi), reverse):
            yield SimplicialMap(A, Y, ua), v


def first_failure(i: SimplicialMap, p: SimplicialMap, reverse: bool = False):
    """Least square (i, p, u, v) without a lift, or None.

    With ``reverse`` the squares are visited in the opposite order and the
    least failure is found by a full scan, which must agree with the forward
    result.
    """
    found = None
    for u, v in squares(i, p, reverse):
        if next(_lifts(i, p, u, v), None) is not None:
            continue
        if not reverse:
            return LiftingProblem(i, p, u, v)
        key = (v.sort_key(), u.sort_key())
        if found is None or key < found[0]:
            found = (key, LiftingProblem(i, p, u, v))
    return None if found is None else found[1]


def _note(lo, hi):
    return f"exhaustive over n in [{lo}, {hi}] only; larger n not checked"


def rlp(i: SimplicialMap, p: SimplicialMap, reverse: bool = False) -> RLPReport:
    bad = first_failure(i, p, reverse)
    return RLPReport(bad is None, "single", (0, 0), bad, "exhaustive over all squares",
                     None if bad is None else i.domain.name)


@lru_cache(maxsize=None)
def _boundary(n):
    return boundary_inclusion(n)


@lru_cache(maxsize=None)
def _horn(n, k):
    return horn_inclusion(n, k)


def default_bound(p: SimplicialMap) -> int:
    return max(p.domain.dimension, 0) + 2


def boundary_rlp(p: SimplicialMap, n_min: int = 1, n_max: Optional[int] = None,
                 reverse: bool = False) -> RLPReport:
    """Check i_n against p for n_min <= n <= n_max."""
    n_max = default_bound(p) if n_max is None else n_max
    for n in range(n_min, n_max + 1):
        bad = first_failure(_boundary(n), p, reverse)
        if bad is not None:
            return RLPReport(False, "boundary", (n_min, n_max), bad, _note(n_min, n_max),
                             f"dDelta[{n}]")
    return RLPReport(True, "boundary", (n_min, n_max), None, _note(n_min, n_max))


def horn_rlp(p: SimplicialMap, n_max: Optional[int] = None, n_min: int = 1,
             reverse: bool = False) -> RLPReport:
    """Check every horn inclusion Lambda[n,k] -> Delta[n] for n_min <= n <= n_max."""
    n_max = default_bound(p) + 1 if n_max is None else n_max
    for n in range(max(n_min, 1), n_max + 1):
        for k in range(n + 1):
            bad = first_failure(_horn(n, k), p, reverse)
            if bad is not None:
                return RLPReport(False, "horn", (n_min, n_max), bad, _note(n_min, n_max),
                                 f"Lambda[{n},{k}]")
    return RLPReport(True, "horn", (n_min, n_max), None, _note(n_min, n_max))


def pushout_product(i: SimplicialMap, j: SimplicialMap) -> SimplicialMap:
    """The inclusion A x D  u_{A x C}  B x C  ->  B x D  for monos i: A -> B, j: C -> D."""
    if not (i.is_mono and j.is_mono):
        raise SimplicialError("pushout_product needs two monomorphisms")
    B, D = i.codomain, j.codomain
    BD, pb, pd = product(B, D)
    img_a = {v.base for v in i.assignments.values()}
    img_c = {v.base for v in j.assignments.values()}
    members = frozenset(
        s.id for s in BD.simplices
        if pb.assignments[s.id].base in img_a or pd.assignments[s.id].base in img_c
    )
    name = f"({i.domain.name} x {D.name}) u ({B.name} x {j.domain.name})"
    return Subcomplex(BD, members).inclusion(name)


@lru_cache(maxsize=None)
def prism_inclusion(n: int) -> SimplicialMap:
    """pushout_product(i_1, i_n)."""
    return pushout_product(_boundary(1), _boundary(n))


def prism_rlp(p: SimplicialMap, n_max: Optional[int] = None, n_min: int = 0,
              reverse: bool = False) -> RLPReport:
    n_max = default_bound(p) if n_max is None else n_max
    for n in range(n_min, n_max + 1):
        bad = first_failure(prism_inclusion(n), p, reverse)
        if bad is not None:
            return RLPReport(False, "prism", (n_min, n_max), bad, _note(n_min, n_max),
                             f"prism[{n}]")
    return RLPReport(True, "prism", (n_min, n_max), None, _note(n_min, n_max))


class FillerError(RuntimeError):
    """A prism filling step had no solution; its preconditions were violated."""

    def __init__(self, step: int, kind: str, message: str):
        super().__init__(message)
        self.step = step
        self.kind = kind


def shuffles(n: int) -> list:
    """The n+1 nondegenerate (n+1)-simplices of Delta[1] x Delta[n], in fill order.

    Shuffle k runs (0,0), ..., (0,k), (1,k), ..., (1,n); the order is by the
    collapse position k of its Delta[n] component.
    """
    edge = vertex_label((0, 1))
    top = vertex_label(tuple(range(n + 1)))
    out = []
    for k in range(n + 1):
        a = SimplexExpr(OrdinalSurjection(n + 1, tuple(t for t in range(n + 1) if t != k)), edge)
        b = SimplexExpr(OrdinalSurjection(n + 1, (k,)), top)
        out.append(pair_id(a, b))
    return out


@lru_cache(maxsize=None)
def _fill_steps(n: int) -> tuple:
    """(classifying map, left leg, kind) for each shuffle, in fill order."""
    P = prism_inclusion(n).codomain
    steps = []
    for k, sid in enumerate(shuffles(n)):
        y_sigma = simplex_map(P, nondeg(sid, n + 1))
        if k < n:
            steps.append((y_sigma, _horn(n + 1, k + 1), "horn"))
        else:
            steps.append((y_sigma, _boundary(n + 1), "boundary"))
    return tuple(steps)


def _prism_dim(left: SimplicialMap) -> int:
    for n in range(0, left.codomain.dimension + 1):
        if left == prism_inclusion(n):
            return n
    raise SimplicialError("left map is not pushout_product(i_1, i_n)")


def prism_filler(p: SimplicialMap, prob: LiftingProblem) -> SimplicialMap:
    """Lift a prism square by filling shuffles one at a time.

    Shuffle k < n is a horn Lambda[n+1, k+1] problem, the last one a sphere
    problem, so the caller must certify horn and boundary lifting for p up to
    dimension n+1.
    """
    if prob.right != p:
        raise SimplicialError("problem's right map is not p")
    n = _prism_dim(prob.left)
    P = prob.left.codomain
    H = {prob.left.assignments[a].base: prob.top.assignments[a] for a in prob.left.assignments}

    def h_value(e):
        v = H[e.base]
        return SimplexExpr(v.surjection.after(e.surjection), v.base)

    for k, (y_sigma, left, kind) in enumerate(_fill_steps(n)):
        try:
            top = SimplicialMap(left.domain, p.domain,
                                {t: h_value(y_sigma.assignments[t]) for t in left.domain.ids})
        except KeyError as exc:
            raise FillerError(k, kind, f"shuffle {k}: face {exc} not yet filled") from None
        bottom = compose(prob.bottom, y_sigma)
        g = next(_lifts(left, p, top, bottom), None)
        if g is None:
            raise FillerError(k, kind, f"shuffle {k} ({kind} step) has no filler against p")
        for t, y in y_sigma.assignments.items():
            if y.is_nondegenerate and y.base not in H:
                H[y.base] = g[t]
    h = SimplicialMap(P, p.domain, H)
    if not prob.is_lift(h):
        raise AssertionError("prism filler failed verification")
    return h


@dataclass
class Lemma1Verdict:
    cond1: bool
    cond2: bool
    agree: bool
    applicable: bool
    n_max: int
    prism: RLPReport = field(repr=False)
    boundary: RLPReport = field(repr=False)
    kan: RLPReport = field(repr=False)


def lemma1_equivalence(p: SimplicialMap, n_max: Optional[int] = None) -> Lemma1Verdict:
    """Compare prism lifting (n >= 0) with boundary lifting (n >= 1) up to n_max.

    Only meaningful when p passes the horn checks up to n_max + 1; otherwise the
    verdict is marked inapplicable.
    """
    n_max = default_bound(p) if n_max is None else n_max
    kan = horn_rlp(p, n_max + 1)
    c1 = prism_rlp(p, n_max)
    c2 = boundary_rlp(p, 1, n_max)
    return Lemma1Verdict(c1.holds, c2.holds, c1.holds == c2.holds, kan.holds, n_max, c1, c2, kan)


@dataclass
class RetractDiagram:
    """i is a retract of j: r_top o s_top = id and r_bot o s_bot = id."""

    s_top: SimplicialMap
    s_bot: SimplicialMap
    r_top: SimplicialMap
    r_bot: SimplicialMap


@dataclass
class RetractResult:
    status: str  # "found", "absent" or "budget_exhausted"
    diagram: Optional[RetractDiagram] = None
    explored: int = 0


def _factor_through(m: SimplicialMap, f: SimplicialMap) -> Optional[SimplicialMap]:
    """g with m o g == f for a mono m, if f lands in the image of m."""
    back = {v.base: k for k, v in m.assignments.items()}
    vals = {}
    for k, v in f.assignments.items():
        if v.base not in back:
            return None
        vals[k] = SimplexExpr(v.surjection, back[v.base])
    return SimplicialMap(f.domain, m.domain, vals)


def verify_retract(i, j, d: RetractDiagram) -> bool:
    return (
        compose(j, d.s_top) == compose(d.s_bot, i)
        and compose(i, d.r_top) == compose(d.r_bot, j)
        and compose(d.r_top, d.s_top) == identity(i.domain)
        and compose(d.r_bot, d.s_bot) == identity(i.codomain)
    )


def retract_search(i: SimplicialMap, j: SimplicialMap, budget: int = 100_000) -> RetractResult:
    """Search for a diagram exhibiting the mono i as a retract of the mono j."""
    if not (i.is_mono and j.is_mono):
        raise SimplicialError("retract_search needs monomorphisms")
    explored = 0
    for sa in _search(i.codomain, j.codomain):
        explored += 1
        if explored > budget:
            return RetractResult("budget_exhausted", None, explored - 1)
        s_bot = SimplicialMap(i.codomain, j.codomain, sa)
        if not s_bot.is_mono:
            continue
        s_top = _factor_through(j, compose(s_bot, i))
        if s_top is None:
            continue
        want = {v.base: nondeg(k, v.dim) for k, v in s_bot.assignments.items()}
        for ra in _search(j.codomain, i.codomain, want):
            explored += 1
            if explored > budget:
                return RetractResult("budget_exhausted", None, explored - 1)
            r_bot = SimplicialMap(j.codomain, i.codomain, ra)
            r_top = _factor_through(i, compose(r_bot, j))
            if r_top is None:
                continue
            d = RetractDiagram(s_top, s_bot, r_top, r_bot)
            if verify_retract(i, j, d):
                return RetractResult("found", d, explored)
    return RetractResult("absent", None, explored)
