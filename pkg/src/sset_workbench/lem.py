"""Excluded middle for propositional fibrations of finite simplicial sets.

Given p: Y -> X, the base splits as the image of p plus its complement.
Over the image, p restricts to a trivial fibration and gets a section by
skeletal induction.  Over the complement the fiber is empty.  The two pieces
together form an :class:`LEMCertificate`, which :func:`verify_certificate`
re-checks without any search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .constructions import (
    boundary_inclusion,
    image,
    product,
    pullback,
    subcomplex_closure,
)
from .interchange import InterchangeError, dumps, expr_from_json, map_to_json
from .lifting import (
    LiftingProblem,
    RLPReport,
    boundary_rlp,
    default_bound,
    horn_rlp,
    pushout_product,
    solve_lift,
)
from .simplicial import (
    Report,
    SimplexExpr,
    SimplicialMap,
    SimplicialSet,
    Subcomplex,
    compose,
    nondeg,
    validate_map,
)


class NotComplemented(ValueError):
    """The complement of the image of p is not face-closed."""

    def __init__(self, simplex: str, face: str):
        super().__init__(
            f"{simplex!r} lies outside the image but its face {face!r} lies inside; "
            "p is not a Kan fibration"
        )
        self.simplex = simplex
        self.face = face


class NoFiller(RuntimeError):
    """Section synthesis got stuck: p is not a trivial fibration up to the bound."""

    def __init__(self, simplex: Optional[str], dim: int, message: str,
                 counterexample: Optional[LiftingProblem] = None):
        super().__init__(message)
        self.simplex = simplex
        self.dim = dim
        self.counterexample = counterexample


class NonEmptyFiber(RuntimeError):
    """The pullback of p over the complement of its image has a simplex."""


class NotPropositional(ValueError):
    pass


class SizeGuardExceeded(RuntimeError):
    pass


def image_complement(p: SimplicialMap) -> Subcomplex:
    X = p.codomain
    img = image(p).members
    rest = frozenset(s.id for s in X.simplices if s.id not in img)
    for sid in sorted(rest, key=X.order_key):
        for f in X.simplex(sid).faces:
            if f.base not in rest:
                raise NotComplemented(sid, f.base)
    return Subcomplex(X, rest)


def vertex_complement(p: SimplicialMap) -> Subcomplex:
    """Simplices all of whose vertices miss the image of p."""
    X = p.codomain
    hit = {v.base for k, v in p.assignments.items() if v.dim == 0}
    return Subcomplex(
        X,
        frozenset(s.id for s in X.simplices if not hit.intersection(X.vertices(X.top(s.id)))),
    )


@dataclass(frozen=True)
class Decomposition:
    base: SimplicialSet
    gamma0: Subcomplex
    gamma1: Subcomplex


def decompose_base(p: SimplicialMap) -> Decomposition:
    g0 = image(p)
    g1 = image_complement(p)
    X = p.codomain
    assert not g0.members & g1.members
    assert g0.members | g1.members == frozenset(X.ids)
    assert g0.is_closed() and g1.is_closed()
    assert vertex_complement(p).members == g1.members, "vertex criterion disagrees"
    return Decomposition(X, g0, g1)


@dataclass
class PropositionalityReport:
    via_rlp: RLPReport
    kan_check: RLPReport
    via_homotopy: Optional[bool] = None

    @property
    def propositional(self) -> bool:
        return self.via_rlp.holds

    def to_json(self) -> dict:
        out = {
            "propositional": self.propositional,
            "via_rlp": self.via_rlp.to_json(),
            "kan_check": self.kan_check.to_json(),
        }
        if self.via_homotopy is not None:
            out["via_homotopy"] = self.via_homotopy
        return out


def is_propositional_rlp(p: SimplicialMap, bound: Optional[int] = None) -> PropositionalityReport:
    """Boundary lifting for 1 <= n <= bound, alongside a horn check to bound + 1."""
    bound = default_bound(p) if bound is None else bound
    return PropositionalityReport(boundary_rlp(p, 1, bound), horn_rlp(p, bound + 1))


HOMOTOPY_SIZE_CAP = 30


def is_propositional_homotopy(p: SimplicialMap, size_cap: int = HOMOTOPY_SIZE_CAP) -> bool:
    """Search for a one-step fiberwise homotopy between the projections of Y x_X Y.

    Exhaustive; raises :class:`SizeGuardExceeded` when the cylinder on the
    pullback has more than ``size_cap`` nondegenerate simplices.
    """
    P, pi1, pi2 = pullback(p, p)
    ends = pushout_product(SimplicialMap(SimplicialSet("empty", []), P, {}), boundary_inclusion(1))
    cyl = ends.codomain
    if len(cyl) > size_cap:
        raise SizeGuardExceeded(
            f"cylinder on the pullback has {len(cyl)} nondegenerate simplices (cap {size_cap})"
        )
    _, to_p, to_interval = product(P, boundary_inclusion(1).codomain)
    assert to_p.domain == cyl
    top = {}
    for sid in ends.domain.ids:
        end = to_interval.assignments[sid].base
        top[sid] = (pi1 if end == "0" else pi2).apply(to_p.assignments[sid])
    u = SimplicialMap(ends.domain, p.domain, top)
    v = compose(compose(p, pi1), to_p)
    return solve_lift(LiftingProblem(ends, p, u, v)) is not None


def trivial_fibration_section(p: SimplicialMap, bound: Optional[int] = None,
                              check: bool = True) -> SimplicialMap:
    """A section of p built one base simplex at a time.

    With ``check`` the trivial-fibration condition (boundary lifting for
    0 <= n <= bound) is certified first, so a violation is reported at its
    least failing dimension rather than wherever the induction stalls.
    """
    X, Y = p.codomain, p.domain
    if check:
        bound = default_bound(p) if bound is None else bound
        rep = boundary_rlp(p, 0, bound)
        if not rep.holds:
            n = rep.counterexample.left.codomain.dimension
            raise NoFiller(None, n, f"p is not a trivial fibration: no lift against i_{n}",
                           rep.counterexample)
    section = {}
    for s in X.simplices:
        want = tuple(
            SimplexExpr(section[f.base].surjection.after(f.surjection), section[f.base].base)
            for f in s.faces
        )
        cands = p.fillers_over(s.dim).get((want, nondeg(s.id, s.dim)))
        if not cands:
            raise NoFiller(s.id, s.dim, f"no simplex of {Y.name} over {s.id!r} with the chosen boundary")
        section[s.id] = cands[0]
    out = SimplicialMap(X, Y, section)
    assert compose(p, out) == SimplicialMap(X, X, {s.id: nondeg(s.id, s.dim) for s in X.simplices})
    return out


EMPTY_TAG = "no-preimage-vertex"


@dataclass
class LEMCertificate:
    fibration: SimplicialMap
    decomposition: Decomposition
    section0: SimplicialMap
    emptiness1: dict
    bound: int

    def to_json(self) -> dict:
        X = self.decomposition.base
        return {
            "bound": self.bound,
            "gamma0": self.decomposition.gamma0.sorted_ids(),
            "gamma1": self.decomposition.gamma1.sorted_ids(),
            "section0": map_to_json(self.section0),
            "emptiness1": {k: self.emptiness1[k] for k in sorted(self.emptiness1, key=X.order_key)},
        }

    def dumps(self) -> str:
        return dumps(self.to_json())


def _gamma_name(X: SimplicialSet, k: int) -> str:
    return f"{X.name}|gamma{k}"


def lem_section(p: SimplicialMap, bound: Optional[int] = None,
                check_preconditions: bool = True) -> LEMCertificate:
    """Split the base of p and produce a section over the image plus an emptiness witness."""
    bound = default_bound(p) if bound is None else bound
    X, Y = p.codomain, p.domain
    if check_preconditions:
        prop = is_propositional_rlp(p, bound)
        if not prop.kan_check.holds:
            raise NotPropositional(f"p fails horn lifting at {prop.kan_check.failed_at}")
        if not prop.propositional:
            raise NotPropositional(f"p fails boundary lifting at {prop.via_rlp.failed_at}")
    dec = decompose_base(p)
    j0 = dec.gamma0.inclusion(_gamma_name(X, 0))
    P0, to_total, p0 = pullback(p, j0)
    # every vertex of gamma0 is hit, so i_0 lifts against the restriction
    assert boundary_rlp(p0, 0, 0).holds, "restriction over the image misses a vertex"
    s0 = trivial_fibration_section(p0, bound, check=check_preconditions)
    section0 = compose(to_total, s0)
    j1 = dec.gamma1.inclusion(_gamma_name(X, 1))
    P1, _, _ = pullback(p, j1)
    if len(P1):
        raise NonEmptyFiber(f"pullback over the complement has {len(P1)} simplices")
    hit = {v.base for v in p.assignments.values() if v.dim == 0}
    emptiness = {}
    for sid in dec.gamma1.sorted_ids():
        assert not hit.intersection(X.vertices(X.top(sid)))
        emptiness[sid] = EMPTY_TAG
    cert = LEMCertificate(p, dec, section0, emptiness, bound)
    ok = verify_certificate(cert)
    assert ok, ok.message
    return cert


def _fail(msg, *where):
    return Report(False, msg, where)


def verify_certificate(cert, fibration: Optional[SimplicialMap] = None) -> Report:
    """Re-check a certificate using only basic simplicial operations.

    ``cert`` is an :class:`LEMCertificate` or its JSON form; the JSON form
    needs the fibration passed separately.
    """
    if isinstance(cert, LEMCertificate):
        data, p = cert.to_json(), cert.fibration
    else:
        data, p = cert, fibration
    if p is None:
        return _fail("no fibration supplied")
    if not isinstance(data, dict):
        return _fail("certificate is not an object")
    X, Y = p.codomain, p.domain
    for key in ("bound", "gamma0", "gamma1", "section0", "emptiness1"):
        if key not in data:
            return _fail(f"missing field {key!r}")
    b = data["bound"]
    if isinstance(b, bool) or not isinstance(b, int) or b < 0:
        return _fail("bound must be a natural number", "bound")
    g0, g1 = data["gamma0"], data["gamma1"]
    if not (isinstance(g0, list) and isinstance(g1, list)):
        return _fail("gamma0 and gamma1 must be lists")
    s0, s1 = set(g0), set(g1)
    if len(s0) != len(g0) or len(s1) != len(g1):
        return _fail("repeated id in gamma0 or gamma1")
    unknown = (s0 | s1) - set(X.ids)
    if unknown:
        return _fail(f"unknown base simplex {min(unknown)!r}", "gamma")
    if s0 & s1:
        return _fail(f"{min(s0 & s1)!r} is in both parts", "gamma")
    if s0 | s1 != set(X.ids):
        return _fail(f"{min(set(X.ids) - s0 - s1)!r} is in neither part", "gamma")
    for part, name in ((s0, "gamma0"), (s1, "gamma1")):
        if subcomplex_closure(X, part).members != part:
            return _fail(f"{name} is not face-closed", name)
    G0 = Subcomplex(X, frozenset(s0)).as_simplicial_set(_gamma_name(X, 0))
    sec = data["section0"]
    if not isinstance(sec, dict) or not isinstance(sec.get("assignments"), dict):
        return _fail("section0 is not a map object", "section0")
    if sec.get("domain") != G0.name or sec.get("codomain") != Y.name:
        return _fail("section0 names the wrong domain or codomain", "section0")
    if set(sec["assignments"]) != s0:
        return _fail("section0 is not defined exactly on gamma0", "section0")
    dims = {s.id: s.dim for s in Y.simplices}
    try:
        vals = {
            k: expr_from_json(e, dims, f"section0[{k!r}]", X.dim_of(k))
            for k, e in sec["assignments"].items()
        }
    except InterchangeError as exc:
        return _fail(str(exc), "section0")
    section = SimplicialMap(G0, Y, vals)
    rep = validate_map(section)
    if not rep:
        return _fail(f"section0 is not a simplicial map: {rep.message}", "section0", *rep.where)
    for s in G0.simplices:
        if p.apply(vals[s.id]) != nondeg(s.id, s.dim):
            return _fail(f"p o section0 differs from the inclusion at {s.id!r}", "section0", s.id)
    em = data["emptiness1"]
    if not isinstance(em, dict) or set(em) != s1:
        return _fail("emptiness1 must cover exactly gamma1", "emptiness1")
    hit = {v.base for v in p.assignments.values() if v.dim == 0}
    for sid in sorted(s1, key=X.order_key):
        if em[sid] != EMPTY_TAG:
            return _fail(f"unknown emptiness witness at {sid!r}", "emptiness1", sid)
        if hit.intersection(X.vertices(X.top(sid))):
            return _fail(f"{sid!r} has a vertex in the image of p", "emptiness1", sid)
    return Report(True)
