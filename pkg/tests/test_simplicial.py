import random

import pytest
from hypothesis import given, settings, strategies as st

from sset_workbench.constructions import std_simplex
from sset_workbench.fixtures import circle, sphere2
from sset_workbench.ordinal import OrdinalSurjection
from sset_workbench.simplicial import (
    Simplex,
    SimplexExpr,
    SimplicialError,
    SimplicialMap,
    SimplicialSet,
    compose,
    identity,
    nondeg,
    normalize,
    validate,
    validate_map,
)
from sset_workbench.tabulation import DegreewiseModel


def E(base, dim, collapse=()):
    return SimplexExpr.of(base, dim, collapse)


# -- normalization examples ----------------------------------------------

def test_face_of_top_simplex_is_stored_face():
    D2 = std_simplex(2)
    assert normalize(D2, E("012", 2), "d", 0) == E("12", 1)


def test_d0_s0_is_identity():
    D1 = std_simplex(1)
    assert normalize(D1, E("01", 2, (0,)), "d", 0) == E("01", 1)


def test_d2_s0_equals_s0_d1():
    D1 = std_simplex(1)
    # d_1 of the edge 01 is the vertex 0, so d_2 s_0 x = s_0 d_1 x = s_0(0)
    assert normalize(D1, E("01", 2, (0,)), "d", 2) == E("0", 1, (0,))


def test_degeneracy_composes_collapse_sets():
    D1 = std_simplex(1)
    assert normalize(D1, E("01", 2, (0,)), "s", 2) == E("01", 3, (0, 2))
    assert normalize(D1, E("01", 2, (0,)), "s", 0) == E("01", 3, (0, 1))


def test_normalize_errors():
    D1 = std_simplex(1)
    with pytest.raises(SimplicialError):
        normalize(D1, E("01", 1), "d", 2)
    with pytest.raises(SimplicialError):
        normalize(D1, E("0", 0), "d", 0)
    with pytest.raises(SimplicialError):
        normalize(D1, E("xyz", 1), "d", 0)
    with pytest.raises(SimplicialError):
        normalize(D1, E("01", 2), "d", 0)
    with pytest.raises(SimplicialError):
        normalize(D1, E("01", 1), "q", 0)


def test_faces_through_collapsed_boundary():
    S2 = sphere2()
    assert S2.face(E("f", 2), 1) == E("v", 1, (0,))
    assert S2.face(S2.face(E("f", 2), 1), 0) == E("v", 0)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_normalize_is_canonical(seed):
    """Expressions built by random operator words agree with the tabulated model."""
    rng = random.Random(seed)
    X = rng.choice([std_simplex(2), circle(), sphere2()])
    model = _model(X)
    s = rng.choice(X.simplices)
    e, c = X.top(s.id), model.of_expr(X.top(s.id))
    for _ in range(rng.randint(1, 6)):
        if e.dim > 0 and (e.dim >= 4 or rng.random() < 0.5):
            i = rng.randint(0, e.dim)
            e, c = normalize(X, e, "d", i), model.face(c, i)
        else:
            i = rng.randint(0, e.dim)
            e, c = normalize(X, e, "s", i), model.degeneracy(c, i)
        assert model.of_expr(e) == c
    # idempotence: re-normalizing the identity word changes nothing
    assert normalize(X, e, "s", 0) == X.degeneracy(e, 0)


_MODELS = {}


def _model(X):
    if X.name not in _MODELS:
        _MODELS[X.name] = DegreewiseModel(X, 5)
    return _MODELS[X.name]


# -- validation ------------------------------------------------------------

def test_validate_standard_simplex():
    for n in range(5):
        assert validate(std_simplex(n))


def test_validate_names_pair_0_2():
    # d_0 d_1 = d_0 d_0 holds but d_0 d_2 = d_1 d_0 does not: d_2 ends at 3, not 1
    X = SimplicialSet("bad", [
        Simplex("0", 0), Simplex("1", 0), Simplex("2", 0), Simplex("3", 0),
        Simplex("01", 1, (nondeg("1", 0), nondeg("0", 0))),
        Simplex("03", 1, (nondeg("3", 0), nondeg("0", 0))),
        Simplex("02", 1, (nondeg("2", 0), nondeg("0", 0))),
        Simplex("12", 1, (nondeg("2", 0), nondeg("1", 0))),
        Simplex("x", 2, (nondeg("12", 1), nondeg("02", 1), nondeg("03", 1))),
    ])
    rep = validate(X)
    assert not rep
    assert rep.where == ("x", 0, 2)
    assert "d_0 d_2 = d_1 d_0" in rep.message


def test_validate_structural_errors():
    dup = SimplicialSet("dup", [Simplex("a", 0), Simplex("a", 0)])
    assert validate(dup).where == ("a",)
    wrong_count = SimplicialSet("w", [Simplex("a", 0), Simplex("e", 1, (nondeg("a", 0),))])
    assert not validate(wrong_count)
    unknown = SimplicialSet("u", [Simplex("e", 1, (nondeg("a", 0), nondeg("a", 0)))])
    assert "unknown" in validate(unknown).message
    wrong_dim = SimplicialSet("w", [Simplex("a", 0),
                                    Simplex("e", 1, (E("a", 1, (0,)), nondeg("a", 0)))])
    assert validate(wrong_dim).where == ("e", 0)


def test_empty_set_is_valid():
    X = SimplicialSet("empty", [])
    assert validate(X) and X.dimension == -1 and validate_map(identity(X))


def test_validate_map_reports_face_failure():
    D1 = std_simplex(1)
    bad = SimplicialMap(D1, D1, {"0": nondeg("0", 0), "1": nondeg("0", 0), "01": nondeg("01", 1)})
    rep = validate_map(bad)
    assert not rep and rep.where == ("01", 0)
    missing = SimplicialMap(D1, D1, {"0": nondeg("0", 0)})
    assert validate_map(missing).where == ("1",)
    wrong_dim = SimplicialMap(D1, D1, {"0": nondeg("0", 0), "1": nondeg("1", 0), "01": nondeg("0", 0)})
    assert not validate_map(wrong_dim)


def test_compose_with_identity():
    D1, D2 = std_simplex(1), std_simplex(2)
    f = SimplicialMap(D1, D2, {"0": nondeg("0", 0), "1": nondeg("2", 0), "01": nondeg("02", 1)})
    assert validate_map(f)
    assert compose(identity(D2), f) == f
    assert compose(f, identity(D1)) == f
    with pytest.raises(SimplicialError):
        compose(f, f)


def test_map_apply_whiskers_degeneracies():
    D1, D2 = std_simplex(1), std_simplex(2)
    f = SimplicialMap(D1, D2, {"0": nondeg("0", 0), "1": nondeg("2", 0), "01": nondeg("02", 1)})
    assert f.apply(E("01", 3, (1, 2))) == E("02", 3, (1, 2))


def test_expressions_count_degenerate_simplices():
    # Delta[1] has n+2 simplices in degree n (monotone maps [n] -> [1])
    D1 = std_simplex(1)
    for n in range(5):
        assert len(D1.expressions(n)) == n + 2


def test_search_order_puts_faces_first():
    for X in (std_simplex(3), sphere2(), circle()):
        seen = set()
        for s in X.search_order:
            assert all(f.base in seen for f in s.faces)
            seen.add(s.id)
        assert seen == set(X.ids)


def test_surjection_of_expression():
    e = E("01", 3, (1,))
    assert e.surjection == OrdinalSurjection(3, (1,))
    assert e.encode() == "<1>01" and E("01", 1).encode() == "01"
