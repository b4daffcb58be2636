"""Acceptance criteria 1-7, each timed against its limit.

Every test records its verdict in ``conftest.ACCEPTANCE`` and prints one
PASS/FAIL line; the terminal summary repeats them at the end of the run.
"""

import json
import os
import random
import subprocess
import sys
import time
from io import StringIO
from math import comb

from conftest import ACCEPTANCE, fixture_map
from oracles import chain_counts
from sset_workbench.cli import main
from sset_workbench.constructions import product, std_simplex, subcomplex_closure
from sset_workbench.fixtures import (
    CORPUS_DIR,
    corpus,
    non_fibration_counterexamples,
    not_complemented_counterexamples,
)
from sset_workbench.lem import (
    EMPTY_TAG,
    NotComplemented,
    SizeGuardExceeded,
    image_complement,
    is_propositional_homotopy,
    is_propositional_rlp,
    lem_section,
    verify_certificate,
    vertex_complement,
)
from sset_workbench.lifting import (
    FillerError,
    LiftingProblem,
    default_bound,
    horn_rlp,
    lemma1_equivalence,
    prism_filler,
    prism_inclusion,
    squares,
)
from sset_workbench.simplicial import compose, validate_map
from sset_workbench.tabulation import DegreewiseModel

NAMES = [s.name for s in corpus()]


def record(k, problems, elapsed, limit, detail):
    ok = not problems and elapsed < limit
    shown = detail if not problems else f"{detail}; first problem: {problems[0]}"
    ACCEPTANCE[k] = (ok, f"{elapsed:.2f}s (limit {limit}s) {shown}")
    print(f"criterion {k}: {'PASS' if ok else 'FAIL'}  {ACCEPTANCE[k][1]}")
    assert not problems, problems[:5]
    assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"


def kan_certified(p):
    return horn_rlp(p, default_bound(p) + 1).holds


# -- 1 -------------------------------------------------------------------

def test_criterion_1_complemented_images():
    t0 = time.perf_counter()
    problems, kan = [], 0
    for name in NAMES:
        p = fixture_map(name)
        if not kan_certified(p):
            continue
        kan += 1
        try:
            comp = image_complement(p)
        except NotComplemented as exc:
            problems.append(f"{name}: {exc}")
            continue
        if subcomplex_closure(p.codomain, comp.members).members != comp.members:
            problems.append(f"{name}: complement not face-closed")
        if comp.members != vertex_complement(p).members:
            problems.append(f"{name}: complement differs from vertex criterion")
    triggers = not_complemented_counterexamples()
    for p in triggers:
        try:
            image_complement(p)
            problems.append(f"{p.domain.name} -> {p.codomain.name}: no NotComplemented")
        except NotComplemented:
            pass
    for p in non_fibration_counterexamples():
        if horn_rlp(p, default_bound(p) + 1).holds:
            problems.append(f"{p.domain.name} -> {p.codomain.name}: passes horn lifting")
    record(1, problems, time.perf_counter() - t0, 10,
           f"{kan} Kan fixtures, {len(triggers)} NotComplemented triggers")


# -- 2 -------------------------------------------------------------------

def test_criterion_2_prism_and_boundary_lifting():
    t0 = time.perf_counter()
    problems, kan, filled = [], 0, 0
    for name in NAMES:
        p = fixture_map(name)
        if not kan_certified(p):
            continue
        kan += 1
        bound = default_bound(p)
        v = lemma1_equivalence(p, bound)
        if not (v.applicable and v.cond1 == v.cond2):
            problems.append(f"{name}: cond1={v.cond1} cond2={v.cond2}")
        if not v.cond2:
            continue
        for n in range(bound + 1):
            j = prism_inclusion(n)
            for u, b in squares(j, p):
                prob = LiftingProblem(j, p, u, b)
                try:
                    h = prism_filler(p, prob)
                except FillerError as exc:
                    problems.append(f"{name}, n={n}: {exc}")
                    continue
                if not (validate_map(h) and compose(h, j) == u and compose(p, h) == b):
                    problems.append(f"{name}, n={n}: filler does not commute")
                filled += 1
    record(2, problems, time.perf_counter() - t0, 60,
           f"{kan} Kan fixtures agree, {filled} prism squares filled")


# -- 3 -------------------------------------------------------------------

def _other_id(ids, avoid):
    for s in ids:
        if s != avoid:
            return s
    return "no-such-simplex"


def mutations(data, p):
    """Single-field corruptions applicable to this certificate."""
    g0, g1 = data["gamma0"], data["gamma1"]
    out = [
        ("bound=-1", lambda d: d.update(bound=-1)),
        ("bound as string", lambda d: d.update(bound=str(d["bound"]))),
        ("bound=1.5", lambda d: d.update(bound=1.5)),
        ("bound=true", lambda d: d.update(bound=True)),
        ("gamma0 unknown id", lambda d: d["gamma0"].append("no-such-simplex")),
        ("gamma1 unknown id", lambda d: d["gamma1"].append("no-such-simplex")),
        ("section0 domain renamed", lambda d: d["section0"].update(domain="elsewhere")),
        ("section0 codomain renamed", lambda d: d["section0"].update(codomain="elsewhere")),
        ("emptiness1 dropped", lambda d: d.pop("emptiness1")),
    ]
    if g0:
        out += [
            ("gamma0 drop", lambda d: d["gamma0"].pop()),
            ("gamma1 gets a gamma0 id", lambda d: d["gamma1"].append(d["gamma0"][0])),
            ("emptiness1 gets a gamma0 id",
             lambda d: d["emptiness1"].update({d["gamma0"][0]: EMPTY_TAG})),
            ("section0 assignment dropped",
             lambda d: d["section0"]["assignments"].pop(d["gamma0"][-1])),
        ]
        key = g0[-1]
        val = data["section0"]["assignments"][key]
        same_dim = [s.id for s in p.domain.simplices if s.dim == p.domain.dim_of(val["target"])]
        corrupt = dict(val, target=_other_id(same_dim, val["target"]))
        out.append(("section0 value corrupted",
                    lambda d: d["section0"]["assignments"].update({key: corrupt})))
    if g1:
        out += [
            ("gamma1 drop", lambda d: d["gamma1"].pop()),
            ("gamma0 gets a gamma1 id", lambda d: d["gamma0"].append(d["gamma1"][0])),
            ("emptiness1 wrong tag", lambda d: d["emptiness1"].update({d["gamma1"][0]: "trust me"})),
            ("emptiness1 entry dropped", lambda d: d["emptiness1"].pop(d["gamma1"][0])),
        ]
    return out


def test_criterion_3_certificates():
    t0 = time.perf_counter()
    problems, certs, caught = [], 0, 0
    for name in NAMES:
        p = fixture_map(name)
        if not kan_certified(p) or not is_propositional_rlp(p).propositional:
            continue
        cert = lem_section(p)
        certs += 1
        if not verify_certificate(cert):
            problems.append(f"{name}: certificate rejected")
        data = json.loads(cert.dumps())
        if not verify_certificate(data, p):
            problems.append(f"{name}: serialized certificate rejected")
        for label, mutate in mutations(data, p):
            bad = json.loads(json.dumps(data))
            mutate(bad)
            if bad == data:
                problems.append(f"{name}: mutation {label!r} changed nothing")
            elif verify_certificate(bad, p):
                problems.append(f"{name}: mutation {label!r} accepted")
            else:
                caught += 1
    record(3, problems, time.perf_counter() - t0, 30,
           f"{certs} certificates verified, {caught} mutations rejected")


# -- 4 -------------------------------------------------------------------

def test_criterion_4_oracle_agreement():
    t0 = time.perf_counter()
    problems, sides, guarded = [], {True: 0, False: 0}, 0
    for name in NAMES:
        p = fixture_map(name)
        try:
            h = is_propositional_homotopy(p)
        except SizeGuardExceeded:
            guarded += 1
            continue
        r = is_propositional_rlp(p).propositional
        if h != r:
            problems.append(f"{name}: homotopy {h}, lifting {r}")
        sides[r] += 1
    if min(sides.values()) < 6:
        problems.append(f"too few fixtures on one side: {sides}")
    record(4, problems, time.perf_counter() - t0, 60,
           f"{sides[True]} propositional, {sides[False]} not, {guarded} over the size guard")


# -- 5 -------------------------------------------------------------------

def test_criterion_5_combinatorial_baselines():
    t0 = time.perf_counter()
    problems = []
    for n in range(6):
        counts = std_simplex(n).counts()
        if counts != chain_counts(n) or counts != tuple(comb(n + 1, d + 1) for d in range(n + 1)):
            problems.append(f"Delta[{n}]: {counts}")
    square = product(std_simplex(1), std_simplex(1))[0].counts()
    if not square == chain_counts(1, 1) == (4, 5, 2):
        problems.append(f"square: {square}")
    for n in range(1, 5):
        P = product(std_simplex(1), std_simplex(n))[0]
        brute = chain_counts(1, n)
        if not P.counts() == brute or P.counts()[-1] != n + 1:
            problems.append(f"Delta[1] x Delta[{n}]: {P.counts()} vs {brute}")
    record(5, problems, time.perf_counter() - t0, 5, "simplices, square and prisms match")


# -- 6 -------------------------------------------------------------------

SWEEP = r"""
import json, sys
from io import StringIO
from sset_workbench.cli import main
out = []
for argv in json.load(sys.stdin):
    o, e = StringIO(), StringIO()
    out.append([main(argv, o, e), o.getvalue(), e.getvalue()])
json.dump(out, sys.stdout)
"""


def cli_invocations():
    calls = []
    for name in NAMES:
        m = str(CORPUS_DIR / f"{name}.map.json")
        calls += [
            ["validate", m],
            ["validate", str(CORPUS_DIR / f"{name}.total.json")],
            ["decompose", "--map", m],
            ["prop", "--map", m],
            ["prop", "--map", m, "--homotopy"],
            ["lem", "--map", m],
            ["check", "--map", m, "--family", "horn"],
            ["check", "--map", m, "--family", "boundary"],
            ["check", "--map", m, "--family", "prism"],
        ]
    tri = str(CORPUS_DIR / "id_triangle.total.json")
    horn = str(CORPUS_DIR / "nonfib_vertex_in_interval.map.json")
    calls += [["build", "simplex", "3"], ["build", "boundary", "3"], ["build", "horn", "3", "2"],
              ["build", "product", tri, tri], ["build", "pushout-product", horn, horn]]
    return calls


def verify_invocations(calls, results, tmp):
    """One verify call per certificate the lem runs produced."""
    out = []
    for argv, (code, stdout, _) in zip(calls, results):
        if argv[0] == "lem" and code == 0:
            m = argv[2]
            cert = tmp / (os.path.basename(m) + ".cert.json")
            cert.write_text(stdout)
            out.append(["verify", "--cert", str(cert), "--map", m])
    return out


def sweep(calls):
    results = []
    for argv in calls:
        o, e = StringIO(), StringIO()
        results.append([main(argv, o, e), o.getvalue(), e.getvalue()])
    return results


def test_criterion_6_cli_determinism(tmp_path, monkeypatch):
    t0 = time.perf_counter()
    monkeypatch.delenv("WORKBENCH_THREADS", raising=False)
    calls = cli_invocations()
    first = sweep(calls)
    verifies = verify_invocations(calls, first, tmp_path)
    calls += verifies
    first += sweep(verifies)
    second = sweep(calls)
    # fresh interpreter with a different hash seed and the thread cap set
    env = dict(os.environ, WORKBENCH_THREADS="1", PYTHONHASHSEED="4242")
    proc = subprocess.run([sys.executable, "-c", SWEEP], input=json.dumps(calls),
                          capture_output=True, text=True, env=env)
    third = json.loads(proc.stdout) if proc.returncode == 0 else []
    problems = []
    if proc.returncode != 0:
        problems.append(f"subprocess sweep failed: {proc.stderr[-300:]}")
    if len(verifies) < 10:
        problems.append(f"only {len(verifies)} certificates to verify")
    for k, argv in enumerate(calls):
        if first[k] != second[k]:
            problems.append(f"repeat differs: {' '.join(argv)}")
        if third and first[k] != third[k]:
            problems.append(f"WORKBENCH_THREADS=1 differs: {' '.join(argv)}")
        if argv[0] == "verify" and first[k][0] != 0:
            problems.append(f"certificate rejected: {' '.join(argv)}")
    codes = sorted({r[0] for r in first})
    record(6, problems, time.perf_counter() - t0, 60,
           f"{len(calls)} invocations x 3 runs identical, exit codes seen {codes}")


# -- 7 -------------------------------------------------------------------

PROBLEMS_PER_DIM = 1000


def sets_by_dimension():
    by_dim = {}
    for name in NAMES:
        p = fixture_map(name)
        for X in (p.domain, p.codomain):
            if 0 <= X.dimension <= 3:
                by_dim.setdefault(X.dimension, {})[X.name] = X
    # the corpus stops at dimension 2, so dimension 3 uses built objects
    for X in (std_simplex(3), product(std_simplex(1), std_simplex(2))[0]):
        by_dim.setdefault(X.dimension, {})[X.name] = X
    return {d: [sets[k] for k in sorted(sets)] for d, sets in sorted(by_dim.items())}


def test_criterion_7_normal_forms():
    t0 = time.perf_counter()
    rng = random.Random(20240601)
    problems, models, done = [], {}, 0
    for d, sets in sets_by_dimension().items():
        for _ in range(PROBLEMS_PER_DIM):
            X = rng.choice(sets)
            x = rng.choice(X.simplices)
            word = [rng.randint(0, x.dim + k) for k in range(rng.randint(0, 3))]
            top = x.dim + len(word)
            j = rng.randint(0, top) if top > 0 else None
            if X.name not in models:
                models[X.name] = DegreewiseModel(X, X.dimension + 3)
            M = models[X.name]
            e, c = X.top(x.id), M.of_expr(X.top(x.id))
            for i in word:
                e, c = X.degeneracy(e, i), M.degeneracy(c, i)
            if j is not None:
                e, c = X.face(e, j), M.face(c, j)
            if M.of_expr(e) != c or e.is_nondegenerate == M.is_degenerate(c):
                problems.append(f"{X.name}: {x.id} s{word} d{j} gave {e.encode()}")
            done += 1
    record(7, problems, time.perf_counter() - t0, 30,
           f"{done} problems over dimensions 0-3 agree with tabulation")
