"""Deterministic corpus of maps used by the test suites and the CLI.

Every fixture is a map p: total -> base.  Expected properties are computed
by the exhaustive checkers and frozen into ``corpus/manifest.json``;
``python -m sset_workbench.fixtures`` regenerates the corpus directory.
"""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Callable, Optional, Sequence

from .constructions import (
    boundary,
    coproduct_many,
    full_subcomplex,
    map_coproduct,
    product,
    std_simplex,
    vertex_label,
)
from .interchange import dumps, load_map, map_to_json, read_json, sset_to_json
from .lem import (
    NotComplemented,
    SizeGuardExceeded,
    image_complement,
    is_propositional_homotopy,
)
from .lifting import boundary_rlp, default_bound, horn_rlp, lemma1_equivalence
from .simplicial import Simplex, SimplexExpr, SimplicialMap, SimplicialSet, identity, nondeg

CORPUS_DIR = Path(__file__).parent / "corpus"


def renamed(X: SimplicialSet, name: str) -> SimplicialSet:
    return SimplicialSet(name, X.simplices)


def with_names(p: SimplicialMap, total: str, base: str) -> SimplicialMap:
    return SimplicialMap(renamed(p.domain, total), renamed(p.codomain, base), p.assignments)


def circle() -> SimplicialSet:
    """Delta[1] with its endpoints glued: one vertex, one edge."""
    return SimplicialSet("S1", [Simplex("v", 0), Simplex("e", 1, (nondeg("v", 0),) * 2)])


def sphere2() -> SimplicialSet:
    """Delta[2] with its boundary collapsed to a point."""
    flat = SimplexExpr.of("v", 1, (0,))
    return SimplicialSet("S2", [Simplex("v", 0), Simplex("f", 2, (flat,) * 3)])


def points(k: int) -> SimplicialSet:
    X, _ = coproduct_many([std_simplex(0)] * k, f"{k}pts" if k else "empty")
    return X


def component_inclusion(parts: Sequence[SimplicialSet], selected: Sequence[int]) -> SimplicialMap:
    """Inclusion of the selected summands into the coproduct of all parts."""
    if not parts:
        raise ValueError("component_inclusion needs at least one part")
    whole, _ = coproduct_many(parts)
    chosen = sorted(set(selected))
    sub, _ = coproduct_many([parts[k] for k in chosen])
    vals = {}
    for slot, k in enumerate(chosen):
        for s in parts[k].simplices:
            vals[f"{slot}:{s.id}"] = nondeg(f"{k}:{s.id}", s.dim)
    return SimplicialMap(sub, whole, vals)


def discrete_cover(X: SimplicialSet, k: int) -> SimplicialMap:
    """The projection X x (k points) -> X."""
    _, proj, _ = product(X, points(k))
    return proj


def vertex_inclusion() -> SimplicialMap:
    return SimplicialMap(std_simplex(0), std_simplex(1), {"0": nondeg("0", 0)})


def collapse_interval() -> SimplicialMap:
    D1 = std_simplex(1)
    return SimplicialMap(D1, std_simplex(0), {
        "0": nondeg("0", 0), "1": nondeg("0", 0), "01": SimplexExpr.of("0", 1, (0,)),
    })


def fold_interval() -> SimplicialMap:
    D1 = std_simplex(1)
    S, _ = coproduct_many([D1, D1])
    return SimplicialMap(S, D1, {f"{k}:{s.id}": nondeg(s.id, s.dim)
                                 for k in range(2) for s in D1.simplices})


def square_projection() -> SimplicialMap:
    _, pr1, _ = product(std_simplex(1), std_simplex(1))
    return pr1


def edge_inclusion() -> SimplicialMap:
    D1 = std_simplex(1)
    return SimplicialMap(D1, std_simplex(2), {s.id: nondeg(s.id, s.dim) for s in D1.simplices})


def doubled_vertex() -> SimplicialMap:
    """Two points sent to the same endpoint of Delta[1]."""
    S, _ = coproduct_many([std_simplex(0)] * 2)
    return SimplicialMap(S, std_simplex(1), {"0:0": nondeg("0", 0), "1:0": nondeg("0", 0)})


def non_fibration_counterexamples() -> list:
    """Maps failing horn lifting; the first two are the canonical witnesses."""
    return [vertex_inclusion(), collapse_interval(), square_projection(), edge_inclusion(),
            doubled_vertex()]


def not_complemented_counterexamples() -> list:
    """The non-fibrations whose image has a non-face-closed complement.

    The surjective ones in :func:`non_fibration_counterexamples` have an empty
    complement, so complementedness alone cannot detect them.
    """
    return [vertex_inclusion(), edge_inclusion(), doubled_vertex()]


def random_complex(rng: random.Random, n_vertices: int, n_facets: int, max_dim: int) -> SimplicialSet:
    cells = {(v,) for v in range(n_vertices)}
    for _ in range(n_facets):
        size = rng.randint(2, max_dim + 1)
        if size > n_vertices:
            continue
        facet = tuple(sorted(rng.sample(range(n_vertices), size)))
        for d in range(1, len(facet) + 1):
            cells.update(combinations(facet, d))
    simplices = []
    for vs in sorted(cells):
        faces = ()
        if len(vs) > 1:
            faces = tuple(nondeg(vertex_label(vs[:k] + vs[k + 1:]), len(vs) - 2)
                          for k in range(len(vs)))
        simplices.append(Simplex(vertex_label(vs), len(vs) - 1, faces))
    return SimplicialSet("random", simplices)


def random_subcomplex_inclusion(seed: int, n_vertices: int = 5, keep: Optional[int] = None,
                                n_facets: int = 3, max_dim: int = 2) -> SimplicialMap:
    """Inclusion of a full subcomplex of a random complex, reproducible from seed.

    ``keep`` is the number of vertices kept; by default it is drawn at random.
    """
    rng = random.Random(seed)
    K = random_complex(rng, n_vertices, n_facets, max_dim)
    if keep is None:
        keep = rng.randint(0, n_vertices)
    chosen = sorted(rng.sample(range(n_vertices), keep))
    sub = full_subcomplex(K, [vertex_label((v,)) for v in chosen])
    return sub.inclusion("random|sub")


@dataclass
class FixtureSpec:
    name: str
    builder: str
    params: dict
    make: Callable[[], SimplicialMap] = field(repr=False)
    expected: dict = field(default_factory=dict)

    def build(self) -> SimplicialMap:
        return with_names(self.make(), f"{self.name}.total", f"{self.name}.base")


def _id(X):
    return identity(X)


def _specs() -> list:
    D0, D1, D2 = std_simplex(0), std_simplex(1), std_simplex(2)
    S1, S2 = circle(), sphere2()
    H2 = boundary(2)
    specs = [
        ("id_point", "identity", {"space": "Delta[0]"}, lambda: _id(D0)),
        ("id_interval", "identity", {"space": "Delta[1]"}, lambda: _id(D1)),
        ("id_triangle", "identity", {"space": "Delta[2]"}, lambda: _id(D2)),
        ("id_circle", "identity", {"space": "S1"}, lambda: _id(S1)),
        ("id_sphere2", "identity", {"space": "S2"}, lambda: _id(S2)),
        ("id_hollow_triangle", "identity", {"space": "dDelta[2]"}, lambda: _id(H2)),
        ("incl_triangle_in_triangle_interval", "component_inclusion",
         {"parts": ["Delta[2]", "Delta[1]"], "selected": [0]},
         lambda: component_inclusion([D2, D1], [0])),
        ("incl_interval_in_interval_point", "component_inclusion",
         {"parts": ["Delta[1]", "Delta[0]"], "selected": [0]},
         lambda: component_inclusion([D1, D0], [0])),
        ("incl_point_in_two_points", "component_inclusion",
         {"parts": ["Delta[0]", "Delta[0]"], "selected": [0]},
         lambda: component_inclusion([D0, D0], [0])),
        ("incl_empty_in_interval", "component_inclusion",
         {"parts": ["Delta[1]"], "selected": []},
         lambda: component_inclusion([D1], [])),
        ("incl_empty_in_point", "component_inclusion",
         {"parts": ["Delta[0]"], "selected": []},
         lambda: component_inclusion([D0], [])),
        ("incl_two_of_three", "component_inclusion",
         {"parts": ["Delta[0]", "Delta[0]", "Delta[2]"], "selected": [0, 1]},
         lambda: component_inclusion([D0, D0, D2], [0, 1])),
        ("incl_circle_in_circle_point", "component_inclusion",
         {"parts": ["S1", "Delta[0]"], "selected": [0]},
         lambda: component_inclusion([S1, D0], [0])),
        ("cover_point_1", "discrete_cover", {"space": "Delta[0]", "k": 1},
         lambda: discrete_cover(D0, 1)),
        ("cover_point_2", "discrete_cover", {"space": "Delta[0]", "k": 2},
         lambda: discrete_cover(D0, 2)),
        ("cover_point_3", "discrete_cover", {"space": "Delta[0]", "k": 3},
         lambda: discrete_cover(D0, 3)),
        ("cover_interval_1", "discrete_cover", {"space": "Delta[1]", "k": 1},
         lambda: discrete_cover(D1, 1)),
        ("cover_interval_2", "discrete_cover", {"space": "Delta[1]", "k": 2},
         lambda: discrete_cover(D1, 2)),
        ("cover_two_points_2", "discrete_cover", {"space": "2pts", "k": 2},
         lambda: discrete_cover(points(2), 2)),
        ("cover_circle_2", "discrete_cover", {"space": "S1", "k": 2},
         lambda: discrete_cover(S1, 2)),
        ("cover_mixed_2_1", "cover_sum", {"space": "Delta[0]", "degrees": [2, 1]},
         lambda: map_coproduct([discrete_cover(D0, 2), discrete_cover(D0, 1)])),
        ("cover_mixed_2_0", "cover_sum", {"space": "Delta[0]", "degrees": [2, 0]},
         lambda: map_coproduct([discrete_cover(D0, 2), discrete_cover(D0, 0)])),
        ("cover_mixed_2_1_1", "cover_sum", {"space": "Delta[0]", "degrees": [2, 1, 1]},
         lambda: map_coproduct([discrete_cover(D0, k) for k in (2, 1, 1)])),
        ("cover_mixed_3_1", "cover_sum", {"space": "Delta[0]", "degrees": [3, 1]},
         lambda: map_coproduct([discrete_cover(D0, k) for k in (3, 1)])),
        ("nonfib_vertex_in_interval", "non_fibration", {"index": 0},
         lambda: non_fibration_counterexamples()[0]),
        ("nonfib_interval_to_point", "non_fibration", {"index": 1},
         lambda: non_fibration_counterexamples()[1]),
        ("cover_fold_interval", "fold", {"space": "Delta[1]"}, fold_interval),
        ("nonfib_square_projection", "non_fibration", {"index": 2},
         lambda: non_fibration_counterexamples()[2]),
        ("nonfib_edge_in_triangle", "non_fibration", {"index": 3},
         lambda: non_fibration_counterexamples()[3]),
        ("nonfib_doubled_vertex", "non_fibration", {"index": 4},
         lambda: non_fibration_counterexamples()[4]),
    ]
    for seed in range(4):
        specs.append((f"random_{seed}", "random_subcomplex_inclusion", {"seed": seed},
                      lambda seed=seed: random_subcomplex_inclusion(seed)))
    specs.append(("random_components", "random_subcomplex_inclusion", {"seed": 4},
                  lambda: random_subcomplex_inclusion(4)))
    specs.append(("random_full", "random_subcomplex_inclusion", {"seed": 7, "keep": 5},
                  lambda: random_subcomplex_inclusion(7, keep=5)))
    specs.append(("random_none", "random_subcomplex_inclusion", {"seed": 8, "keep": 0},
                  lambda: random_subcomplex_inclusion(8, keep=0)))
    return [FixtureSpec(n, b, prm, mk) for n, b, prm, mk in specs]


def corpus() -> list:
    """All fixture specs, with frozen expectations attached when available."""
    specs = _specs()
    manifest = CORPUS_DIR / "manifest.json"
    if manifest.exists():
        frozen = {f["name"]: f["expected"] for f in read_json(manifest)["fixtures"]}
        for s in specs:
            s.expected = frozen.get(s.name, {})
    return specs


def kan_up_to(p: SimplicialMap, limit: int) -> int:
    """Largest N <= limit such that every horn of dimension <= N lifts against p."""
    for n in range(1, limit + 1):
        if not horn_rlp(p, n, n_min=n).holds:
            return n - 1
    return limit


def compute_expected(p: SimplicialMap) -> dict:
    bound = default_bound(p)
    kan = kan_up_to(p, bound + 1)
    try:
        gamma1 = sorted(image_complement(p).members, key=p.codomain.order_key)
        complemented = True
    except NotComplemented:
        gamma1, complemented = None, False
    try:
        homotopy = is_propositional_homotopy(p)
    except SizeGuardExceeded:
        homotopy = None
    out = {
        "bound": bound,
        "kan_up_to": kan,
        "kan": kan == bound + 1,
        "complemented": complemented,
        "gamma1": gamma1,
        "propositional": boundary_rlp(p, 1, bound).holds,
        "trivial": boundary_rlp(p, 0, bound).holds,
        "homotopy_propositional": homotopy,
        "mono": p.is_mono,
    }
    if out["kan"]:
        v = lemma1_equivalence(p, bound)
        out["lemma1"] = {"cond1": v.cond1, "cond2": v.cond2}
    return out


def write_corpus(directory: Path = CORPUS_DIR, log=None) -> None:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    entries = []
    for spec in _specs():
        p = spec.build()
        (directory / f"{spec.name}.total.json").write_text(dumps(sset_to_json(p.domain)))
        (directory / f"{spec.name}.base.json").write_text(dumps(sset_to_json(p.codomain)))
        (directory / f"{spec.name}.map.json").write_text(dumps(map_to_json(p)))
        if log:
            log(spec.name)
        entries.append({
            "name": spec.name,
            "builder": {"tag": spec.builder, "params": spec.params},
            "map": f"{spec.name}.map.json",
            "expected": compute_expected(p),
        })
    manifest = {
        "fixtures": entries,
        "open_slots": {
            "nonmono_propositional_kan": "empty until found: no finitely presented "
                                         "non-mono propositional Kan fibration is known",
        },
    }
    (directory / "manifest.json").write_text(dumps(manifest))


def load_fixture(name: str, directory: Path = CORPUS_DIR) -> SimplicialMap:
    return load_map(Path(directory) / f"{name}.map.json")


if __name__ == "__main__":
    target = Path(sys.argv[1]) if len(sys.argv) > 1 else CORPUS_DIR
    write_corpus(target, log=lambda name: print(name, flush=True))
