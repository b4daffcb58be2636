# %% [markdown]
# # Lifting properties by exhaustive search
#
# A map p has the right lifting property against i when every commutative
# square from i to p has a diagonal. For finite inputs all squares can be
# enumerated.

# %%
from sset_workbench.constructions import std_simplex
from sset_workbench.fixtures import collapse_interval, component_inclusion, discrete_cover
from sset_workbench.lifting import (
    LiftingProblem,
    boundary_rlp,
    horn_rlp,
    lemma1_equivalence,
    prism_filler,
    prism_inclusion,
    squares,
)

D0, D1, D2 = std_simplex(0), std_simplex(1), std_simplex(2)

# %% [markdown]
# Two points over one point: the two endpoints of an edge can be sent to
# different sheets, and then no edge connects them.

# %%
cover = discrete_cover(D0, 2)
rep = boundary_rlp(cover, 1, 1)
print(rep.holds, rep.failed_at)
print({k: v.encode() for k, v in rep.counterexample.top.assignments.items()})

# %% [markdown]
# Collapsing an edge to a point is not a Kan fibration: the outer horn
# Lambda[2,0] has no filler over the point.

# %%
print(horn_rlp(collapse_interval(), 2).failed_at)

# %% [markdown]
# For a Kan fibration, lifting against prisms and lifting against boundary
# inclusions agree. The prism filler builds lifts one shuffle at a time.

# %%
p = component_inclusion([D2, D1], [0])
verdict = lemma1_equivalence(p, 3)
print(verdict.cond1, verdict.cond2, verdict.agree)

j = prism_inclusion(1)
u, v = next(iter(squares(j, p)))
h = prism_filler(p, LiftingProblem(j, p, u, v))
print("lift found:", LiftingProblem(j, p, u, v).is_lift(h))
