# %% [markdown]
# # Sections for propositional fibrations
#
# For a propositional Kan fibration p the base splits into the image of p and
# its complement. Over the image p has a section, over the complement the
# fiber is empty. The certificate records both halves and can be rechecked
# without any search.

# %%
import json

from sset_workbench.constructions import std_simplex
from sset_workbench.fixtures import component_inclusion, discrete_cover, vertex_inclusion
from sset_workbench.lem import (
    NotComplemented,
    decompose_base,
    image_complement,
    is_propositional_rlp,
    lem_section,
    verify_certificate,
)

D1, D2 = std_simplex(1), std_simplex(2)
p = component_inclusion([D2, D1], [0])

# %%
print(is_propositional_rlp(p, 4).propositional)
print(is_propositional_rlp(discrete_cover(D1, 2), 2).propositional)

# %%
d = decompose_base(p)
print("image:", d.gamma0.sorted_ids())
print("complement:", d.gamma1.sorted_ids())

# %% [markdown]
# Without the fibration hypothesis the complement can fail to be a
# subcomplex: the edge misses the image of a vertex inclusion, but one of its
# endpoints does not.

# %%
try:
    image_complement(vertex_inclusion())
except NotComplemented as exc:
    print("not complemented:", exc)

# %%
cert = lem_section(p, 4)
data = json.loads(cert.dumps())
print(sorted(data))
print(verify_certificate(data, p).ok)

data["emptiness1"].pop(data["gamma1"][0])
print(verify_certificate(data, p).message)
