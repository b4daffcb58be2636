# %% [markdown]
# # Finite simplicial sets and normal forms
#
# A simplicial set is stored by its nondegenerate simplices. Every other
# simplex is written as a degeneracy of one of them, encoded by the set of
# positions an order-preserving surjection collapses.

# %%
from sset_workbench import normalize, product, std_simplex
from sset_workbench.fixtures import sphere2
from sset_workbench.simplicial import SimplexExpr

D1, D2 = std_simplex(1), std_simplex(2)
print(D2.name, "counts per dimension:", D2.counts())

# %% [markdown]
# Faces of degenerate simplices are reduced back to normal form. The face
# d_2 of s_0 applied to the edge 01 is s_0 of its vertex 0.

# %%
s0_edge = SimplexExpr.of("01", 2, (0,))
print(normalize(D1, s0_edge, "d", 2).encode())
print(normalize(D1, s0_edge, "d", 0).encode())

# %% [markdown]
# The 2-sphere with one vertex and one 2-cell: every face of the cell is
# degenerate.

# %%
S2 = sphere2()
f = S2.top("f")
print([S2.face(f, i).encode() for i in range(3)])

# %% [markdown]
# Products keep the jointly nondegenerate pairs. The square has two
# triangles, one per shuffle.

# %%
square, pr1, pr2 = product(D1, D1)
print(square.counts())
print(square.nondegenerate(2))

prism, _, _ = product(D1, D2)
print("Delta[1] x Delta[2]:", prism.counts())
