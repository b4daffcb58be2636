"""Degreewise tabulation of a finite simplicial set (test oracle).

X_n is computed directly as a colimit: its elements are classes of pairs
(theta, x) with x a nondegenerate simplex and theta: [n] -> [dim x] any
monotone map, under the relation generated by the stored faces,
(delta_j o theta, x) ~ (eta_j o theta, y_j) whenever d_j x = (eta_j, y_j).
Faces and degeneracies act by precomposition on representatives.  Nothing
here uses the normalization engine, so it can be used to check it.
"""

from __future__ import annotations

from .ordinal import codegeneracy, coface, monotone_maps
from .simplicial import SimplexExpr, SimplicialSet


class DegreewiseModel:
    def __init__(self, X: SimplicialSet, max_dim: int):
        self.X = X
        self.max_dim = max_dim
        self._parent = {}
        self._rep = {}
        for n in range(max_dim + 1):
            for s in X.simplices:
                for theta in monotone_maps(n, s.dim):
                    self._parent[(theta, s.id)] = (theta, s.id)
            for s in X.simplices:
                for j, face in enumerate(s.faces):
                    eta = face.surjection.values
                    for theta in monotone_maps(n, s.dim - 1):
                        lifted = tuple(t + (t >= j) for t in theta)
                        self._union((lifted, s.id), (tuple(eta[t] for t in theta), face.base))
        for key in self._parent:
            self._rep.setdefault(self._find(key), key)

    def _find(self, key):
        parent = self._parent
        root = key
        while parent[root] != root:
            root = parent[root]
        while parent[key] != root:
            parent[key], key = root, parent[key]
        return root

    def _union(self, a, b):
        ra, rb = self._find(a), self._find(b)
        if ra != rb:
            # keep the smaller key as root so roots are schedule independent
            if rb < ra:
                ra, rb = rb, ra
            self._parent[rb] = ra

    def cls(self, theta, sid):
        return self._find((tuple(theta), sid))

    def of_expr(self, e: SimplexExpr):
        return self.cls(e.surjection.values, e.base)

    def degree(self, c) -> int:
        return len(c[0]) - 1

    def face(self, c, i):
        theta, sid = self._rep[c]
        n = len(theta) - 1
        return self.cls(tuple(theta[t] for t in coface(n, i)), sid)

    def degeneracy(self, c, i):
        theta, sid = self._rep[c]
        n = len(theta) - 1
        return self.cls(tuple(theta[t] for t in codegeneracy(n, i)), sid)

    def simplices(self, n: int) -> list:
        return sorted({self._find(k) for k in self._parent if len(k[0]) == n + 1})

    def is_degenerate(self, c) -> bool:
        n = self.degree(c)
        return n > 0 and any(self.degeneracy(self.face(c, i), i) == c for i in range(n))

    def nondegenerate_pair_count(self, other: "DegreewiseModel", n: int) -> int:
        """Nondegenerate n-simplices of the product, by brute force over X_n x Y_n."""
        count = 0
        for a in self.simplices(n):
            fa = [self.degeneracy(self.face(a, i), i) == a for i in range(n)]
            for b in other.simplices(n):
                if not any(
                    fa[i] and other.degeneracy(other.face(b, i), i) == b for i in range(n)
                ):
                    count += 1
        return count
