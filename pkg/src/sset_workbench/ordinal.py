"""Monotone maps between finite ordinals [n] = {0, ..., n}.

A monotone map [k] -> [n] is stored as the tuple of its values.  Monotone
surjections get their own type, :class:`OrdinalSurjection`, encoded by the
set of positions i where the map does not increase (eta(i) == eta(i+1)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from typing import Iterator, Tuple

Monotone = Tuple[int, ...]


@lru_cache(maxsize=None)
def _surjection_values(source_dim: int, collapse: tuple) -> Monotone:
    out = []
    level = 0
    for i in range(source_dim + 1):
        out.append(level)
        if i not in collapse:
            level += 1
    return tuple(out)


_COMPOSITES: dict = {}


@dataclass(frozen=True)
class OrdinalSurjection:
    """Monotone surjection [source_dim] -> [target_dim].

    ``collapse`` is the ascending tuple of positions i with eta(i) == eta(i+1).
    The identity has an empty collapse set.
    """

    source_dim: int
    collapse: Tuple[int, ...] = ()
    _hash: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.source_dim < 0:
            raise ValueError(f"negative source dimension {self.source_dim}")
        c = tuple(self.collapse)
        if list(c) != sorted(set(c)):
            raise ValueError(f"collapse set must be strictly ascending: {c}")
        if c and (c[0] < 0 or c[-1] >= self.source_dim):
            raise ValueError(f"collapse positions out of range for [{self.source_dim}]: {c}")
        object.__setattr__(self, "collapse", c)
        object.__setattr__(self, "_hash", hash((self.source_dim, c)))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        if self is other:
            return True
        if not isinstance(other, OrdinalSurjection):
            return NotImplemented
        return self.source_dim == other.source_dim and self.collapse == other.collapse

    @classmethod
    def identity(cls, n: int) -> "OrdinalSurjection":
        return cls(n, ())

    @classmethod
    def from_values(cls, values: Monotone) -> "OrdinalSurjection":
        """Build from the value tuple of a monotone surjection onto [values[-1]]."""
        if not values or values[0] != 0:
            raise ValueError(f"not a surjection onto an initial segment: {values}")
        collapse = []
        for i in range(len(values) - 1):
            step = values[i + 1] - values[i]
            if step == 0:
                collapse.append(i)
            elif step != 1:
                raise ValueError(f"not a monotone surjection: {values}")
        return cls(len(values) - 1, tuple(collapse))

    @property
    def target_dim(self) -> int:
        return self.source_dim - len(self.collapse)

    @property
    def values(self) -> Monotone:
        return _surjection_values(self.source_dim, self.collapse)

    @property
    def is_identity(self) -> bool:
        return not self.collapse

    def __call__(self, i: int) -> int:
        return self.values[i]

    def after(self, other: "OrdinalSurjection") -> "OrdinalSurjection":
        """The composite ``self o other``."""
        if not self.collapse and self.source_dim == other.target_dim:
            return other
        key = (self.source_dim, self.collapse, other.source_dim, other.collapse)
        hit = _COMPOSITES.get(key)
        if hit is None:
            if other.target_dim != self.source_dim:
                raise ValueError("surjections do not compose")
            v = self.values
            hit = OrdinalSurjection.from_values(tuple(v[j] for j in other.values))
            _COMPOSITES[key] = hit
        return hit

    def factor_out(self, common) -> "OrdinalSurjection":
        """Return eta'' with ``self = eta'' o sigma_common``.

        ``common`` must be a subset of ``self.collapse``; sigma_common is the
        surjection collapsing exactly those positions.
        """
        common = set(common)
        if not common <= set(self.collapse):
            raise ValueError("can only factor out a subset of the collapse set")
        shift = _surjection_values(self.source_dim, tuple(sorted(common)))
        return OrdinalSurjection(
            self.source_dim - len(common),
            tuple(shift[i] for i in self.collapse if i not in common),
        )

    def __str__(self):
        return "<" + ",".join(map(str, self.collapse)) + ">"


def coface(n: int, i: int) -> Monotone:
    """delta_i : [n-1] -> [n], skipping i."""
    return tuple(t if t < i else t + 1 for t in range(n))


def codegeneracy(n: int, i: int) -> Monotone:
    """sigma_i : [n+1] -> [n], hitting i twice."""
    return tuple(t if t <= i else t - 1 for t in range(n + 2))


def compose(outer: Monotone, inner: Monotone) -> Monotone:
    return tuple(outer[t] for t in inner)


def epi_mono(theta: Monotone) -> tuple:
    """Factor a monotone map as (surjection values, injection values)."""
    image = sorted(set(theta))
    pos = {v: k for k, v in enumerate(image)}
    return tuple(pos[t] for t in theta), tuple(image)


def surjections(n: int, m: int) -> Iterator[OrdinalSurjection]:
    """All monotone surjections [n] -> [m], ascending by collapse set."""
    if m < 0 or m > n:
        return
    for c in combinations(range(n), n - m):
        yield OrdinalSurjection(n, c)


def monotone_maps(k: int, n: int) -> Iterator[Monotone]:
    """All monotone maps [k] -> [n] in lexicographic order."""
    yield from combinations_with_replacement(range(n + 1), k + 1)
